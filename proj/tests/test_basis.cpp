#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtraj/basis.hpp"
#include "qtraj/constants.hpp"
#include "qtraj/specfun.hpp"

#include <cmath>
#include <numeric>
#include <vector>

using namespace qtraj;

namespace {

double wronskian_at(const BasisPair& pair, double x) {
    const BasisValues v = pair.eval(x);
    return v.dphi1 * v.phi2 - v.phi1 * v.dphi2;
}

// relative spread of the numerically evaluated Wronskian over a grid
double wronskian_spread(const BasisPair& pair, double lo, double hi, int n) {
    std::vector<double> w;
    w.reserve(n + 1);
    for (int i = 0; i <= n; ++i)
        w.push_back(wronskian_at(pair, lo + (hi - lo) * i / n));
    const double mean = std::accumulate(w.begin(), w.end(), 0.0) / w.size();
    double var = 0.0;
    for (double v : w) var += (v - mean) * (v - mean);
    return std::sqrt(var / w.size()) / std::fabs(mean);
}

} // namespace

TEST_CASE("constant potential, allowed region") {
    const Scenario sc = make_constant(10.0, 0.0);
    const BasisPair pair = build_basis(sc);
    const double k = std::sqrt(2.0 * sc.mass * 10.0) / sc.hbar();

    CHECK(pair.wronskian_x == doctest::Approx(k).epsilon(1e-14));
    CHECK(wronskian_spread(pair, -10.0, 10.0, 1000) <= 1e-9);

    for (double x : {-3.0, -0.5, 0.0, 0.7, 5.0}) {
        const auto r = schrodinger_residual(pair, sc, x);
        CHECK(std::fabs(r[0]) <= 1e-9);
        CHECK(std::fabs(r[1]) <= 1e-9);
    }
}

TEST_CASE("constant potential, forbidden region") {
    const Scenario sc = make_constant(10.0, 20.0); // eps = -10 eV
    const BasisPair pair = build_basis(sc);
    const double rho = std::sqrt(2.0 * sc.mass * 10.0) / sc.hbar();

    CHECK(pair.wronskian_x == doctest::Approx(2.0 * rho).epsilon(1e-14));
    CHECK(wronskian_spread(pair, -5.0, 5.0, 1000) <= 1e-9);
    const BasisValues v = pair.eval(0.8);
    CHECK(v.phi1 == doctest::Approx(std::exp(rho * 0.8)).epsilon(1e-13));
    CHECK(v.phi2 == doctest::Approx(std::exp(-rho * 0.8)).epsilon(1e-13));
    for (double x : {-2.0, 0.0, 1.5}) {
        const auto r = schrodinger_residual(pair, sc, x);
        CHECK(std::fabs(r[0]) <= 1e-9);
        CHECK(std::fabs(r[1]) <= 1e-9);
    }
}

TEST_CASE("constant potential with E = V0 is rejected") {
    CHECK_THROWS_AS(build_basis(make_constant(10.0, 10.0)),
                    std::invalid_argument);
}

TEST_CASE("linear potential basis") {
    const double g = 1e-9 * constants::newton_in_ev_per_angstrom;
    const Scenario sc = make_linear(10.0, g);
    const BasisPair pair = build_basis(sc);
    const double x_turn = sc.energy / g;
    const double c = std::cbrt(2.0 * sc.mass * g / (sc.hbar() * sc.hbar()));

    CHECK(pair.wronskian == doctest::Approx(2.0 / constants::pi).epsilon(1e-14));
    CHECK(pair.wronskian_x ==
          doctest::Approx(2.0 / constants::pi * c).epsilon(1e-14));

    // numeric Wronskian (in x) is flat across allowed and forbidden sides
    CHECK(wronskian_spread(pair, x_turn - 40.0, x_turn + 8.0, 1000) <= 1e-9);

    // phi2 = sqrt3 Ai - Bi vanishes exactly at the turning point y = 0
    CHECK(std::fabs(pair.eval(x_turn).phi2) <= 1e-14);

    for (double x : {x_turn - 30.0, x_turn - 5.48, x_turn, x_turn + 3.0}) {
        const auto r = schrodinger_residual(pair, sc, x);
        CHECK(std::fabs(r[0]) <= 1e-8);
        CHECK(std::fabs(r[1]) <= 1e-8);
    }
}

TEST_CASE("linear velocity bracket expansion identity") {
    // The quadratic form phi2^2 + (a phi1 + b phi2)^2, with
    // phi1 = Ai + Bi/sqrt3 and phi2 = sqrt3 Ai - Bi, expands into the
    // closed coefficient combination of Ai^2, Ai Bi, Bi^2.
    const double s3 = std::sqrt(3.0);
    for (double y : {-12.0, -4.0, -0.3, 0.0, 1.1, 3.0}) {
        const auto p = specfun::airy_pair(y);
        const double phi1 = p.ai + p.bi / s3;
        const double phi2 = s3 * p.ai - p.bi;
        for (auto [a, b] : std::vector<std::pair<double, double>>{
                 {10.0, s3}, {7.0, -1.0}, {5.0, s3}, {2.0, -1.0 / s3}}) {
            const double generic =
                phi2 * phi2 + (a * phi1 + b * phi2) * (a * phi1 + b * phi2);
            const double expanded =
                (a * a + 3 * b * b + 2 * s3 * a * b + 3) * p.ai * p.ai +
                2 * (a * a / s3 - s3 * b * b - s3) * p.ai * p.bi +
                (a * a / 3 + b * b - 2 * a * b / s3 + 1) * p.bi * p.bi;
            CHECK(generic ==
                  doctest::Approx(expanded).epsilon(1e-12));
        }
    }
}

TEST_CASE("harmonic ground basis") {
    const Scenario sc = make_harmonic_ground(10.0);
    const BasisPair pair = build_basis(sc);
    const double alpha = sc.mass * sc.energy / (sc.hbar() * sc.hbar());
    const double x_m0 = sc.hbar() / std::sqrt(2.0 * sc.mass * sc.energy);

    CHECK(pair.wronskian_x == 1.0);
    CHECK(wronskian_spread(pair, -3.0, 3.0, 1000) <= 1e-9);

    // phi2 is the exact gaussian
    CHECK(pair.eval(0.9).phi2 ==
          doctest::Approx(std::exp(-alpha * 0.81)).epsilon(1e-13));
    // phi1 equals the direct reduction-of-order integral where it is safe
    for (double x : {0.3, 0.8, 1.4}) {
        const double direct = std::exp(-alpha * x * x) *
                              specfun::growing_gaussian_integral(x, alpha);
        CHECK(pair.eval(x).phi1 == doctest::Approx(direct).epsilon(1e-12));
    }
    for (double x : {-1.5, -0.5 * x_m0, 0.0, 0.5 * x_m0, 1.0, 2.5}) {
        const auto r = schrodinger_residual(pair, sc, x);
        CHECK(std::fabs(r[0]) <= 1e-8);
        CHECK(std::fabs(r[1]) <= 1e-8);
    }
}

TEST_CASE("harmonic first excited basis") {
    const Scenario sc = make_harmonic_excited1(30.0);
    const BasisPair pair = build_basis(sc);
    const double x_m1 = 3.0 * sc.hbar() / std::sqrt(2.0 * sc.mass * sc.energy);

    CHECK(pair.wronskian_x == 1.0);
    CHECK(wronskian_spread(pair, -3.0, 3.0, 1000) <= 1e-9);

    // phi2 has its node at the origin; the regularized partner does not
    const BasisValues origin = pair.eval(0.0);
    CHECK(origin.phi2 == 0.0);
    CHECK(origin.phi1 == doctest::Approx(-1.0).epsilon(1e-14));

    for (double x : {-2.0, -0.7, 0.0, 0.3 * x_m1, 0.5 * x_m1, 1.8}) {
        const auto r = schrodinger_residual(pair, sc, x);
        CHECK(std::fabs(r[0]) <= 1e-8);
        CHECK(std::fabs(r[1]) <= 1e-8);
    }
}

TEST_CASE("transform_basis") {
    const Scenario sc = make_constant(10.0, 0.0);
    const BasisPair pair = build_basis(sc);

    const BasisPair ident = transform_basis(pair, {1, 0, 0, 1});
    const BasisPair swap = transform_basis(pair, {0, 1, 1, 0});
    const BasisPair scale = transform_basis(pair, {2, 0, 0, 1});

    CHECK(ident.wronskian_x == doctest::Approx(pair.wronskian_x));
    CHECK(swap.wronskian_x == doctest::Approx(-pair.wronskian_x));
    CHECK(scale.wronskian_x == doctest::Approx(2.0 * pair.wronskian_x));

    for (int i = 0; i <= 100; ++i) {
        const double x = -5.0 + 10.0 * i / 100.0;
        const BasisValues v = pair.eval(x);
        const BasisValues vi = ident.eval(x);
        const BasisValues vs = swap.eval(x);
        CHECK(vi.phi1 == v.phi1);
        CHECK(vi.phi2 == v.phi2);
        CHECK(vs.phi1 == v.phi2);
        CHECK(vs.phi2 == v.phi1);
        // numeric Wronskian of the scaled pair matches the scaled value
        const BasisValues vc = scale.eval(x);
        CHECK(vc.dphi1 * vc.phi2 - vc.phi1 * vc.dphi2 ==
              doctest::Approx(2.0 * pair.wronskian_x).epsilon(1e-12));
    }

    CHECK_THROWS_AS(transform_basis(pair, {1, 2, 2, 4}), std::invalid_argument);
}

TEST_CASE("map_microstate") {
    // identity transform leaves the parameters alone
    {
        const auto [a, b] = map_microstate({1, 0, 0, 1}, 3.0, -1.5);
        CHECK(a == doctest::Approx(3.0).epsilon(1e-15));
        CHECK(b == doctest::Approx(-1.5).epsilon(1e-15));
    }
    // swapping the solutions negates a for (a_t, b_t) = (1, 0)
    {
        const auto [a, b] = map_microstate({0, 1, 1, 0}, 1.0, 0.0);
        CHECK(a == doctest::Approx(-1.0).epsilon(1e-15));
        CHECK(b == doctest::Approx(0.0));
    }
    CHECK_THROWS_AS(map_microstate({1, 0, 0, 1}, 0.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(map_microstate({1, 2, 2, 4}, 1.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("third mapped coefficient is an identity") {
    // the (1 + b^2)/a combination equals the third quadratic form built
    // from the same parameters, for any valid transform
    const std::vector<TransformParams> ps = {
        {1, 0.5, -0.3, 2}, {0.4, -1.2, 2.0, 0.7}, {3, -1, 1, 1}};
    for (const auto& p : ps) {
        for (auto [at, bt] : std::vector<std::pair<double, double>>{
                 {3.0, -1.0}, {0.5, 2.0}, {-1.5, 0.0}}) {
            const auto [a, b] = map_microstate(p, at, bt);
            const double lhs = (1.0 + b * b) / a;
            const double rhs =
                (p.nu * p.nu * at * at + 2.0 * p.beta * p.nu * at * bt +
                 p.beta * p.beta * (1.0 + bt * bt)) /
                (p.det() * at);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("invert_microstate_map") {
    // identity
    {
        const auto [at, bt] = invert_microstate_map({1, 0, 0, 1}, 3.0, -1.5);
        CHECK(at == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(bt == doctest::Approx(-1.5).epsilon(1e-12));
    }
    // inverse of the swap example
    {
        const auto [at, bt] = invert_microstate_map({0, 1, 1, 0}, -1.0, 0.0);
        CHECK(at == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(bt == doctest::Approx(0.0));
    }
    // round trips across several transforms and parameter points
    const std::vector<TransformParams> ps = {
        {1, 0.5, -0.3, 2}, {0.4, -1.2, 2.0, 0.7}, {3, -1, 1, 1}};
    for (const auto& p : ps) {
        for (auto [at0, bt0] : std::vector<std::pair<double, double>>{
                 {3.0, -1.0}, {0.5, 2.0}, {-1.5, 0.4}, {10.0, 0.0}}) {
            const auto [a, b] = map_microstate(p, at0, bt0);
            const auto [at, bt] = invert_microstate_map(p, a, b);
            CHECK(at == doctest::Approx(at0).epsilon(1e-9));
            CHECK(bt == doctest::Approx(bt0).epsilon(1e-9));
            // and the other direction
            const auto [a2, b2] = map_microstate(p, at, bt);
            CHECK(a2 == doctest::Approx(a).epsilon(1e-9));
            CHECK(b2 == doctest::Approx(b).epsilon(1e-9));
        }
    }
    CHECK_THROWS_AS(invert_microstate_map({1, 0, 0, 1}, 0.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("scenario validation and factories") {
    CHECK_THROWS_AS(make_linear(10.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_constant(10.0, 0.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_harmonic_ground(-5.0), std::invalid_argument);
    CHECK_THROWS_AS(make_harmonic_ground(10.0, constants::electron_mass, 0.0),
                    std::invalid_argument);

    // E = hbar omega / 2 and E = 3 hbar omega / 2 by construction
    const Scenario g = make_harmonic_ground(10.0);
    const auto& gp = std::get<HarmonicGround>(g.potential);
    CHECK(0.5 * g.hbar() * gp.omega == doctest::Approx(10.0).epsilon(1e-14));
    const Scenario e = make_harmonic_excited1(30.0);
    const auto& ep = std::get<HarmonicExcited1>(e.potential);
    CHECK(1.5 * e.hbar() * ep.omega == doctest::Approx(30.0).epsilon(1e-14));

    // potential helpers
    CHECK(g.potential_at(0.61725) ==
          doctest::Approx(10.0).epsilon(1e-4)); // V(x_M0) = E0
    CHECK(g.potential_slope(1.0) ==
          doctest::Approx(g.potential_curvature(1.0)).epsilon(1e-14));
    CHECK(make_constant(10.0, 3.0).epsilon() == doctest::Approx(7.0));
}
