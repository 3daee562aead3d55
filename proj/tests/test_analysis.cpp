#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtraj/analysis.hpp"
#include "qtraj/checks.hpp"
#include "qtraj/constants.hpp"

#include <cmath>

using namespace qtraj;

namespace {
const double kG = 1e-9 * constants::newton_in_ev_per_angstrom;
}

TEST_CASE("find_nodes: constant potential grid") {
    const Scenario sc = make_constant(10.0, 0.0);
    const BasisPair pair = build_basis(sc);
    const auto nodes = find_nodes(sc, pair, -5.0, 5.0);

    const double dx = constants::pi * sc.hbar() / std::sqrt(2.0 * sc.mass * 10.0);
    REQUIRE(nodes.size() == 6); // zeros of phi2 at (n + 1/2) pi / k
    for (const auto& n : nodes) CHECK(n.kind == NodeKind::phi2_zero);
    for (std::size_t i = 1; i < nodes.size(); ++i)
        CHECK(nodes[i].x - nodes[i - 1].x == doctest::Approx(dx).epsilon(1e-9));
    CHECK(dx == doctest::Approx(1.93914971716).epsilon(1e-9));
}

TEST_CASE("find_nodes: linear potential turning point and wave zeros") {
    const Scenario sc = make_linear(10.0, kG);
    const BasisPair pair = build_basis(sc);
    const double x_t = 10.0 / kG;
    const auto nodes = find_nodes(sc, pair, x_t - 12.0, x_t + 2.0);

    bool saw_turning = false;
    int zero_count = 0;
    double prev = -1e300;
    for (const auto& n : nodes) {
        CHECK(n.x >= prev); // sorted
        prev = n.x;
        if (n.kind == NodeKind::turning_point) {
            saw_turning = true;
            CHECK(n.x == doctest::Approx(x_t).epsilon(1e-9));
            CHECK(n.x == doctest::Approx(16.0218).epsilon(1e-4));
        } else {
            ++zero_count;
            CHECK(n.x <= x_t + 1e-9); // all zeros on the allowed side
        }
    }
    CHECK(saw_turning);
    CHECK(zero_count >= 4);
}

TEST_CASE("find_nodes: harmonic potentials") {
    const Scenario hg = make_harmonic_ground(10.0);
    const auto gnodes = find_nodes(hg, build_basis(hg), -1.0, 1.0);
    REQUIRE(gnodes.size() == 2); // only the turning points
    CHECK(gnodes[0].kind == NodeKind::turning_point);
    CHECK(gnodes[1].kind == NodeKind::turning_point);
    CHECK(gnodes[0].x == doctest::Approx(-0.61725).epsilon(1e-4));
    CHECK(gnodes[1].x == doctest::Approx(+0.61725).epsilon(1e-4));

    const Scenario he = make_harmonic_excited1(30.0);
    const auto enodes = find_nodes(he, build_basis(he), -1.2, 1.2);
    REQUIRE(enodes.size() == 3); // additional node at the origin
    CHECK(enodes[0].kind == NodeKind::turning_point);
    CHECK(enodes[0].x == doctest::Approx(-1.06911).epsilon(1e-4));
    CHECK(enodes[1].kind == NodeKind::phi2_zero);
    CHECK(std::fabs(enodes[1].x) <= 1e-10);
    CHECK(enodes[2].kind == NodeKind::turning_point);
    CHECK(enodes[2].x == doctest::Approx(+1.06911).epsilon(1e-4));
}

TEST_CASE("node_times from an integrated trajectory") {
    const Scenario sc = make_constant(10.0, 0.0);
    const BasisPair pair = build_basis(sc);
    const double dt = constants::pi * sc.hbar() / 20.0;

    const Trajectory tr = integrate_trajectory(sc, pair, {3.0, 2.0, 0.0, +1},
                                               0.0, 0.0, 5.0 * dt);
    const auto times = node_times(tr);
    REQUIRE(times.size() >= 4);
    for (std::size_t i = 1; i < times.size(); ++i)
        CHECK(times[i] - times[i - 1] == doctest::Approx(dt).epsilon(1e-8));
}

TEST_CASE("mean conjugate momentum over an adjacent-zero interval") {
    const Scenario sc = make_constant(10.0, 0.0);
    const BasisPair pair = build_basis(sc);
    const double k = std::sqrt(2.0 * sc.mass * 10.0) / sc.hbar();
    const double x1 = 0.5 * constants::pi / k;
    const double x2 = x1 + constants::pi / k;

    const double p =
        mean_conjugate_momentum(pair, {3.0, 2.0, 0.0, +1}, sc, x1, x2);
    CHECK(p == doctest::Approx(std::sqrt(2.0 * sc.mass * 10.0))
                   .epsilon(1e-10));
    CHECK(p == doctest::Approx(constants::pi * sc.hbar() / (x2 - x1))
                   .epsilon(1e-10));

    // b-shift invariance
    const double p5 =
        mean_conjugate_momentum(pair, {3.0, 7.0, 0.0, +1}, sc, x1, x2);
    CHECK(p5 == doctest::Approx(p).epsilon(1e-12));

    // endpoints must be zeros of phi2
    CHECK_THROWS_AS(
        mean_conjugate_momentum(pair, {3.0, 2.0, 0.0, +1}, sc, x1 + 0.1, x2),
        std::invalid_argument);
}

TEST_CASE("mean conjugate momentum: any potential gives p dx = pi hbar") {
    const Scenario sc = make_linear(10.0, kG);
    const BasisPair pair = build_basis(sc);
    const double x_t = 10.0 / kG;
    const auto nodes = find_nodes(sc, pair, x_t - 12.0, x_t - 0.5);
    REQUIRE(nodes.size() >= 2);
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const double x1 = nodes[i - 1].x, x2 = nodes[i].x;
        const double p =
            mean_conjugate_momentum(pair, {2.0, -1.0, 0.0, +1}, sc, x1, x2);
        CHECK(p * (x2 - x1) ==
              doctest::Approx(constants::pi * sc.hbar()).epsilon(1e-10));
    }
}

TEST_CASE("de Broglie report") {
    const Scenario sc = make_constant(10.0, 0.0);
    const BasisPair pair = build_basis(sc);
    const double k = std::sqrt(2.0 * sc.mass * 10.0) / sc.hbar();
    const double x1 = 0.5 * constants::pi / k;
    const double x2 = x1 + constants::pi / k;

    const auto rep = de_broglie_report(pair, {3.0, 2.0, 0.0, +1}, sc, x1, x2);
    CHECK(rep.lambda == doctest::Approx(2.0 * rep.dx).epsilon(1e-10));
    CHECK(rep.lambda == doctest::Approx(3.8783).epsilon(1e-4));
    CHECK(rep.lambda * rep.p ==
          doctest::Approx(2.0 * constants::pi * sc.hbar()).epsilon(1e-12));
    // p equals the classical momentum here
    CHECK(rep.p ==
          doctest::Approx(sc.mass * std::sqrt(2.0 * 10.0 / sc.mass))
              .epsilon(1e-10));
}

TEST_CASE("Ermakov invariant: constancy and closed form for all bases") {
    const std::vector<Scenario> scs = {
        make_constant(10.0, 0.0), make_linear(10.0, kG),
        make_harmonic_ground(10.0), make_harmonic_excited1(30.0)};
    const std::vector<Microstate> mss = {{1.0, 0.0, 0.0, +1},
                                         {3.0, 2.0, 0.0, +1},
                                         {0.5, -1.5, 0.0, +1}};
    const std::vector<PhysicalState> states = {{0.0, 1.0}, {1.0, 1.0},
                                               {0.7, -0.4}};
    for (const auto& sc : scs) {
        const BasisPair pair = build_basis(sc);
        const bool linear = std::holds_alternative<LinearPotential>(
            sc.potential);
        const bool ground = std::holds_alternative<HarmonicGround>(
            sc.potential);
        const bool excited = std::holds_alternative<HarmonicExcited1>(
            sc.potential);
        const double lo = linear ? 10.0 / kG - 12.0
                                 : (ground ? -0.5 : (excited ? -0.9 : -3.0));
        const double hi = linear ? 10.0 / kG - 1.0
                                 : (ground ? 0.5 : (excited ? 0.9 : 3.0));
        for (const auto& ms : mss)
            for (const auto& st : states) {
                const double cf =
                    ermakov_invariant_closed_form(pair, ms, sc, st);
                for (int i = 0; i <= 50; ++i) {
                    const double x = lo + (hi - lo) * i / 50.0;
                    CHECK(ermakov_invariant(x, pair, ms, sc, st) ==
                          doctest::Approx(cf).epsilon(1e-9));
                }
            }
    }

    // alpha = 0, beta = 1 closed form
    const Scenario sc = make_constant(10.0, 0.0);
    const BasisPair pair = build_basis(sc);
    const Microstate ms{3.0, 2.0, 0.0, +1};
    CHECK(ermakov_invariant_closed_form(pair, ms, sc, {0.0, 1.0}) ==
          doctest::Approx(sc.hbar() * pair.wronskian_x * 3.0 /
                          std::sqrt(2.0 * sc.mass))
              .epsilon(1e-12));

    // branch convention and degenerate state
    CHECK_THROWS_AS(
        ermakov_invariant(0.0, pair, {3.0, 2.0, 0.0, -1}, sc, {1.0, 1.0}),
        std::domain_error);
    CHECK_THROWS_AS(
        ermakov_invariant(0.0, pair, ms, sc, {0.0, 0.0}),
        std::invalid_argument);
}

TEST_CASE("classical limit: deviation halves with hbar") {
    const Scenario sc = make_constant(10.0, 0.0);

    // classical microstate: zero deviation at any scale
    const auto trivial =
        classical_limit_study(sc, {1.0, 0.0, 0.0, +1}, {1.0, 0.5}, 0.0, 0.5);
    for (const auto& row : trivial) CHECK(row.deviation <= 1e-6);

    const auto table = classical_limit_study(
        sc, {10.0, 0.0, 0.0, +1}, {1.0, 0.5, 0.25, 0.125}, 0.0, 0.5);
    REQUIRE(table.size() == 4);
    for (std::size_t i = 1; i < table.size(); ++i) {
        CHECK(table[i].deviation < table[i - 1].deviation); // monotone
        const double ratio = table[i].deviation / table[i - 1].deviation;
        CHECK(ratio > 0.4);
        CHECK(ratio < 0.6);
    }
}

TEST_CASE("invariant check suite passes; absurd turning band fails") {
    const auto good = run_invariant_checks();
    REQUIRE(!good.empty());
    for (const auto& r : good) {
        INFO(r.name, ": ", r.detail);
        CHECK(r.passed);
    }

    CheckOptions absurd;
    absurd.epsilon_turn = 0.5;
    const auto bad = run_invariant_checks(absurd);
    bool turning_failed = false;
    for (const auto& r : bad)
        if (r.name.find("turning point") != std::string::npos && !r.passed)
            turning_failed = true;
    CHECK(turning_failed);
}

TEST_CASE("classical limit: harmonic amplitudes shrink with hbar") {
    const Scenario sc = make_harmonic_ground(10.0);
    const auto table =
        classical_limit_study(sc, {1.0, 0.0, 0.0, +1}, {1.0, 0.5}, 0.0, 0.25);
    REQUIRE(table.size() == 2);
    CHECK(table[1].deviation < table[0].deviation);
}
