#include "qtraj/basis.hpp"
#include "qtraj/specfun.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace qtraj {

namespace {

void validate_common(double energy, double mass, double hbar_scale) {
    if (!(mass > 0.0))
        throw std::invalid_argument("scenario: mass must be > 0");
    if (!(hbar_scale > 0.0))
        throw std::invalid_argument("scenario: hbar_scale must be > 0");
    if (!std::isfinite(energy))
        throw std::invalid_argument("scenario: energy must be finite");
}

} // namespace

double Scenario::potential_at(double x) const {
    return std::visit(
        [&](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ConstantPotential>)
                return p.v0;
            else if constexpr (std::is_same_v<T, LinearPotential>)
                return p.g * x;
            else
                return 0.5 * mass * p.omega * p.omega * x * x;
        },
        potential);
}

double Scenario::potential_slope(double x) const {
    return std::visit(
        [&](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ConstantPotential>)
                return 0.0;
            else if constexpr (std::is_same_v<T, LinearPotential>)
                return p.g;
            else
                return mass * p.omega * p.omega * x;
        },
        potential);
}

double Scenario::potential_curvature(double) const {
    return std::visit(
        [&](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ConstantPotential>)
                return 0.0;
            else if constexpr (std::is_same_v<T, LinearPotential>)
                return 0.0;
            else
                return mass * p.omega * p.omega;
        },
        potential);
}

double Scenario::epsilon() const {
    if (const auto* c = std::get_if<ConstantPotential>(&potential))
        return energy - c->v0;
    throw std::logic_error("epsilon(): only defined for constant potentials");
}

Scenario make_constant(double energy, double v0, double mass,
                       double hbar_scale) {
    validate_common(energy, mass, hbar_scale);
    return {ConstantPotential{v0}, energy, mass, hbar_scale};
}

Scenario make_linear(double energy, double g, double mass, double hbar_scale) {
    validate_common(energy, mass, hbar_scale);
    if (!(g > 0.0))
        throw std::invalid_argument("scenario: linear slope g must be > 0");
    return {LinearPotential{g}, energy, mass, hbar_scale};
}

Scenario make_harmonic_ground(double energy, double mass, double hbar_scale) {
    validate_common(energy, mass, hbar_scale);
    if (!(energy > 0.0))
        throw std::invalid_argument("scenario: harmonic energy must be > 0");
    const double hbar = constants::hbar * hbar_scale;
    return {HarmonicGround{2.0 * energy / hbar}, energy, mass, hbar_scale};
}

Scenario make_harmonic_excited1(double energy, double mass,
                                double hbar_scale) {
    validate_common(energy, mass, hbar_scale);
    if (!(energy > 0.0))
        throw std::invalid_argument("scenario: harmonic energy must be > 0");
    const double hbar = constants::hbar * hbar_scale;
    return {HarmonicExcited1{2.0 * energy / (3.0 * hbar)}, energy, mass,
            hbar_scale};
}

namespace {

BasisPair constant_basis(const Scenario& sc, double eps) {
    BasisPair pair;
    const double hbar = sc.hbar();
    if (eps > 0.0) {
        const double k = std::sqrt(2.0 * sc.mass * eps) / hbar;
        pair.eval = [k](double x) -> BasisValues {
            const double s = std::sin(k * x), c = std::cos(k * x);
            return {s, k * c, c, -k * s};
        };
        pair.wronskian = k;
        pair.wronskian_x = k;
        pair.convention_note = "(sin kx, cos kx), derivatives in x";
    } else {
        const double rho = std::sqrt(-2.0 * sc.mass * eps) / hbar;
        pair.eval = [rho](double x) -> BasisValues {
            const double ep = std::exp(rho * x), em = std::exp(-rho * x);
            return {ep, rho * ep, em, -rho * em};
        };
        pair.wronskian = 2.0 * rho;
        pair.wronskian_x = 2.0 * rho;
        pair.convention_note = "(exp(rho x), exp(-rho x)), derivatives in x";
    }
    return pair;
}

BasisPair linear_basis(const Scenario& sc) {
    const auto& lp = std::get<LinearPotential>(sc.potential);
    const double hbar = sc.hbar();
    // y = (2m / hbar^2 g^2)^(1/3) (g x - E); dy/dx = (2 m g / hbar^2)^(1/3)
    const double c = std::cbrt(2.0 * sc.mass * lp.g / (hbar * hbar));
    const double x_turn = sc.energy / lp.g;
    BasisPair pair;
    pair.eval = [c, x_turn](double x) -> BasisValues {
        const double y = c * (x - x_turn);
        const auto p = specfun::airy_pair(y);
        const double sqrt3 = 1.7320508075688772935;
        return {p.ai + p.bi / sqrt3, c * (p.dai + p.dbi / sqrt3),
                sqrt3 * p.ai - p.bi, c * (sqrt3 * p.dai - p.dbi)};
    };
    pair.wronskian = 2.0 / constants::pi; // in y
    pair.wronskian_x = pair.wronskian * c;
    pair.convention_note =
        "(Ai + Bi/sqrt3, sqrt3 Ai - Bi), Wronskian stated in y";
    return pair;
}

// Ground state: phi2 = exp(-alpha x^2) with alpha = m E / hbar^2, and the
// reduction-of-order partner phi1 = exp(-alpha x^2) int_0^x exp(2 alpha q^2)
// dq = exp(alpha x^2) F(u) / sqrt(2 alpha), u = sqrt(2 alpha) x, with F the
// Dawson function.  W = 1.
BasisPair harmonic_ground_basis(const Scenario& sc) {
    const double hbar = sc.hbar();
    const double alpha = sc.mass * sc.energy / (hbar * hbar);
    const double s2a = std::sqrt(2.0 * alpha);
    BasisPair pair;
    pair.eval = [alpha, s2a](double x) -> BasisValues {
        const double u = s2a * x;
        const double gp = std::exp(alpha * x * x);
        const double gm = 1.0 / gp;
        const double f = specfun::dawson(u);
        return {gp * f / s2a, gp * (1.0 - u * f), gm, -2.0 * alpha * x * gm};
    };
    pair.wronskian = 1.0;
    pair.wronskian_x = 1.0;
    pair.convention_note =
        "(exp(-a x^2) G(x), exp(-a x^2)), derivatives in x";
    return pair;
}

// First excited state: phi2 = x exp(-alpha x^2) with alpha = m E / 3 hbar^2.
// The textbook partner x exp(-alpha x^2) int_0^x exp(2 alpha q^2)/q^2 dq
// diverges at its lower bound; integrating by parts and absorbing the
// divergent piece (a multiple of phi2) leaves the regularized
// phi1 = 4 alpha x exp(-alpha x^2) G(x) - exp(alpha x^2)
//      = exp(alpha x^2) (2 u F(u) - 1),  u = sqrt(2 alpha) x,  W = 1.
BasisPair harmonic_excited1_basis(const Scenario& sc) {
    const double hbar = sc.hbar();
    const double alpha = sc.mass * sc.energy / (3.0 * hbar * hbar);
    const double s2a = std::sqrt(2.0 * alpha);
    BasisPair pair;
    pair.eval = [alpha, s2a](double x) -> BasisValues {
        const double u = s2a * x;
        const double gp = std::exp(alpha * x * x);
        const double gm = 1.0 / gp;
        const double f = specfun::dawson(u);
        return {gp * (2.0 * u * f - 1.0),
                s2a * gp * (2.0 * (1.0 - u * u) * f + u), x * gm,
                (1.0 - 2.0 * alpha * x * x) * gm};
    };
    pair.wronskian = 1.0;
    pair.wronskian_x = 1.0;
    pair.convention_note =
        "(regularized partner, x exp(-a x^2)), derivatives in x";
    return pair;
}

} // namespace

BasisPair build_basis(const Scenario& scenario) {
    return std::visit(
        [&](const auto& p) -> BasisPair {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ConstantPotential>) {
                const double eps = scenario.energy - p.v0;
                if (eps == 0.0)
                    throw std::invalid_argument(
                        "build_basis: E = V0 is degenerate for a constant "
                        "potential");
                return constant_basis(scenario, eps);
            } else if constexpr (std::is_same_v<T, LinearPotential>) {
                return linear_basis(scenario);
            } else if constexpr (std::is_same_v<T, HarmonicGround>) {
                return harmonic_ground_basis(scenario);
            } else {
                return harmonic_excited1_basis(scenario);
            }
        },
        scenario.potential);
}

std::array<double, 2> schrodinger_residual(const BasisPair& pair,
                                           const Scenario& scenario,
                                           double x) {
    // 5-point second derivative: O(h^4) truncation keeps the residual
    // below round-off amplification at this step size.
    const double h = 1e-3;
    const BasisValues m2 = pair.eval(x - 2 * h), m1 = pair.eval(x - h),
                      c0 = pair.eval(x), p1 = pair.eval(x + h),
                      p2 = pair.eval(x + 2 * h);
    const double hbar = scenario.hbar();
    const double coef = -hbar * hbar / (2.0 * scenario.mass);
    const double dv = scenario.potential_at(x) - scenario.energy;
    const double norm_e = std::fabs(scenario.energy);
    auto residual = [&](double f_m2, double f_m1, double f0, double f_p1,
                        double f_p2) {
        const double dd =
            (-f_p2 + 16 * f_p1 - 30 * f0 + 16 * f_m1 - f_m2) / (12 * h * h);
        return (coef * dd + dv * f0) / (norm_e * (std::fabs(f0) + 1.0));
    };
    return {residual(m2.phi1, m1.phi1, c0.phi1, p1.phi1, p2.phi1),
            residual(m2.phi2, m1.phi2, c0.phi2, p1.phi2, p2.phi2)};
}

BasisPair transform_basis(const BasisPair& pair, const TransformParams& p) {
    if (p.det() == 0.0)
        throw std::invalid_argument(
            "transform_basis: mu*beta - nu*alpha must be nonzero");
    BasisPair out;
    out.eval = [base = pair.eval, p](double x) -> BasisValues {
        const BasisValues v = base(x);
        return {p.mu * v.phi1 + p.nu * v.phi2,
                p.mu * v.dphi1 + p.nu * v.dphi2,
                p.alpha * v.phi1 + p.beta * v.phi2,
                p.alpha * v.dphi1 + p.beta * v.dphi2};
    };
    out.wronskian = p.det() * pair.wronskian;
    out.wronskian_x = p.det() * pair.wronskian_x;
    out.convention_note = pair.convention_note + " [transformed]";
    return out;
}

std::pair<double, double> map_microstate(const TransformParams& p,
                                         double a_tilde, double b_tilde) {
    if (a_tilde == 0.0)
        throw std::invalid_argument("map_microstate: a_tilde must be nonzero");
    if (p.det() == 0.0)
        throw std::invalid_argument(
            "map_microstate: mu*beta - nu*alpha must be nonzero");
    const double den = p.det() * a_tilde;
    const double a = (p.mu * p.mu * a_tilde * a_tilde +
                      2.0 * p.mu * p.alpha * a_tilde * b_tilde +
                      p.alpha * p.alpha * (1.0 + b_tilde * b_tilde)) /
                     den;
    const double b = (p.mu * p.nu * a_tilde * a_tilde +
                      (p.mu * p.beta + p.nu * p.alpha) * a_tilde * b_tilde +
                      p.alpha * p.beta * (1.0 + b_tilde * b_tilde)) /
                     den;
    return {a, b};
}

std::pair<double, double> invert_microstate_map(const TransformParams& p,
                                                double a, double b) {
    if (a == 0.0)
        throw std::invalid_argument(
            "invert_microstate_map: a must be nonzero");
    if (p.det() == 0.0)
        throw std::invalid_argument(
            "invert_microstate_map: mu*beta - nu*alpha must be nonzero");

    // Closed-form seed: the two quadratic forms are proportional exactly
    // when (a_t mu + (b_t + i) alpha, a_t nu + (b_t + i) beta) is a complex
    // multiple of (a, b + i), so z := (b_t + i)/a_t solves a 2x2 linear
    // complex system.
    const std::complex<double> w(a * b / (1.0 + b * b),
                                 -a / (1.0 + b * b)); // a / (b + i)
    const std::complex<double> z =
        (p.mu - w * p.nu) / (w * p.beta - p.alpha);
    if (z.imag() == 0.0)
        throw std::runtime_error(
            "invert_microstate_map: no finite solution for this transform");
    double at = 1.0 / z.imag();
    double bt = z.real() / z.imag();

    // Newton polish of the 2x2 residual system.
    for (int it = 0; it < 20; ++it) {
        const auto [fa, fb] = map_microstate(p, at, bt);
        const double r1 = fa - a, r2 = fb - b;
        if (std::fabs(r1) + std::fabs(r2) <
            1e-14 * (1.0 + std::fabs(a) + std::fabs(b)))
            break;
        const double den = p.det() * at;
        const double j11 =
            (2.0 * p.mu * p.mu * at + 2.0 * p.mu * p.alpha * bt) / den -
            fa / at;
        const double j12 =
            (2.0 * p.mu * p.alpha * at + 2.0 * p.alpha * p.alpha * bt) / den;
        const double j21 = (2.0 * p.mu * p.nu * at +
                            (p.mu * p.beta + p.nu * p.alpha) * bt) /
                               den -
                           fb / at;
        const double j22 = ((p.mu * p.beta + p.nu * p.alpha) * at +
                            2.0 * p.alpha * p.beta * bt) /
                           den;
        const double jdet = j11 * j22 - j12 * j21;
        if (jdet == 0.0) break;
        at -= (j22 * r1 - j12 * r2) / jdet;
        bt -= (j11 * r2 - j21 * r1) / jdet;
    }

    const auto [fa, fb] = map_microstate(p, at, bt);
    if (std::fabs(fa - a) + std::fabs(fb - b) >
        1e-9 * (1.0 + std::fabs(a) + std::fabs(b)))
        throw std::runtime_error(
            "invert_microstate_map: residual not reducible below 1e-9");
    // The solution satisfies sign(a) = sign(det * a_tilde) identically
    // (the numerator of the a-equation is a positive definite form), so
    // a_tilde W_tilde > 0 holds automatically whenever a W > 0.
    return {at, bt};
}

} // namespace qtraj
