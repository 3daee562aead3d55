#include "qtraj/dynamics.hpp"
#include "qtraj/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace qtraj {

namespace {

void require_convention(const Microstate& ms, const BasisPair& pair) {
    if (ms.a == 0.0)
        throw std::invalid_argument("microstate: a must be nonzero");
    if (ms.a * pair.wronskian_x <= 0.0)
        throw std::invalid_argument(
            "microstate: a W > 0 convention violated; use "
            "normalize_microstate first");
    if (ms.branch != 1 && ms.branch != -1)
        throw std::invalid_argument("microstate: branch must be +1 or -1");
}

// phi2^2 + (a phi1 + b phi2)^2 and its x-derivatives; the second
// derivative uses phi'' = 2m (V - E) phi / hbar^2.
struct Denominator {
    double d, dp, dpp;
};

Denominator denominator(const BasisValues& v, const Microstate& ms,
                        double kappa) {
    const double u = ms.a * v.phi1 + ms.b * v.phi2;
    const double up = ms.a * v.dphi1 + ms.b * v.dphi2;
    Denominator r;
    r.d = v.phi2 * v.phi2 + u * u;
    r.dp = 2.0 * (v.phi2 * v.dphi2 + u * up);
    r.dpp = 2.0 * (v.dphi2 * v.dphi2 + up * up) + 2.0 * kappa * r.d;
    return r;
}

} // namespace

Microstate normalize_microstate(Microstate ms, double wronskian_x) {
    if (ms.a == 0.0)
        throw std::invalid_argument("microstate: a must be nonzero");
    if (ms.a * wronskian_x < 0.0) {
        ms.a = -ms.a;
        ms.b = -ms.b;
        ms.branch = -ms.branch;
    }
    return ms;
}

double reduced_action(double x, const BasisPair& pair, const Microstate& ms,
                      const Scenario& scenario, double scan_step) {
    require_convention(ms, pair);
    if (!(scan_step > 0.0))
        throw std::invalid_argument("reduced_action: scan_step must be > 0");
    const double hbar = scenario.hbar();

    // signed count of phi2 sign flips between 0 and x
    long count = 0;
    if (x != 0.0) {
        const long n =
            static_cast<long>(std::ceil(std::fabs(x) / scan_step));
        int last = 0;
        for (long i = 0; i <= n; ++i) {
            const double xi = x * static_cast<double>(i) / n;
            const double p2 = pair.eval(xi).phi2;
            const int s = (p2 > 0.0) - (p2 < 0.0);
            if (s != 0) {
                if (last != 0 && s != last) ++count;
                last = s;
            }
        }
        if (x < 0.0) count = -count;
    }

    BasisValues v = pair.eval(x);
    if (v.phi2 == 0.0) v = pair.eval(x - 1e-12); // left limit at a zero
    const double theta =
        std::atan(ms.a * v.phi1 / v.phi2 + ms.b) + constants::pi * count;
    return ms.branch * hbar * theta + hbar * ms.l;
}

double conjugate_momentum(double x, const BasisPair& pair,
                          const Microstate& ms, const Scenario& scenario) {
    require_convention(ms, pair);
    const BasisValues v = pair.eval(x);
    const double u = ms.a * v.phi1 + ms.b * v.phi2;
    const double d = v.phi2 * v.phi2 + u * u;
    return ms.branch * scenario.hbar() * ms.a * pair.wronskian_x / d;
}

double velocity_field(double x, const Scenario& scenario,
                      const BasisPair& pair, const Microstate& ms) {
    require_convention(ms, pair);
    const BasisValues v = pair.eval(x);
    const double u = ms.a * v.phi1 + ms.b * v.phi2;
    const double d = v.phi2 * v.phi2 + u * u;
    return ms.branch * 2.0 * (scenario.energy - scenario.potential_at(x)) *
           d / (scenario.hbar() * ms.a * pair.wronskian_x);
}

VelocityDerivatives velocity_derivatives(double x, const Scenario& scenario,
                                         const BasisPair& pair,
                                         const Microstate& ms) {
    require_convention(ms, pair);
    const double hbar = scenario.hbar();
    const BasisValues v = pair.eval(x);
    const double vx = scenario.potential_at(x);
    const double vp = scenario.potential_slope(x);
    const double vpp = scenario.potential_curvature(x);
    const double kappa = 2.0 * scenario.mass * (vx - scenario.energy) /
                         (hbar * hbar);
    const Denominator d = denominator(v, ms, kappa);
    const double ev = scenario.energy - vx;
    const double scale = ms.branch * 2.0 / (hbar * ms.a * pair.wronskian_x);
    return {scale * ev * d.d, scale * (-vp * d.d + ev * d.dp),
            scale * (-vpp * d.d - 2.0 * vp * d.dp + ev * d.dpp)};
}

double qshje_residual(double x, const Scenario& scenario,
                      const BasisPair& pair, const Microstate& ms) {
    require_convention(ms, pair);
    const double hbar = scenario.hbar();
    const BasisValues v = pair.eval(x);
    const double vx = scenario.potential_at(x);
    const double kappa = 2.0 * scenario.mass * (vx - scenario.energy) /
                         (hbar * hbar);
    const Denominator d = denominator(v, ms, kappa);
    const double p = hbar * ms.a * pair.wronskian_x / d.d;
    // with P = c/D the bracketed term reduces to D''/D - D'^2/(2 D^2)
    const double bracket =
        d.dpp / d.d - 0.5 * (d.dp / d.d) * (d.dp / d.d);
    const double lhs = p * p / (2.0 * scenario.mass) + vx - scenario.energy;
    const double rhs = hbar * hbar / (4.0 * scenario.mass) * bracket;
    return (lhs - rhs) / std::fabs(scenario.energy);
}

double fiqnl_residual(double x, const Scenario& scenario, double f, double fp,
                      double fpp) {
    if (f == 0.0)
        throw std::domain_error(
            "fiqnl_residual: indeterminate at a turning point (v = 0)");
    const double hbar = scenario.hbar();
    const double ev = scenario.energy - scenario.potential_at(x);
    const double vp = scenario.potential_slope(x);
    const double vpp = scenario.potential_curvature(x);
    // autonomous chain rule: (3/2)(xdd/xd)^2 - xddd/xd = fp^2/2 - f fpp
    const double bracket = 0.5 * fp * fp - f * fpp;
    const double h2_8 = hbar * hbar / 8.0;
    const double r = ev * ev * ev * ev -
                     0.5 * scenario.mass * f * f * ev * ev * ev +
                     h2_8 * bracket * ev * ev -
                     h2_8 * (f * f * vpp + f * fp * vp) * ev -
                     1.5 * h2_8 * (f * vp) * (f * vp);
    const double e4 = std::pow(std::fabs(scenario.energy), 4);
    return r / (ev * ev * ev * ev + e4);
}

double fiqnl_residual(double x, const Scenario& scenario,
                      const BasisPair& pair, const Microstate& ms) {
    const VelocityDerivatives d = velocity_derivatives(x, scenario, pair, ms);
    return fiqnl_residual(x, scenario, d.f, d.fp, d.fpp);
}

double constant_allowed_analytic(double t, const Scenario& scenario,
                                 const Microstate& ms, double x0) {
    const double eps = scenario.epsilon();
    if (!(eps > 0.0))
        throw std::invalid_argument(
            "constant_allowed_analytic: needs E - V0 > 0");
    if (!(ms.a > 0.0))
        throw std::invalid_argument("constant_allowed_analytic: needs a > 0");
    const double hbar = scenario.hbar();
    const double k = std::sqrt(2.0 * scenario.mass * eps) / hbar;

    // Along the flow, G = a tan(kx) + b advances as tan of a linear phase.
    // Invert window by window so x(t) is continuous, with x(0) = x0.
    const double m0 = std::nearbyint(k * x0 / constants::pi);
    const double xr = k * x0 - m0 * constants::pi; // reduced to (-pi/2, pi/2]
    const double theta0 = std::atan(ms.a * std::tan(xr) + ms.b);
    const double theta = theta0 + ms.branch * 2.0 * eps * t / hbar;
    const double n = std::nearbyint(theta / constants::pi);
    const double tr = theta - n * constants::pi;
    return (std::atan((std::tan(tr) - ms.b) / ms.a) +
            (n + m0) * constants::pi) /
           k;
}

ForbiddenSample constant_forbidden_analytic(double t, const Scenario& scenario,
                                            const Microstate& ms, double t0) {
    const double eps = scenario.epsilon();
    if (!(eps < 0.0))
        throw std::invalid_argument(
            "constant_forbidden_analytic: needs E - V0 < 0");
    if (ms.a == 0.0)
        throw std::invalid_argument("constant_forbidden_analytic: a != 0");
    const double hbar = scenario.hbar();
    // branch -1 is the barrier-entry sign: theta then increases with t
    const double theta = ms.branch * 2.0 * eps * (t - t0) / hbar;
    const double tn = std::tan(theta);
    if (tn == ms.b)
        throw std::domain_error(
            "constant_forbidden_analytic: evaluation at a divergence time");
    const double root = std::sqrt(-2.0 * scenario.mass * eps);
    ForbiddenSample s;
    s.x = hbar / (2.0 * root) * std::log(std::fabs((tn - ms.b) / ms.a));
    s.v = -ms.branch * std::sqrt(-eps / (2.0 * scenario.mass)) *
          (1.0 + tn * tn) / (tn - ms.b);
    return s;
}

ClassicalPath classical_path(const Scenario& scenario, double x0, int sign) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("classical_path: sign must be +1 or -1");
    const double ev0 = scenario.energy - scenario.potential_at(x0);
    if (ev0 < 0.0)
        throw std::invalid_argument(
            "classical_path: E < V(x0), no classical motion");
    const double m = scenario.mass;
    const double v0 = sign * std::sqrt(2.0 * std::max(ev0, 0.0) / m);

    ClassicalPath path;
    if (const auto* c = std::get_if<ConstantPotential>(&scenario.potential)) {
        (void)c;
        path.x = [x0, v0](double t) { return x0 + v0 * t; };
        path.v = [v0](double) { return v0; };
    } else if (const auto* l =
                   std::get_if<LinearPotential>(&scenario.potential)) {
        const double acc = -l->g / m;
        path.x = [x0, v0, acc](double t) {
            return x0 + v0 * t + 0.5 * acc * t * t;
        };
        path.v = [v0, acc](double t) { return v0 + acc * t; };
        path.turning_points = {scenario.energy / l->g};
    } else {
        const double omega =
            std::holds_alternative<HarmonicGround>(scenario.potential)
                ? std::get<HarmonicGround>(scenario.potential).omega
                : std::get<HarmonicExcited1>(scenario.potential).omega;
        const double amp =
            std::sqrt(2.0 * scenario.energy / (m * omega * omega));
        path.x = [x0, v0, omega](double t) {
            return x0 * std::cos(omega * t) + v0 / omega * std::sin(omega * t);
        };
        path.v = [x0, v0, omega](double t) {
            return -x0 * omega * std::sin(omega * t) + v0 * std::cos(omega * t);
        };
        path.turning_points = {-amp, amp};
        path.period = 2.0 * constants::pi / omega;
    }
    return path;
}

} // namespace qtraj
