#include "qtraj/tunneling.hpp"
#include "qtraj/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace qtraj {

namespace {

void validate(const BarrierSpec& spec) {
    if (!(spec.q > 0.0))
        throw std::invalid_argument("barrier: thickness q must be > 0");
    if (!(spec.energy > 0.0) || !(spec.energy < spec.v0))
        throw std::invalid_argument("barrier: requires 0 < E < V0");
    if (!(spec.a > 0.0))
        throw std::invalid_argument("barrier: requires a > 0");
    if (!(spec.mass > 0.0) || !(spec.hbar_scale > 0.0))
        throw std::invalid_argument("barrier: bad mass or hbar scale");
}

} // namespace

double BarrierSpec::rho() const {
    const double hbar = constants::hbar * hbar_scale;
    return std::sqrt(-2.0 * mass * epsilon()) / hbar;
}

BarrierSpec make_barrier(double v0, double q, double energy, double a,
                         double b) {
    BarrierSpec spec{v0, q, energy, a, b, constants::electron_mass, 1.0};
    validate(spec);
    return spec;
}

double dwell_time(const BarrierSpec& spec, double x) {
    validate(spec);
    if (x < 0.0 || x > spec.q)
        throw std::invalid_argument("dwell_time: x must lie in [0, q]");
    const double hbar = constants::hbar * spec.hbar_scale;
    const double eps = spec.epsilon();
    return -hbar / (2.0 * eps) *
           (std::atan(spec.a * std::exp(2.0 * spec.rho() * x) + spec.b) -
            std::atan(spec.a + spec.b));
}

double thin_limit(const BarrierSpec& spec) {
    validate(spec);
    const double s = spec.a + spec.b;
    return spec.a * std::sqrt(-2.0 * spec.mass / spec.epsilon()) * spec.q /
           (1.0 + s * s);
}

double thick_limit(const BarrierSpec& spec) {
    validate(spec);
    const double hbar = constants::hbar * spec.hbar_scale;
    return -hbar / (2.0 * spec.epsilon()) *
           (0.5 * constants::pi - std::atan(spec.a + spec.b));
}

double floyd_dwell_time(const BarrierSpec& spec, double x) {
    validate(spec);
    if (x < 0.0)
        throw std::invalid_argument("floyd_dwell_time: x must be >= 0");
    const double hbar = constants::hbar * spec.hbar_scale;
    const double rho = spec.rho();
    const double damp = std::exp(-2.0 * rho * x);
    const double g = spec.a * damp + spec.b;
    return 2.0 * spec.mass * spec.a / (hbar * rho) * x * damp /
           (1.0 + g * g);
}

MonotonicityReport monotonicity_report(
    const std::function<double(double)>& f, double lo, double hi) {
    if (!(hi > lo))
        throw std::invalid_argument("monotonicity_report: empty domain");

    auto deriv = [&](double x) {
        const double h = 1e-6 * (1.0 + std::fabs(x));
        return (f(x + h) - f(x - h)) / (2.0 * h);
    };

    // stay strictly inside the domain so f is never evaluated outside it
    const double margin =
        2e-6 * (1.0 + std::max(std::fabs(lo), std::fabs(hi)));
    const double in_lo = lo + margin, in_hi = hi - margin;
    if (!(in_hi > in_lo))
        throw std::invalid_argument("monotonicity_report: domain too small");

    constexpr int samples = 2000;
    MonotonicityReport report;
    double prev_x = in_lo, prev_d = deriv(in_lo);
    for (int i = 1; i <= samples; ++i) {
        const double x = in_lo + (in_hi - in_lo) * i / samples;
        const double d = deriv(x);
        if ((prev_d > 0.0 && d < 0.0) || (prev_d < 0.0 && d > 0.0)) {
            double a = prev_x, b = x, da = prev_d;
            while (b - a > 1e-12 * std::max(1.0, std::fabs(b))) {
                const double mid = 0.5 * (a + b);
                const double dm = deriv(mid);
                if ((da < 0.0) == (dm < 0.0)) {
                    a = mid;
                    da = dm;
                } else {
                    b = mid;
                }
            }
            report.monotone = false;
            report.extremum_x = 0.5 * (a + b);
            return report;
        }
        if (d != 0.0) prev_d = d; // skip flat stretches
        prev_x = x;
    }
    return report;
}

} // namespace qtraj
