#ifndef QTRAJ_TUNNELING_HPP
#define QTRAJ_TUNNELING_HPP

// Rectangular-barrier dwell times: closed-form T(x) with thin/thick
// limits, the Floydian alternative, and monotonicity analysis.

#include <functional>
#include <optional>

namespace qtraj {

// Rectangular barrier of height v0 and thickness q, crossed at energy
// 0 < energy < v0 by a trajectory with microstate constants (a, b),
// a > 0 (positive-velocity convention inside the barrier).
struct BarrierSpec {
    double v0;
    double q;
    double energy;
    double a = 1.0;
    double b = 0.0;
    double mass;
    double hbar_scale = 1.0;

    double epsilon() const { return energy - v0; } // < 0
    double rho() const;                            // sqrt(-2 m eps) / hbar
};

BarrierSpec make_barrier(double v0, double q, double energy, double a = 1.0,
                         double b = 0.0);

// Time to travel from the barrier entry to depth x in [0, q]:
// T(x) = -(hbar/2 eps) [arctan(a e^(2 rho x) + b) - arctan(a + b)].
// T(0) = 0 and T is strictly increasing.
double dwell_time(const BarrierSpec& spec, double x);

// First-order (rho q << 1) limit: a sqrt(-2m/eps) q / (1 + (a+b)^2).
double thin_limit(const BarrierSpec& spec);

// Thickness-independent (rho q >> 1) limit:
// -(hbar/2 eps) [pi/2 - arctan(a + b)].
double thick_limit(const BarrierSpec& spec);

// Floydian dwell time (2 m a / hbar rho) x e^(-2 rho x) /
// (1 + (a e^(-2 rho x) + b)^2); vanishes at x = 0 and as x -> infinity.
double floyd_dwell_time(const BarrierSpec& spec, double x);

struct MonotonicityReport {
    bool monotone = true;
    std::optional<double> extremum_x; // located interior extremum if any
};

// Samples the derivative of `f` over [lo, hi], brackets sign changes and
// bisects the first one to 1e-12 relative.  A function whose derivative
// never changes sign (including constants) reports monotone.
MonotonicityReport monotonicity_report(const std::function<double(double)>& f,
                                       double lo, double hi);

} // namespace qtraj

#endif
