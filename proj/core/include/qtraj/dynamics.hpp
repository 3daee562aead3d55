#ifndef QTRAJ_DYNAMICS_HPP
#define QTRAJ_DYNAMICS_HPP

// The quantum law of motion: reduced action, conjugate momentum,
// velocity field, residual certificates, and the closed-form
// constant-potential and classical solutions.

#include "qtraj/basis.hpp"
#include "qtraj/scenario.hpp"

#include <functional>
#include <vector>

namespace qtraj {

// Non-classical integration constants selecting one trajectory of the
// family sharing a wave function.  Convention: a W > 0, with the branch
// carrying the overall sign of the motion.
struct Microstate {
    double a = 1.0;
    double b = 0.0;
    double l = 0.0; // additive phase offset; physically inert
    int branch = +1;
};

// Re-establishes a W > 0 by jointly negating (a, b) and flipping the
// branch, which leaves the motion unchanged.
Microstate normalize_microstate(Microstate ms, double wronskian_x);

// S0 = hbar arctan(a phi1/phi2 + b) + hbar l, unwrapped by pi times the
// signed count of phi2 zeros between 0 and x so that S0 is continuous
// and dS0/dx equals the conjugate momentum.  Zero crossings are located
// by scanning with the given step, so the step must be smaller than the
// narrowest oscillation of phi2 over [0, x].
double reduced_action(double x, const BasisPair& pair, const Microstate& ms,
                      const Scenario& scenario, double scan_step = 0.01);

// P = dS0/dx = branch * hbar a W / (phi2^2 + (a phi1 + b phi2)^2);
// finite and nonzero everywhere.
double conjugate_momentum(double x, const BasisPair& pair,
                          const Microstate& ms, const Scenario& scenario);

// dx/dt = branch * 2 (E - V) [phi2^2 + (a phi1 + b phi2)^2] / (hbar a W);
// satisfies v * P = 2 (E - V) identically.
double velocity_field(double x, const Scenario& scenario,
                      const BasisPair& pair, const Microstate& ms);

// Velocity field together with its first two x-derivatives (analytic,
// using phi'' = 2m (V - E) phi / hbar^2).
struct VelocityDerivatives {
    double f;   // dx/dt
    double fp;  // df/dx
    double fpp; // d2f/dx2
};
VelocityDerivatives velocity_derivatives(double x, const Scenario& scenario,
                                         const BasisPair& pair,
                                         const Microstate& ms);

// Left-minus-right of the stationary Hamilton-Jacobi equation for S0,
// normalized by |E|; evaluated from analytic derivatives.
double qshje_residual(double x, const Scenario& scenario,
                      const BasisPair& pair, const Microstate& ms);

// Residual of the first integral of the quantum Newton's law along the
// autonomous flow dx/dt = f(x), normalized by (E-V)^4 + E^4.  Throws
// std::domain_error at a turning point (f = 0).
double fiqnl_residual(double x, const Scenario& scenario,
                      const BasisPair& pair, const Microstate& ms);
// Same residual for an externally supplied velocity field sample
// (used as a perturbation probe: wrong fields give large residuals).
double fiqnl_residual(double x, const Scenario& scenario, double f, double fp,
                      double fpp);

// Closed-form x(t) for a constant potential in the allowed region
// (E - V0 > 0, a > 0): the exact trajectory generated by
// velocity_field for the same microstate, launched with x(0) = x0,
// continuous across the arctan windows.
double constant_allowed_analytic(double t, const Scenario& scenario,
                                 const Microstate& ms, double x0);

// Closed-form (x, v)(t) for a constant potential in the forbidden
// region (E - V0 < 0): the exact trajectory generated by
// velocity_field for the same microstate (branch -1 is the
// barrier-entry sign with increasing x and v).  Throws
// std::domain_error exactly at a divergence time.
struct ForbiddenSample {
    double x;
    double v;
};
ForbiddenSample constant_forbidden_analytic(double t, const Scenario& scenario,
                                            const Microstate& ms, double t0);

// Classical closed-form motion with x(t0 = 0) = x0 and initial velocity
// sign `sign`; satisfies m v^2/2 + V(x) = E.
struct ClassicalPath {
    std::function<double(double t)> x;
    std::function<double(double t)> v;
    std::vector<double> turning_points; // sorted
    double period = 0.0;                // 0 when the motion is unbounded
};
ClassicalPath classical_path(const Scenario& scenario, double x0, int sign);

} // namespace qtraj

#endif
