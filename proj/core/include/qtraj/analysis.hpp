#ifndef QTRAJ_ANALYSIS_HPP
#define QTRAJ_ANALYSIS_HPP

// Node detection, wavelength / mean-momentum relations, the Ermakov
// invariant, and the classical-limit convergence study.

#include "qtraj/dynamics.hpp"
#include "qtraj/integrator.hpp"

#include <vector>

namespace qtraj {

enum class NodeKind { phi2_zero, turning_point };

struct Node {
    double t = 0.0; // filled by trajectory-based detection; 0 for spatial scans
    double x = 0.0;
    NodeKind kind = NodeKind::phi2_zero;
};

// All zeros of phi2 and turning points (E = V) inside [x_lo, x_hi],
// located by sign-change bracketing + bisection to 1e-12 relative and
// sorted by x.  scan_step bounds the bracketing resolution.
std::vector<Node> find_nodes(const Scenario& scenario, const BasisPair& pair,
                             double x_lo, double x_hi,
                             double scan_step = 0.01);

// Times of the node events recorded on a trajectory.
std::vector<double> node_times(const Trajectory& trajectory);

// Mean conjugate momentum (S0(x2) - S0(x1)) / (x2 - x1) over an interval
// bounded by adjacent zeros of phi2; equals pi hbar / (x2 - x1) for any
// potential.  Throws std::invalid_argument if an endpoint is not a zero.
double mean_conjugate_momentum(const BasisPair& pair, const Microstate& ms,
                               const Scenario& scenario, double x1,
                               double x2);

struct WavelengthReport {
    double dx;     // adjacent-node spacing
    double p;      // mean conjugate momentum
    double lambda; // h / p = 2 dx
};

WavelengthReport de_broglie_report(const BasisPair& pair, const Microstate& ms,
                                   const Scenario& scenario, double x1,
                                   double x2);

// Coefficients of the physical solution psi_E = alpha phi1 + beta phi2
// (real case; the complex case is not specified by the source material).
struct PhysicalState {
    double alpha_coef;
    double beta_coef;
};

// Ermakov invariant evaluated numerically from P, dP/dx, psi_E and its
// derivative; x-independent and equal to the closed form
// hbar W [alpha^2 + (a beta - b alpha)^2] / (a sqrt(2m)).
// Requires dS0/dx > 0 at x (throws std::domain_error otherwise).
double ermakov_invariant(double x, const BasisPair& pair, const Microstate& ms,
                         const Scenario& scenario, const PhysicalState& state);

// Closed form of the same invariant.
double ermakov_invariant_closed_form(const BasisPair& pair,
                                     const Microstate& ms,
                                     const Scenario& scenario,
                                     const PhysicalState& state);

struct ScaleDeviation {
    double scale;     // hbar multiplier s
    double deviation; // max_t |x_quantum(t) - x_classical(t)| on the window
};

// Re-derives the scenario with hbar scaled by each s, integrates the
// quantum trajectory from x0 over [0, t_end] and reports the maximum
// deviation from the classical path with the same launch.
std::vector<ScaleDeviation> classical_limit_study(
    const Scenario& scenario, const Microstate& ms,
    const std::vector<double>& scales, double x0, double t_end);

} // namespace qtraj

#endif
