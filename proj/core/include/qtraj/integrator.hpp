#ifndef QTRAJ_INTEGRATOR_HPP
#define QTRAJ_INTEGRATOR_HPP

// Adaptive trajectory integration with event detection: node crossings,
// turning-point branch flips, and the forbidden-region divergence cutoff.

#include "qtraj/dynamics.hpp"

#include <vector>

namespace qtraj {

struct IntegrationOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    // Turning-point regularization band: the branch flips when
    // |E - V(x)| <= epsilon_turn * |E|.
    double epsilon_turn = 1e-9;
    // Forbidden-region velocity cutoff; 0 selects the default
    // 1e4 * sqrt(2 (|E - V(x0)| + |E|) / m).
    double v_max = 0.0;
    // At a turning point, continue into the forbidden region instead of
    // reflecting back into the allowed one.
    bool enter_forbidden = false;
    // Uniform output sampling period; 0 records one sample per accepted
    // integrator step.
    double sample_dt = 0.0;
    std::size_t max_steps = 2000000;
};

enum class TrajectoryStatus { completed, diverged, stalled_at_turning_point };

enum class EventKind { node, branch_flip, divergence_cutoff, region_change };

struct TrajectoryEvent {
    double t;
    double x;
    EventKind kind;
};

struct TrajectorySample {
    double t;
    double x;
    double v;
    int branch;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    std::vector<TrajectoryEvent> events;
    TrajectoryStatus status = TrajectoryStatus::completed;
};

// Integrates dx/dt = velocity_field(x) from (t0, x0) to t_end with dense
// output.  The branch sign of `ms` gives the initial direction; it flips
// at turning-point events.  A start inside the turning band is nudged to
// the allowed band edge; a start in the forbidden region beyond the
// velocity cutoff returns immediately with status `diverged`.
Trajectory integrate_trajectory(const Scenario& scenario,
                                const BasisPair& pair, const Microstate& ms,
                                double x0, double t0, double t_end,
                                const IntegrationOptions& opts = {});

} // namespace qtraj

#endif
