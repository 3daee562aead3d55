#ifndef QTRAJ_CHECKS_HPP
#define QTRAJ_CHECKS_HPP

// Self-contained invariant suite: Wronskians, equation residuals, node
// invariance, turning-point behavior, Ermakov constancy, basis-change
// equivalence, and barrier limits.

#include <string>
#include <vector>

namespace qtraj {

struct CheckOptions {
    // Turning-band width used for the trajectory-based checks; the
    // default matches the integrator's.  Absurd values make the
    // turning-point checks fail, by design.
    double epsilon_turn = 1e-9;
};

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

std::vector<CheckResult> run_invariant_checks(const CheckOptions& opts = {});

} // namespace qtraj

#endif
