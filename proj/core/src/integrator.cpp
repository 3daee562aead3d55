#include "qtraj/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qtraj {

namespace {

// Dormand-Prince 5(4) tableau
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                 a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output weights
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

struct DenseOutput {
    double r1, r2, r3, r4, r5;

    double operator()(double theta) const {
        return r1 +
               theta * (r2 + (1.0 - theta) *
                                 (r3 + theta * (r4 + (1.0 - theta) * r5)));
    }
};

} // namespace

Trajectory integrate_trajectory(const Scenario& scenario,
                                const BasisPair& pair, const Microstate& ms0,
                                double x0, double t0, double t_end,
                                const IntegrationOptions& opts) {
    if (!(t_end > t0))
        throw std::invalid_argument("integrate_trajectory: t_end must exceed t0");
    if (!(opts.rtol > 0.0) || !(opts.atol > 0.0) || !(opts.epsilon_turn > 0.0))
        throw std::invalid_argument("integrate_trajectory: bad tolerances");

    Microstate ms = normalize_microstate(ms0, pair.wronskian_x);
    const double abs_e = std::fabs(scenario.energy);
    const double band = opts.epsilon_turn * abs_e;

    auto allowed_excess = [&](double x) {
        return scenario.energy - scenario.potential_at(x);
    };
    auto velocity = [&](double x) {
        return velocity_field(x, scenario, pair, ms);
    };

    Trajectory traj;

    // Start inside the turning band: nudge to the allowed band edge.
    double x = x0;
    if (std::fabs(allowed_excess(x)) <= band) {
        const double slope = scenario.potential_slope(x);
        if (slope == 0.0)
            throw std::invalid_argument(
                "integrate_trajectory: cannot leave the turning band at a "
                "flat potential point");
        for (int it = 0; it < 50; ++it) {
            const double r = allowed_excess(x) - band;
            if (std::fabs(r) <= 1e-6 * band && r >= 0.0) break;
            x += r / scenario.potential_slope(x);
        }
    }

    const double v_max =
        opts.v_max > 0.0
            ? opts.v_max
            : 1e4 * std::sqrt(2.0 *
                              std::max(std::fabs(allowed_excess(x)),
                                       1e-3 * abs_e) /
                              scenario.mass);

    double t = t0;
    traj.samples.push_back({t, x, velocity(x), ms.branch});

    // Forbidden-region start already beyond the cutoff.
    if (allowed_excess(x) < 0.0 && std::fabs(velocity(x)) >= v_max) {
        traj.events.push_back({t, x, EventKind::divergence_cutoff});
        traj.status = TrajectoryStatus::diverged;
        return traj;
    }

    double next_sample = opts.sample_dt > 0.0 ? t0 + opts.sample_dt : 0.0;
    auto emit_until = [&](double t_lo, double h, const DenseOutput& u,
                          double t_hi) {
        if (opts.sample_dt <= 0.0) return;
        while (next_sample <= t_hi && next_sample <= t_end) {
            const double xs = u((next_sample - t_lo) / h);
            traj.samples.push_back(
                {next_sample, xs, velocity(xs), ms.branch});
            next_sample += opts.sample_dt;
        }
    };

    double k1 = velocity(x);
    double h = std::clamp(1e-4 * (1.0 + std::fabs(x)) /
                              (std::fabs(k1) + 1e-12),
                          1e-12, (t_end - t0) / 10.0);
    bool fsal_valid = true;

    const double t_eps = 1e-12;
    std::size_t steps = 0;

    while (t < t_end) {
        if (++steps > opts.max_steps)
            throw std::runtime_error(
                "integrate_trajectory: step budget exceeded");
        h = std::min(h, t_end - t);
        if (h < 1e-14 * std::max(1.0, std::fabs(t))) {
            traj.status = TrajectoryStatus::stalled_at_turning_point;
            return traj;
        }

        if (!fsal_valid) k1 = velocity(x);
        const double k2 = velocity(x + h * a21 * k1);
        const double k3 = velocity(x + h * (a31 * k1 + a32 * k2));
        const double k4 = velocity(x + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const double k5 =
            velocity(x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const double k6 = velocity(
            x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const double x_new =
            x + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        const double k7 = velocity(x_new);

        const double err_raw =
            h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double sk =
            opts.atol +
            opts.rtol * std::max(std::fabs(x), std::fabs(x_new));
        const double err = std::fabs(err_raw) / sk;
        // a non-finite error means a trial stage overflowed (e.g. shot far
        // past a turning point); treat it as a maximal rejection
        if (!(err <= 1.0) || !std::isfinite(x_new)) {
            h *= std::isfinite(err)
                     ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0)
                     : 0.2;
            fsal_valid = false; // x unchanged, but recompute defensively
            continue;
        }

        DenseOutput u;
        u.r1 = x;
        u.r2 = x_new - x;
        u.r3 = h * k1 - u.r2;
        u.r4 = u.r2 - h * k7 - u.r3;
        u.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);

        // --- event detection over [t, t + h] ----------------------------
        constexpr int subdiv = 8;

        auto bisect = [&](auto&& g, double lo, double hi) {
            // g(lo) and g(hi) have opposite signs; refine the crossing in
            // theta until the time bracket shrinks below resolution
            double glo = g(lo);
            while ((hi - lo) * h > t_eps * std::max(1.0, std::fabs(t))) {
                const double mid = 0.5 * (lo + hi);
                const double gm = g(mid);
                if ((glo < 0.0) == (gm < 0.0)) {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
            }
            return 0.5 * (lo + hi);
        };

        // node crossings: sign changes of phi2 along the step
        std::vector<double> node_thetas;
        {
            auto phi2_at = [&](double th) { return pair.eval(u(th)).phi2; };
            double prev_th = 0.0, prev_val = phi2_at(0.0);
            for (int i = 1; i <= subdiv; ++i) {
                const double th = static_cast<double>(i) / subdiv;
                const double val = phi2_at(th);
                if (val == 0.0) {
                    node_thetas.push_back(th); // landed exactly on a node
                } else if (prev_val != 0.0 &&
                           (prev_val < 0.0) != (val < 0.0)) {
                    node_thetas.push_back(bisect(phi2_at, prev_th, th));
                }
                prev_th = th;
                prev_val = val;
            }
        }

        // terminal events: turning-band entry (from the allowed side) and
        // the forbidden-region velocity cutoff
        double terminal_theta = 2.0;
        EventKind terminal_kind = EventKind::node;
        const double ev_start = allowed_excess(x);
        if (ev_start > band) {
            auto g = [&](double th) { return allowed_excess(u(th)) - band; };
            double prev_th = 0.0, prev_val = g(0.0);
            for (int i = 1; i <= subdiv; ++i) {
                const double th = static_cast<double>(i) / subdiv;
                const double val = g(th);
                if (prev_val > 0.0 && val <= 0.0) {
                    terminal_theta = bisect(g, prev_th, th);
                    terminal_kind = EventKind::branch_flip;
                    break;
                }
                prev_th = th;
                prev_val = val;
            }
        } else if (ev_start < 0.0) {
            auto g = [&](double th) {
                return std::fabs(velocity(u(th))) - v_max;
            };
            double prev_th = 0.0, prev_val = g(0.0);
            for (int i = 1; i <= subdiv; ++i) {
                const double th = static_cast<double>(i) / subdiv;
                const double val = g(th);
                if (prev_val < 0.0 && val >= 0.0) {
                    terminal_theta = bisect(g, prev_th, th);
                    terminal_kind = EventKind::divergence_cutoff;
                    break;
                }
                prev_th = th;
                prev_val = val;
            }
        }

        for (double th : node_thetas) {
            if (th > terminal_theta) break;
            traj.events.push_back({t + th * h, u(th), EventKind::node});
        }

        if (terminal_theta <= 1.0) {
            const double t_ev = t + terminal_theta * h;
            const double x_ev = u(terminal_theta);
            emit_until(t, h, u, t_ev);
            if (terminal_kind == EventKind::divergence_cutoff) {
                traj.events.push_back({t_ev, x_ev,
                                       EventKind::divergence_cutoff});
                traj.samples.push_back(
                    {t_ev, x_ev, velocity(x_ev), ms.branch});
                traj.status = TrajectoryStatus::diverged;
                return traj;
            }
            // turning point: flip the branch; reflect back into the
            // allowed region or mirror across the turning point into the
            // forbidden one
            traj.events.push_back({t_ev, x_ev, EventKind::branch_flip});
            ms.branch = -ms.branch;
            t = t_ev;
            x = x_ev;
            if (opts.enter_forbidden) {
                double xt = x_ev; // locate E = V(xt) by Newton
                for (int it = 0; it < 60; ++it) {
                    const double slope = scenario.potential_slope(xt);
                    if (slope == 0.0) break;
                    const double step = allowed_excess(xt) / slope;
                    xt += step;
                    if (std::fabs(step) < 1e-15 * (1.0 + std::fabs(xt)))
                        break;
                }
                x = 2.0 * xt - x_ev;
                traj.events.push_back({t_ev, x, EventKind::region_change});
            }
            traj.samples.push_back({t, x, velocity(x), ms.branch});
            fsal_valid = false;
            h = std::max(h * 0.1, 1e-13);
            continue;
        }

        // plain accepted step
        emit_until(t, h, u, t + h);
        t += h;
        x = x_new;
        k1 = k7;
        fsal_valid = true;
        if (opts.sample_dt <= 0.0)
            traj.samples.push_back({t, x, k7, ms.branch});
        h *= std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 10.0);
    }

    if (traj.samples.back().t < t_end - t_eps || opts.sample_dt > 0.0) {
        if (traj.samples.back().t != t)
            traj.samples.push_back({t, x, velocity(x), ms.branch});
    }
    traj.status = TrajectoryStatus::completed;
    return traj;
}

} // namespace qtraj
