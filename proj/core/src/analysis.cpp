#include "qtraj/analysis.hpp"
#include "qtraj/constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qtraj {

namespace {

template <class F>
double bisect_to(F&& g, double lo, double hi, double glo) {
    while (hi - lo > 1e-12 * std::max(1.0, std::fabs(hi))) {
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
}

bool is_phi2_zero(const BasisPair& pair, double x) {
    const double delta = 1e-6 * (1.0 + std::fabs(x));
    if (pair.eval(x).phi2 == 0.0) return true;
    const double left = pair.eval(x - delta).phi2;
    const double right = pair.eval(x + delta).phi2;
    return (left < 0.0) != (right < 0.0);
}

} // namespace

std::vector<Node> find_nodes(const Scenario& scenario, const BasisPair& pair,
                             double x_lo, double x_hi, double scan_step) {
    if (!(x_hi > x_lo))
        throw std::invalid_argument("find_nodes: empty range");
    if (!(scan_step > 0.0))
        throw std::invalid_argument("find_nodes: scan_step must be > 0");

    std::vector<Node> nodes;
    const long n = std::max<long>(
        2, static_cast<long>(std::ceil((x_hi - x_lo) / scan_step)));

    auto phi2 = [&](double x) { return pair.eval(x).phi2; };
    auto excess = [&](double x) {
        return scenario.energy - scenario.potential_at(x);
    };

    double prev_x = x_lo, prev_p = phi2(x_lo), prev_e = excess(x_lo);
    if (prev_p == 0.0) nodes.push_back({0.0, x_lo, NodeKind::phi2_zero});
    for (long i = 1; i <= n; ++i) {
        const double x = x_lo + (x_hi - x_lo) * static_cast<double>(i) / n;
        const double p = phi2(x);
        const double e = excess(x);
        if (p == 0.0) {
            nodes.push_back({0.0, x, NodeKind::phi2_zero});
        } else if (prev_p != 0.0 && (prev_p < 0.0) != (p < 0.0)) {
            nodes.push_back(
                {0.0, bisect_to(phi2, prev_x, x, prev_p),
                 NodeKind::phi2_zero});
        }
        if (e == 0.0) {
            nodes.push_back({0.0, x, NodeKind::turning_point});
        } else if (prev_e != 0.0 && (prev_e < 0.0) != (e < 0.0)) {
            nodes.push_back(
                {0.0, bisect_to(excess, prev_x, x, prev_e),
                 NodeKind::turning_point});
        }
        prev_x = x;
        prev_p = p; // an exact zero is already recorded; don't re-bracket it
        prev_e = e;
    }
    std::sort(nodes.begin(), nodes.end(),
              [](const Node& a, const Node& b) { return a.x < b.x; });
    return nodes;
}

std::vector<double> node_times(const Trajectory& trajectory) {
    std::vector<double> times;
    for (const auto& e : trajectory.events)
        if (e.kind == EventKind::node) times.push_back(e.t);
    return times;
}

double mean_conjugate_momentum(const BasisPair& pair, const Microstate& ms,
                               const Scenario& scenario, double x1,
                               double x2) {
    if (!(x2 > x1))
        throw std::invalid_argument("mean_conjugate_momentum: x2 must exceed x1");
    if (!is_phi2_zero(pair, x1) || !is_phi2_zero(pair, x2))
        throw std::invalid_argument(
            "mean_conjugate_momentum: interval must be bounded by zeros of "
            "phi2");
    const double ds = reduced_action(x2, pair, ms, scenario) -
                      reduced_action(x1, pair, ms, scenario);
    return ds / (x2 - x1);
}

WavelengthReport de_broglie_report(const BasisPair& pair, const Microstate& ms,
                                   const Scenario& scenario, double x1,
                                   double x2) {
    WavelengthReport report;
    report.dx = x2 - x1;
    report.p = mean_conjugate_momentum(pair, ms, scenario, x1, x2);
    report.lambda = 2.0 * constants::pi * scenario.hbar() / report.p;
    return report;
}

double ermakov_invariant(double x, const BasisPair& pair, const Microstate& ms,
                         const Scenario& scenario,
                         const PhysicalState& state) {
    if (state.alpha_coef == 0.0 && state.beta_coef == 0.0)
        throw std::invalid_argument("ermakov_invariant: psi_E is zero");
    const double p = conjugate_momentum(x, pair, ms, scenario);
    if (!(p > 0.0))
        throw std::domain_error(
            "ermakov_invariant: requires dS0/dx > 0 (use the + branch)");
    const double hbar = scenario.hbar();
    const BasisValues v = pair.eval(x);
    const double u = ms.a * v.phi1 + ms.b * v.phi2;
    const double up = ms.a * v.dphi1 + ms.b * v.dphi2;
    const double d = v.phi2 * v.phi2 + u * u;
    const double dp = 2.0 * (v.phi2 * v.dphi2 + u * up);
    const double p_prime = -p * dp / d; // P = hbar a W / D
    const double psi = state.alpha_coef * v.phi1 + state.beta_coef * v.phi2;
    const double psi_prime =
        state.alpha_coef * v.dphi1 + state.beta_coef * v.dphi2;
    const double inner = 0.5 * std::pow(p, -1.5) * p_prime * psi +
                         psi_prime / std::sqrt(p);
    return (p * psi * psi + hbar * hbar * inner * inner) /
           std::sqrt(2.0 * scenario.mass);
}

double ermakov_invariant_closed_form(const BasisPair& pair,
                                     const Microstate& ms,
                                     const Scenario& scenario,
                                     const PhysicalState& state) {
    const double al = state.alpha_coef, be = state.beta_coef;
    const double cross = ms.a * be - ms.b * al;
    return scenario.hbar() * pair.wronskian_x * (al * al + cross * cross) /
           (ms.a * std::sqrt(2.0 * scenario.mass));
}

std::vector<ScaleDeviation> classical_limit_study(
    const Scenario& scenario, const Microstate& ms,
    const std::vector<double>& scales, double x0, double t_end) {
    if (!(t_end > 0.0))
        throw std::invalid_argument("classical_limit_study: t_end must be > 0");

    std::vector<ScaleDeviation> table;
    for (double s : scales) {
        if (!(s > 0.0) || s > 1.0)
            throw std::invalid_argument(
                "classical_limit_study: scales must lie in (0, 1]");
        const Scenario scaled = std::visit(
            [&](const auto& pot) -> Scenario {
                using T = std::decay_t<decltype(pot)>;
                if constexpr (std::is_same_v<T, ConstantPotential>)
                    return make_constant(scenario.energy, pot.v0,
                                         scenario.mass, s);
                else if constexpr (std::is_same_v<T, LinearPotential>)
                    return make_linear(scenario.energy, pot.g, scenario.mass,
                                       s);
                else if constexpr (std::is_same_v<T, HarmonicGround>)
                    return make_harmonic_ground(scenario.energy, scenario.mass,
                                                s);
                else
                    return make_harmonic_excited1(scenario.energy,
                                                  scenario.mass, s);
            },
            scenario.potential);

        const BasisPair pair = build_basis(scaled);
        IntegrationOptions opts;
        opts.sample_dt = t_end / 800.0;
        const Trajectory tr =
            integrate_trajectory(scaled, pair, ms, x0, 0.0, t_end, opts);
        const ClassicalPath classical = classical_path(scaled, x0, ms.branch);
        double dev = 0.0;
        for (const auto& sample : tr.samples)
            dev = std::max(dev,
                           std::fabs(sample.x - classical.x(sample.t)));
        table.push_back({s, dev});
    }
    return table;
}

} // namespace qtraj
