#include "figures.hpp"

#include "cli_config.hpp"
#include "svg.hpp"

#include "qtraj/analysis.hpp"
#include "qtraj/constants.hpp"

#include <cmath>
#include <filesystem>
#include <fmt/format.h>

namespace qtraj::cli {

namespace {

const double kG = 1e-9 * constants::newton_in_ev_per_angstrom;

struct Curve {
    Microstate ms;
    std::string label;
    std::string color;
};

const char* kPalette[] = {"#1f5fbf", "#c03020", "#208040", "#8040a0"};

svg::Series sample_classical(const Scenario& sc, double x0, int sign,
                             double t0, double t_end) {
    // A launch at the exact classical amplitude can round to E < V(x0);
    // pull it inward by a relative 1e-9 per attempt until it is valid.
    ClassicalPath path;
    for (int attempt = 0;; ++attempt) {
        try {
            path = classical_path(sc, x0, sign);
            break;
        } catch (const std::exception&) {
            if (attempt >= 8) throw;
            x0 *= 1.0 - 1e-9;
        }
    }
    svg::Series series;
    series.label = "classical trajectory";
    series.color = "#606060";
    series.dashed = true;
    for (int i = 0; i <= 400; ++i) {
        const double t = t0 + (t_end - t0) * i / 400.0;
        series.points.push_back({t, path.x(t - t0)});
    }
    return series;
}

// Quantum curves sharing a scenario and launch point, with node markers
// taken from the first curve (the family shares them).
svg::Chart family_chart(const Scenario& sc, const std::vector<Curve>& curves,
                        double x0, double t0, double t_end,
                        const IntegrationOptions& base_opts,
                        bool classical_overlay, int classical_sign) {
    svg::Chart chart;
    chart.x_label = "t (fs)";
    chart.y_label = "x (angstrom)";

    const BasisPair pair = build_basis(sc);
    IntegrationOptions opts = base_opts;
    if (opts.sample_dt == 0.0) opts.sample_dt = (t_end - t0) / 600.0;

    svg::MarkerSet nodes;
    nodes.label = "nodes";
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const Trajectory tr = integrate_trajectory(
            sc, pair, normalize_microstate(curves[i].ms, pair.wronskian_x), x0,
            t0, t_end, opts);
        svg::Series series;
        series.label = curves[i].label;
        series.color = curves[i].color;
        for (const auto& s : tr.samples) series.points.push_back({s.t, s.x});
        chart.series.push_back(std::move(series));
        if (i == 0)
            for (const auto& e : tr.events)
                if (e.kind == EventKind::node ||
                    e.kind == EventKind::branch_flip)
                    nodes.points.push_back({e.t, e.x});
    }
    if (classical_overlay)
        chart.series.push_back(
            sample_classical(sc, x0, classical_sign, t0, t_end));
    if (!nodes.points.empty()) chart.markers.push_back(std::move(nodes));
    return chart;
}

svg::Chart figure1() {
    const Scenario sc = make_constant(10.0, 0.0);
    auto chart = family_chart(
        sc,
        {{{3.0, 2.0, 0.0, +1}, "a=3, b=2", kPalette[2]},
         {{10.0, 0.0, 0.0, +1}, "a=10, b=0", kPalette[1]},
         {{0.5, 1.5, 0.0, +1}, "a=0.5, b=1.5", kPalette[3]},
         {{1.0, 0.0, 0.0, +1}, "classical trajectory (a=1, b=0)",
          kPalette[0]}},
        0.0, 0.0, 0.45, {}, false, +1);
    chart.title = "Free electron, E = 10 eV, x(0) = 0";
    return chart;
}

svg::Chart figure2() {
    const Scenario sc = make_linear(10.0, kG);
    const double sqrt3 = std::sqrt(3.0);
    auto chart = family_chart(sc,
                              {{{10.0, sqrt3, 0.0, +1}, "a=10, b=sqrt(3)",
                                kPalette[0]},
                               {{7.0, -1.0, 0.0, +1}, "a=7, b=-1",
                                kPalette[1]},
                               {{5.0, sqrt3, 0.0, +1}, "a=5, b=sqrt(3)",
                                kPalette[2]}},
                              3.25405, 0.0, 3.0, {}, true, +1);
    chart.title = "Linear potential, E = 10 eV, allowed region";
    return chart;
}

svg::Chart figure3() {
    const Scenario sc = make_linear(10.0, kG);
    const BasisPair pair = build_basis(sc);
    // forbidden-region continuation just beyond the turning point;
    // branch -1 moves deeper into the barrier (E - V < 0)
    const Microstate ms = normalize_microstate(
        {10.0, 1.0 / std::sqrt(3.0), 0.0, -1}, pair.wronskian_x);
    const double t0 = 1.447546;
    const Trajectory tr =
        integrate_trajectory(sc, pair, ms, 16.02190, t0, t0 + 0.5, {});

    svg::Chart chart;
    chart.title = "Linear potential, E = 10 eV, forbidden region";
    chart.x_label = "t (fs)";
    chart.y_label = "x (angstrom)";
    svg::Series series;
    series.label = "a=10, b=1/sqrt(3)";
    series.color = kPalette[0];
    for (const auto& s : tr.samples) series.points.push_back({s.t, s.x});
    chart.series.push_back(std::move(series));
    return chart;
}

svg::Chart figure4() {
    const Scenario sc = make_harmonic_ground(10.0);
    const double x_m0 = sc.hbar() / std::sqrt(2.0 * sc.mass * sc.energy);
    auto chart = family_chart(sc,
                              {{{8e9, 1.0, 0.0, +1}, "a=8e9, b=1",
                                kPalette[0]},
                               {{6e10, 2.0, 0.0, +1}, "a=6e10, b=2",
                                kPalette[1]},
                               {{9e9, 0.2, 0.0, +1}, "a=9e9, b=0.2",
                                kPalette[2]}},
                              -x_m0, 0.0, 0.414, {}, true, +1);
    chart.title = "Harmonic oscillator ground state, E = 10 eV";
    return chart;
}

svg::Chart figure5() {
    const Scenario sc = make_harmonic_excited1(30.0);
    const double x_m1 = 3.0 * sc.hbar() / std::sqrt(2.0 * sc.mass * sc.energy);
    auto chart = family_chart(sc,
                              {{{4e8, 0.5, 0.0, +1}, "a=4e8, b=0.5",
                                kPalette[0]},
                               {{5e9, 0.4, 0.0, +1}, "a=5e9, b=0.4",
                                kPalette[1]},
                               {{5e8, 0.0, 0.0, +1}, "a=5e8, b=0",
                                kPalette[2]}},
                              -x_m1, 0.0, 0.414, {}, true, +1);
    chart.title = "Harmonic oscillator first excited state, E = 30 eV";
    return chart;
}

svg::Chart figure6() {
    const Scenario sc = make_harmonic_ground(10.0);
    const BasisPair pair = build_basis(sc);
    IntegrationOptions opts;
    opts.v_max = 1e9; // the launch velocity is already ~1e7 angstrom/fs

    svg::Chart chart;
    chart.title = "Harmonic oscillator ground state, forbidden region";
    chart.x_label = "t (fs)";
    chart.y_label = "x (angstrom)";

    const struct {
        double b;
        int branch;
        double x0;
        const char* label;
        const char* color;
    } runs[] = {{1.0, -1, +0.61726, "a=8e10, b=1", kPalette[0]},
                {-1.0, +1, -0.61726, "a=8e10, b=-1", kPalette[1]}};
    for (const auto& run : runs) {
        const Microstate ms = normalize_microstate(
            {8e10, run.b, 0.0, run.branch}, pair.wronskian_x);
        const Trajectory tr =
            integrate_trajectory(sc, pair, ms, run.x0, 0.0, 0.1, opts);
        svg::Series series;
        series.label = run.label;
        series.color = run.color;
        for (const auto& s : tr.samples) series.points.push_back({s.t, s.x});
        chart.series.push_back(std::move(series));
    }
    return chart;
}

} // namespace

std::string render_figure(int id, const std::string& out_dir) {
    svg::Chart chart;
    switch (id) {
    case 1: chart = figure1(); break;
    case 2: chart = figure2(); break;
    case 3: chart = figure3(); break;
    case 4: chart = figure4(); break;
    case 5: chart = figure5(); break;
    case 6: chart = figure6(); break;
    default:
        throw ValidationError(
            fmt::format("unknown figure id {} (expected 1..6)", id));
    }
    std::filesystem::create_directories(out_dir);
    const std::string path =
        (std::filesystem::path(out_dir) / fmt::format("figure{}.svg", id))
            .string();
    svg::write_chart(path, chart);
    return path;
}

} // namespace qtraj::cli
