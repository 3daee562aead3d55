// qtraj: quantum trajectory toolkit.
//
// Subcommands: simulate (trajectory CSV/JSON/SVG from a JSON config),
// nodes (node table), barrier (dwell-time tables), figure (built-in
// presets 1..6), check (self-contained invariant suite).
//
// Exit codes: 0 success, 1 check failure, 2 validation error,
// 3 integration terminated by event (diverged / stalled; partial
// output is still written).

#include "cli_config.hpp"
#include "figures.hpp"
#include "svg.hpp"

#include "qtraj/analysis.hpp"
#include "qtraj/checks.hpp"
#include "qtraj/constants.hpp"
#include "qtraj/tunneling.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <json.hpp>

namespace {

using namespace qtraj;
using cli::format_double;
using cli::RunConfig;
using cli::ValidationError;
using ordered_json = nlohmann::ordered_json;

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw std::runtime_error("cannot open " + path + " for writing");
    file << content;
    if (!file) throw std::runtime_error("failed writing " + path);
}

const char* status_name(TrajectoryStatus status) {
    switch (status) {
    case TrajectoryStatus::completed: return "completed";
    case TrajectoryStatus::diverged: return "diverged";
    default: return "stalled_at_turning_point";
    }
}

const char* event_name(EventKind kind) {
    switch (kind) {
    case EventKind::node: return "node";
    case EventKind::branch_flip: return "branch_flip";
    case EventKind::divergence_cutoff: return "divergence_cutoff";
    default: return "region_change";
    }
}

std::string trajectory_csv(const Trajectory& tr) {
    std::string out = "t_fs,x_angstrom,v_angstrom_per_fs,branch\n";
    for (const auto& s : tr.samples)
        out += fmt::format("{},{},{},{}\n", format_double(s.t),
                           format_double(s.x), format_double(s.v), s.branch);
    return out;
}

ordered_json scenario_json(const RunConfig& cfg, const Scenario& sc) {
    ordered_json j;
    j["potential"] = cfg.potential;
    j["energy_ev"] = sc.energy;
    if (cfg.v0_ev) j["v0_ev"] = *cfg.v0_ev;
    if (cfg.g_ev_per_angstrom)
        j["g_ev_per_angstrom"] = *cfg.g_ev_per_angstrom;
    if (cfg.omega) j["omega"] = *cfg.omega;
    j["mass_ev_fs2_per_angstrom2"] = sc.mass;
    j["hbar_scale"] = sc.hbar_scale;
    return j;
}

ordered_json constants_json() {
    ordered_json j;
    j["hbar_ev_fs"] = constants::hbar;
    j["planck_ev_fs"] = constants::planck;
    j["electron_mass_ev_fs2_per_angstrom2"] = constants::electron_mass;
    j["second_per_fs"] = constants::second_per_fs;
    j["meter_per_angstrom"] = constants::meter_per_angstrom;
    return j;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 const std::vector<std::string>& formats) {
    const RunConfig cfg = cli::load_config(config_path);
    const Scenario sc = cli::scenario_from(cfg);
    const BasisPair pair = build_basis(sc);

    if (!cfg.x0_angstrom) throw ValidationError("missing field: x0_angstrom");
    if (!cfg.t_end_fs) throw ValidationError("missing field: t_end_fs");
    if (!(*cfg.t_end_fs > cfg.t0_fs))
        throw ValidationError("t_end_fs must exceed t0_fs");
    const double x0 = *cfg.x0_angstrom;
    if (sc.energy < sc.potential_at(x0) && !cfg.sign)
        throw ValidationError(
            "x0_angstrom lies in the classically forbidden region; an "
            "explicit `sign` field is required there");
    const Microstate ms = cli::microstate_from(cfg, pair.wronskian_x);

    IntegrationOptions opts = cfg.integration;
    opts.enter_forbidden = cfg.enter_forbidden;
    if (opts.sample_dt == 0.0)
        opts.sample_dt = (*cfg.t_end_fs - cfg.t0_fs) / 800.0;

    const Trajectory tr = integrate_trajectory(sc, pair, ms, x0, cfg.t0_fs,
                                               *cfg.t_end_fs, opts);

    std::set<std::string> outputs(formats.begin(), formats.end());
    if (outputs.empty()) outputs = cfg.outputs;

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);

    if (outputs.count("csv"))
        write_text_file((dir / "trajectory.csv").string(),
                        trajectory_csv(tr));

    if (outputs.count("json")) {
        ordered_json doc;
        doc["status"] = status_name(tr.status);
        doc["scenario"] = scenario_json(cfg, sc);
        ordered_json msj;
        msj["a"] = ms.a;
        msj["b"] = ms.b;
        msj["l"] = ms.l;
        msj["branch"] = ms.branch;
        doc["microstate"] = msj;
        ordered_json tol;
        tol["rtol"] = opts.rtol;
        tol["atol"] = opts.atol;
        tol["epsilon_turn"] = opts.epsilon_turn;
        tol["v_max"] =
            opts.v_max > 0.0
                ? opts.v_max
                : 1e4 * std::sqrt(2.0 *
                                  std::max(std::fabs(sc.energy -
                                                     sc.potential_at(x0)),
                                           1e-3 * std::fabs(sc.energy)) /
                                  sc.mass);
        tol["sample_dt_fs"] = opts.sample_dt;
        doc["tolerances"] = tol;
        doc["constants"] = constants_json();
        ordered_json events = ordered_json::array();
        for (const auto& e : tr.events) {
            ordered_json ev;
            ev["t_fs"] = e.t;
            ev["x_angstrom"] = e.x;
            ev["kind"] = event_name(e.kind);
            events.push_back(ev);
        }
        doc["events"] = events;
        doc["sample_count"] = tr.samples.size();
        write_text_file((dir / "trajectory.json").string(),
                        doc.dump(2) + "\n");
    }

    if (outputs.count("svg")) {
        svg::Chart chart;
        chart.title = fmt::format("{} potential, E = {:g} eV", cfg.potential,
                                  sc.energy);
        chart.x_label = "t (fs)";
        chart.y_label = "x (angstrom)";
        svg::Series series;
        series.label = fmt::format("a={:g}, b={:g}", ms.a, ms.b);
        for (const auto& s : tr.samples) series.points.push_back({s.t, s.x});
        chart.series.push_back(std::move(series));
        svg::MarkerSet nodes;
        nodes.label = "nodes";
        for (const auto& e : tr.events)
            if (e.kind == EventKind::node || e.kind == EventKind::branch_flip)
                nodes.points.push_back({e.t, e.x});
        if (!nodes.points.empty()) chart.markers.push_back(std::move(nodes));
        svg::write_chart((dir / "trajectory.svg").string(), chart);
    }

    return tr.status == TrajectoryStatus::completed ? 0 : 3;
}

int cmd_nodes(const std::string& config_path, const std::string& out_dir) {
    const RunConfig cfg = cli::load_config(config_path);
    const Scenario sc = cli::scenario_from(cfg);
    const BasisPair pair = build_basis(sc);
    if (!cfg.x_min_angstrom)
        throw ValidationError("missing field: x_min_angstrom");
    if (!cfg.x_max_angstrom)
        throw ValidationError("missing field: x_max_angstrom");
    if (!(*cfg.x_max_angstrom > *cfg.x_min_angstrom))
        throw ValidationError("x_max_angstrom must exceed x_min_angstrom");

    const auto nodes =
        find_nodes(sc, pair, *cfg.x_min_angstrom, *cfg.x_max_angstrom);
    std::string out = "n,t_fs,x_angstrom,kind\n";
    for (std::size_t i = 0; i < nodes.size(); ++i)
        out += fmt::format("{},{},{},{}\n", i, format_double(nodes[i].t),
                           format_double(nodes[i].x),
                           nodes[i].kind == NodeKind::phi2_zero
                               ? "phi2_zero"
                               : "turning_point");
    fmt::print("{}", out);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_text_file(
            (std::filesystem::path(out_dir) / "nodes.csv").string(), out);
    }
    return 0;
}

int cmd_barrier(double v0_ev, double energy_ev, double q_angstrom, double a,
                double b, const std::string& method,
                const std::string& out_dir) {
    if (!(energy_ev > 0.0) || energy_ev >= v0_ev)
        throw ValidationError("requires 0 < energy_ev < v0_ev");
    if (!(q_angstrom > 0.0))
        throw ValidationError("q_angstrom must be > 0");
    if (method != "bd" && method != "floyd")
        throw ValidationError(
            fmt::format("unknown method `{}` (bd, floyd)", method));
    const BarrierSpec spec = make_barrier(v0_ev, q_angstrom, energy_ev, a, b);

    auto time_at = [&](double x) {
        return method == "bd" ? dwell_time(spec, x)
                              : floyd_dwell_time(spec, x);
    };
    std::string out = "x_angstrom,t_fs\n";
    for (int i = 0; i <= 100; ++i) {
        const double x = q_angstrom * i / 100.0;
        out += fmt::format("{},{}\n", format_double(x),
                           format_double(time_at(x)));
    }
    const auto report = monotonicity_report(time_at, 0.0, q_angstrom);
    out += fmt::format("# method = {}\n", method);
    out += fmt::format("# rho_q = {}\n", format_double(spec.rho() * spec.q));
    out += fmt::format("# thin_limit_fs = {}\n",
                       format_double(thin_limit(spec)));
    out += fmt::format("# thick_limit_fs = {}\n",
                       format_double(thick_limit(spec)));
    out += fmt::format("# monotone = {}\n", report.monotone);
    out += fmt::format("# extremum_x_angstrom = {}\n",
                       report.extremum_x ? format_double(*report.extremum_x)
                                         : std::string("none"));
    fmt::print("{}", out);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_text_file(
            (std::filesystem::path(out_dir) / "barrier.csv").string(), out);
    }
    return 0;
}

int cmd_check(double epsilon_turn) {
    CheckOptions opts;
    opts.epsilon_turn = epsilon_turn;
    const auto results = run_invariant_checks(opts);
    bool all_passed = true;
    for (const auto& r : results) {
        all_passed = all_passed && r.passed;
        fmt::print("{}  {}: {}\n", r.passed ? "PASS" : "FAIL", r.name,
                   r.detail);
    }
    fmt::print("{} of {} checks passed\n",
               std::count_if(results.begin(), results.end(),
                             [](const CheckResult& r) { return r.passed; }),
               results.size());
    return all_passed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum trajectory toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::vector<std::string> formats;

    auto* sim = app.add_subcommand("simulate",
                                   "integrate a trajectory from a config");
    sim->add_option("--config", config_path, "JSON run configuration")
        ->required();
    sim->add_option("--out", out_dir, "output directory")->default_val(".");
    sim->add_option("--format", formats,
                    "output formats (csv, json, svg); overrides the config")
        ->check(CLI::IsMember({"csv", "json", "svg"}));

    auto* nodes = app.add_subcommand("nodes", "node table over an x range");
    nodes->add_option("--config", config_path, "JSON run configuration")
        ->required();
    nodes->add_option("--out", out_dir, "also write nodes.csv here");

    double v0_ev = 0.0, energy_ev = 0.0, q_angstrom = 0.0, a = 1.0, b = 0.0;
    std::string method = "bd";
    auto* barrier = app.add_subcommand("barrier",
                                       "rectangular-barrier dwell times");
    barrier->add_option("--v0-ev", v0_ev, "barrier height (eV)")->required();
    barrier->add_option("--energy-ev", energy_ev, "particle energy (eV)")
        ->required();
    barrier->add_option("--q-angstrom", q_angstrom, "barrier thickness")
        ->required();
    barrier->add_option("--a", a, "microstate a (default 1)");
    barrier->add_option("--b", b, "microstate b (default 0)");
    barrier->add_option("--method", method, "bd or floyd");
    barrier->add_option("--out", out_dir, "also write barrier.csv here");

    int figure_id = 0;
    auto* figure = app.add_subcommand("figure", "render a built-in preset");
    figure->add_option("--id", figure_id, "preset id (1..6)")->required();
    figure->add_option("--out", out_dir, "output directory")
        ->default_val(".");

    double epsilon_turn = 1e-9;
    auto* check = app.add_subcommand("check", "run the invariant suite");
    check->add_option("--epsilon-turn", epsilon_turn,
                      "turning-band width for the trajectory checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sim->parsed()) return cmd_simulate(config_path, out_dir, formats);
        if (nodes->parsed()) return cmd_nodes(config_path, out_dir);
        if (barrier->parsed())
            return cmd_barrier(v0_ev, energy_ev, q_angstrom, a, b, method,
                               out_dir);
        if (figure->parsed()) {
            fmt::print("{}\n", qtraj::cli::render_figure(figure_id, out_dir));
            return 0;
        }
        if (check->parsed()) return cmd_check(epsilon_turn);
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 2;
    }
    return 2;
}
