#include "cli_config.hpp"

#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <json.hpp>

namespace qtraj::cli {

namespace {

using nlohmann::json;

double as_number(const json& j, const std::string& key) {
    if (!j.is_number())
        throw ValidationError(fmt::format("field `{}` must be a number", key));
    return j.get<double>();
}

} // namespace

RunConfig load_config(const std::string& path) {
    std::ifstream file(path);
    if (!file)
        throw ValidationError(fmt::format("cannot read config file {}", path));
    json doc;
    try {
        doc = json::parse(file);
    } catch (const json::parse_error& e) {
        throw ValidationError(fmt::format("config is not valid JSON: {}",
                                          e.what()));
    }
    if (!doc.is_object())
        throw ValidationError("config must be a JSON object");

    RunConfig cfg;
    for (const auto& [key, value] : doc.items()) {
        if (key == "potential") {
            if (!value.is_string())
                throw ValidationError("field `potential` must be a string");
            cfg.potential = value.get<std::string>();
        } else if (key == "energy_ev") {
            cfg.energy_ev = as_number(value, key);
        } else if (key == "v0_ev") {
            cfg.v0_ev = as_number(value, key);
        } else if (key == "g_ev_per_angstrom") {
            cfg.g_ev_per_angstrom = as_number(value, key);
        } else if (key == "omega") {
            cfg.omega = as_number(value, key);
        } else if (key == "a") {
            cfg.a = as_number(value, key);
        } else if (key == "b") {
            cfg.b = as_number(value, key);
        } else if (key == "l") {
            cfg.l = as_number(value, key);
        } else if (key == "sign") {
            if (!value.is_string() ||
                (value != "+" && value != "-"))
                throw ValidationError("field `sign` must be \"+\" or \"-\"");
            cfg.sign = value == "+" ? +1 : -1;
        } else if (key == "x0_angstrom") {
            cfg.x0_angstrom = as_number(value, key);
        } else if (key == "t0_fs") {
            cfg.t0_fs = as_number(value, key);
        } else if (key == "t_end_fs") {
            cfg.t_end_fs = as_number(value, key);
        } else if (key == "hbar_scale") {
            cfg.hbar_scale = as_number(value, key);
        } else if (key == "epsilon_turn") {
            cfg.integration.epsilon_turn = as_number(value, key);
        } else if (key == "v_max") {
            cfg.integration.v_max = as_number(value, key);
        } else if (key == "rtol") {
            cfg.integration.rtol = as_number(value, key);
        } else if (key == "atol") {
            cfg.integration.atol = as_number(value, key);
        } else if (key == "sample_dt_fs") {
            cfg.integration.sample_dt = as_number(value, key);
        } else if (key == "enter_forbidden") {
            if (!value.is_boolean())
                throw ValidationError(
                    "field `enter_forbidden` must be a boolean");
            cfg.enter_forbidden = value.get<bool>();
        } else if (key == "x_min_angstrom") {
            cfg.x_min_angstrom = as_number(value, key);
        } else if (key == "x_max_angstrom") {
            cfg.x_max_angstrom = as_number(value, key);
        } else if (key == "outputs") {
            if (!value.is_array())
                throw ValidationError(
                    "field `outputs` must be an array of strings");
            for (const auto& entry : value) {
                if (!entry.is_string())
                    throw ValidationError(
                        "field `outputs` must be an array of strings");
                const auto name = entry.get<std::string>();
                if (name != "csv" && name != "json" && name != "svg")
                    throw ValidationError(fmt::format(
                        "unknown output format `{}` (csv, json, svg)", name));
                cfg.outputs.insert(name);
            }
        } else {
            throw ValidationError(fmt::format("unknown config field `{}`",
                                              key));
        }
    }

    if (cfg.potential.empty())
        throw ValidationError("missing field: potential");
    if (cfg.potential != "constant" && cfg.potential != "linear" &&
        cfg.potential != "harmonic_ground" &&
        cfg.potential != "harmonic_excited1")
        throw ValidationError(fmt::format(
            "unknown potential `{}` (constant, linear, harmonic_ground, "
            "harmonic_excited1)",
            cfg.potential));
    if (!(cfg.hbar_scale > 0.0))
        throw ValidationError("field `hbar_scale` must be > 0");
    if (cfg.outputs.empty()) cfg.outputs = {"csv", "json"};
    return cfg;
}

Scenario scenario_from(const RunConfig& cfg) {
    const int shape_params = (cfg.v0_ev ? 1 : 0) +
                             (cfg.g_ev_per_angstrom ? 1 : 0) +
                             (cfg.omega ? 1 : 0);
    if (shape_params != 1)
        throw ValidationError(
            "exactly one potential parameter must be present "
            "(v0_ev, g_ev_per_angstrom or omega)");

    if (cfg.potential == "constant") {
        if (!cfg.v0_ev)
            throw ValidationError("missing field: v0_ev (constant potential)");
        if (!cfg.energy_ev) throw ValidationError("missing field: energy_ev");
        if (*cfg.energy_ev == *cfg.v0_ev)
            throw ValidationError(
                "energy_ev must differ from v0_ev for a constant potential");
        return make_constant(*cfg.energy_ev, *cfg.v0_ev,
                             constants::electron_mass, cfg.hbar_scale);
    }
    if (cfg.potential == "linear") {
        if (!cfg.g_ev_per_angstrom)
            throw ValidationError(
                "missing field: g_ev_per_angstrom (linear potential)");
        if (!(*cfg.g_ev_per_angstrom > 0.0))
            throw ValidationError("field `g_ev_per_angstrom` must be > 0");
        if (!cfg.energy_ev) throw ValidationError("missing field: energy_ev");
        return make_linear(*cfg.energy_ev, *cfg.g_ev_per_angstrom,
                           constants::electron_mass, cfg.hbar_scale);
    }

    // harmonic shapes: omega fixes the energy (E = hbar w / 2 for the
    // ground state, 3 hbar w / 2 for the first excited one); an explicit
    // energy_ev must agree to 1e-6 relative.
    if (!cfg.omega)
        throw ValidationError("missing field: omega (harmonic potential)");
    if (!(*cfg.omega > 0.0))
        throw ValidationError("field `omega` must be > 0");
    const double hbar = constants::hbar * cfg.hbar_scale;
    const double factor = cfg.potential == "harmonic_ground" ? 0.5 : 1.5;
    const double energy = factor * hbar * *cfg.omega;
    if (cfg.energy_ev &&
        std::fabs(*cfg.energy_ev - energy) > 1e-6 * energy)
        throw ValidationError(fmt::format(
            "energy_ev = {} is inconsistent with omega = {} "
            "(implied energy {} eV)",
            *cfg.energy_ev, *cfg.omega, energy));
    return cfg.potential == "harmonic_ground"
               ? make_harmonic_ground(energy, constants::electron_mass,
                                      cfg.hbar_scale)
               : make_harmonic_excited1(energy, constants::electron_mass,
                                        cfg.hbar_scale);
}

Microstate microstate_from(const RunConfig& cfg, double wronskian_x) {
    if (!cfg.a) throw ValidationError("missing field: a");
    if (*cfg.a == 0.0) throw ValidationError("field `a` must be nonzero");
    Microstate ms{*cfg.a, cfg.b, cfg.l, cfg.sign.value_or(+1)};
    return normalize_microstate(ms, wronskian_x);
}

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace qtraj::cli
