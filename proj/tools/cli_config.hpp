#ifndef QTRAJ_TOOLS_CLI_CONFIG_HPP
#define QTRAJ_TOOLS_CLI_CONFIG_HPP

// JSON run configuration: parsing, validation and conversion into the
// library's Scenario / Microstate / IntegrationOptions types.

#include "qtraj/dynamics.hpp"
#include "qtraj/integrator.hpp"

#include <optional>
#include <set>
#include <stdexcept>
#include <string>

namespace qtraj::cli {

// Raised for any malformed or inconsistent configuration; mapped to
// exit code 2 at the top level.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string potential; // constant | linear | harmonic_ground | harmonic_excited1
    std::optional<double> energy_ev;
    std::optional<double> v0_ev;
    std::optional<double> g_ev_per_angstrom;
    std::optional<double> omega; // rad / fs

    std::optional<double> a;
    double b = 0.0;
    double l = 0.0;
    std::optional<int> sign; // +1 / -1; required for forbidden-region starts

    std::optional<double> x0_angstrom;
    double t0_fs = 0.0;
    std::optional<double> t_end_fs;

    double hbar_scale = 1.0;
    IntegrationOptions integration; // epsilon_turn, v_max, rtol, atol, sample_dt
    bool enter_forbidden = false;

    // node-scan range
    std::optional<double> x_min_angstrom;
    std::optional<double> x_max_angstrom;

    std::set<std::string> outputs; // csv / json / svg; default {csv, json}
};

// Reads and validates the JSON document at `path`.  Unknown keys and
// type mismatches are validation errors.
RunConfig load_config(const std::string& path);

// Scenario from potential/energy fields.  The potential-specific
// parameter (v0_ev / g_ev_per_angstrom / omega) must be present exactly
// once and must match the declared potential shape.
Scenario scenario_from(const RunConfig& cfg);

// Microstate from (a, b, l, sign); requires `a`.  The result is
// normalized to the a W > 0 convention of the given basis.
Microstate microstate_from(const RunConfig& cfg, double wronskian_x);

// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

} // namespace qtraj::cli

#endif
