#ifndef QTRAJ_SCENARIO_HPP
#define QTRAJ_SCENARIO_HPP

// Physical problem definition: potential shape, total energy, particle
// mass and an hbar scale factor (used by the classical-limit study).
// Internal units throughout: eV, angstrom, femtosecond.

#include "qtraj/constants.hpp"

#include <variant>

namespace qtraj {

struct ConstantPotential {
    double v0; // eV
};
struct LinearPotential {
    double g; // eV / angstrom, > 0
};
// E = hbar*omega/2 for the ground state, 3*hbar*omega/2 for the first
// excited state; the factories derive omega from the requested energy.
struct HarmonicGround {
    double omega; // rad / fs
};
struct HarmonicExcited1 {
    double omega; // rad / fs
};

using Potential = std::variant<ConstantPotential, LinearPotential,
                               HarmonicGround, HarmonicExcited1>;

struct Scenario {
    Potential potential;
    double energy;           // eV
    double mass;             // eV fs^2 / angstrom^2
    double hbar_scale = 1.0; // multiplies the physical hbar everywhere

    double hbar() const { return constants::hbar * hbar_scale; }
    double potential_at(double x) const;
    double potential_slope(double x) const;     // dV/dx
    double potential_curvature(double x) const; // d2V/dx2

    // E - V0 for constant potentials (throws for the other shapes).
    double epsilon() const;
};

Scenario make_constant(double energy, double v0,
                       double mass = constants::electron_mass,
                       double hbar_scale = 1.0);
Scenario make_linear(double energy, double g,
                     double mass = constants::electron_mass,
                     double hbar_scale = 1.0);
Scenario make_harmonic_ground(double energy,
                              double mass = constants::electron_mass,
                              double hbar_scale = 1.0);
Scenario make_harmonic_excited1(double energy,
                                double mass = constants::electron_mass,
                                double hbar_scale = 1.0);

} // namespace qtraj

#endif
