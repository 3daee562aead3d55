#ifndef QTRAJ_CONSTANTS_HPP
#define QTRAJ_CONSTANTS_HPP

#include <numbers>

// Internal unit system: energies in eV, lengths in angstrom, times in
// femtosecond.  With these units all quantities of the problems treated
// here stay within a few orders of magnitude of unity.  Conversions from
// SI happen at the I/O boundary only.
namespace qtraj::constants {

inline constexpr double pi = std::numbers::pi;

// CODATA 2018
inline constexpr double hbar = 0.6582119569;                 // eV fs
inline constexpr double planck = 2.0 * pi * hbar;            // eV fs
inline constexpr double electron_mass = 0.056856301036084016; // eV fs^2 / AA^2

// 1 newton expressed in eV / angstrom
inline constexpr double newton_in_ev_per_angstrom = 6.2415090744607626e8;

// fs -> s, AA -> m
inline constexpr double second_per_fs = 1e-15;
inline constexpr double meter_per_angstrom = 1e-10;

} // namespace qtraj::constants

#endif
