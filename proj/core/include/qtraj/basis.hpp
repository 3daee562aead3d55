#ifndef QTRAJ_BASIS_HPP
#define QTRAJ_BASIS_HPP

// Real independent solution pairs (phi1, phi2) of the stationary
// Schrodinger equation for each scenario, plus the basis-change map
// between microstate parameter sets.

#include "qtraj/scenario.hpp"

#include <array>
#include <functional>
#include <string>
#include <utility>

namespace qtraj {

struct BasisValues {
    double phi1;
    double dphi1; // d phi1 / dx
    double phi2;
    double dphi2; // d phi2 / dx
};

// Immutable after construction; eval is a pure function of x.
struct BasisPair {
    std::function<BasisValues(double x)> eval;
    // Wronskian phi1' phi2 - phi1 phi2' in the stated convention
    // (d/dy for the linear-potential Airy basis, d/dx otherwise).
    double wronskian = 0.0;
    // Same Wronskian expressed with d/dx derivatives; this is the value
    // the equations of motion use.
    double wronskian_x = 0.0;
    std::string convention_note;
};

// The exact pairs used by the closed-form results:
//   constant, E - V0 > 0:  (sin kx, cos kx),        k = sqrt(2 m eps)/hbar
//   constant, E - V0 < 0:  (e^{rho x}, e^{-rho x}), rho = sqrt(-2 m eps)/hbar
//   linear:                (Ai + Bi/sqrt3, sqrt3 Ai - Bi) in y, W_y = 2/pi
//   harmonic:              (phi2 * int dq/phi2^2, phi2) with W = 1,
//                          second solutions in regularized closed form
// Throws std::invalid_argument for a constant potential with E = V0.
BasisPair build_basis(const Scenario& scenario);

// Scaled residual (-hbar^2/2m phi'' + (V - E) phi) / (|E| (|phi| + 1))
// for each member, with phi'' from independent finite differences.
std::array<double, 2> schrodinger_residual(const BasisPair& pair,
                                           const Scenario& scenario, double x);

struct TransformParams {
    double mu, nu, alpha, beta;

    double det() const { return mu * beta - nu * alpha; }
};

// theta1 = mu phi1 + nu phi2, theta2 = alpha phi1 + beta phi2; the
// Wronskian scales by det.  Throws on a singular transform.
BasisPair transform_basis(const BasisPair& pair, const TransformParams& p);

// Microstate parameters (a, b) in the original basis that reproduce the
// motion generated by (a_tilde, b_tilde) in the transformed basis.  When
// the input respects the sign convention a_tilde * W_tilde > 0, the
// output automatically satisfies a W > 0.
std::pair<double, double> map_microstate(const TransformParams& p,
                                         double a_tilde, double b_tilde);

// Inverse of map_microstate: closed-form seed polished by Newton root
// finding on the 2x2 system; round trip is identity to 1e-9.  Throws
// std::runtime_error if no solution reaches that residual.
std::pair<double, double> invert_microstate_map(const TransformParams& p,
                                                double a, double b);

} // namespace qtraj

#endif
