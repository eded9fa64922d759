#pragma once

#include <array>

#include "xdiscord/state.hpp"

namespace xdiscord {

/// Thermal XXZ dimer
///   H = -(J (sx sx + sy sy) + Jz sz sz)/2 - B (sz.1 + 1.sz)/2
/// at temperature T (energy units, T > 0).
struct DimerParams {
  double J = 0.0;
  double Jz = 0.0;
  double B = 0.0;
  double T = 1.0;
};

/// Energies of |00>, |11>, (|01> + |10>)/sqrt2, (|01> - |10>)/sqrt2:
/// -(Jz + 2B)/2, -(Jz - 2B)/2, (Jz - 2J)/2, (Jz + 2J)/2.
std::array<double, 4> dimer_energies(const DimerParams& p);

/// 2 (e^{Jz/2T} cosh(B/T) + e^{-Jz/2T} cosh(J/T)).
double partition_function(const DimerParams& p);

/// Gibbs state parameters (s1, c1, c3).
XxzState dimer_to_state(const DimerParams& p);

/// Inverse map at temperature T. The couplings diverge on the faces of
/// the tetrahedron, which raise DomainError.
DimerParams state_to_dimer(const XxzState& state, double T);

}  // namespace xdiscord
