#include "xdiscord/dimer.hpp"

#include <algorithm>
#include <cmath>

#include "xdiscord/error.hpp"

namespace xdiscord {

namespace {

constexpr double kMaxExponent = 700.0;

void check_params(const DimerParams& p) {
  for (double v : {p.J, p.Jz, p.B, p.T}) {
    if (!std::isfinite(v)) throw InvalidInput("dimer parameters must be finite");
  }
  if (!(p.T > 0.0)) throw InvalidInput("temperature must be positive");
}

}  // namespace

std::array<double, 4> dimer_energies(const DimerParams& p) {
  check_params(p);
  return {-(p.Jz + 2.0 * p.B) / 2.0, -(p.Jz - 2.0 * p.B) / 2.0, (p.Jz - 2.0 * p.J) / 2.0,
          (p.Jz + 2.0 * p.J) / 2.0};
}

double partition_function(const DimerParams& p) {
  check_params(p);
  return 2.0 * (std::exp(p.Jz / (2.0 * p.T)) * std::cosh(p.B / p.T) +
                std::exp(-p.Jz / (2.0 * p.T)) * std::cosh(p.J / p.T));
}

XxzState dimer_to_state(const DimerParams& p) {
  check_params(p);
  for (double v : {p.J, p.Jz, p.B}) {
    if (std::abs(v) / p.T > kMaxExponent) {
      throw DomainError("coupling over temperature exceeds 700; Boltzmann weights overflow");
    }
  }
  const auto e = dimer_energies(p);
  std::array<double, 4> x{};
  for (std::size_t k = 0; k < 4; ++k) x[k] = -e[k] / p.T;
  const double top = *std::max_element(x.begin(), x.end());
  std::array<double, 4> w{};
  double z = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    w[k] = std::exp(x[k] - top);
    z += w[k];
  }
  for (double& l : w) l /= z;
  return {w[0] - w[1], w[2] - w[3], w[0] + w[1] - w[2] - w[3]};
}

DimerParams state_to_dimer(const XxzState& s, double T) {
  if (!std::isfinite(T) || !(T > 0.0)) throw InvalidInput("temperature must be positive");
  check_on_tetrahedron(s);
  const double l1 = 1.0 + 2.0 * s.s1 + s.c3;
  const double l2 = 1.0 - 2.0 * s.s1 + s.c3;
  const double l3 = 1.0 + 2.0 * s.c1 - s.c3;
  const double l4 = 1.0 - 2.0 * s.c1 - s.c3;
  if (!(l1 > 0.0 && l2 > 0.0 && l3 > 0.0 && l4 > 0.0)) {
    throw DomainError("state on a face of the tetrahedron maps to infinite couplings");
  }
  return {T / 2.0 * std::log(l3 / l4), T / 2.0 * std::log((l1 * l2) / (l3 * l4)),
          T / 2.0 * std::log(l1 / l2), T};
}

}  // namespace xdiscord
