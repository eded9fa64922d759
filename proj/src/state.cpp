#include "xdiscord/state.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "xdiscord/error.hpp"
#include "xdiscord/numerics.hpp"
#include "xdiscord/rng.hpp"

namespace xdiscord {

std::string_view to_string(XStateVerdict verdict) {
  switch (verdict) {
    case XStateVerdict::ok: return "ok";
    case XStateVerdict::out_of_range: return "out-of-range";
    case XStateVerdict::first_inequality: return "first-inequality";
    case XStateVerdict::second_inequality: return "second-inequality";
  }
  return "unknown";
}

XStateVerdict validate_general_x(const GeneralXState& s) {
  for (double v : {s.s1, s.s2, s.c1, s.c2, s.c3}) {
    if (!std::isfinite(v)) throw InvalidInput("X state parameters must be finite");
  }
  for (double v : {s.s1, s.s2, s.c1, s.c2, s.c3}) {
    if (std::abs(v) > 1.0 + kEigenTolerance) return XStateVerdict::out_of_range;
  }
  const double ds = s.s1 - s.s2;
  const double pc = s.c1 + s.c2;
  const double ps = s.s1 + s.s2;
  const double dc = s.c1 - s.c2;
  if ((1.0 - s.c3) * (1.0 - s.c3) - ds * ds - pc * pc < -kEigenTolerance) {
    return XStateVerdict::first_inequality;
  }
  if ((1.0 + s.c3) * (1.0 + s.c3) - ps * ps - dc * dc < -kEigenTolerance) {
    return XStateVerdict::second_inequality;
  }
  return XStateVerdict::ok;
}

GeneralXState to_general(const XxzState& s) { return {s.s1, s.s1, s.c1, s.c1, s.c3}; }

namespace {

std::array<double, 4> raw_eigenvalues(const XxzState& s) {
  return {(1.0 + 2.0 * s.s1 + s.c3) / 4.0, (1.0 - 2.0 * s.s1 + s.c3) / 4.0,
          (1.0 + 2.0 * s.c1 - s.c3) / 4.0, (1.0 - 2.0 * s.c1 - s.c3) / 4.0};
}

}  // namespace

bool on_tetrahedron(const XxzState& s) {
  if (!std::isfinite(s.s1) || !std::isfinite(s.c1) || !std::isfinite(s.c3)) return false;
  for (double l : raw_eigenvalues(s)) {
    if (l < -kEigenTolerance) return false;
  }
  return true;
}

void check_on_tetrahedron(const XxzState& s) {
  if (!std::isfinite(s.s1) || !std::isfinite(s.c1) || !std::isfinite(s.c3)) {
    throw InvalidInput("XXZ state parameters must be finite");
  }
  const auto l = raw_eigenvalues(s);
  if (s.c3 < -1.0 - 4.0 * kEigenTolerance || s.c3 > 1.0 + 4.0 * kEigenTolerance) {
    throw DomainError("c3 outside [-1, 1]: c3 = " + std::to_string(s.c3));
  }
  if (l[0] < -kEigenTolerance || l[1] < -kEigenTolerance) {
    throw DomainError("|s1| <= (1 + c3)/2 violated: s1 = " + std::to_string(s.s1) +
                      ", c3 = " + std::to_string(s.c3));
  }
  if (l[2] < -kEigenTolerance || l[3] < -kEigenTolerance) {
    throw DomainError("|c1| <= (1 - c3)/2 violated: c1 = " + std::to_string(s.c1) +
                      ", c3 = " + std::to_string(s.c3));
  }
}

std::array<double, 4> xxz_eigenvalues(const XxzState& s) {
  check_on_tetrahedron(s);
  auto l = raw_eigenvalues(s);
  for (double& v : l) v = v < 0.0 ? 0.0 : v;
  return l;
}

DensityMatrix4 density_matrix(const GeneralXState& s) {
  if (validate_general_x(s) != XStateVerdict::ok) {
    throw DomainError("not a valid X state: " + std::string(to_string(validate_general_x(s))));
  }
  DensityMatrix4 rho = DensityMatrix4::Zero();
  rho(0, 0) = (1.0 + s.s1 + s.s2 + s.c3) / 4.0;
  rho(1, 1) = (1.0 + s.s1 - s.s2 - s.c3) / 4.0;
  rho(2, 2) = (1.0 - s.s1 + s.s2 - s.c3) / 4.0;
  rho(3, 3) = (1.0 - s.s1 - s.s2 + s.c3) / 4.0;
  rho(1, 2) = rho(2, 1) = (s.c1 + s.c2) / 4.0;
  rho(0, 3) = rho(3, 0) = (s.c1 - s.c2) / 4.0;
  return rho;
}

DensityMatrix4 density_matrix(const XxzState& s) {
  check_on_tetrahedron(s);
  DensityMatrix4 rho = DensityMatrix4::Zero();
  rho(0, 0) = (1.0 + 2.0 * s.s1 + s.c3) / 4.0;
  rho(1, 1) = rho(2, 2) = (1.0 - s.c3) / 4.0;
  rho(3, 3) = (1.0 - 2.0 * s.s1 + s.c3) / 4.0;
  rho(1, 2) = rho(2, 1) = 2.0 * s.c1 / 4.0;
  return rho;
}

void check_density_matrix(const DensityMatrix4& rho) {
  if (!rho.allFinite()) throw InvalidInput("density matrix has non-finite entries");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kEigenTolerance) {
    throw DomainError("density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - 1.0) > kEigenTolerance) {
    throw DomainError("density matrix trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<DensityMatrix4> solver(rho, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -kEigenTolerance) {
    throw DomainError("density matrix has a negative eigenvalue");
  }
}

bool is_x_shaped(const DensityMatrix4& rho, double tol) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j || i + j == 3) continue;
      if (std::abs(rho(i, j)) > tol) return false;
    }
  }
  return true;
}

double fidelity(const XxzState& a, const XxzState& b) {
  const auto la = xxz_eigenvalues(a);
  const auto lb = xxz_eigenvalues(b);
  double sum = 0.0;
  for (std::size_t j = 0; j < 4; ++j) sum += std::sqrt(la[j] * lb[j]);
  const double f = sum * sum;
  return f > 1.0 ? 1.0 : f;
}

std::array<double, 4> bell_probs(const BellDiagonalState& s) {
  if (!std::isfinite(s.c1) || !std::isfinite(s.c2) || !std::isfinite(s.c3)) {
    throw InvalidInput("Bell-diagonal parameters must be finite");
  }
  std::array<double, 4> p = {(1.0 + s.c1 - s.c2 + s.c3) / 4.0, (1.0 - s.c1 + s.c2 + s.c3) / 4.0,
                             (1.0 + s.c1 + s.c2 - s.c3) / 4.0, (1.0 - s.c1 - s.c2 - s.c3) / 4.0};
  for (std::size_t i = 0; i < 4; ++i) {
    if (p[i] < -kEigenTolerance) {
      throw DomainError("Bell-diagonal state outside the tetrahedron: p" + std::to_string(i + 1) +
                        " = " + std::to_string(p[i]));
    }
    if (p[i] < 0.0) p[i] = 0.0;
  }
  return p;
}

XxzState sample_tetrahedron_at(std::uint64_t seed, std::uint64_t index, std::uint64_t* draws) {
  SplitMix64 rng = SplitMix64::stream(seed, index);
  for (;;) {
    const XxzState s{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    if (draws) ++*draws;
    if (std::abs(s.s1) <= (1.0 + s.c3) / 2.0 && std::abs(s.c1) <= (1.0 - s.c3) / 2.0) return s;
  }
}

GeneralXState sample_general_x_at(std::uint64_t seed, std::uint64_t index, std::uint64_t* draws) {
  SplitMix64 rng = SplitMix64::stream(seed, index);
  for (;;) {
    GeneralXState s;
    s.s1 = rng.uniform(-1.0, 1.0);
    s.s2 = rng.uniform(-1.0, 1.0);
    s.c1 = rng.uniform(-1.0, 1.0);
    s.c2 = rng.uniform(-1.0, 1.0);
    s.c3 = rng.uniform(-1.0, 1.0);
    if (draws) ++*draws;
    const double ds = s.s1 - s.s2;
    const double pc = s.c1 + s.c2;
    const double ps = s.s1 + s.s2;
    const double dc = s.c1 - s.c2;
    if ((1.0 - s.c3) * (1.0 - s.c3) >= ds * ds + pc * pc &&
        (1.0 + s.c3) * (1.0 + s.c3) >= ps * ps + dc * dc) {
      return s;
    }
  }
}

RejectionSample<XxzState> sample_tetrahedron(std::uint64_t seed, std::size_t count) {
  if (count < 1) throw InvalidInput("sample count must be at least 1");
  RejectionSample<XxzState> out;
  out.states.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.states.push_back(sample_tetrahedron_at(seed, i, &out.draws));
  return out;
}

RejectionSample<GeneralXState> sample_general_x(std::uint64_t seed, std::size_t count) {
  if (count < 1) throw InvalidInput("sample count must be at least 1");
  RejectionSample<GeneralXState> out;
  out.states.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.states.push_back(sample_general_x_at(seed, i, &out.draws));
  return out;
}

}  // namespace xdiscord
