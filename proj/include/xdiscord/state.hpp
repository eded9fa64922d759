#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace xdiscord {

/// Real five-parameter X state
///   rho = (1 + s1 sz.1 + s2 1.sz + c1 sx.sx + c2 sy.sy + c3 sz.sz) / 4
/// in the basis |00>, |01>, |10>, |11> with qubit A first.
struct GeneralXState {
  double s1 = 0.0;
  double s2 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

/// XXZ-symmetric X state (s2 = s1, c2 = c1). Physical states fill the
/// tetrahedron c3 in [-1, 1], |s1| <= (1 + c3)/2, |c1| <= (1 - c3)/2.
struct XxzState {
  double s1 = 0.0;
  double c1 = 0.0;
  double c3 = 0.0;
};

/// Bell-diagonal state (s1 = s2 = 0).
struct BellDiagonalState {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

using DensityMatrix4 = Eigen::Matrix4cd;

enum class XStateVerdict {
  ok,
  out_of_range,        // some parameter outside [-1, 1]
  first_inequality,    // (1 - c3)^2 >= (s1 - s2)^2 + (c1 + c2)^2 fails
  second_inequality,   // (1 + c3)^2 >= (s1 + s2)^2 + (c1 - c2)^2 fails
};

std::string_view to_string(XStateVerdict verdict);

/// Positive-semidefiniteness test for the five-parameter form.
/// Throws InvalidInput on non-finite fields.
XStateVerdict validate_general_x(const GeneralXState& state);

GeneralXState to_general(const XxzState& state);

bool on_tetrahedron(const XxzState& state);

/// Throws DomainError naming the violated tetrahedron bound.
void check_on_tetrahedron(const XxzState& state);

/// (1 + 2 s1 + c3)/4, (1 - 2 s1 + c3)/4, (1 + 2 c1 - c3)/4, (1 - 2 c1 - c3)/4,
/// eigenvectors |00>, |11>, (|01> + |10>)/sqrt2, (|01> - |10>)/sqrt2.
/// Boundary values within tolerance are clamped to 0.
std::array<double, 4> xxz_eigenvalues(const XxzState& state);

DensityMatrix4 density_matrix(const XxzState& state);
DensityMatrix4 density_matrix(const GeneralXState& state);

/// Hermitian, unit trace and positive semidefinite within 1e-12.
void check_density_matrix(const DensityMatrix4& rho);

bool is_x_shaped(const DensityMatrix4& rho, double tol = 1e-15);

/// Fidelity between two XXZ states. Their density matrices commute, so
/// F = (sum_j sqrt(l_j l'_j))^2 with eigenvalues paired by eigenvector.
double fidelity(const XxzState& a, const XxzState& b);

/// Eigenvalues p1..p4 of a Bell-diagonal state; DomainError outside the
/// tetrahedron with vertices (1,-1,1), (-1,1,1), (1,1,-1), (-1,-1,-1).
std::array<double, 4> bell_probs(const BellDiagonalState& state);

template <class State>
struct RejectionSample {
  std::vector<State> states;
  std::uint64_t draws = 0;  // candidates drawn from the enclosing cube
};

/// Uniform states on the tetrahedron by rejection from [-1, 1]^3.
/// Sample i uses its own SplitMix64 stream derived from (seed, i).
RejectionSample<XxzState> sample_tetrahedron(std::uint64_t seed, std::size_t count);

/// Uniform valid five-parameter X states by rejection from [-1, 1]^5.
RejectionSample<GeneralXState> sample_general_x(std::uint64_t seed, std::size_t count);

/// Single-sample variants used by the Monte Carlo drivers.
XxzState sample_tetrahedron_at(std::uint64_t seed, std::uint64_t index, std::uint64_t* draws = nullptr);
GeneralXState sample_general_x_at(std::uint64_t seed, std::uint64_t index, std::uint64_t* draws = nullptr);

}  // namespace xdiscord
