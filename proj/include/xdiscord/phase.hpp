#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "xdiscord/entropy.hpp"
#include "xdiscord/numerics.hpp"
#include "xdiscord/optimizer.hpp"
#include "xdiscord/state.hpp"

namespace xdiscord {

enum class Coordinate { s1, c1 };

std::string_view to_string(Coordinate coordinate);

/// Straight line through the tetrahedron at fixed c3. When `scanned` is s1
/// the fixed coordinate is c1 and vice versa.
struct ScanLine {
  double c3 = 0.0;
  Coordinate scanned = Coordinate::s1;
  double fixed = 0.0;

  XxzState at(double x) const;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Range of the scanned coordinate inside the tetrahedron, pulled `clip`
/// inside each face. DomainError if the fixed coordinates leave it.
Interval line_extent(const ScanLine& line, double clip = 1e-9);

enum class BoundaryKind { crossing, d2_at_0, d2_at_pi2 };

std::string_view to_string(BoundaryKind kind);

struct BoundarySolution {
  ScanLine line;
  BoundaryKind kind = BoundaryKind::crossing;
  std::vector<double> roots;
  std::vector<double> residuals;
  std::vector<bool> touching;
};

struct SolveOptions {
  int subintervals = 1000;
  double x_tolerance = 1e-12;
  double residual_tolerance = 1e-10;
};

/// The function whose zeros along `line` define the boundary: the crossing
/// function, or one of the endpoint second derivatives.
double boundary_function(BoundaryKind kind, const XxzState& state);

/// Roots of Q0 = Q_pi/2 along the line. Without a bracket the clipped line
/// extent is scanned.
BoundarySolution solve_crossing(const ScanLine& line, std::optional<Interval> bracket = {},
                                const SolveOptions& options = {});

/// Roots of S''(0) = 0 or S''(pi/2) = 0 along the line. On the faces
/// |s1| = (1 + c3)/2, where S''(0) diverges, the zero set of its leading
/// coefficient is solved instead over the unclipped extent.
BoundarySolution solve_bifurcation(const ScanLine& line, BoundaryKind which,
                                   std::optional<Interval> bracket = {},
                                   const SolveOptions& options = {});

enum class PhaseLabel { q0, q_pi2, q_theta_star_min, q_theta_star_max, crossing };

std::string_view to_string(PhaseLabel label);

struct PhasePoint {
  double s1 = 0.0;
  double c1 = 0.0;
  PhaseLabel label = PhaseLabel::q0;
  EntropyValue q;
  EntropyValue q_0;
  EntropyValue q_pi2;
};

PhasePoint label_point(const XxzState& state, const ExtremumOptions& options = {});

/// grid x grid labels over the (s1, c1) rectangle of the slice, row-major
/// with c1 as the slow index. Points are clipped 1e-9 inside the faces.
std::vector<PhasePoint> slice_scan(double c3, int grid, const ExtremumOptions& options = {});

struct BoundaryPoint {
  BoundaryKind kind = BoundaryKind::crossing;
  double s1 = 0.0;
  double c1 = 0.0;
};

/// Boundary polylines of a slice, root-solved along s1 at `lines` values
/// of c1 in [-(1 - c3)/2, (1 - c3)/2].
std::vector<BoundaryPoint> slice_boundaries(double c3, int lines, const SolveOptions& options = {});

struct DeviationSample {
  double s1 = 0.0;
  std::optional<double> c1_cross;
  std::optional<double> c1_0;
  std::optional<double> c1_pi2;
  std::optional<double> delta0;    // c1_0 - c1_cross
  std::optional<double> delta_pi2; // c1_pi2 - c1_cross
};

/// Positive-c1 boundary positions along lines of fixed s1.
std::vector<DeviationSample> deviation_curve(double c3, const std::vector<double>& s1_samples,
                                             const SolveOptions& options = {});

/// The s1 range (s1 > 0) over which the inner crossing curve exists: where
/// it meets the top edge c1 = (1 - c3)/2 and where it touches c1 = 0.
struct DeviationSupport {
  std::optional<double> top_edge;
  std::optional<double> axis;
};

DeviationSupport deviation_support(double c3, const SolveOptions& options = {});

struct VolumeEstimate {
  std::uint64_t samples = 0;
  std::uint64_t draws = 0;  // cube candidates behind the samples
  std::uint64_t type_iv = 0;
  std::uint64_t type_v = 0;
  std::uint64_t type_iv_nonpositive_c3 = 0;
  double fraction = 0.0;  // type IV share of the tetrahedron
  double standard_error = 0.0;  // binomial, of fraction
  double fraction_v = 0.0;
};

/// Monte Carlo share of the tetrahedron whose S_cond has an interior
/// minimum. Candidates come from the endpoint-curvature screen and are
/// confirmed on the theta grid.
VolumeEstimate theta_star_volume(std::uint64_t samples, std::uint64_t seed,
                                 const ExtremumOptions& options = {});

struct BellVolumes {
  std::uint64_t samples = 0;
  std::uint64_t q0 = 0;    // Luo branch 3
  std::uint64_t q_pi2 = 0; // Luo branches 1 and 2
  double ratio = 0.0;      // q_pi2 / q0
};

/// Monte Carlo split of the Bell-diagonal tetrahedron into the Q0 and
/// Q_pi/2 regions.
BellVolumes bell_branch_volumes(std::uint64_t samples, std::uint64_t seed);

/// Interior-maximum corridor along c1 at fixed (s1, c3), c1 >= 0.
struct MaximumCorridor {
  double c3 = 0.0;
  double s1 = 0.0;
  std::optional<double> c1_cross;
  std::optional<double> c1_pi2;
  std::optional<double> c1_0;
  std::optional<double> theta_max;
  EntropyValue s_end;  // S_cond(0) = S_cond(pi/2) at the crossing
  EntropyValue s_max;
  double excess_percent = 0.0;  // (s_max / s_end - 1) * 100
  double fidelity = 0.0;        // between the crossing and pi/2-boundary states
  bool ok = false;
};

MaximumCorridor maximum_corridor(double c3, double s1, const SolveOptions& options = {});

/// Rows at c3 in {-0.8, -0.5, -0.1, 0, 0.1, 1/3, 0.5} on the face
/// s1 = (1 + c3)/2.
std::vector<MaximumCorridor> table1(const SolveOptions& options = {});

}  // namespace xdiscord
