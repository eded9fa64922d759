#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "xdiscord/optimizer.hpp"
#include "xdiscord/state.hpp"

namespace xdiscord {

/// Parameters of the one-variable functions f1 and f2 on x in [0, 1].
struct AppendixParams {
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
  double p4 = 0.0;
  double p5 = 0.0;

  /// (|p3 + p4| + |p3 - p4|)/4 = max(|p3|, |p4|)/2.
  double w() const;
};

/// p1 = s1 (unmeasured qubit A), p2 = s2 (measured qubit B), p3 = c1,
/// p4 = c2, p5 = c3. With this choice f1(cos theta) is the conditional
/// entropy at polar angle theta and azimuth 0 or pi/2, whichever carries
/// the larger of |c1|, |c2|.
AppendixParams from_general_x(const GeneralXState& state);

enum class AppendixFunction { f1, f2 };

std::string_view to_string(AppendixFunction which);

/// f1 = -h2((1 + p2 x)/2) + h4(q), f2 = h4(q) with
/// q = ((1 + p2 x +- sqrt r1)/4, (1 - p2 x +- sqrt r2)/4) and
/// r1,2 = (p1 +- p5 x)^2 + 4 w^2 (1 - x^2). Values in nats. A Shannon
/// argument below -1e-12 raises DomainError naming it.
double f1(double x, const AppendixParams& p);
double f2(double x, const AppendixParams& p);
double evaluate(AppendixFunction which, double x, const AppendixParams& p);

struct ExtremaCount {
  int interior_extrema = 0;
  std::vector<double> locations;
  std::vector<ExtremumKind> kinds;
};

/// Interior local extrema on (0, 1) from sign changes of the discrete
/// derivative on a uniform grid, ignoring steps below 1e-13; each one is
/// refined by golden-section search.
ExtremaCount count_interior_extrema(AppendixFunction which, const AppendixParams& p, int grid = 1001);

struct ConjectureReport {
  AppendixFunction which = AppendixFunction::f1;
  std::uint64_t samples = 0;
  std::vector<AppendixParams> violations;  // sorted lexicographically
  int max_count_seen = 0;
  std::uint64_t rechecked = 0;  // first-pass candidates sent to the fine grid
};

/// Draws valid X states, maps them to (p1..p5) and counts extrema of the
/// chosen function. Candidates with two or more extrema are counted again
/// on a ten times finer grid and reported only if they persist.
ConjectureReport conjecture_trial(std::uint64_t samples, std::uint64_t seed, AppendixFunction which,
                                  int grid = 1001);

}  // namespace xdiscord
