#include "xdiscord/phase.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "xdiscord/error.hpp"
#include "xdiscord/parallel.hpp"
#include "xdiscord/rng.hpp"

namespace xdiscord {

namespace {

constexpr double kFaceTolerance = 1e-12;

double half_width(const ScanLine& line) {
  return line.scanned == Coordinate::s1 ? (1.0 + line.c3) / 2.0 : (1.0 - line.c3) / 2.0;
}

double fixed_bound(const ScanLine& line) {
  return line.scanned == Coordinate::s1 ? (1.0 - line.c3) / 2.0 : (1.0 + line.c3) / 2.0;
}

void check_line(const ScanLine& line) {
  if (!std::isfinite(line.c3) || !std::isfinite(line.fixed)) {
    throw InvalidInput("scan line coordinates must be finite");
  }
  if (line.c3 < -1.0 || line.c3 > 1.0) throw DomainError("scan line c3 outside [-1, 1]");
  if (std::abs(line.fixed) > fixed_bound(line) + kFaceTolerance) {
    throw DomainError(std::string("fixed ") +
                      (line.scanned == Coordinate::s1 ? "c1" : "s1") +
                      " puts the scan line outside the tetrahedron");
  }
}

bool on_divergent_face(const ScanLine& line) {
  return line.scanned == Coordinate::c1 &&
         std::abs(std::abs(line.fixed) - (1.0 + line.c3) / 2.0) <= kFaceTolerance;
}

RootScanOptions scan_options(const SolveOptions& o) {
  return {o.subintervals, o.x_tolerance, o.residual_tolerance, true};
}

template <class F>
BoundarySolution solve_on(const ScanLine& line, BoundaryKind kind, Interval range, F&& f,
                          const SolveOptions& options) {
  BoundarySolution out;
  out.line = line;
  out.kind = kind;
  for (const Root& r : find_roots(f, range.lo, range.hi, scan_options(options))) {
    out.roots.push_back(r.x);
    out.residuals.push_back(r.residual);
    out.touching.push_back(r.touching);
  }
  return out;
}

std::optional<double> first_positive(const BoundarySolution& s) {
  for (double r : s.roots) {
    if (r > 0.0) return r;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(Coordinate coordinate) {
  return coordinate == Coordinate::s1 ? "s1" : "c1";
}

std::string_view to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::crossing: return "crossing";
    case BoundaryKind::d2_at_0: return "d2-0";
    case BoundaryKind::d2_at_pi2: return "d2-pi2";
  }
  return "unknown";
}

std::string_view to_string(PhaseLabel label) {
  switch (label) {
    case PhaseLabel::q0: return "Q0";
    case PhaseLabel::q_pi2: return "QPi2";
    case PhaseLabel::q_theta_star_min: return "QThetaStarMin";
    case PhaseLabel::q_theta_star_max: return "QThetaStarMax";
    case PhaseLabel::crossing: return "Crossing";
  }
  return "unknown";
}

XxzState ScanLine::at(double x) const {
  return scanned == Coordinate::s1 ? XxzState{x, fixed, c3} : XxzState{fixed, x, c3};
}

Interval line_extent(const ScanLine& line, double clip) {
  check_line(line);
  const double w = half_width(line);
  if (w - clip <= -w + clip) throw DomainError("scan line has no interior");
  return {-w + clip, w - clip};
}

double boundary_function(BoundaryKind kind, const XxzState& state) {
  switch (kind) {
    case BoundaryKind::crossing: return crossing_function(state);
    case BoundaryKind::d2_at_0: return s_cond_d2_at_0(state);
    case BoundaryKind::d2_at_pi2: return s_cond_d2_at_pi2(state);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

BoundarySolution solve_crossing(const ScanLine& line, std::optional<Interval> bracket,
                                const SolveOptions& options) {
  const Interval range = bracket ? *bracket : line_extent(line);
  check_line(line);
  return solve_on(line, BoundaryKind::crossing, range,
                  [&](double x) { return crossing_function(line.at(x)); }, options);
}

BoundarySolution solve_bifurcation(const ScanLine& line, BoundaryKind which,
                                   std::optional<Interval> bracket, const SolveOptions& options) {
  if (which == BoundaryKind::crossing) return solve_crossing(line, bracket, options);
  check_line(line);
  if (which == BoundaryKind::d2_at_0 && on_divergent_face(line)) {
    if (bracket) {
      return solve_on(line, which, *bracket,
                      [&](double x) { return d2_at_0_face_coefficient(line.at(x)); }, options);
    }
    // The coefficient can vanish exactly on a corner of the extent, so pad by
    // a few ulps and clamp back.
    const Interval extent = line_extent(line, 0.0);
    const double pad = 1e-13 * std::max(1.0, extent.hi);
    BoundarySolution sol =
        solve_on(line, which, {extent.lo - pad, extent.hi + pad},
                 [&](double x) { return d2_at_0_face_coefficient(line.at(x)); }, options);
    for (double& r : sol.roots) r = std::clamp(r, extent.lo, extent.hi);
    return sol;
  }
  const Interval range = bracket ? *bracket : line_extent(line);
  return solve_on(line, which, range,
                  [&](double x) { return boundary_function(which, line.at(x)); }, options);
}

PhasePoint label_point(const XxzState& state, const ExtremumOptions& options) {
  const DiscordResult pseudo = pseudo_discord(state);
  PhasePoint p{state.s1, state.c1, PhaseLabel::q0, pseudo.q, pseudo.q_0, pseudo.q_pi2};
  const ShapeType shape = classify_shape_screened(state, options);
  if (shape == ShapeType::IV) {
    p.label = PhaseLabel::q_theta_star_min;
    p.q = discord(state, options).q;
  } else if (shape == ShapeType::V) {
    p.label = PhaseLabel::q_theta_star_max;
  } else if (pseudo.crossing) {
    p.label = PhaseLabel::crossing;
  } else {
    p.label = pseudo.branch == Branch::q0 ? PhaseLabel::q0 : PhaseLabel::q_pi2;
  }
  return p;
}

std::vector<PhasePoint> slice_scan(double c3, int grid, const ExtremumOptions& options) {
  if (grid < 3) throw InvalidInput("slice grid needs at least 3 points");
  if (!(c3 > -1.0 && c3 < 1.0)) throw DomainError("slice c3 must lie in (-1, 1)");
  const Interval s_range = line_extent({c3, Coordinate::s1, 0.0});
  const Interval c_range = line_extent({c3, Coordinate::c1, 0.0});
  const auto n = static_cast<std::size_t>(grid);
  const std::vector<double> s1s = linspace(s_range.lo, s_range.hi, n);
  const std::vector<double> c1s = linspace(c_range.lo, c_range.hi, n);
  std::vector<PhasePoint> out(n * n);
  parallel_chunks(n, 1, [&](std::size_t begin, std::size_t end) {
    for (std::size_t row = begin; row < end; ++row) {
      for (std::size_t col = 0; col < n; ++col) {
        out[row * n + col] = label_point({s1s[col], c1s[row], c3}, options);
      }
    }
  });
  return out;
}

std::vector<BoundaryPoint> slice_boundaries(double c3, int lines, const SolveOptions& options) {
  if (lines < 2) throw InvalidInput("boundary polylines need at least 2 lines");
  const Interval c_range = line_extent({c3, Coordinate::c1, 0.0});
  const std::vector<double> c1s = linspace(c_range.lo, c_range.hi, static_cast<std::size_t>(lines));
  std::vector<std::vector<BoundaryPoint>> per_line(c1s.size());
  parallel_chunks(c1s.size(), 1, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const ScanLine line{c3, Coordinate::s1, c1s[i]};
      for (BoundaryKind kind : {BoundaryKind::crossing, BoundaryKind::d2_at_0, BoundaryKind::d2_at_pi2}) {
        for (double r : solve_bifurcation(line, kind, {}, options).roots) {
          per_line[i].push_back({kind, r, c1s[i]});
        }
      }
    }
  });
  std::vector<BoundaryPoint> out;
  for (const auto& pts : per_line) out.insert(out.end(), pts.begin(), pts.end());
  std::stable_sort(out.begin(), out.end(), [](const BoundaryPoint& a, const BoundaryPoint& b) {
    return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  });
  return out;
}

std::vector<DeviationSample> deviation_curve(double c3, const std::vector<double>& s1_samples,
                                             const SolveOptions& options) {
  if (!(c3 > 0.0 && c3 < 1.0)) throw DomainError("deviation curve needs c3 in (0, 1)");
  std::vector<DeviationSample> out(s1_samples.size());
  const double top = (1.0 - c3) / 2.0;
  parallel_chunks(s1_samples.size(), 1, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const ScanLine line{c3, Coordinate::c1, s1_samples[i]};
      const Interval positive{1e-9, top - 1e-9};
      DeviationSample& d = out[i];
      d.s1 = s1_samples[i];
      d.c1_cross = first_positive(solve_crossing(line, positive, options));
      d.c1_0 = first_positive(solve_bifurcation(line, BoundaryKind::d2_at_0, positive, options));
      d.c1_pi2 = first_positive(solve_bifurcation(line, BoundaryKind::d2_at_pi2, positive, options));
      if (d.c1_cross && d.c1_0) d.delta0 = *d.c1_0 - *d.c1_cross;
      if (d.c1_cross && d.c1_pi2) d.delta_pi2 = *d.c1_pi2 - *d.c1_cross;
    }
  });
  return out;
}

DeviationSupport deviation_support(double c3, const SolveOptions& options) {
  if (!(c3 > 0.0 && c3 < 1.0)) throw DomainError("deviation curve needs c3 in (0, 1)");
  const double right = (1.0 + c3) / 2.0 - 1e-9;
  DeviationSupport out;
  out.top_edge = first_positive(
      solve_crossing({c3, Coordinate::s1, (1.0 - c3) / 2.0}, Interval{1e-9, right}, options));
  out.axis = first_positive(solve_crossing({c3, Coordinate::s1, 0.0}, Interval{1e-9, right}, options));
  return out;
}

VolumeEstimate theta_star_volume(std::uint64_t samples, std::uint64_t seed,
                                 const ExtremumOptions& options) {
  if (samples < 1) throw InvalidInput("volume estimate needs at least one sample");
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<VolumeEstimate> partial(chunks);
  parallel_chunks(samples, kChunk, [&](std::size_t begin, std::size_t end) {
    VolumeEstimate& acc = partial[begin / kChunk];
    for (std::size_t i = begin; i < end; ++i) {
      std::uint64_t draws = 0;
      const XxzState s = sample_tetrahedron_at(seed, i, &draws);
      acc.draws += draws;
      ++acc.samples;
      double d0 = 0.0;
      double dp = 0.0;
      try {
        d0 = s_cond_d2_at_0(s);
        dp = s_cond_d2_at_pi2(s);
      } catch (const NumericalError&) {
        d0 = dp = 0.0;
      }
      const bool screened = (d0 < 0.0 && dp < 0.0) || (d0 > 0.0 && dp > 0.0) || d0 == 0.0 || dp == 0.0;
      if (!screened) continue;
      const ShapeType shape = classify_shape(s, options);
      if (shape == ShapeType::IV) {
        ++acc.type_iv;
        if (s.c3 <= 0.0) ++acc.type_iv_nonpositive_c3;
      } else if (shape == ShapeType::V) {
        ++acc.type_v;
      }
    }
  });
  VolumeEstimate out;
  for (const VolumeEstimate& p : partial) {
    out.samples += p.samples;
    out.draws += p.draws;
    out.type_iv += p.type_iv;
    out.type_v += p.type_v;
    out.type_iv_nonpositive_c3 += p.type_iv_nonpositive_c3;
  }
  const double n = static_cast<double>(out.samples);
  out.fraction = static_cast<double>(out.type_iv) / n;
  out.fraction_v = static_cast<double>(out.type_v) / n;
  out.standard_error = std::sqrt(out.fraction * (1.0 - out.fraction) / n);
  return out;
}

BellVolumes bell_branch_volumes(std::uint64_t samples, std::uint64_t seed) {
  if (samples < 1) throw InvalidInput("volume estimate needs at least one sample");
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<BellVolumes> partial(chunks);
  parallel_chunks(samples, kChunk, [&](std::size_t begin, std::size_t end) {
    BellVolumes& acc = partial[begin / kChunk];
    for (std::size_t i = begin; i < end; ++i) {
      SplitMix64 rng = SplitMix64::stream(seed, i);
      for (;;) {
        const BellDiagonalState b{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                                  rng.uniform(-1.0, 1.0)};
        const double p4 = 1.0 - b.c1 - b.c2 - b.c3;
        const double p1 = 1.0 + b.c1 - b.c2 + b.c3;
        const double p2 = 1.0 - b.c1 + b.c2 + b.c3;
        const double p3 = 1.0 + b.c1 + b.c2 - b.c3;
        if (p1 < 0.0 || p2 < 0.0 || p3 < 0.0 || p4 < 0.0) continue;
        ++acc.samples;
        if (luo_discord(b).branch == 3) {
          ++acc.q0;
        } else {
          ++acc.q_pi2;
        }
        break;
      }
    }
  });
  BellVolumes out;
  for (const BellVolumes& p : partial) {
    out.samples += p.samples;
    out.q0 += p.q0;
    out.q_pi2 += p.q_pi2;
  }
  out.ratio = out.q0 > 0 ? static_cast<double>(out.q_pi2) / static_cast<double>(out.q0)
                         : std::numeric_limits<double>::infinity();
  return out;
}

MaximumCorridor maximum_corridor(double c3, double s1, const SolveOptions& options) {
  MaximumCorridor out;
  out.c3 = c3;
  out.s1 = s1;
  const ScanLine line{c3, Coordinate::c1, s1};
  const double top = (1.0 - c3) / 2.0;
  const Interval positive{1e-9, top - 1e-9};
  out.c1_cross = first_positive(solve_crossing(line, positive, options));
  out.c1_pi2 = first_positive(solve_bifurcation(line, BoundaryKind::d2_at_pi2, positive, options));
  const BoundarySolution zero =
      on_divergent_face(line) ? solve_bifurcation(line, BoundaryKind::d2_at_0, {}, options)
                              : solve_bifurcation(line, BoundaryKind::d2_at_0, positive, options);
  if (!zero.roots.empty() && zero.roots.back() > 0.0) out.c1_0 = zero.roots.back();
  if (!out.c1_cross || !out.c1_pi2) return out;

  const XxzState at_cross = line.at(*out.c1_cross);
  const ExtremumReport e = find_interior_extremum(at_cross);
  out.s_end = e.value_at_0;
  out.fidelity = fidelity(at_cross, line.at(*out.c1_pi2));
  if (e.kind != ExtremumKind::maximum) return out;
  out.theta_max = e.theta_star;
  out.s_max = *e.value_at_star;
  out.excess_percent = (out.s_max.nats() / out.s_end.nats() - 1.0) * 100.0;
  out.ok = true;
  return out;
}

std::vector<MaximumCorridor> table1(const SolveOptions& options) {
  const std::array<double, 7> c3s = {-0.8, -0.5, -0.1, 0.0, 0.1, 1.0 / 3.0, 0.5};
  std::vector<MaximumCorridor> rows(c3s.size());
  parallel_chunks(c3s.size(), 1, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      rows[i] = maximum_corridor(c3s[i], (1.0 + c3s[i]) / 2.0, options);
    }
  });
  return rows;
}

}  // namespace xdiscord
