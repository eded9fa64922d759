#include "xdiscord/unimodal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <tuple>

#include "xdiscord/error.hpp"
#include "xdiscord/numerics.hpp"
#include "xdiscord/parallel.hpp"

namespace xdiscord {

namespace {

constexpr double kPlateau = 1e-13;

double shannon_arg(double v, const char* name) {
  if (!std::isfinite(v)) throw NumericalError(std::string(name) + " is not finite");
  if (v < -kEigenTolerance) {
    throw DomainError(std::string("Shannon argument ") + name + " is negative: " + std::to_string(v));
  }
  return v < 0.0 ? 0.0 : v;
}

void check_x(double x) {
  if (!std::isfinite(x) || x < 0.0 || x > 1.0) throw InvalidInput("x must lie in [0, 1]");
}

// -sum q ln q over the four h4 arguments.
double h4_part(double x, const AppendixParams& p) {
  const double w = p.w();
  const double a = p.p2 * x;
  const double t = 4.0 * w * w * (1.0 - x * x);
  const double r1 = std::sqrt((p.p1 + p.p5 * x) * (p.p1 + p.p5 * x) + t);
  const double r2 = std::sqrt((p.p1 - p.p5 * x) * (p.p1 - p.p5 * x) + t);
  const std::array<double, 4> q = {
      shannon_arg((1.0 + a + r1) / 4.0, "q1"), shannon_arg((1.0 + a - r1) / 4.0, "q2"),
      shannon_arg((1.0 - a + r2) / 4.0, "q3"), shannon_arg((1.0 - a - r2) / 4.0, "q4")};
  double h = 0.0;
  for (double v : q) h -= xlogx(v);
  return h;
}

double h2_part(double x, const AppendixParams& p) {
  const double a = p.p2 * x;
  const double u = shannon_arg((1.0 + a) / 2.0, "(1 + p2 x)/2");
  const double v = shannon_arg((1.0 - a) / 2.0, "(1 - p2 x)/2");
  return -xlogx(u) - xlogx(v);
}

auto as_tuple(const AppendixParams& p) { return std::tie(p.p1, p.p2, p.p3, p.p4, p.p5); }

}  // namespace

double AppendixParams::w() const { return (std::abs(p3 + p4) + std::abs(p3 - p4)) / 4.0; }

AppendixParams from_general_x(const GeneralXState& s) { return {s.s1, s.s2, s.c1, s.c2, s.c3}; }

std::string_view to_string(AppendixFunction which) { return which == AppendixFunction::f1 ? "f1" : "f2"; }

double f1(double x, const AppendixParams& p) {
  check_x(x);
  return -h2_part(x, p) + h4_part(x, p);
}

double f2(double x, const AppendixParams& p) {
  check_x(x);
  return h4_part(x, p);
}

double evaluate(AppendixFunction which, double x, const AppendixParams& p) {
  return which == AppendixFunction::f1 ? f1(x, p) : f2(x, p);
}

ExtremaCount count_interior_extrema(AppendixFunction which, const AppendixParams& p, int grid) {
  if (grid < 101) throw InvalidInput("extremum counting needs a grid of at least 101 points");
  const std::vector<double> xs = linspace(0.0, 1.0, static_cast<std::size_t>(grid));
  std::vector<double> vs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) vs[i] = evaluate(which, xs[i], p);

  ExtremaCount out;
  int last_sign = 0;
  std::size_t last_step = 0;
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
    const double d = vs[i + 1] - vs[i];
    if (std::abs(d) <= kPlateau) continue;
    const int sign = d > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) {
      const ExtremumKind kind = sign > 0 ? ExtremumKind::minimum : ExtremumKind::maximum;
      const double s = kind == ExtremumKind::minimum ? 1.0 : -1.0;
      const double lo = xs[last_step];
      const double hi = xs[i + 1];
      const MinimumPoint m = golden_section_minimize(
          [&](double x) { return s * evaluate(which, x, p); }, lo, hi, 1e-12);
      out.locations.push_back(m.x);
      out.kinds.push_back(kind);
    }
    last_sign = sign;
    last_step = i;
  }
  out.interior_extrema = static_cast<int>(out.locations.size());
  return out;
}

ConjectureReport conjecture_trial(std::uint64_t samples, std::uint64_t seed, AppendixFunction which,
                                  int grid) {
  if (samples < 1) throw InvalidInput("conjecture trial needs at least one sample");
  constexpr std::size_t kChunk = 1024;
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<ConjectureReport> partial(chunks);
  parallel_chunks(samples, kChunk, [&](std::size_t begin, std::size_t end) {
    ConjectureReport& acc = partial[begin / kChunk];
    for (std::size_t i = begin; i < end; ++i) {
      const AppendixParams p = from_general_x(sample_general_x_at(seed, i));
      int count = count_interior_extrema(which, p, grid).interior_extrema;
      if (count >= 2) {
        ++acc.rechecked;
        count = count_interior_extrema(which, p, 10 * (grid - 1) + 1).interior_extrema;
        if (count >= 2) acc.violations.push_back(p);
      }
      acc.max_count_seen = std::max(acc.max_count_seen, count);
      ++acc.samples;
    }
  });
  ConjectureReport out;
  out.which = which;
  for (ConjectureReport& r : partial) {
    out.samples += r.samples;
    out.rechecked += r.rechecked;
    out.max_count_seen = std::max(out.max_count_seen, r.max_count_seen);
    out.violations.insert(out.violations.end(), r.violations.begin(), r.violations.end());
  }
  std::sort(out.violations.begin(), out.violations.end(),
            [](const AppendixParams& a, const AppendixParams& b) { return as_tuple(a) < as_tuple(b); });
  return out;
}

}  // namespace xdiscord
