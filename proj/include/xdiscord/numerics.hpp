#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "xdiscord/error.hpp"

namespace xdiscord {

inline constexpr double kLn2 = std::numbers::ln2;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

// Eigenvalues and Shannon arguments in [-kEigenTolerance, 0) are boundary
// values and are clamped to 0.
inline constexpr double kEigenTolerance = 1e-12;

inline double clamp_nonnegative(double x, const char* what) {
  if (!(x >= -kEigenTolerance)) {
    throw DomainError(std::string(what) + " is negative beyond tolerance: " + std::to_string(x));
  }
  return x < 0.0 ? 0.0 : x;
}

/// x ln x with the convention 0 ln 0 = 0.
inline double xlogx(double x) {
  x = clamp_nonnegative(x, "log argument");
  return x == 0.0 ? 0.0 : x * std::log(x);
}

/// log1p(z)/z, continuous through z = 0.
inline double log1p_ratio(double z) {
  if (std::abs(z) < 1e-8) return 1.0 - z / 2.0 + z * z / 3.0;
  return std::log1p(z) / z;
}

/// atanh(r)/r, continuous through r = 0.
inline double atanh_ratio(double r) {
  if (std::abs(r) < 1e-4) {
    const double r2 = r * r;
    return 1.0 + r2 / 3.0 + r2 * r2 / 5.0;
  }
  return std::atanh(r) / r;
}

inline std::vector<double> linspace(double lo, double hi, std::size_t points) {
  std::vector<double> xs(points);
  if (points == 1) {
    xs[0] = lo;
    return xs;
  }
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) xs[i] = lo + step * static_cast<double>(i);
  xs.back() = hi;
  return xs;
}

struct MinimumPoint {
  double x;
  double value;
};

/// Golden-section search for a minimum of f on [lo, hi]. Stops once the
/// bracket is narrower than tol and returns the best point evaluated.
template <class F>
MinimumPoint golden_section_minimize(F&& f, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  MinimumPoint best = fc <= fd ? MinimumPoint{c, fc} : MinimumPoint{d, fd};
  for (int it = 0; it < 400 && (b - a) > tol; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      if (fc < best.value) best = {c, fc};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      if (fd < best.value) best = {d, fd};
    }
  }
  return best;
}

/// Bisection on a bracket [lo, hi] with f(lo), f(hi) of opposite sign.
template <class F>
double bisect(F&& f, double lo, double hi, double tol) {
  double flo = f(lo);
  for (int it = 0; it < 400 && (hi - lo) > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if ((fmid < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct Root {
  double x;
  double residual;
  // Even-order root: f touches zero without changing sign.
  bool touching = false;
};

struct RootScanOptions {
  int subintervals = 1000;
  double x_tolerance = 1e-12;
  double residual_tolerance = 1e-10;
  bool include_touching = true;
};

/// All roots of f on [lo, hi]: uniform scan for sign changes refined by
/// bisection, plus touching roots found as sign changes of a central
/// difference derivative at local minima of |f| whose residual is below
/// the residual tolerance. Roots are returned sorted and deduplicated.
template <class F>
std::vector<Root> find_roots(F&& f, double lo, double hi, const RootScanOptions& opt = {}) {
  if (opt.subintervals < 2) throw InvalidInput("root scan needs at least 2 subintervals");
  if (!(hi > lo)) return {};
  const auto n = static_cast<std::size_t>(opt.subintervals);
  const std::vector<double> xs = linspace(lo, hi, n + 1);
  std::vector<double> vs(n + 1);
  for (std::size_t i = 0; i <= n; ++i) vs[i] = f(xs[i]);

  std::vector<Root> roots;
  auto push = [&](double x, bool touching) {
    const double r = std::abs(f(x));
    for (const Root& existing : roots) {
      if (std::abs(existing.x - x) <= 10.0 * opt.x_tolerance) return;
    }
    roots.push_back({x, r, touching});
  };

  for (std::size_t i = 0; i <= n; ++i) {
    if (vs[i] == 0.0) push(xs[i], false);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (vs[i] == 0.0 || vs[i + 1] == 0.0) continue;
    if ((vs[i] < 0.0) != (vs[i + 1] < 0.0)) {
      push(bisect(f, xs[i], xs[i + 1], opt.x_tolerance), false);
    }
  }

  if (opt.include_touching) {
    const double h = 1e-6 * (hi - lo);
    for (std::size_t i = 1; i < n; ++i) {
      const double a = std::abs(vs[i]);
      if (!(a <= std::abs(vs[i - 1]) && a <= std::abs(vs[i + 1]))) continue;
      if ((vs[i - 1] < 0.0) != (vs[i] < 0.0) || (vs[i] < 0.0) != (vs[i + 1] < 0.0)) continue;
      auto slope = [&](double x) { return f(x + h) - f(x - h); };
      const double l = xs[i - 1] + h;
      const double r = xs[i + 1] - h;
      const double sl = slope(l);
      const double sr = slope(r);
      if ((sl < 0.0) == (sr < 0.0)) continue;
      const double x = bisect(slope, l, r, opt.x_tolerance);
      if (std::abs(f(x)) <= opt.residual_tolerance) push(x, true);
    }
  }

  std::erase_if(roots, [&](const Root& r) { return !(r.residual <= opt.residual_tolerance); });
  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) { return a.x < b.x; });
  return roots;
}

}  // namespace xdiscord
