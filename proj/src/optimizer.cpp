#include "xdiscord/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "xdiscord/error.hpp"
#include "xdiscord/numerics.hpp"
#include "xdiscord/parallel.hpp"

namespace xdiscord {

namespace {

constexpr double kConstantRange = 1e-12;
constexpr double kThetaMargin = 1e-9;
constexpr double kMinDepth = 1e-15;
constexpr double kCrossingTolerance = 1e-12;

std::string violation_message(const XxzState& s, int extrema) {
  std::ostringstream out;
  out.precision(17);
  out << "S_cond has " << extrema << " interior extrema at (s1, c1, c3) = (" << s.s1 << ", "
      << s.c1 << ", " << s.c3 << ")";
  return out.str();
}

struct GridScan {
  std::vector<double> thetas;
  std::vector<double> values;
  // Grid indices where the discrete derivative changes sign, with the
  // kind of extremum each one brackets.
  std::vector<std::size_t> turns;
  std::vector<ExtremumKind> kinds;
};

GridScan scan(const XxzState& state, int points) {
  GridScan g;
  g.thetas = linspace(0.0, kHalfPi, static_cast<std::size_t>(points));
  g.values.resize(g.thetas.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < g.thetas.size(); ++i) {
    g.values[i] = s_cond(g.thetas[i], state).nats();
    scale = std::max(scale, std::abs(g.values[i]));
  }
  // Differences at the rounding level of the values count as flat.
  const double noise = 64.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 1e-3);
  int last_sign = 0;
  for (std::size_t i = 0; i + 1 < g.values.size(); ++i) {
    const double d = g.values[i + 1] - g.values[i];
    if (std::abs(d) <= noise) continue;
    const int sign = d > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) {
      g.turns.push_back(i);
      g.kinds.push_back(sign > 0 ? ExtremumKind::minimum : ExtremumKind::maximum);
    }
    last_sign = sign;
  }
  return g;
}

}  // namespace

std::string_view to_string(ExtremumKind kind) {
  switch (kind) {
    case ExtremumKind::none: return "none";
    case ExtremumKind::minimum: return "minimum";
    case ExtremumKind::maximum: return "maximum";
    case ExtremumKind::constant: return "constant";
  }
  return "unknown";
}

std::string_view to_string(Branch branch) {
  switch (branch) {
    case Branch::q0: return "Q0";
    case Branch::q_pi2: return "QPi2";
    case Branch::q_theta_star: return "QThetaStar";
  }
  return "unknown";
}

std::string_view to_string(ShapeType type) {
  switch (type) {
    case ShapeType::I: return "I";
    case ShapeType::II: return "II";
    case ShapeType::III: return "III";
    case ShapeType::IV: return "IV";
    case ShapeType::V: return "V";
  }
  return "unknown";
}

ConjectureViolation::ConjectureViolation(const XxzState& state, std::vector<double> thetas,
                                         std::vector<double> values, int extrema)
    : std::runtime_error(violation_message(state, extrema)),
      state_(state),
      thetas_(std::move(thetas)),
      values_(std::move(values)),
      extrema_(extrema) {}

ExtremumReport find_interior_extremum(const XxzState& state, const ExtremumOptions& options) {
  if (options.grid < 3) throw InvalidInput("extremum grid needs at least 3 points");
  check_on_tetrahedron(state);

  GridScan g = scan(state, options.grid);
  ExtremumReport report;
  report.value_at_0 = EntropyValue::nats(g.values.front());
  report.value_at_pi2 = EntropyValue::nats(g.values.back());

  const auto [lo_it, hi_it] = std::minmax_element(g.values.begin(), g.values.end());
  if (*hi_it - *lo_it < kConstantRange) {
    report.kind = ExtremumKind::constant;
    return report;
  }

  if (g.turns.size() >= 2) {
    GridScan fine = scan(state, 4 * (options.grid - 1) + 1);
    if (fine.turns.size() >= 2) {
      throw ConjectureViolation(state, std::move(fine.thetas), std::move(fine.values),
                                static_cast<int>(fine.turns.size()));
    }
    g = std::move(fine);
  }
  if (g.turns.empty()) return report;

  const std::size_t k = g.turns.front();
  const ExtremumKind kind = g.kinds.front();
  const double sign = kind == ExtremumKind::minimum ? 1.0 : -1.0;
  // The turn sits between the last step of one sign and the first of the
  // other; plateaus can separate them, so bracket generously.
  const std::size_t lo = k == 0 ? 0 : k - 1;
  std::size_t hi = std::min(k + 2, g.thetas.size() - 1);
  while (hi + 1 < g.thetas.size() && sign * (g.values[hi + 1] - g.values[hi]) <= 0.0) ++hi;
  std::size_t lo_idx = lo;
  while (lo_idx > 0 && sign * (g.values[lo_idx - 1] - g.values[lo_idx]) <= 0.0) --lo_idx;

  auto objective = [&](double t) { return sign * s_cond(t, state).nats(); };
  MinimumPoint m = golden_section_minimize(objective, g.thetas[lo_idx], g.thetas[hi],
                                           options.theta_tolerance);
  for (std::size_t i = lo_idx; i <= hi; ++i) {
    if (sign * g.values[i] < m.value) m = {g.thetas[i], sign * g.values[i]};
  }
  const double value = sign * m.value;
  const double nearer = m.x < kHalfPi / 2.0 ? g.values.front() : g.values.back();
  if (m.x <= kThetaMargin || m.x >= kHalfPi - kThetaMargin) return report;
  if (std::abs(value - nearer) <= kMinDepth) return report;
  if (kind == ExtremumKind::minimum && value > std::min(g.values.front(), g.values.back())) {
    return report;
  }
  if (kind == ExtremumKind::maximum && value < std::max(g.values.front(), g.values.back())) {
    return report;
  }
  report.kind = kind;
  report.theta_star = m.x;
  report.value_at_star = EntropyValue::nats(value);
  return report;
}

namespace {

// Q(theta) = S(rho_B) - S(rho_AB) + S_cond(theta).
double discord_offset(const XxzState& s) {
  const auto l = xxz_eigenvalues(s);
  return h2((1.0 + s.s1) / 2.0).nats() - h4(l[0], l[1], l[2], l[3]).nats();
}

DiscordResult endpoint_result(const XxzState& state, double s0, double spi2) {
  const double offset = discord_offset(state);
  DiscordResult r;
  r.q_0 = EntropyValue::nats(std::max(offset + s0, 0.0));
  r.q_pi2 = EntropyValue::nats(std::max(offset + spi2, 0.0));
  r.crossing = std::abs(r.q_0.nats() - r.q_pi2.nats()) < kCrossingTolerance;
  if (r.crossing || r.q_0.nats() <= r.q_pi2.nats()) {
    r.q = r.q_0;
    r.branch = Branch::q0;
    r.theta_opt = 0.0;
  } else {
    r.q = r.q_pi2;
    r.branch = Branch::q_pi2;
    r.theta_opt = kHalfPi;
  }
  return r;
}

}  // namespace

DiscordResult discord(const XxzState& state, const ExtremumOptions& options) {
  const ExtremumReport e = find_interior_extremum(state, options);
  DiscordResult r = endpoint_result(state, e.value_at_0.nats(), e.value_at_pi2.nats());
  if (e.kind == ExtremumKind::minimum) {
    const double q = std::max(discord_offset(state) + e.value_at_star->nats(), 0.0);
    r.q_theta_star = EntropyValue::nats(q);
    if (q < r.q.nats()) {
      r.q = EntropyValue::nats(q);
      r.branch = Branch::q_theta_star;
      r.theta_opt = *e.theta_star;
    }
  }
  return r;
}

DiscordResult pseudo_discord(const XxzState& state) {
  check_on_tetrahedron(state);
  return endpoint_result(state, s_cond(0.0, state).nats(), s_cond(kHalfPi, state).nats());
}

ShapeType shape_from_report(const ExtremumReport& report) {
  switch (report.kind) {
    case ExtremumKind::constant: return ShapeType::I;
    case ExtremumKind::minimum: return ShapeType::IV;
    case ExtremumKind::maximum: return ShapeType::V;
    case ExtremumKind::none: break;
  }
  return report.value_at_pi2.nats() >= report.value_at_0.nats() ? ShapeType::II : ShapeType::III;
}

ShapeType classify_shape(const XxzState& state, const ExtremumOptions& options) {
  return shape_from_report(find_interior_extremum(state, options));
}

ShapeType classify_shape_screened(const XxzState& state, const ExtremumOptions& options) {
  check_on_tetrahedron(state);
  double d0 = 0.0;
  double dp = 0.0;
  try {
    d0 = s_cond_d2_at_0(state);
    dp = s_cond_d2_at_pi2(state);
  } catch (const NumericalError&) {
    return classify_shape(state, options);
  }
  const bool forced = (d0 < 0.0 && dp < 0.0) || (d0 > 0.0 && dp > 0.0);
  if (forced) return classify_shape(state, options);
  // Opposite curvatures admit an even number of interior extrema, which is
  // zero when S_cond is unimodal.
  const double s0 = s_cond(0.0, state).nats();
  const double sp = s_cond(kHalfPi, state).nats();
  if (d0 == 0.0 || dp == 0.0 || std::abs(sp - s0) < kConstantRange) {
    return classify_shape(state, options);
  }
  return sp > s0 ? ShapeType::II : ShapeType::III;
}

std::vector<ShapeType> classify_shapes(std::span<const XxzState> states,
                                       const ExtremumOptions& options) {
  std::vector<ShapeType> out(states.size());
  parallel_chunks(states.size(), 64, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = classify_shape(states[i], options);
  });
  return out;
}

}  // namespace xdiscord
