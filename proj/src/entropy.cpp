#include "xdiscord/entropy.hpp"

#include <array>
#include <cmath>
#include <string>

#include "xdiscord/error.hpp"
#include "xdiscord/numerics.hpp"

namespace xdiscord {

std::string_view to_string(Unit unit) { return unit == Unit::nat ? "nat" : "bit"; }

double EntropyValue::in(Unit unit) const {
  if (unit == unit_) return value_;
  return unit == Unit::bit ? value_ / kLn2 : value_ * kLn2;
}

namespace {

// Branch values are nonnegative analytically; tiny negative rounding is
// clamped, anything larger is a bug upstream.
EntropyValue nonnegative_nats(double v, const char* what) {
  if (!std::isfinite(v)) throw NumericalError(std::string(what) + " is not finite");
  if (v < -1e-10) throw NumericalError(std::string(what) + " is negative: " + std::to_string(v));
  return EntropyValue::nats(v < 0.0 ? 0.0 : v);
}

void check_state(const XxzState& s) { check_on_tetrahedron(s); }

}  // namespace

EntropyValue h2(double p) {
  if (!std::isfinite(p)) throw InvalidInput("h2 argument must be finite");
  if (p > 1.0 + kEigenTolerance) throw DomainError("h2 argument above 1");
  const double a = clamp_nonnegative(p, "h2 argument");
  const double b = clamp_nonnegative(1.0 - p, "h2 complement");
  return nonnegative_nats(-xlogx(a) - xlogx(b), "h2");
}

EntropyValue h4(double p1, double p2, double p3, double p4) {
  const std::array<double, 4> p = {p1, p2, p3, p4};
  double sum = 0.0;
  double h = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!std::isfinite(p[i])) throw InvalidInput("h4 arguments must be finite");
    const double v = clamp_nonnegative(p[i], ("h4 argument " + std::to_string(i + 1)).c_str());
    sum += p[i];
    h -= xlogx(v);
  }
  if (std::abs(sum - 1.0) > kEigenTolerance) {
    throw DomainError("h4 arguments sum to " + std::to_string(sum) + ", not 1");
  }
  return nonnegative_nats(h, "h4");
}

EntropyValue q0(const XxzState& s) {
  check_state(s);
  const double v = (-2.0 * xlogx(1.0 - s.c3) + xlogx(1.0 + 2.0 * s.c1 - s.c3) +
                    xlogx(1.0 - 2.0 * s.c1 - s.c3)) /
                   4.0;
  return nonnegative_nats(v, "Q0");
}

EntropyValue q_pi2(const XxzState& s) {
  check_state(s);
  const double r = std::hypot(s.s1, s.c1);
  if (r > 1.0 + kEigenTolerance) throw DomainError("s1^2 + c1^2 exceeds 1");
  const double v =
      -(xlogx(1.0 + s.s1) + xlogx(1.0 - s.s1) + xlogx(1.0 + r) + xlogx(1.0 - r)) / 2.0 +
      (xlogx(1.0 + 2.0 * s.c1 - s.c3) + xlogx(1.0 - 2.0 * s.c1 - s.c3) +
       xlogx(1.0 + 2.0 * s.s1 + s.c3) + xlogx(1.0 - 2.0 * s.s1 + s.c3)) /
          4.0;
  return nonnegative_nats(v, "Q_pi/2");
}

EntropyValue s_cond(double theta, const XxzState& s) {
  check_state(s);
  if (!std::isfinite(theta)) throw InvalidInput("measurement angle must be finite");
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  const double a = s.s1 * ct;
  const double rp = std::hypot(s.s1 + s.c3 * ct, s.c1 * st);
  const double rm = std::hypot(s.s1 - s.c3 * ct, s.c1 * st);
  const double v = kLn2 + (xlogx(1.0 + a) + xlogx(1.0 - a)) / 2.0 -
                   (xlogx(1.0 + a + rp) + xlogx(1.0 + a - rp) + xlogx(1.0 - a + rm) +
                    xlogx(1.0 - a - rm)) /
                       4.0;
  return nonnegative_nats(v, "S_cond");
}

bool d2_at_0_diverges(const XxzState& s) {
  return 1.0 + 2.0 * s.s1 + s.c3 <= kEigenTolerance || 1.0 - 2.0 * s.s1 + s.c3 <= kEigenTolerance;
}

double d2_at_0_face_coefficient(const XxzState& s) {
  const double g = std::abs(s.s1) - s.c3;
  if (g <= 0.0) throw DomainError("face coefficient needs |s1| > c3");
  return (g * g - s.c1 * s.c1) / (4.0 * g);
}

double s_cond_d2_at_0(const XxzState& s) {
  check_state(s);
  if (d2_at_0_diverges(s)) {
    throw NumericalError("S''(0) diverges on the face |s1| = (1 + c3)/2");
  }
  const double d = 1.0 - s.c3;
  if (d <= 0.0) throw NumericalError("S''(0) undefined at c3 = 1");
  const double lp = 1.0 + 2.0 * s.s1 + s.c3;
  const double lm = 1.0 - 2.0 * s.s1 + s.c3;
  // (1/(s1+c3)) ln(lp/d) and (1/(s1-c3)) ln(d/lm), both as (2/d) log1p(z)/z.
  const double t_plus = (2.0 / d) * log1p_ratio(2.0 * (s.s1 + s.c3) / d);
  const double t_minus = (2.0 / d) * log1p_ratio(-2.0 * (s.s1 - s.c3) / d);
  const double v = (-s.c1 * s.c1 * (t_plus + t_minus) +
                    s.s1 * (2.0 * (std::log1p(-s.s1) - std::log1p(s.s1)) + std::log(lp / lm)) +
                    s.c3 * (std::log(lp) + std::log(lm) - 2.0 * std::log(d))) /
                   4.0;
  if (!std::isfinite(v)) throw NumericalError("S''(0) is not finite");
  return v;
}

double s_cond_d2_at_pi2(const XxzState& s) {
  check_state(s);
  const double r = std::hypot(s.s1, s.c1);
  if (r >= 1.0) throw NumericalError("S''(pi/2) undefined at s1^2 + c1^2 = 1");
  // With a = c1^2/r^2 and b = s1^2/r^2 the expression is bounded as r -> 0,
  // where any split a + b = 1 gives the limit -c3^2.
  const double a = r > 0.0 ? (s.c1 / r) * (s.c1 / r) : 0.5;
  const double b = r > 0.0 ? (s.s1 / r) * (s.s1 / r) : 0.5;
  const double r2 = r * r;
  const double c3 = s.c3;
  const double v = s.s1 * s.s1 + a * (r2 - c3 * c3) * atanh_ratio(r) -
                   b * (r2 + c3 * c3 - 2.0 * r2 * c3) / (1.0 - r2);
  if (!std::isfinite(v)) throw NumericalError("S''(pi/2) is not finite");
  return v;
}

double crossing_function(const XxzState& s) {
  check_state(s);
  const double r = std::hypot(s.s1, s.c1);
  return 2.0 * (-xlogx(1.0 - s.c3) + xlogx(1.0 + s.s1) + xlogx(1.0 - s.s1) + xlogx(1.0 + r) +
                xlogx(1.0 - r)) -
         xlogx(1.0 + 2.0 * s.s1 + s.c3) - xlogx(1.0 - 2.0 * s.s1 + s.c3);
}

LuoDiscord luo_discord(const BellDiagonalState& s) {
  const auto p = bell_probs(s);
  double mutual = 0.0;  // sum_k p_k ln(4 p_k)
  for (double pk : p) mutual += pk > 0.0 ? pk * std::log(4.0 * pk) : 0.0;
  const std::array<double, 3> c = {s.c1, s.c2, s.c3};
  LuoDiscord best;
  double best_value = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double ci = c[static_cast<std::size_t>(i)];
    const double qi = mutual - 0.5 * (xlogx(1.0 - ci) + xlogx(1.0 + ci));
    if (best.branch == 0 || qi < best_value) {
      best_value = qi;
      best.branch = i + 1;
    }
  }
  best.q = nonnegative_nats(best_value, "Luo discord");
  return best;
}

EntropyValue edge_discord(double c1) {
  if (!std::isfinite(c1)) throw InvalidInput("c1 must be finite");
  if (std::abs(c1) > 1.0 + kEigenTolerance) throw DomainError("|c1| > 1 on the edge");
  return nonnegative_nats(0.5 * (xlogx(1.0 + c1) + xlogx(1.0 - c1)), "edge discord");
}

}  // namespace xdiscord
