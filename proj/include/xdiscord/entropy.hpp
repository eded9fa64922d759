#pragma once

#include <string_view>

#include "xdiscord/state.hpp"

namespace xdiscord {

enum class Unit { nat, bit };

std::string_view to_string(Unit unit);

/// Entropy-valued quantity with an explicit unit. Library code works in
/// nats; bits appear only at presentation boundaries.
class EntropyValue {
 public:
  constexpr EntropyValue() = default;
  constexpr EntropyValue(double value, Unit unit) : value_(value), unit_(unit) {}

  static EntropyValue nats(double v) { return {v, Unit::nat}; }
  static EntropyValue bits(double v) { return {v, Unit::bit}; }

  double value() const { return value_; }
  Unit unit() const { return unit_; }

  double in(Unit unit) const;
  double nats() const { return in(Unit::nat); }
  double bits() const { return in(Unit::bit); }
  EntropyValue to(Unit unit) const { return {in(unit), unit}; }

 private:
  double value_ = 0.0;
  Unit unit_ = Unit::nat;
};

/// Binary Shannon entropy of (p, 1 - p).
EntropyValue h2(double p);

/// Quaternary Shannon entropy; arguments must sum to 1 within 1e-12.
EntropyValue h4(double p1, double p2, double p3, double p4);

/// Discord branch for the optimal angle theta = 0. Independent of s1.
EntropyValue q0(const XxzState& state);

/// Discord branch for the optimal angle theta = pi/2.
EntropyValue q_pi2(const XxzState& state);

/// Average conditional entropy of A after a projective measurement of B
/// at polar angle theta. Valid for any real theta (even and 2pi-periodic).
EntropyValue s_cond(double theta, const XxzState& state);

/// d^2 S_cond / d theta^2 at theta = 0, in nats. Removable singularities at
/// s1 = +-c3 are resolved by series; on the faces 1 +- 2 s1 + c3 = 0 the
/// value diverges and NumericalError is thrown (see d2_at_0_face_coefficient).
double s_cond_d2_at_0(const XxzState& state);

/// d^2 S_cond / d theta^2 at theta = pi/2, in nats, with the s1 = c1 = 0
/// limit (-c3^2) handled.
double s_cond_d2_at_pi2(const XxzState& state);

/// On the faces |s1| = (1 + c3)/2 the second derivative at theta = 0 is
/// dominated by coefficient * ln(1/lambda) with lambda -> 0. Returns that
/// coefficient ((|s1| - c3)^2 - c1^2) / (4 (|s1| - c3)); its zero set is the
/// 0-boundary on the face.
double d2_at_0_face_coefficient(const XxzState& state);

/// True when the state sits on a face where s_cond_d2_at_0 diverges.
bool d2_at_0_diverges(const XxzState& state);

/// Left-hand side of the Q0 = Q_pi/2 transcendental equation; equals
/// 4 (Q0 - Q_pi/2) in nats.
double crossing_function(const XxzState& state);

struct LuoDiscord {
  EntropyValue q;
  int branch = 0;  // 1, 2 or 3: index of the dominant |c_i|
};

/// Closed-form discord of a Bell-diagonal state.
LuoDiscord luo_discord(const BellDiagonalState& state);

/// Discord on the edge s1 = 0, c3 = -1 of the tetrahedron.
EntropyValue edge_discord(double c1);

}  // namespace xdiscord
