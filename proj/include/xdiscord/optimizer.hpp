#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "xdiscord/entropy.hpp"
#include "xdiscord/state.hpp"

namespace xdiscord {

enum class ExtremumKind { none, minimum, maximum, constant };

std::string_view to_string(ExtremumKind kind);

struct ExtremumReport {
  ExtremumKind kind = ExtremumKind::none;
  std::optional<double> theta_star;
  std::optional<EntropyValue> value_at_star;
  EntropyValue value_at_0;
  EntropyValue value_at_pi2;
};

struct ExtremumOptions {
  int grid = 2001;  // uniform points on [0, pi/2]
  double theta_tolerance = 1e-10;
};

/// More than one interior extremum of S_cond(theta) survived a finer
/// rescan. Carries the state and the grid that exposed it.
class ConjectureViolation : public std::runtime_error {
 public:
  ConjectureViolation(const XxzState& state, std::vector<double> thetas,
                      std::vector<double> values, int extrema);

  const XxzState& state() const { return state_; }
  const std::vector<double>& thetas() const { return thetas_; }
  const std::vector<double>& values() const { return values_; }
  int extrema() const { return extrema_; }

 private:
  XxzState state_;
  std::vector<double> thetas_;
  std::vector<double> values_;
  int extrema_;
};

/// Locates the (at most one) interior stationary point of S_cond on
/// (0, pi/2). Throws ConjectureViolation when two or more are found.
ExtremumReport find_interior_extremum(const XxzState& state, const ExtremumOptions& options = {});

enum class Branch { q0, q_pi2, q_theta_star };

std::string_view to_string(Branch branch);

struct DiscordResult {
  EntropyValue q;
  Branch branch = Branch::q0;
  double theta_opt = 0.0;
  bool crossing = false;  // |Q0 - Q_pi/2| < 1e-12
  EntropyValue q_0;
  EntropyValue q_pi2;
  std::optional<EntropyValue> q_theta_star;
};

/// Q = min{Q0, Q_theta*, Q_pi/2} with Q_theta* included only for an
/// interior minimum of S_cond.
DiscordResult discord(const XxzState& state, const ExtremumOptions& options = {});

/// min{Q0, Q_pi/2}, ignoring interior minima.
DiscordResult pseudo_discord(const XxzState& state);

enum class ShapeType { I, II, III, IV, V };

std::string_view to_string(ShapeType type);

/// I constant, II increasing, III decreasing, IV interior minimum,
/// V interior maximum.
ShapeType classify_shape(const XxzState& state, const ExtremumOptions& options = {});

ShapeType shape_from_report(const ExtremumReport& report);

/// Same classification decided first from the endpoint curvatures. Both
/// negative forces an interior minimum and both positive an interior
/// maximum; the grid scan confirms these and settles every other case.
ShapeType classify_shape_screened(const XxzState& state, const ExtremumOptions& options = {});

/// Order-preserving parallel classification.
std::vector<ShapeType> classify_shapes(std::span<const XxzState> states,
                                       const ExtremumOptions& options = {});

}  // namespace xdiscord
