#pragma once

#include <cstdint>

#include "xdiscord/entropy.hpp"
#include "xdiscord/rng.hpp"
#include "xdiscord/state.hpp"

namespace xdiscord::testing {

/// Central first difference of S_cond(theta) in nats.
inline double fd_first(const XxzState& s, double theta, double h = 1e-5) {
  return (s_cond(theta + h, s).nats() - s_cond(theta - h, s).nats()) / (2.0 * h);
}

inline double fd_second_raw(const XxzState& s, double theta, double h) {
  return (s_cond(theta + h, s).nats() - 2.0 * s_cond(theta, s).nats() + s_cond(theta - h, s).nats()) /
         (h * h);
}

/// Central second difference with one Richardson step (h and h/2).
inline double fd_second(const XxzState& s, double theta, double h = 1e-3) {
  const double coarse = fd_second_raw(s, theta, h);
  const double fine = fd_second_raw(s, theta, h / 2.0);
  return (4.0 * fine - coarse) / 3.0;
}

/// Tetrahedron state at least `margin` inside every face.
inline XxzState interior_state(SplitMix64& rng, double margin = 1e-3) {
  for (;;) {
    const XxzState s{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const double l1 = 1 + 2 * s.s1 + s.c3;
    const double l2 = 1 - 2 * s.s1 + s.c3;
    const double l3 = 1 + 2 * s.c1 - s.c3;
    const double l4 = 1 - 2 * s.c1 - s.c3;
    if (l1 > margin && l2 > margin && l3 > margin && l4 > margin) return s;
  }
}

}  // namespace xdiscord::testing
