#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "test_support.hpp"
#include "xdiscord/error.hpp"
#include "xdiscord/numerics.hpp"
#include "xdiscord/oracle.hpp"
#include "xdiscord/phase.hpp"

using namespace xdiscord;
using xdiscord::testing::fd_first;
using xdiscord::testing::fd_second;
using xdiscord::testing::interior_state;

namespace {

double crossing_a() {
  const auto r = solve_crossing({0.34, Coordinate::s1, 0.14}, Interval{0.4, 0.55});
  REQUIRE(r.roots.size() == 1);
  return r.roots[0];
}

}  // namespace

TEST_CASE("unit conversion") {
  const auto v = EntropyValue::nats(1.0);
  CHECK(v.bits() == 1.0 / std::numbers::ln2);
  CHECK(v.to(Unit::bit).to(Unit::nat).value() == doctest::Approx(1.0).epsilon(1e-16));
  CHECK(EntropyValue::bits(2.0).nats() == 2.0 * std::numbers::ln2);
  CHECK(to_string(Unit::bit) == "bit");
}

TEST_CASE("Shannon helpers") {
  CHECK(h2(0.5).nats() == doctest::Approx(std::numbers::ln2).epsilon(1e-16));
  CHECK(h2(0.0).nats() == 0.0);
  CHECK(h4(1, 0, 0, 0).nats() == 0.0);
  CHECK(h4(0.25, 0.25, 0.25, 0.25).bits() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(h2(-1e-9), DomainError);
  CHECK_THROWS_AS(h4(0.5, 0.5, 0.5, -0.5), DomainError);
  CHECK_THROWS_AS(h4(0.5, 0.5, 0.5, 0.5), DomainError);
}

TEST_CASE("q0 examples") {
  CHECK(q0({0.3, 0.0, 0.2}).nats() == 0.0);
  CHECK(q0({0.1, 0.14, 0.34}).bits() == doctest::Approx(0.0442314345).epsilon(1e-10 / 0.0442));
  CHECK(q0({0.4, 0.14, 0.34}).nats() == q0({-0.2, 0.14, 0.34}).nats());
  CHECK(q0({0, 1, -1}).bits() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(q0({0, -1, -1}).bits() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("q_pi2 examples") {
  for (double c1 : {-0.9, -0.3, 0.0, 0.5, 1.0}) {
    CHECK(q_pi2({0, c1, -1}).nats() == doctest::Approx(std::numbers::ln2).epsilon(1e-15));
  }
  CHECK(std::abs(q_pi2({0.473267, 0.14, 0.34}).bits() - q0({0.473267, 0.14, 0.34}).bits()) < 1e-6);
  CHECK(q_pi2({0, 0, 0}).nats() == 0.0);
  // A diagonal state measured along x: zero only at c3 = 0.
  for (double c3 : {-0.7, 0.4}) {
    const double expected = 0.5 * ((1 - c3) * std::log(1 - c3) + (1 + c3) * std::log(1 + c3));
    CHECK(q_pi2({0, 0, c3}).nats() == doctest::Approx(expected).epsilon(1e-14));
    CHECK(q_pi2({0, 0, c3}).nats() > 0.0);
  }
  CHECK(q_pi2({0.2, 0.1, 0.3}).nats() == doctest::Approx(q_pi2({-0.2, -0.1, 0.3}).nats()).epsilon(1e-15));
}

TEST_CASE("s_cond examples") {
  for (double t : {0.0, 0.3, 1.2, kHalfPi}) {
    CHECK(s_cond(t, {0, 0, 0}).nats() == doctest::Approx(std::numbers::ln2).epsilon(1e-15));
  }
  // Bell-diagonal (c, c, c) and (c, c, -c): flat at h2((1 + |c|)/2).
  for (double c : {-0.4, 0.2, 0.3}) {
    for (double sign : {1.0, -1.0}) {
      const XxzState s{0, c, sign * c};
      if (!on_tetrahedron(s)) continue;
      const double flat = h2((1 + std::abs(c)) / 2).nats();
      for (double t : {0.0, 0.3, 1.2, kHalfPi}) {
        CHECK(s_cond(t, s).nats() == doctest::Approx(flat).epsilon(1e-14));
        CHECK(conditional_entropy_oracle(density_matrix(s), {t, 0.0}).nats() ==
              doctest::Approx(flat).epsilon(1e-12));
      }
    }
  }
  const XxzState a{crossing_a(), 0.14, 0.34};
  CHECK(s_cond(0.732419, a).bits() == doctest::Approx(0.8163533082).epsilon(1e-10));
  CHECK(s_cond(0.5637701781, {0.25, 0.6563909127, -0.5}).bits() ==
        doctest::Approx(0.6130583056).epsilon(1e-10));
}

TEST_CASE("second derivatives vanish on the Bell diagonal c1 = c3") {
  for (double c : {-0.3, 0.1, 0.3}) {
    CHECK(s_cond_d2_at_0({0, c, c}) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(s_cond_d2_at_pi2({0, c, c}) == doctest::Approx(0.0).epsilon(1e-15));
  }
}

TEST_CASE("removable singularities stay finite") {
  CHECK(std::isfinite(s_cond_d2_at_0({0.2, 0.1, 0.2})));
  CHECK(std::isfinite(s_cond_d2_at_0({-0.2, 0.1, 0.2})));
  CHECK(std::isfinite(s_cond_d2_at_0({0.2 + 1e-12, 0.1, 0.2})));
  CHECK(s_cond_d2_at_pi2({0, 0, 0.3}) == doctest::Approx(-0.09).epsilon(1e-12));
  CHECK(s_cond_d2_at_pi2({1e-9, 1e-9, 0.3}) == doctest::Approx(-0.09).epsilon(1e-9));
  const XxzState near{0.2 + 1e-9, 0.1, 0.2};
  CHECK(s_cond_d2_at_0(near) == doctest::Approx(fd_second(near, 0.0)).epsilon(1e-5));
}

TEST_CASE("S''(0) diverges on the s1 faces and the leading coefficient takes over") {
  const XxzState face{0.25, 0.3, -0.5};
  CHECK(d2_at_0_diverges(face));
  CHECK_THROWS_AS(s_cond_d2_at_0(face), NumericalError);
  CHECK(d2_at_0_face_coefficient({0.25, 0.75, -0.5}) == 0.0);
  CHECK(d2_at_0_face_coefficient(face) > 0.0);
}

TEST_CASE("second-derivative roots along the minimum line") {
  auto d0 = [](double s) { return s_cond_d2_at_0({s, 0.14, 0.34}); };
  auto dp = [](double s) { return s_cond_d2_at_pi2({s, 0.14, 0.34}); };
  CHECK(bisect(d0, 0.46, 0.48, 1e-14) == doctest::Approx(0.4731928814).epsilon(1e-10));
  CHECK(bisect(dp, 0.46, 0.48, 1e-14) == doctest::Approx(0.4733412570).epsilon(1e-10));
}

TEST_CASE("crossing function is four times the branch difference") {
  SplitMix64 rng(12);
  for (int i = 0; i < 500; ++i) {
    const XxzState s = interior_state(rng, 0.0);
    CHECK(crossing_function(s) == doctest::Approx(4.0 * (q0(s).nats() - q_pi2(s).nats())).epsilon(1e-12));
  }
}

TEST_CASE("Luo formula") {
  for (const BellDiagonalState v : {BellDiagonalState{1, -1, 1}, BellDiagonalState{-1, 1, 1},
                                    BellDiagonalState{1, 1, -1}, BellDiagonalState{-1, -1, -1}}) {
    CHECK(luo_discord(v).q.bits() == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(luo_discord({0.4, 0, 0}).q.nats() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(luo_discord({0, -0.6, 0}).q.nats() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(luo_discord({0, 0, 0.3}).q.nats() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(luo_discord({0.3, 0.2, 0.1}).branch == 1);
  CHECK(luo_discord({0.2, 0.2, 0.2}).branch == 1);
  CHECK_THROWS_AS(luo_discord({0.5, 0.5, 0.5}), DomainError);
  const auto oracle = discord_oracle(density_matrix(GeneralXState{0, 0, 0.3, 0.2, 0.1}));
  CHECK(std::abs(luo_discord({0.3, 0.2, 0.1}).q.nats() - oracle.q.nats()) < 1e-8);
}

TEST_CASE("edge discord") {
  CHECK(edge_discord(0.0).nats() == 0.0);
  CHECK(edge_discord(1.0).bits() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(edge_discord(-1.0).bits() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(edge_discord(0.5).nats() == doctest::Approx(q0({0, 0.5, -1}).nats()).epsilon(1e-15));
  CHECK_THROWS_AS(edge_discord(1.2), DomainError);
}

TEST_CASE("property: first derivatives vanish at both endpoints") {
  SplitMix64 rng(2024);
  for (int i = 0; i < 300; ++i) {
    const XxzState s = interior_state(rng);
    CHECK(std::abs(fd_first(s, 0.0)) < 1e-6);
    CHECK(std::abs(fd_first(s, kHalfPi)) < 1e-6);
  }
}

TEST_CASE("property: closed-form second derivatives match finite differences") {
  SplitMix64 rng(77);
  for (int i = 0; i < 300; ++i) {
    const XxzState s = interior_state(rng);
    const double a0 = s_cond_d2_at_0(s);
    const double ap = s_cond_d2_at_pi2(s);
    CHECK(std::abs(a0 - fd_second(s, 0.0)) <= std::max(1e-6, 1e-4 * std::abs(a0)));
    CHECK(std::abs(ap - fd_second(s, kHalfPi)) <= std::max(1e-6, 1e-4 * std::abs(ap)));
  }
}

TEST_CASE("property: s_cond agrees with the measurement oracle") {
  SplitMix64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    const XxzState s = interior_state(rng, 0.0);
    const double t = rng.uniform(-std::numbers::pi, std::numbers::pi);
    const double oracle = conditional_entropy_oracle(density_matrix(s), {t, 0.0}).nats();
    CHECK(std::abs(s_cond(t, s).nats() - oracle) < 1e-10);
  }
}

TEST_CASE("property: branch consistency and reconstruction") {
  SplitMix64 rng(8);
  for (int i = 0; i < 1000; ++i) {
    const XxzState s = interior_state(rng, 0.0);
    const double s0 = s_cond(0.0, s).nats();
    const double sp = s_cond(kHalfPi, s).nats();
    CHECK(std::abs((q0(s).nats() - q_pi2(s).nats()) - (s0 - sp)) < 1e-10);
    const auto l = xxz_eigenvalues(s);
    const double offset = h2((1 + s.s1) / 2).nats() - h4(l[0], l[1], l[2], l[3]).nats();
    CHECK(std::abs(q0(s).nats() - (offset + s0)) < 1e-10);
    CHECK(std::abs(q_pi2(s).nats() - (offset + sp)) < 1e-10);
  }
}

TEST_CASE("property: Luo formula nests the two branches at s1 = 0") {
  SplitMix64 rng(31);
  int checked = 0;
  while (checked < 500) {
    const double c1 = rng.uniform(-1, 1);
    const double c3 = rng.uniform(-1, 1);
    if (!on_tetrahedron({0, c1, c3})) continue;
    const XxzState s{0, c1, c3};
    const double expected = std::min(q0(s).nats(), q_pi2(s).nats());
    CHECK(std::abs(luo_discord({c1, c1, c3}).q.nats() - expected) < 1e-10);
    ++checked;
  }
}

TEST_CASE("property: s_cond is even and 2 pi periodic") {
  SplitMix64 rng(41);
  for (int i = 0; i < 200; ++i) {
    const XxzState s = interior_state(rng, 0.0);
    const double t = rng.uniform(0, std::numbers::pi);
    CHECK(s_cond(t, s).nats() == doctest::Approx(s_cond(-t, s).nats()).epsilon(1e-14));
    CHECK(s_cond(t, s).nats() == doctest::Approx(s_cond(2 * std::numbers::pi - t, s).nats()).epsilon(1e-13));
  }
}
