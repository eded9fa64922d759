#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "test_support.hpp"
#include "xdiscord/error.hpp"
#include "xdiscord/numerics.hpp"
#include "xdiscord/optimizer.hpp"
#include "xdiscord/oracle.hpp"
#include "xdiscord/unimodal.hpp"

using namespace xdiscord;
using xdiscord::testing::interior_state;

namespace {

AppendixParams from_xxz(const XxzState& s) { return from_general_x(to_general(s)); }

int extrema_over_theta(const XxzState& s) {
  const auto r = find_interior_extremum(s);
  return r.kind == ExtremumKind::minimum || r.kind == ExtremumKind::maximum ? 1 : 0;
}

}  // namespace

TEST_CASE("w identity") {
  CHECK(AppendixParams{0, 0, 0.3, -0.5, 0}.w() == doctest::Approx(0.25));
  SplitMix64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const AppendixParams p{0, 0, rng.uniform(-1, 1), rng.uniform(-1, 1), 0};
    CHECK(std::abs(p.w() - std::max(std::abs(p.p3), std::abs(p.p4)) / 2) < 1e-15);
  }
}

TEST_CASE("parameter mapping") {
  const auto p = from_general_x({0.1, 0.2, 0.3, 0.4, 0.5});
  CHECK(p.p1 == 0.1);
  CHECK(p.p2 == 0.2);
  CHECK(p.p3 == 0.3);
  CHECK(p.p4 == 0.4);
  CHECK(p.p5 == 0.5);
  CHECK(to_string(AppendixFunction::f2) == "f2");
}

TEST_CASE("bell-shaped f1") {
  const AppendixParams p{0.25, 0.25, 0.656, 0.656, -0.5};
  const auto c = count_interior_extrema(AppendixFunction::f1, p);
  REQUIRE(c.interior_extrema == 1);
  CHECK(c.kinds[0] == ExtremumKind::maximum);
  CHECK(c.locations[0] > 0.0);
  CHECK(c.locations[0] < 1.0);
}

TEST_CASE("f2 at the corner parameters") {
  const AppendixParams p{0.385, 0.385, -0.615, -0.615, -0.23};
  const auto c = count_interior_extrema(AppendixFunction::f2, p);
  CHECK(c.interior_extrema == 1);
  CHECK(c.locations.size() == 1);
}

TEST_CASE("perfect-square degenerate case") {
  for (double p1 : {0.0, 0.2, 0.4}) {
    for (double sign : {1.0, -1.0}) {
      const AppendixParams p{p1, 0.1, 0.0, 0.0, sign * p1};
      CHECK(std::isfinite(f1(1.0, p)));
      CHECK(std::isfinite(f1(0.0, p)));
      CHECK(std::isfinite(f2(1.0, p)));
    }
  }
}

TEST_CASE("f1 follows the conditional entropy") {
  SplitMix64 rng(2);
  for (int i = 0; i < 500; ++i) {
    const XxzState s = interior_state(rng, 1e-6);
    const auto p = from_xxz(s);
    for (double t : linspace(0.0, kHalfPi, 9)) {
      CHECK(std::abs(f1(std::cos(t), p) - s_cond(t, s).nats()) < 1e-10);
    }
  }
}

TEST_CASE("f1 follows the oracle for general X states") {
  const auto sample = sample_general_x(3, 200);
  for (const auto& g : sample.states) {
    const auto p = from_general_x(g);
    const double phi = std::abs(g.c1) >= std::abs(g.c2) ? 0.0 : kHalfPi;
    for (double t : {0.0, 0.4, 1.1, kHalfPi}) {
      const double want = conditional_entropy_oracle(density_matrix(g), {t, phi}).nats();
      CHECK(std::abs(f1(std::cos(t), p) - want) < 1e-10);
    }
  }
}

TEST_CASE("flat and monotone cases have no interior extremum") {
  CHECK(count_interior_extrema(AppendixFunction::f1, from_xxz({0, 0, 0})).interior_extrema == 0);
  CHECK(count_interior_extrema(AppendixFunction::f1, from_xxz({0, 0.3, 0.3})).interior_extrema == 0);
  const XxzState increasing{0.3, 0.2, -0.4};
  REQUIRE(classify_shape(increasing) == ShapeType::II);
  CHECK(count_interior_extrema(AppendixFunction::f1, from_xxz(increasing)).interior_extrema == 0);
}

TEST_CASE("property: extremum count agrees in x and in theta") {
  SplitMix64 rng(4);
  for (int i = 0; i < 300; ++i) {
    const XxzState s = interior_state(rng, 1e-3);
    CHECK(count_interior_extrema(AppendixFunction::f1, from_xxz(s)).interior_extrema == extrema_over_theta(s));
  }
  for (const XxzState s : {XxzState{0.473267, 0.14, 0.34}, XxzState{0.6484352971, 0.14, 0.34}}) {
    const auto c = count_interior_extrema(AppendixFunction::f1, from_xxz(s), 4001);
    REQUIRE(c.interior_extrema == 1);
    const auto r = find_interior_extremum(s);
    CHECK(std::abs(c.locations[0] - std::cos(*r.theta_star)) < 1e-4);
    CHECK(c.kinds[0] == r.kind);
  }
}

TEST_CASE("property: f2 is a four-outcome entropy") {
  const auto sample = sample_general_x(5, 500);
  for (const auto& g : sample.states) {
    const auto p = from_general_x(g);
    for (double x : linspace(0.0, 1.0, 11)) {
      const double v = f2(x, p) / kLn2;
      CHECK(v >= 0.0);
      CHECK(v <= 2.0 + 1e-12);
    }
  }
}

TEST_CASE("errors name the offending argument") {
  const AppendixParams bad{0.9, 0.1, 0.9, 0.9, 0.0};
  try {
    (void)f1(0.5, bad);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find('q') != std::string::npos);
  }
  CHECK_THROWS_AS(f1(1.0, {0, 1.5, 0, 0, 0}), DomainError);
  CHECK_THROWS_AS(f1(1.5, {0, 0, 0, 0, 0}), InvalidInput);
  CHECK_THROWS_AS(count_interior_extrema(AppendixFunction::f1, {}, 100), InvalidInput);
}

TEST_CASE("small conjecture trials") {
  for (auto which : {AppendixFunction::f1, AppendixFunction::f2}) {
    const auto a = conjecture_trial(2000, 11, which);
    const auto b = conjecture_trial(2000, 11, which);
    CHECK(a.samples == 2000);
    CHECK(a.violations.empty());
    CHECK(a.max_count_seen <= 1);
    CHECK(a.max_count_seen == b.max_count_seen);
    CHECK(a.rechecked == b.rechecked);
  }
}

TEST_CASE("f2 is the entropy after measuring qubit B") {
  const auto sample = sample_general_x(21, 100);
  for (const auto& g : sample.states) {
    const auto p = from_general_x(g);
    const double phi = std::abs(g.c1) >= std::abs(g.c2) ? 0.0 : kHalfPi;
    for (double x : {0.0, 0.25, 0.6, 1.0}) {
      const auto e = post_measurement_ensemble(density_matrix(g), {std::acos(x), phi});
      double h = 0.0;
      for (const auto& o : e.outcomes) {
        if (o.probability > 0.0) h += -o.probability * std::log(o.probability) + o.probability * qubit_entropy(o.rho_a).nats();
      }
      CHECK(std::abs(f2(x, p) - h) < 1e-12);
    }
  }
}

TEST_CASE("f2 with two interior extrema") {
  // Stationary points located independently at 40 digits.
  const GeneralXState g{-0.63632889471643961, -0.20764787588991496, -0.4249557293628059, -0.40999692904468921,
                        -0.14558045960020416};
  REQUIRE(validate_general_x(g) == XStateVerdict::ok);
  const auto c = count_interior_extrema(AppendixFunction::f2, from_general_x(g), 10001);
  REQUIRE(c.interior_extrema == 2);
  CHECK(std::abs(c.locations[0] - 0.692031118898444) < 1e-6);
  CHECK(std::abs(c.locations[1] - 0.860321073693122) < 1e-6);
  CHECK(c.kinds[0] == ExtremumKind::minimum);
  CHECK(c.kinds[1] == ExtremumKind::maximum);
  CHECK(std::abs(f2(c.locations[1], from_general_x(g)) - 1.054600285635436741) < 1e-13);
}
