#include "xdiscord/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "xdiscord/error.hpp"
#include "xdiscord/numerics.hpp"

namespace xdiscord {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kZeroProbability = 1e-14;

using cd = std::complex<double>;

std::array<double, 2> qubit_eigenvalues(const Qubit& rho) {
  const double a = rho(0, 0).real();
  const double d = rho(1, 1).real();
  const double b = std::abs(rho(0, 1));
  const double half_trace = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), b);
  return {half_trace + radius, half_trace - radius};
}

// <a, v| rho |a', v> for the measured vector v of qubit B.
Qubit project_b(const DensityMatrix4& rho, const Eigen::Vector2cd& v) {
  Qubit out;
  for (int a = 0; a < 2; ++a) {
    for (int ap = 0; ap < 2; ++ap) {
      cd sum = 0.0;
      for (int b = 0; b < 2; ++b) {
        for (int bp = 0; bp < 2; ++bp) {
          sum += std::conj(v(b)) * rho(2 * a + b, 2 * ap + bp) * v(bp);
        }
      }
      out(a, ap) = sum;
    }
  }
  return out;
}

}  // namespace

MeasurementDirection canonicalize(MeasurementDirection dir) {
  if (!std::isfinite(dir.theta) || !std::isfinite(dir.phi)) {
    throw InvalidInput("measurement angles must be finite");
  }
  double theta = std::fmod(dir.theta, kTwoPi);
  if (theta < 0.0) theta += kTwoPi;
  double phi = dir.phi;
  if (theta > std::numbers::pi) {
    theta = kTwoPi - theta;
    phi += std::numbers::pi;
  }
  phi = std::fmod(phi, kTwoPi);
  if (phi < 0.0) phi += kTwoPi;
  if (phi >= kTwoPi) phi = 0.0;
  return {theta, phi};
}

PostMeasurementEnsemble post_measurement_ensemble(const DensityMatrix4& rho,
                                                  MeasurementDirection dir) {
  check_density_matrix(rho);
  dir = canonicalize(dir);
  const double c = std::cos(dir.theta / 2.0);
  const double s = std::sin(dir.theta / 2.0);
  const cd phase = std::polar(1.0, -dir.phi);
  Eigen::Vector2cd v0(c, -phase * s);
  Eigen::Vector2cd v1(std::conj(phase) * s, c);

  PostMeasurementEnsemble ensemble;
  const std::array<Eigen::Vector2cd, 2> basis = {v0, v1};
  for (std::size_t i = 0; i < 2; ++i) {
    Qubit block = project_b(rho, basis[i]);
    const double p = block.trace().real();
    ConditionalState& out = ensemble.outcomes[i];
    if (p < kZeroProbability) {
      out.probability = std::max(p, 0.0);
      out.rho_a = Qubit::Identity() / 2.0;
      out.zero_probability = true;
    } else {
      out.probability = p;
      out.rho_a = block / p;
    }
  }
  return ensemble;
}

EntropyValue qubit_entropy(const Qubit& rho) {
  double h = 0.0;
  for (double l : qubit_eigenvalues(rho)) h -= xlogx(clamp_nonnegative(l, "qubit eigenvalue"));
  return EntropyValue::nats(std::max(h, 0.0));
}

EntropyValue von_neumann_entropy(const DensityMatrix4& rho) {
  Eigen::SelfAdjointEigenSolver<DensityMatrix4> solver(rho, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("eigen-decomposition failed");
  double h = 0.0;
  for (int i = 0; i < 4; ++i) h -= xlogx(clamp_nonnegative(solver.eigenvalues()(i), "eigenvalue"));
  return EntropyValue::nats(std::max(h, 0.0));
}

Qubit reduced_b(const DensityMatrix4& rho) {
  Qubit out;
  for (int b = 0; b < 2; ++b) {
    for (int bp = 0; bp < 2; ++bp) out(b, bp) = rho(b, bp) + rho(2 + b, 2 + bp);
  }
  return out;
}

EntropyValue conditional_entropy_oracle(const DensityMatrix4& rho, MeasurementDirection dir) {
  const PostMeasurementEnsemble ensemble = post_measurement_ensemble(rho, dir);
  double h = 0.0;
  for (const ConditionalState& o : ensemble.outcomes) {
    if (o.zero_probability) continue;
    h += o.probability * qubit_entropy(o.rho_a).nats();
  }
  return EntropyValue::nats(h);
}

OracleDiscord discord_oracle(const DensityMatrix4& rho, const OracleOptions& options) {
  if (options.theta_grid < 16) throw InvalidInput("oracle theta grid must have at least 16 points");
  if (options.phi_grid < 4) throw InvalidInput("oracle phi grid must have at least 4 points");
  check_density_matrix(rho);

  const std::vector<double> thetas =
      linspace(0.0, kHalfPi, static_cast<std::size_t>(options.theta_grid));
  const double phi_step = kTwoPi / options.phi_grid;

  // Lexicographic (value, theta, phi) minimum; ties keep the earlier point.
  double best_value = std::numeric_limits<double>::infinity();
  std::size_t best_theta = 0;
  int best_phi = 0;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    for (int j = 0; j < options.phi_grid; ++j) {
      const double v = conditional_entropy_oracle(rho, {thetas[i], j * phi_step}).nats();
      if (v < best_value) {
        best_value = v;
        best_theta = i;
        best_phi = j;
      }
    }
  }

  const double phi = best_phi * phi_step;
  const double lo = thetas[best_theta == 0 ? 0 : best_theta - 1];
  const double hi = thetas[std::min(best_theta + 1, thetas.size() - 1)];
  auto f = [&](double t) { return conditional_entropy_oracle(rho, {t, phi}).nats(); };
  MinimumPoint m = golden_section_minimize(f, lo, hi, options.theta_tolerance);
  for (double edge : {lo, hi}) {
    const double v = f(edge);
    if (v < m.value) m = {edge, v};
  }
  if (best_value <= m.value) m = {thetas[best_theta], best_value};

  const double q = qubit_entropy(reduced_b(rho)).nats() - von_neumann_entropy(rho).nats() + m.value;
  return {EntropyValue::nats(std::max(q, 0.0)), canonicalize({m.x, phi}), EntropyValue::nats(m.value)};
}

}  // namespace xdiscord
