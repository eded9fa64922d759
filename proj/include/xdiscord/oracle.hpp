#pragma once

#include <array>

#include <Eigen/Core>

#include "xdiscord/entropy.hpp"
#include "xdiscord/state.hpp"

namespace xdiscord {

/// Measurement axis on the Bloch sphere of qubit B. Projectors are
/// |0'> = cos(theta/2)|0> - e^{-i phi} sin(theta/2)|1> and its complement.
struct MeasurementDirection {
  double theta = 0.0;
  double phi = 0.0;
};

/// Maps any finite (theta, phi) to the same axis with theta in [0, pi] and
/// phi in [0, 2 pi).
MeasurementDirection canonicalize(MeasurementDirection dir);

using Qubit = Eigen::Matrix2cd;

struct ConditionalState {
  double probability = 0.0;
  Qubit rho_a;                    // maximally mixed when the outcome has zero probability
  bool zero_probability = false;  // probability below 1e-14
};

struct PostMeasurementEnsemble {
  std::array<ConditionalState, 2> outcomes;
};

PostMeasurementEnsemble post_measurement_ensemble(const DensityMatrix4& rho,
                                                  MeasurementDirection dir);

/// Entropy of a 2x2 density matrix from its closed-form eigenvalues.
EntropyValue qubit_entropy(const Qubit& rho);

EntropyValue von_neumann_entropy(const DensityMatrix4& rho);

/// Reduced state of qubit B (the measured one).
Qubit reduced_b(const DensityMatrix4& rho);

/// Average entropy of A after measuring B along dir.
EntropyValue conditional_entropy_oracle(const DensityMatrix4& rho, MeasurementDirection dir);

struct OracleOptions {
  int theta_grid = 2001;  // points on [0, pi/2]; at least 16
  int phi_grid = 16;      // points on [0, 2 pi); at least 4
  double theta_tolerance = 1e-12;
};

struct OracleDiscord {
  EntropyValue q;
  MeasurementDirection argmin;
  EntropyValue s_cond_min;
};

/// Discord by brute-force minimization of the conditional entropy over
/// measurement directions: grid search then golden-section refinement in
/// theta at the best phi. Antipodal axes define the same measurement, so
/// theta runs over [0, pi/2].
OracleDiscord discord_oracle(const DensityMatrix4& rho, const OracleOptions& options = {});

}  // namespace xdiscord
