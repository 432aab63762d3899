// Copyright 2026 The ccabic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

#include "ccabic/model.hpp"

namespace ccabic {

using Matrix5cd = Eigen::Matrix<std::complex<double>, 5, 5>;
using Vector5cd = Eigen::Matrix<std::complex<double>, 5, 1>;

/// Amplitude equations i d<v>/dt = A <v> for v = (a_L, a_R, b_1, d_L, d_R),
/// with the ensembles replaced by bosons d_mu (leading Holstein-Primakoff
/// order) and collective atomic damping M gamma_a / 2.
struct LinearSystem {
  Matrix5cd matrix;
  Vector5cd eigenvalues;   // sorted by imaginary part, then real part
  Matrix5cd eigenvectors;  // column j belongs to eigenvalues[j]
};

/// Triple-cavity only; throws ValidationError for N != 2.
LinearSystem linear_matrix(const ModelParams& p);

struct TrappedMode {
  double gamma = 0.0;  // amplitude decay rate |Im lambda|
  std::complex<double> eigenvalue;
  bool degenerate = false;  // another eigenvalue is equally close to the real axis
};

/// Eigenvalue closest to the real axis.
TrappedMode trapped_mode(const ModelParams& p);
double trapped_mode_decay(const ModelParams& p);

struct GammaApprox {
  double value = 0.0;
  /// g < 5 max(gamma_a, gamma_c, lambda): outside the strong-coupling regime
  /// where the closed form holds.
  bool regime_warning = false;
};

/// (M^2 gamma_a g^2 + delta^2 gamma_c) / (M^2 g^4 + delta^2 gamma_c^2 / 4) lambda^2
GammaApprox gamma_approx(const ModelParams& p);

/// gamma_c / Gamma from the eigensolve; +infinity when Gamma = 0.
double q_factor(const ModelParams& p);
/// gamma_c / Gamma from the closed-form rate.
double q_factor_approx(const ModelParams& p);

/// Positive detuning at which Q(delta) falls to Q(0) / 2, by bisection on
/// (0, delta_max]. Throws NumericalError if Q does not halve in the bracket.
double half_maximum_detuning(const ModelParams& p, double delta_max);

/// Orthonormal polariton modes over (d_L, d_R, b_1) at resonance.
struct Polaritons {
  Eigen::Vector3d f_plus;
  Eigen::Vector3d f_minus;
  Eigen::Vector3d f_zero;  // decoupled from both end cavities
  double xi_plus = 0.0;
  double xi_minus = 0.0;
};

Polaritons polariton_transform(const ModelParams& p);

}  // namespace ccabic
