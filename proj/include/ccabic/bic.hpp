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

#include <vector>

#include <Eigen/Dense>

#include "ccabic/model.hpp"
#include "ccabic/sparse.hpp"

namespace ccabic {

/// Amplitude vector over one excitation sector.
struct StateVector {
  SectorPtr sector;
  Eigen::VectorXcd amplitudes;

  [[nodiscard]] double norm() const { return amplitudes.norm(); }
};

/// |<a|b>|^2. Throws ValidationError if the sectors differ.
double overlap_sq(const StateVector& a, const StateVector& b);

/// Trapped-state amplitudes c_{m,n}: m photons in the resonant chain mode,
/// n excited atoms on the left and K - m - n on the right.
struct BicCoefficients {
  int k_excitations = 0;
  int m_atoms = 0;
  double chi = 0.0;         // |g| / |lambda_q^L|
  double chi_signed = 0.0;  // -g / lambda_q^R, the value entering the amplitudes
  int sign_ratio = 1;       // lambda_q^R / lambda_q^L
  std::vector<std::vector<cplx>> table;  // table[m][n], 0 <= n <= K - m

  [[nodiscard]] cplx at(int m, int n) const {
    return table[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)];
  }
  [[nodiscard]] double norm_sq() const;
};

double chi(const ModelParams& p);

/// Closed-form amplitudes, normalised with c_{0,0} real positive. Factorials
/// are evaluated in log space (exact table up to 20!).
BicCoefficients closed_form_coefficients(const ModelParams& p, int k);

/// Same amplitudes from the trapping-condition recursions.
BicCoefficients recursive_coefficients(const ModelParams& p, int k);

/// Embeds a coefficient table into sector k: (B_q^dag)^m / sqrt(m!) acting on
/// the atomic configuration, end cavities empty.
StateVector embed_coefficients(const ModelParams& p, const BicCoefficients& c);
StateVector assemble_bic_state(const ModelParams& p, int k);

struct TrappingResiduals {
  double eigen = 0.0;  // |(H_1 - (K - M) omega_a) psi|
  double left = 0.0;   // |(g J_L^- + lambda_q^L B_q) psi|
  double right = 0.0;  // |(g J_R^- + lambda_q^R B_q) psi|

  [[nodiscard]] double max() const;
};

TrappingResiduals verify_trapping(const ModelParams& p, const StateVector& psi, int k);

struct RegimeObservables {
  double mean_photons = 0.0;   // <B_q^dag B_q>
  double mean_excited = 0.0;   // <J_L^z + J_R^z + M>
  double photon_fraction = 0.0;
  double atom_fraction = 0.0;
};

RegimeObservables regime_observables(const ModelParams& p, int k);

/// Keeps only the zero-photon amplitudes c_{0,n}, renormalised.
StateVector subradiant_approx(const ModelParams& p, int k);
/// |K photons in B_q, atoms in the ground state>.
StateVector fock_approx(const ModelParams& p, int k);

/// Null space of the stacked trapping conditions on the end-vacuum part of
/// sector k. Other chain normal modes are required to be empty as well, so a
/// single trapped state yields a one-dimensional null space. This path uses
/// no amplitude formula and serves as an oracle for the closed form.
struct NullSpaceResult {
  StateVector state;  // phase fixed: largest component real positive
  int dimension = 0;
  double smallest_singular = 0.0;
  double next_singular = 0.0;
};

NullSpaceResult trapping_null_space(const ModelParams& p, int k);

}  // namespace ccabic
