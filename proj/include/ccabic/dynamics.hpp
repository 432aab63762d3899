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

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ccabic/bic.hpp"
#include "ccabic/density.hpp"
#include "ccabic/integrator.hpp"
#include "ccabic/lindblad.hpp"
#include "ccabic/model.hpp"
#include "ccabic/sparse.hpp"

namespace ccabic {

// ---------------------------------------------------------------------------
// Master-equation evolution
// ---------------------------------------------------------------------------

struct EvolveOptions {
  double t_end = 100.0;
  double sample_interval = 1.0;
  StepControl control{};
  /// Stop once max|d rho / dt| < steady_threshold * lambda at two consecutive
  /// samples.
  bool stop_at_steady_state = false;
  double steady_threshold = 1e-9;
  /// Runs whose minimum eigenvalue drops below -positivity_abort fail.
  double positivity_abort = 1e-6;
};

struct Snapshot {
  double t = 0.0;
  DensityMatrix rho;
  double trace = 0.0;
  double min_eigenvalue = 0.0;
  double rate_max = 0.0;  // max |d rho / dt|
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  bool reached_steady_state = false;
  double t_final = 0.0;
  IntegrationStats stats;
};

/// Integrates rho' = L rho with the embedded Runge-Kutta pair, recording
/// samples every sample_interval up to t_end. rho is re-symmetrised after
/// every accepted step. Throws NumericalError on step underflow or loss of
/// positivity.
Trajectory evolve(const LindbladGenerator& generator, const DensityMatrix& rho0,
                  const EvolveOptions& options);

/// <beta_i| rho |beta_i> for each state.
std::vector<double> trapped_probabilities(const DensityMatrix& rho,
                                          std::span<const StateVector> states);

/// Basis state with no photons and the given atomic excitations.
StateVector atomic_product_state(const ModelParams& p, int excited_left, int excited_right);

/// Places an atomic amplitude vector (index n_L (M+1) + n_R) into sector k,
/// photons empty. Components with n_L + n_R != k must vanish.
StateVector embed_atomic_state(const ModelParams& p, int k, const Eigen::VectorXcd& atomic);

// ---------------------------------------------------------------------------
// Twisted collective spin S = J_L + J~_R with J~_R^pm = -J_R^pm
// ---------------------------------------------------------------------------

struct DickeState {
  int s = 0;
  int m_s = 0;
  Eigen::VectorXd vector;  // over (n_L, n_R), index n_L (M+1) + n_R
};

struct TwistedSpinOperators {
  Eigen::MatrixXd s_plus;
  Eigen::MatrixXd s_minus;
  Eigen::MatrixXd s_z;
  Eigen::MatrixXd s_squared;
};

TwistedSpinOperators twisted_spin_operators(int m_atoms);

/// Simultaneous eigenbasis of S^2 and S^z, ordered by (s, m_s). Each vector's
/// largest-magnitude component is positive.
std::vector<DickeState> dicke_basis(const ModelParams& p);

struct SpinWeight {
  int s;
  double weight;  // p_s = sum over m_s of |C_{s, m_s}|^2
};

/// Weights p_s of an atomic state; the steady mixture is sum_s p_s |s,-s><s,-s|.
std::vector<SpinWeight> steady_state_prediction(const ModelParams& p,
                                                const Eigen::VectorXcd& psi0_atomic);

/// Tavis-Cummings Hamiltonian
///   omega_a S^z + omega_c a_-^dag a_- + (g / sqrt 2)(S^- a_-^dag + h.c.)
/// with a_- = (a_L - a_R) / sqrt 2, written in the local basis of `sector`.
/// Only defined for the triple-cavity array (N = 2).
SparseOperator effective_tc_hamiltonian(const ModelParams& p, const SectorBasis& sector);

/// S^2 lifted to a sector (acts on the atomic labels only).
SparseOperator build_spin_squared(const ModelParams& p, const SectorBasis& sector);

// ---------------------------------------------------------------------------
// Decay-rate fitting
// ---------------------------------------------------------------------------

struct FitWindow {
  double t_begin = 0.0;
  double t_end = std::numeric_limits<double>::infinity();
};

struct DecayFit {
  double rate = 0.0;  // -d ln(y) / dt
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
  bool decaying = false;  // rate > 0
  bool noisy = false;     // r_squared below noise_r_squared
};

inline constexpr double kNoiseRSquared = 0.999;

/// Least-squares slope of ln(y) against t inside the window. Throws
/// ValidationError for fewer than three points or non-positive samples.
DecayFit fit_decay_rate(std::span<const double> t, std::span<const double> y,
                        FitWindow window = {});
DecayFit fit_decay_rate(const Trajectory& trajectory,
                        const std::function<double(const DensityMatrix&)>& observable,
                        FitWindow window = {});

}  // namespace ccabic
