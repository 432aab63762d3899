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

#include "ccabic/density.hpp"
#include "ccabic/model.hpp"
#include "ccabic/sparse.hpp"

namespace ccabic {

struct LindbladOptions {
  /// Subtract omega_c * N from H_1. Does not change block-diagonal dynamics.
  bool rotating_frame = true;
  /// Add (gamma_a / 2) D[J_mu^-] for both ensembles.
  bool atomic_damping = false;
};

/// Markovian generator
///   L rho = -i [H_1, rho] + sum_mu (gamma_c / 2) D[a_mu] rho
///   D[X] rho = 2 X rho X^dag - X^dag X rho - rho X^dag X
/// on a block-diagonal density matrix over sectors 0..K_max.
class LindbladGenerator {
 public:
  LindbladGenerator(const ModelParams& p, std::vector<SectorPtr> sectors,
                    LindbladOptions options = {});

  [[nodiscard]] const ModelParams& params() const { return params_; }
  [[nodiscard]] const std::vector<SectorPtr>& sectors() const { return sectors_; }
  [[nodiscard]] const SparseOperator& hamiltonian(int k) const {
    return hamiltonian_[static_cast<std::size_t>(k)];
  }

  /// Block kernel; sparse products run through the OpenMP kernel.
  void apply(const DensityMatrix& rho, DensityMatrix& out) const;
  [[nodiscard]] DensityMatrix operator()(const DensityMatrix& rho) const;

  /// Serial reference: dense matrices on the full direct sum.
  void apply_reference(const DensityMatrix& rho, DensityMatrix& out) const;
  /// Reference generator applied to an arbitrary direct-sum matrix.
  [[nodiscard]] Eigen::MatrixXcd apply_reference_full(const Eigen::MatrixXcd& rho) const;

 private:
  struct Channel {
    double rate;
    std::vector<SparseOperator> lowering;  // [k]: sector k -> k - 1, empty for k = 0
    std::vector<SparseOperator> number;    // [k]: X^dag X on sector k
    Eigen::MatrixXcd dense;                // direct-sum matrix of X
  };

  ModelParams params_;
  std::vector<SectorPtr> sectors_;
  std::vector<SparseOperator> hamiltonian_;
  std::vector<Channel> channels_;
  Eigen::MatrixXcd dense_hamiltonian_;
};

}  // namespace ccabic
