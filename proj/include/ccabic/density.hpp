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

#include "ccabic/bic.hpp"
#include "ccabic/model.hpp"

namespace ccabic {

/// Density matrix on the direct sum of sectors 0..K_max, stored block by
/// block. Coherences between different excitation numbers are not
/// represented; the generator never creates them from a block-diagonal
/// state.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(std::vector<SectorPtr> sectors);

  static DensityMatrix pure(std::vector<SectorPtr> sectors, const StateVector& psi);
  /// Identity on one sector divided by its dimension.
  static DensityMatrix maximally_mixed(std::vector<SectorPtr> sectors, int k);

  [[nodiscard]] int k_max() const { return static_cast<int>(sectors_.size()) - 1; }
  [[nodiscard]] const std::vector<SectorPtr>& sectors() const { return sectors_; }
  [[nodiscard]] const SectorBasis& sector(int k) const { return *sectors_[static_cast<std::size_t>(k)]; }
  [[nodiscard]] Eigen::Index dim(int k) const;
  [[nodiscard]] Eigen::Index total_dim() const;

  [[nodiscard]] Eigen::Map<Eigen::MatrixXcd> block(int k);
  [[nodiscard]] Eigen::Map<const Eigen::MatrixXcd> block(int k) const;

  [[nodiscard]] Eigen::VectorXcd& flat() { return data_; }
  [[nodiscard]] const Eigen::VectorXcd& flat() const { return data_; }

  [[nodiscard]] cplx trace() const;
  [[nodiscard]] double min_eigenvalue() const;
  /// Largest |rho_ij - conj(rho_ji)|.
  [[nodiscard]] double hermiticity_error() const;
  void hermitize();
  [[nodiscard]] double max_abs() const { return data_.size() ? data_.cwiseAbs().maxCoeff() : 0.0; }

  /// Expanded direct-sum matrix with explicit zero coherences between sectors.
  [[nodiscard]] Eigen::MatrixXcd to_dense() const;
  /// Copies the diagonal blocks of a direct-sum matrix.
  static DensityMatrix from_dense(std::vector<SectorPtr> sectors, const Eigen::MatrixXcd& full);
  /// Largest entry of `full` outside the diagonal sector blocks.
  static double off_block_max(const std::vector<SectorPtr>& sectors, const Eigen::MatrixXcd& full);

  /// <psi|rho|psi> for a state in one of the sectors.
  [[nodiscard]] double expectation(const StateVector& psi) const;

 private:
  std::vector<SectorPtr> sectors_;
  std::vector<Eigen::Index> offsets_;
  Eigen::VectorXcd data_;
};

}  // namespace ccabic
