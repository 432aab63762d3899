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

enum class Side { kLeft, kRight };

/// A single bosonic mode or collective spin addressed in a BasisState.
struct Mode {
  enum class Kind { kEndCavity, kChain, kAtoms };
  Kind kind;
  Side side = Side::kLeft;  // end cavities and atoms
  int index = 0;            // chain cavity n, 1 <= n <= N-1

  static Mode end(Side s) { return {Kind::kEndCavity, s, 0}; }
  static Mode chain(int n) { return {Kind::kChain, Side::kLeft, n}; }
  static Mode atoms(Side s) { return {Kind::kAtoms, s, 0}; }
};

/// coeff * create^dagger * annihilate, acting within one sector.
struct PairTerm {
  double coeff;
  Mode create;
  Mode annihilate;
};

/// Assembles sum_i diag(state_i) + sum_terms on `sector`. Terms whose image
/// leaves the truncated sector are dropped.
SparseOperator build_sector_operator(const ModelParams& p, const SectorBasis& sector,
                                     const std::vector<PairTerm>& terms,
                                     double (*diagonal)(const ModelParams&, const BasisState&));

/// H_1 in the local cavity basis.
SparseOperator build_h1(const ModelParams& p, const SectorBasis& sector);

/// Total excitation number; diagonal with eigenvalue k on sector k.
SparseOperator build_number_op(const ModelParams& p, const SectorBasis& sector);

/// Lowering map of one mode from `from` (k) to `to` (k - 1). Photon modes use
/// sqrt(n); a collective spin uses sqrt(n (M - n + 1)).
SparseOperator build_lowering(const ModelParams& p, const SectorBasis& from,
                              const SectorBasis& to, Mode mode);

SparseOperator build_end_annihilation(const ModelParams& p, const SectorBasis& sector_k,
                                      const SectorBasis& sector_km1, Side side);
SparseOperator build_collective_lowering(const ModelParams& p, const SectorBasis& sector_k,
                                         const SectorBasis& sector_km1, Side side);

/// Chain normal mode B_k = sqrt(2/N) sum_n sin(k n pi / N) b_n.
SparseOperator build_normal_mode(const ModelParams& p, const SectorBasis& sector_k,
                                 const SectorBasis& sector_km1, int k_index);

/// (N-1)x(N-1) matrix of normal-mode coefficients, row k-1, column n-1.
Eigen::MatrixXd normal_mode_matrix(int n_chain);

double coupling_lambda(const ModelParams& p, int k, Side side);
double normal_mode_frequency(const ModelParams& p, int k);

/// H_1 rebuilt from normal modes and end-cavity couplings. Independent of
/// build_h1 and used to cross-check it.
SparseOperator build_h1_normal_modes(const ModelParams& p, const SectorBasis& sector_k,
                                     const SectorBasis& sector_km1);

/// Largest entry magnitude of a*b - b*a.
double commutator_max_abs(const SparseOperator& a, const SparseOperator& b);

}  // namespace ccabic
