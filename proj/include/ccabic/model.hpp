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

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ccabic/errors.hpp"

namespace ccabic {

/// Physical constants of the two-ensemble coupled-cavity array.
///
/// The array has n_chain + 1 cavities: two end cavities, each holding
/// m_atoms identical two-level atoms, and n_chain - 1 empty middle cavities
/// coupled by nearest-neighbour hopping `lambda`. Frequencies and rates share
/// one arbitrary unit (the CLI uses units of lambda).
struct ModelParams {
  int n_chain = 2;
  int m_atoms = 1;
  double omega_c = 0.0;
  double omega_a = 0.0;
  double g = 0.1;
  double lambda = 1.0;
  double gamma_c = 0.0;
  double gamma_a = 0.0;
  /// Index of the chain normal mode resonant with the atoms, 1 <= q <= N-1.
  int q = 1;
  /// Per-mode photon cap; 0 means "no truncation" (cap equals the sector's
  /// excitation number, which is exact for this model).
  int fock_cutoff = 0;

  [[nodiscard]] double delta() const { return omega_c - omega_a; }
  [[nodiscard]] int middle_cavities() const { return n_chain - 1; }
  /// Effective photon cap used when enumerating sector `k`.
  [[nodiscard]] int photon_cap(int k) const;
};

/// Returns `raw` unchanged, or throws ValidationError naming the first
/// violated invariant.
ModelParams validate_params(const ModelParams& raw);

/// Chain mode k minimising |Omega_k - omega_a|. Throws ValidationError when
/// no mode lies within `tol`.
int resonant_mode_index(const ModelParams& p, double tol);

/// One occupation-number configuration of the array.
///
/// Occupations are stored flat as
/// [a_L, b_1, ..., b_{N-1}, a_R, n_L, n_R], where n_L and n_R count excited
/// atoms in the symmetric (Dicke) subspace of each ensemble. Comparison is
/// lexicographic in this slot order.
class BasisState {
 public:
  BasisState() = default;
  explicit BasisState(std::vector<int> slots) : slots_(std::move(slots)) {}
  BasisState(int photons_left, std::span<const int> photons_mid, int photons_right,
             int excited_left, int excited_right);

  [[nodiscard]] int chain_length() const { return static_cast<int>(slots_.size()) - 3; }
  [[nodiscard]] int photons_left() const { return slots_.front(); }
  [[nodiscard]] int photons_right() const { return slots_[slots_.size() - 3]; }
  /// Occupation of middle cavity b_n, 1 <= n <= N-1.
  [[nodiscard]] int photons_mid(int n) const { return slots_[static_cast<std::size_t>(n)]; }
  [[nodiscard]] int excited_left() const { return slots_[slots_.size() - 2]; }
  [[nodiscard]] int excited_right() const { return slots_.back(); }
  [[nodiscard]] int total_photons() const;
  [[nodiscard]] int excitation_number() const;

  [[nodiscard]] std::span<const int> slots() const { return slots_; }
  [[nodiscard]] int slot(std::size_t i) const { return slots_[i]; }
  [[nodiscard]] BasisState with_slot(std::size_t i, int value) const;

  auto operator<=>(const BasisState&) const = default;
  bool operator==(const BasisState&) const = default;

 private:
  std::vector<int> slots_;
};

/// All basis states with a fixed total excitation number, in lexicographic
/// order. Immutable after construction.
class SectorBasis {
 public:
  SectorBasis(int n_chain, int m_atoms, int k, int photon_cap, std::vector<BasisState> states);

  [[nodiscard]] int k_excitations() const { return k_; }
  [[nodiscard]] int n_chain() const { return n_chain_; }
  [[nodiscard]] int m_atoms() const { return m_atoms_; }
  [[nodiscard]] int photon_cap() const { return photon_cap_; }
  [[nodiscard]] std::size_t size() const { return states_.size(); }
  [[nodiscard]] bool empty() const { return states_.empty(); }
  [[nodiscard]] const BasisState& state(std::size_t i) const { return states_[i]; }
  [[nodiscard]] const std::vector<BasisState>& states() const { return states_; }
  [[nodiscard]] std::optional<std::size_t> index_of(const BasisState& s) const;

  /// True when both bases enumerate the same states in the same order.
  [[nodiscard]] bool same_layout(const SectorBasis& other) const;

 private:
  int n_chain_;
  int m_atoms_;
  int k_;
  int photon_cap_;
  std::vector<BasisState> states_;
};

using SectorPtr = std::shared_ptr<const SectorBasis>;

/// Enumerates sector k. Negative k, or k beyond capacity, gives an empty
/// sector.
SectorBasis enumerate_sector(const ModelParams& p, int k);
SectorPtr make_sector(const ModelParams& p, int k);

/// Sectors 0..k_max, shared by the dynamics code.
std::vector<SectorPtr> make_sectors(const ModelParams& p, int k_max);

}  // namespace ccabic
