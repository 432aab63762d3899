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

#include "ccabic/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace ccabic {

int ModelParams::photon_cap(int k) const {
  const int cap = std::max(k, 0);
  return fock_cutoff > 0 ? std::min(fock_cutoff, cap) : cap;
}

ModelParams validate_params(const ModelParams& raw) {
  if (raw.n_chain < 2) throw ValidationError("n_chain must be at least 2");
  if (raw.m_atoms < 1) throw ValidationError("m_atoms must be at least 1");
  if (!(raw.lambda > 0.0)) throw ValidationError("lambda must be positive");
  if (raw.q < 1 || raw.q > raw.n_chain - 1) throw ValidationError("q out of range");
  if (!(raw.gamma_c >= 0.0)) throw ValidationError("gamma_c must be non-negative");
  if (!(raw.gamma_a >= 0.0)) throw ValidationError("gamma_a must be non-negative");
  if (raw.fock_cutoff < 0) throw ValidationError("fock_cutoff must be non-negative");
  for (double v : {raw.omega_c, raw.omega_a, raw.g}) {
    if (!std::isfinite(v)) throw ValidationError("frequencies and couplings must be finite");
  }
  return raw;
}

int resonant_mode_index(const ModelParams& p, double tol) {
  int best = 0;
  double best_gap = 0.0;
  for (int k = 1; k <= p.n_chain - 1; ++k) {
    const double omega_k =
        p.omega_c + 2.0 * p.lambda * std::cos(k * std::numbers::pi / p.n_chain);
    const double gap = std::abs(omega_k - p.omega_a);
    if (best == 0 || gap < best_gap) {
      best = k;
      best_gap = gap;
    }
  }
  if (best == 0 || best_gap > tol) throw ValidationError("no resonant chain mode within tol");
  return best;
}

BasisState::BasisState(int photons_left, std::span<const int> photons_mid, int photons_right,
                       int excited_left, int excited_right) {
  slots_.reserve(photons_mid.size() + 4);
  slots_.push_back(photons_left);
  slots_.insert(slots_.end(), photons_mid.begin(), photons_mid.end());
  slots_.push_back(photons_right);
  slots_.push_back(excited_left);
  slots_.push_back(excited_right);
}

int BasisState::total_photons() const {
  return std::accumulate(slots_.begin(), slots_.end() - 2, 0);
}

int BasisState::excitation_number() const {
  return std::accumulate(slots_.begin(), slots_.end(), 0);
}

BasisState BasisState::with_slot(std::size_t i, int value) const {
  BasisState out = *this;
  out.slots_[i] = value;
  return out;
}

SectorBasis::SectorBasis(int n_chain, int m_atoms, int k, int photon_cap,
                         std::vector<BasisState> states)
    : n_chain_(n_chain), m_atoms_(m_atoms), k_(k), photon_cap_(photon_cap),
      states_(std::move(states)) {}

std::optional<std::size_t> SectorBasis::index_of(const BasisState& s) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), s);
  if (it == states_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - states_.begin());
}

bool SectorBasis::same_layout(const SectorBasis& other) const {
  return k_ == other.k_ && n_chain_ == other.n_chain_ && m_atoms_ == other.m_atoms_ &&
         states_ == other.states_;
}

namespace {

// Depth-first fill of the slots in ascending value order, which yields the
// states already sorted lexicographically.
void fill_slots(std::vector<int>& slots, std::size_t pos, int remaining,
                const std::vector<int>& caps, std::vector<BasisState>& out) {
  if (pos + 1 == slots.size()) {
    if (remaining <= caps[pos]) {
      slots[pos] = remaining;
      out.emplace_back(slots);
    }
    return;
  }
  int tail_capacity = 0;
  for (std::size_t i = pos + 1; i < caps.size(); ++i) tail_capacity += caps[i];
  const int lo = std::max(0, remaining - tail_capacity);
  const int hi = std::min(caps[pos], remaining);
  for (int v = lo; v <= hi; ++v) {
    slots[pos] = v;
    fill_slots(slots, pos + 1, remaining - v, caps, out);
  }
}

}  // namespace

SectorBasis enumerate_sector(const ModelParams& p, int k) {
  const int cap = p.photon_cap(k);
  std::vector<BasisState> states;
  if (k >= 0) {
    const std::size_t n_slots = static_cast<std::size_t>(p.n_chain) + 3;
    std::vector<int> caps(n_slots, cap);
    caps[n_slots - 2] = p.m_atoms;
    caps[n_slots - 1] = p.m_atoms;
    std::vector<int> slots(n_slots, 0);
    fill_slots(slots, 0, k, caps, states);
  }
  return SectorBasis(p.n_chain, p.m_atoms, k, cap, std::move(states));
}

SectorPtr make_sector(const ModelParams& p, int k) {
  return std::make_shared<const SectorBasis>(enumerate_sector(p, k));
}

std::vector<SectorPtr> make_sectors(const ModelParams& p, int k_max) {
  std::vector<SectorPtr> out;
  out.reserve(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) out.push_back(make_sector(p, k));
  return out;
}

}  // namespace ccabic
