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

#include "ccabic/operators.hpp"

#include <cmath>
#include <numbers>
#include <optional>

namespace ccabic {
namespace {

std::size_t slot_of(const ModelParams& p, Mode m) {
  switch (m.kind) {
    case Mode::Kind::kEndCavity:
      return m.side == Side::kLeft ? 0 : static_cast<std::size_t>(p.n_chain);
    case Mode::Kind::kChain:
      return static_cast<std::size_t>(m.index);
    case Mode::Kind::kAtoms:
      return static_cast<std::size_t>(p.n_chain) + (m.side == Side::kLeft ? 1 : 2);
  }
  return 0;
}

// Squared matrix element of lowering `mode` from occupation n to n - 1.
// Integer valued so that forward and reverse terms multiply identically.
long long lowering_sq(const ModelParams& p, Mode mode, int n) {
  if (n <= 0) return 0;
  if (mode.kind == Mode::Kind::kAtoms) return static_cast<long long>(n) * (p.m_atoms - n + 1);
  return n;
}

struct Transition {
  BasisState target;
  long long amplitude_sq;
};

std::optional<Transition> lower(const ModelParams& p, const BasisState& s, Mode mode) {
  const std::size_t slot = slot_of(p, mode);
  const int n = s.slot(slot);
  const long long a2 = lowering_sq(p, mode, n);
  if (a2 == 0) return std::nullopt;
  return Transition{s.with_slot(slot, n - 1), a2};
}

std::optional<Transition> raise(const ModelParams& p, const BasisState& s, Mode mode, int cap) {
  const std::size_t slot = slot_of(p, mode);
  const int n = s.slot(slot);
  const int limit = mode.kind == Mode::Kind::kAtoms ? p.m_atoms : cap;
  if (n >= limit) return std::nullopt;
  return Transition{s.with_slot(slot, n + 1), lowering_sq(p, mode, n + 1)};
}

double h1_diagonal(const ModelParams& p, const BasisState& s) {
  return p.omega_c * s.total_photons() +
         p.omega_a * (s.excited_left() + s.excited_right() - p.m_atoms);
}

double number_diagonal(const ModelParams&, const BasisState& s) {
  return s.excitation_number();
}

void add_hermitian_pair(std::vector<PairTerm>& terms, double c, Mode x, Mode y) {
  terms.push_back({c, x, y});
  terms.push_back({c, y, x});
}

std::vector<PairTerm> h1_terms(const ModelParams& p) {
  std::vector<PairTerm> terms;
  const int last = p.n_chain - 1;
  add_hermitian_pair(terms, p.g, Mode::end(Side::kLeft), Mode::atoms(Side::kLeft));
  add_hermitian_pair(terms, p.g, Mode::end(Side::kRight), Mode::atoms(Side::kRight));
  add_hermitian_pair(terms, p.lambda, Mode::end(Side::kLeft), Mode::chain(1));
  add_hermitian_pair(terms, p.lambda, Mode::end(Side::kRight), Mode::chain(last));
  for (int n = 1; n <= p.n_chain - 2; ++n) {
    add_hermitian_pair(terms, p.lambda, Mode::chain(n), Mode::chain(n + 1));
  }
  return terms;
}

void check_mode_index(const ModelParams& p, int k) {
  if (k < 1 || k > p.n_chain - 1) throw ValidationError("normal mode index out of range");
}

}  // namespace

SparseOperator build_sector_operator(const ModelParams& p, const SectorBasis& sector,
                                     const std::vector<PairTerm>& terms,
                                     double (*diagonal)(const ModelParams&, const BasisState&)) {
  std::vector<Triplet> t;
  const int cap = sector.photon_cap();
  for (std::size_t col = 0; col < sector.size(); ++col) {
    const BasisState& s = sector.state(col);
    if (diagonal != nullptr) t.push_back({col, col, diagonal(p, s)});
    for (const PairTerm& term : terms) {
      if (term.coeff == 0.0) continue;
      auto down = lower(p, s, term.annihilate);
      if (!down) continue;
      auto up = raise(p, down->target, term.create, cap);
      if (!up) continue;
      auto row = sector.index_of(up->target);
      if (!row) continue;
      const double amp = std::sqrt(static_cast<double>(down->amplitude_sq * up->amplitude_sq));
      t.push_back({*row, col, term.coeff * amp});
    }
  }
  return SparseOperator::from_triplets(sector.size(), sector.size(), std::move(t));
}

SparseOperator build_h1(const ModelParams& p, const SectorBasis& sector) {
  return build_sector_operator(p, sector, h1_terms(p), &h1_diagonal);
}

SparseOperator build_number_op(const ModelParams& p, const SectorBasis& sector) {
  return build_sector_operator(p, sector, {}, &number_diagonal);
}

SparseOperator build_lowering(const ModelParams& p, const SectorBasis& from,
                              const SectorBasis& to, Mode mode) {
  std::vector<Triplet> t;
  for (std::size_t col = 0; col < from.size(); ++col) {
    auto down = lower(p, from.state(col), mode);
    if (!down) continue;
    auto row = to.index_of(down->target);
    if (!row) continue;
    t.push_back({*row, col, std::sqrt(static_cast<double>(down->amplitude_sq))});
  }
  return SparseOperator::from_triplets(to.size(), from.size(), std::move(t));
}

SparseOperator build_end_annihilation(const ModelParams& p, const SectorBasis& sector_k,
                                      const SectorBasis& sector_km1, Side side) {
  return build_lowering(p, sector_k, sector_km1, Mode::end(side));
}

SparseOperator build_collective_lowering(const ModelParams& p, const SectorBasis& sector_k,
                                         const SectorBasis& sector_km1, Side side) {
  return build_lowering(p, sector_k, sector_km1, Mode::atoms(side));
}

Eigen::MatrixXd normal_mode_matrix(int n_chain) {
  const int d = n_chain - 1;
  Eigen::MatrixXd u(d, d);
  const double norm = std::sqrt(2.0 / n_chain);
  for (int k = 1; k <= d; ++k) {
    for (int n = 1; n <= d; ++n) {
      u(k - 1, n - 1) = norm * std::sin(k * n * std::numbers::pi / n_chain);
    }
  }
  return u;
}

SparseOperator build_normal_mode(const ModelParams& p, const SectorBasis& sector_k,
                                 const SectorBasis& sector_km1, int k_index) {
  check_mode_index(p, k_index);
  const Eigen::MatrixXd u = normal_mode_matrix(p.n_chain);
  std::vector<Triplet> t;
  for (int n = 1; n <= p.n_chain - 1; ++n) {
    const double c = u(k_index - 1, n - 1);
    for (const auto& e : build_lowering(p, sector_k, sector_km1, Mode::chain(n)).entries()) {
      t.push_back({e.row, e.col, c * e.value});
    }
  }
  return SparseOperator::from_triplets(sector_km1.size(), sector_k.size(), std::move(t));
}

double coupling_lambda(const ModelParams& p, int k, Side side) {
  check_mode_index(p, k);
  const double left =
      p.lambda * std::sqrt(2.0 / p.n_chain) * std::sin(k * std::numbers::pi / p.n_chain);
  if (side == Side::kLeft) return left;
  return (k % 2 == 1) ? left : -left;
}

double normal_mode_frequency(const ModelParams& p, int k) {
  check_mode_index(p, k);
  return p.omega_c + 2.0 * p.lambda * std::cos(k * std::numbers::pi / p.n_chain);
}

SparseOperator build_h1_normal_modes(const ModelParams& p, const SectorBasis& sector_k,
                                     const SectorBasis& sector_km1) {
  const std::size_t dim = sector_k.size();
  // Diagonal part: end cavities and atoms only; chain photons enter via B_k.
  std::vector<Triplet> diag;
  for (std::size_t i = 0; i < dim; ++i) {
    const BasisState& s = sector_k.state(i);
    diag.push_back({i, i,
                    p.omega_c * (s.photons_left() + s.photons_right()) +
                        p.omega_a * (s.excited_left() + s.excited_right() - p.m_atoms)});
  }
  SparseOperator h = SparseOperator::from_triplets(dim, dim, std::move(diag));
  if (sector_k.k_excitations() == 0) return h;

  for (int k = 1; k <= p.n_chain - 1; ++k) {
    const SparseOperator bk = build_normal_mode(p, sector_k, sector_km1, k);
    h = h + (bk.adjoint() * bk).scaled(normal_mode_frequency(p, k));
  }
  for (Side side : {Side::kLeft, Side::kRight}) {
    SparseOperator emitter =
        build_collective_lowering(p, sector_k, sector_km1, side).scaled(p.g);
    for (int k = 1; k <= p.n_chain - 1; ++k) {
      emitter = emitter +
                build_normal_mode(p, sector_k, sector_km1, k).scaled(coupling_lambda(p, k, side));
    }
    const SparseOperator a_dag = build_end_annihilation(p, sector_k, sector_km1, side).adjoint();
    const SparseOperator term = a_dag * emitter;
    h = h + term + term.adjoint();
  }
  return h;
}

double commutator_max_abs(const SparseOperator& a, const SparseOperator& b) {
  return (a * b - b * a).max_abs();
}

}  // namespace ccabic
