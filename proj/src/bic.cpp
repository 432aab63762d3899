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

#include "ccabic/bic.hpp"

#include <array>
#include <cmath>
#include <cstdint>

#include <Eigen/SVD>

#include "ccabic/operators.hpp"

namespace ccabic {
namespace {

double log_factorial(int n) {
  static const std::array<double, 21> table = [] {
    std::array<double, 21> t{};
    std::uint64_t f = 1;
    for (int i = 0; i <= 20; ++i) {
      if (i > 0) f *= static_cast<std::uint64_t>(i);
      t[static_cast<std::size_t>(i)] = std::log(static_cast<double>(f));
    }
    return t;
  }();
  if (n < 0) throw std::domain_error("negative factorial");
  if (n <= 20) return table[static_cast<std::size_t>(n)];
  return std::lgamma(n + 1.0);
}

void check_trappable(const ModelParams& p, int k) {
  if (k < 0) throw ValidationError("excitation number must be non-negative");
  if (k > p.m_atoms) throw ValidationError("no trapped state with K > M");
}

BicCoefficients empty_table(const ModelParams& p, int k) {
  BicCoefficients c;
  c.k_excitations = k;
  c.m_atoms = p.m_atoms;
  const double left = coupling_lambda(p, p.q, Side::kLeft);
  const double right = coupling_lambda(p, p.q, Side::kRight);
  c.chi = std::abs(p.g) / std::abs(left);
  c.chi_signed = -p.g / right;
  c.sign_ratio = right / left > 0.0 ? 1 : -1;
  c.table.resize(static_cast<std::size_t>(k) + 1);
  for (int m = 0; m <= k; ++m) c.table[static_cast<std::size_t>(m)].assign(k - m + 1, 0.0);
  return c;
}

void normalise(BicCoefficients& c) {
  const double scale = 1.0 / std::sqrt(c.norm_sq());
  for (auto& row : c.table) {
    for (auto& v : row) v *= scale;
  }
}

}  // namespace

double overlap_sq(const StateVector& a, const StateVector& b) {
  if (!a.sector || !b.sector || !a.sector->same_layout(*b.sector)) {
    throw ValidationError("states live in different sectors");
  }
  return std::norm(a.amplitudes.dot(b.amplitudes));
}

double BicCoefficients::norm_sq() const {
  double s = 0.0;
  for (const auto& row : table) {
    for (const auto& v : row) s += std::norm(v);
  }
  return s;
}

double chi(const ModelParams& p) {
  return std::abs(p.g) / std::abs(coupling_lambda(p, p.q, Side::kLeft));
}

BicCoefficients closed_form_coefficients(const ModelParams& p, int k) {
  check_trappable(p, k);
  BicCoefficients c = empty_table(p, k);
  const int big_m = p.m_atoms;
  for (int m = 0; m <= k; ++m) {
    for (int n = 0; n <= k - m; ++n) {
      const double log_mag = 0.5 * (log_factorial(big_m - k + n + m) - log_factorial(k - n - m) -
                                    log_factorial(m) + log_factorial(big_m - n) -
                                    log_factorial(big_m) + log_factorial(k) -
                                    log_factorial(big_m - k) - log_factorial(n));
      const double sign = (n % 2 == 1) ? c.sign_ratio : 1.0;
      c.table[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)] =
          std::pow(c.chi_signed, m) * sign * std::exp(log_mag);
    }
  }
  normalise(c);
  return c;
}

BicCoefficients recursive_coefficients(const ModelParams& p, int k) {
  check_trappable(p, k);
  BicCoefficients c = empty_table(p, k);
  const int big_m = p.m_atoms;
  const double left = coupling_lambda(p, p.q, Side::kLeft);
  const double right = coupling_lambda(p, p.q, Side::kRight);
  auto& t = c.table;
  t[0][0] = 1.0;
  // Zero-photon seeds: both conditions must produce the same c_{1,n-1}.
  for (int n = 1; n <= k; ++n) {
    const double num = static_cast<double>(k - n + 1) * (big_m - k + n);
    const double den = static_cast<double>(n) * (big_m - n + 1);
    t[0][static_cast<std::size_t>(n)] =
        (left / right) * std::sqrt(num / den) * t[0][static_cast<std::size_t>(n - 1)];
  }
  for (int m = 0; m < k; ++m) {
    for (int n = 0; n <= k - m - 1; ++n) {
      const int r = k - m - n;
      const double step = -(p.g / right) * std::sqrt(static_cast<double>(r) * (big_m - r + 1)) /
                          std::sqrt(static_cast<double>(m + 1));
      t[static_cast<std::size_t>(m + 1)][static_cast<std::size_t>(n)] =
          step * t[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)];
    }
  }
  normalise(c);
  return c;
}

StateVector embed_coefficients(const ModelParams& p, const BicCoefficients& c) {
  const int k = c.k_excitations;
  if (p.fock_cutoff > 0 && p.fock_cutoff < k) {
    throw ValidationError("fock_cutoff below the excitation number of the trapped state");
  }
  const auto sectors = make_sectors(p, k);
  // creators[j] maps sector j to sector j + 1.
  std::vector<SparseOperator> creators;
  for (int j = 0; j < k; ++j) {
    creators.push_back(
        build_normal_mode(p, *sectors[static_cast<std::size_t>(j + 1)],
                          *sectors[static_cast<std::size_t>(j)], p.q)
            .adjoint());
  }
  const SectorBasis& target = *sectors.back();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(target.size()));
  const std::vector<int> empty_chain(static_cast<std::size_t>(p.n_chain - 1), 0);
  for (int m = 0; m <= k; ++m) {
    for (int n = 0; n <= k - m; ++n) {
      const cplx amp = c.at(m, n);
      if (amp == cplx{0.0, 0.0}) continue;
      const SectorBasis& start = *sectors[static_cast<std::size_t>(k - m)];
      const auto idx = start.index_of(BasisState(0, empty_chain, 0, n, k - m - n));
      if (!idx) throw std::logic_error("atomic configuration missing from sector");
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(start.size()));
      v[static_cast<Eigen::Index>(*idx)] = 1.0;
      for (int step = 1; step <= m; ++step) {
        v = creators[static_cast<std::size_t>(k - m + step - 1)].apply(v) /
            std::sqrt(static_cast<double>(step));
      }
      out += amp * v;
    }
  }
  return StateVector{sectors.back(), std::move(out)};
}

StateVector assemble_bic_state(const ModelParams& p, int k) {
  return embed_coefficients(p, closed_form_coefficients(p, k));
}

double TrappingResiduals::max() const { return std::max({eigen, left, right}); }

TrappingResiduals verify_trapping(const ModelParams& p, const StateVector& psi, int k) {
  const SectorBasis& sector = *psi.sector;
  if (sector.k_excitations() != k) throw ValidationError("state is not in sector K");
  TrappingResiduals res;
  const double energy = (k - p.m_atoms) * p.omega_a;
  res.eigen = (build_h1(p, sector).apply(psi.amplitudes) - energy * psi.amplitudes).norm();
  if (k == 0) return res;
  const SectorBasis lower = enumerate_sector(p, k - 1);
  const SparseOperator bq = build_normal_mode(p, sector, lower, p.q);
  for (Side side : {Side::kLeft, Side::kRight}) {
    const SparseOperator cond = build_collective_lowering(p, sector, lower, side).scaled(p.g) +
                                bq.scaled(coupling_lambda(p, p.q, side));
    const double r = cond.apply(psi.amplitudes).norm();
    (side == Side::kLeft ? res.left : res.right) = r;
  }
  return res;
}

RegimeObservables regime_observables(const ModelParams& p, int k) {
  const BicCoefficients c = closed_form_coefficients(p, k);
  RegimeObservables obs;
  for (int m = 0; m <= k; ++m) {
    for (int n = 0; n <= k - m; ++n) {
      const double w = std::norm(c.at(m, n));
      obs.mean_photons += m * w;
      obs.mean_excited += (k - m) * w;
    }
  }
  if (k > 0) {
    obs.photon_fraction = obs.mean_photons / k;
    obs.atom_fraction = obs.mean_excited / k;
  }
  return obs;
}

StateVector subradiant_approx(const ModelParams& p, int k) {
  BicCoefficients c = closed_form_coefficients(p, k);
  for (std::size_t m = 1; m < c.table.size(); ++m) {
    for (auto& v : c.table[m]) v = 0.0;
  }
  normalise(c);
  return embed_coefficients(p, c);
}

StateVector fock_approx(const ModelParams& p, int k) {
  BicCoefficients c = closed_form_coefficients(p, k);
  for (auto& row : c.table) {
    for (auto& v : row) v = 0.0;
  }
  c.table[static_cast<std::size_t>(k)][0] = 1.0;
  return embed_coefficients(p, c);
}

NullSpaceResult trapping_null_space(const ModelParams& p, int k) {
  check_trappable(p, k);
  const SectorPtr sector = make_sector(p, k);
  std::vector<Eigen::Index> keep;
  for (std::size_t i = 0; i < sector->size(); ++i) {
    const BasisState& s = sector->state(i);
    if (s.photons_left() == 0 && s.photons_right() == 0) keep.push_back(static_cast<Eigen::Index>(i));
  }
  const auto cols = static_cast<Eigen::Index>(keep.size());

  std::vector<Eigen::MatrixXcd> blocks;
  if (k > 0) {
    const SectorBasis lower = enumerate_sector(p, k - 1);
    const SparseOperator bq = build_normal_mode(p, *sector, lower, p.q);
    for (Side side : {Side::kLeft, Side::kRight}) {
      blocks.push_back((build_collective_lowering(p, *sector, lower, side).scaled(p.g) +
                        bq.scaled(coupling_lambda(p, p.q, side)))
                           .to_dense());
    }
    for (int mode = 1; mode <= p.n_chain - 1; ++mode) {
      if (mode != p.q) blocks.push_back(build_normal_mode(p, *sector, lower, mode).to_dense());
    }
  }
  Eigen::Index rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  Eigen::MatrixXcd stacked(rows, cols);
  Eigen::Index r0 = 0;
  for (const auto& b : blocks) {
    for (Eigen::Index j = 0; j < cols; ++j) stacked.block(r0, j, b.rows(), 1) = b.col(keep[static_cast<std::size_t>(j)]);
    r0 += b.rows();
  }

  NullSpaceResult out;
  Eigen::VectorXcd restricted;
  std::vector<double> sv(static_cast<std::size_t>(cols), 0.0);
  if (rows == 0) {
    restricted = Eigen::VectorXcd::Zero(cols);
    restricted[cols - 1] = 1.0;
    out.dimension = static_cast<int>(cols);
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    for (Eigen::Index i = 0; i < s.size(); ++i) sv[static_cast<std::size_t>(i)] = s[i];
    const double tol = 1e-9 * std::max(1.0, s.size() > 0 ? s[0] : 0.0);
    int rank = 0;
    for (double v : sv) rank += v > tol ? 1 : 0;
    out.dimension = static_cast<int>(cols) - rank;
    restricted = svd.matrixV().col(cols - 1);
  }
  out.smallest_singular = sv.back();
  out.next_singular = sv.size() > 1 ? sv[sv.size() - 2] : 0.0;

  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(sector->size()));
  for (Eigen::Index j = 0; j < cols; ++j) full[keep[static_cast<std::size_t>(j)]] = restricted[j];
  Eigen::Index big = 0;
  full.cwiseAbs().maxCoeff(&big);
  full *= std::conj(full[big]) / std::abs(full[big]);
  full.normalize();
  out.state = StateVector{sector, std::move(full)};
  return out;
}

}  // namespace ccabic
