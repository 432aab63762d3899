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

#include "ccabic/density.hpp"

#include <algorithm>
#include <limits>

#include <Eigen/Eigenvalues>

namespace ccabic {

DensityMatrix::DensityMatrix(std::vector<SectorPtr> sectors) : sectors_(std::move(sectors)) {
  Eigen::Index off = 0;
  for (const auto& s : sectors_) {
    offsets_.push_back(off);
    const auto d = static_cast<Eigen::Index>(s->size());
    off += d * d;
  }
  data_ = Eigen::VectorXcd::Zero(off);
}

DensityMatrix DensityMatrix::pure(std::vector<SectorPtr> sectors, const StateVector& psi) {
  DensityMatrix rho(std::move(sectors));
  const int k = psi.sector->k_excitations();
  if (k > rho.k_max() || !rho.sector(k).same_layout(*psi.sector)) {
    throw ValidationError("state sector not part of the density-matrix space");
  }
  const Eigen::VectorXcd v = psi.amplitudes / psi.amplitudes.norm();
  rho.block(k) = v * v.adjoint();
  return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(std::vector<SectorPtr> sectors, int k) {
  DensityMatrix rho(std::move(sectors));
  const Eigen::Index d = rho.dim(k);
  rho.block(k) = Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d);
  return rho;
}

Eigen::Index DensityMatrix::dim(int k) const { return static_cast<Eigen::Index>(sector(k).size()); }

Eigen::Index DensityMatrix::total_dim() const {
  Eigen::Index d = 0;
  for (int k = 0; k <= k_max(); ++k) d += dim(k);
  return d;
}

Eigen::Map<Eigen::MatrixXcd> DensityMatrix::block(int k) {
  const Eigen::Index d = dim(k);
  return {data_.data() + offsets_[static_cast<std::size_t>(k)], d, d};
}

Eigen::Map<const Eigen::MatrixXcd> DensityMatrix::block(int k) const {
  const Eigen::Index d = dim(k);
  return {data_.data() + offsets_[static_cast<std::size_t>(k)], d, d};
}

cplx DensityMatrix::trace() const {
  cplx t = 0.0;
  for (int k = 0; k <= k_max(); ++k) t += block(k).trace();
  return t;
}

double DensityMatrix::min_eigenvalue() const {
  double lo = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= k_max(); ++k) {
    if (dim(k) == 0) continue;
    const Eigen::MatrixXcd b = block(k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b, Eigen::EigenvaluesOnly);
    lo = std::min(lo, es.eigenvalues().minCoeff());
  }
  return lo;
}

double DensityMatrix::hermiticity_error() const {
  double e = 0.0;
  for (int k = 0; k <= k_max(); ++k) {
    if (dim(k) == 0) continue;
    const auto b = block(k);
    e = std::max(e, (b - b.adjoint()).cwiseAbs().maxCoeff());
  }
  return e;
}

void DensityMatrix::hermitize() {
  for (int k = 0; k <= k_max(); ++k) {
    auto b = block(k);
    const Eigen::MatrixXcd sym = 0.5 * (b + b.adjoint());
    b = sym;
  }
}

Eigen::MatrixXcd DensityMatrix::to_dense() const {
  const Eigen::Index n = total_dim();
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(n, n);
  Eigen::Index off = 0;
  for (int k = 0; k <= k_max(); ++k) {
    full.block(off, off, dim(k), dim(k)) = block(k);
    off += dim(k);
  }
  return full;
}

DensityMatrix DensityMatrix::from_dense(std::vector<SectorPtr> sectors,
                                        const Eigen::MatrixXcd& full) {
  DensityMatrix rho(std::move(sectors));
  Eigen::Index off = 0;
  for (int k = 0; k <= rho.k_max(); ++k) {
    rho.block(k) = full.block(off, off, rho.dim(k), rho.dim(k));
    off += rho.dim(k);
  }
  return rho;
}

double DensityMatrix::off_block_max(const std::vector<SectorPtr>& sectors,
                                    const Eigen::MatrixXcd& full) {
  Eigen::MatrixXcd masked = full;
  Eigen::Index off = 0;
  for (const auto& s : sectors) {
    const auto d = static_cast<Eigen::Index>(s->size());
    masked.block(off, off, d, d).setZero();
    off += d;
  }
  return masked.size() ? masked.cwiseAbs().maxCoeff() : 0.0;
}

double DensityMatrix::expectation(const StateVector& psi) const {
  const int k = psi.sector->k_excitations();
  if (k < 0 || k > k_max() || !sector(k).same_layout(*psi.sector)) {
    throw ValidationError("dimension mismatch between state and density matrix");
  }
  return psi.amplitudes.dot(block(k) * psi.amplitudes).real();
}

}  // namespace ccabic
