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

#include "ccabic/lindblad.hpp"

#include "ccabic/operators.hpp"

namespace ccabic {
namespace {

Eigen::Index sector_offset(const std::vector<SectorPtr>& sectors, int k) {
  Eigen::Index off = 0;
  for (int j = 0; j < k; ++j) off += static_cast<Eigen::Index>(sectors[static_cast<std::size_t>(j)]->size());
  return off;
}

}  // namespace

LindbladGenerator::LindbladGenerator(const ModelParams& p, std::vector<SectorPtr> sectors,
                                     LindbladOptions options)
    : params_(p), sectors_(std::move(sectors)) {
  const int k_max = static_cast<int>(sectors_.size()) - 1;
  const Eigen::Index total = sector_offset(sectors_, k_max + 1);

  dense_hamiltonian_ = Eigen::MatrixXcd::Zero(total, total);
  for (int k = 0; k <= k_max; ++k) {
    const SectorBasis& s = *sectors_[static_cast<std::size_t>(k)];
    SparseOperator h = build_h1(p, s);
    if (options.rotating_frame) {
      h = h - SparseOperator::identity(s.size()).scaled(p.omega_c * k);
    }
    const Eigen::Index off = sector_offset(sectors_, k);
    dense_hamiltonian_.block(off, off, h.rows(), h.cols()) = h.to_dense();
    hamiltonian_.push_back(std::move(h));
  }

  auto add_channel = [&](double rate, Mode mode) {
    if (rate == 0.0) return;
    Channel ch{rate, {}, {}, Eigen::MatrixXcd::Zero(total, total)};
    for (int k = 0; k <= k_max; ++k) {
      const SectorBasis& s = *sectors_[static_cast<std::size_t>(k)];
      if (k == 0) {
        ch.lowering.emplace_back(0, s.size());
        ch.number.emplace_back(s.size(), s.size());
        continue;
      }
      const SectorBasis& lower = *sectors_[static_cast<std::size_t>(k - 1)];
      SparseOperator x = build_lowering(p, s, lower, mode);
      ch.dense.block(sector_offset(sectors_, k - 1), sector_offset(sectors_, k), x.rows(),
                     x.cols()) = x.to_dense();
      ch.number.push_back(x.adjoint() * x);
      ch.lowering.push_back(std::move(x));
    }
    channels_.push_back(std::move(ch));
  };
  add_channel(p.gamma_c, Mode::end(Side::kLeft));
  add_channel(p.gamma_c, Mode::end(Side::kRight));
  if (options.atomic_damping) {
    add_channel(p.gamma_a, Mode::atoms(Side::kLeft));
    add_channel(p.gamma_a, Mode::atoms(Side::kRight));
  }
}

void LindbladGenerator::apply(const DensityMatrix& rho, DensityMatrix& out) const {
  const cplx minus_i{0.0, -1.0};
  const int k_max = rho.k_max();
  Eigen::MatrixXcd work;
  Eigen::MatrixXcd feed;
  for (int k = 0; k <= k_max; ++k) {
    const Eigen::Index d = rho.dim(k);
    auto o = out.block(k);
    if (d == 0) continue;
    const auto r = rho.block(k);

    work.resize(d, d);
    multiply_dense(hamiltonian_[static_cast<std::size_t>(k)], r, work);
    o = minus_i * (work - work.adjoint());

    for (const Channel& ch : channels_) {
      if (k > 0) {
        multiply_dense(ch.number[static_cast<std::size_t>(k)], r, work);
        o -= (0.5 * ch.rate) * (work + work.adjoint());
      }
      if (k < k_max && rho.dim(k + 1) > 0) {
        const SparseOperator& x = ch.lowering[static_cast<std::size_t>(k + 1)];
        feed.resize(d, rho.dim(k + 1));
        multiply_dense(x, rho.block(k + 1), feed);
        // x (x rho)^dag = x rho x^dag for Hermitian rho.
        const Eigen::MatrixXcd feed_adj = feed.adjoint();
        multiply_dense(x, feed_adj, work);
        o += ch.rate * work;
      }
    }
  }
}

DensityMatrix LindbladGenerator::operator()(const DensityMatrix& rho) const {
  DensityMatrix out(rho.sectors());
  apply(rho, out);
  return out;
}

Eigen::MatrixXcd LindbladGenerator::apply_reference_full(const Eigen::MatrixXcd& rho) const {
  const cplx minus_i{0.0, -1.0};
  Eigen::MatrixXcd out = minus_i * (dense_hamiltonian_ * rho - rho * dense_hamiltonian_);
  for (const Channel& ch : channels_) {
    const Eigen::MatrixXcd& x = ch.dense;
    const Eigen::MatrixXcd xdx = x.adjoint() * x;
    out += (0.5 * ch.rate) * (2.0 * x * rho * x.adjoint() - xdx * rho - rho * xdx);
  }
  return out;
}

void LindbladGenerator::apply_reference(const DensityMatrix& rho, DensityMatrix& out) const {
  out = DensityMatrix::from_dense(rho.sectors(), apply_reference_full(rho.to_dense()));
}

}  // namespace ccabic
