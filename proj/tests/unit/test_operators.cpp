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

#include <doctest.h>

#include <cmath>

#include "ccabic/model.hpp"
#include "ccabic/operators.hpp"
#include "oracles.hpp"

using namespace ccabic;

namespace {

ModelParams params(int n, int m, double g = 0.3) {
  ModelParams p;
  p.n_chain = n;
  p.m_atoms = m;
  p.omega_c = 0.7;
  p.omega_a = -0.4;
  p.g = g;
  p.lambda = 1.3;
  p.q = 1;
  return p;
}

oracle::Params to_oracle(const ModelParams& p) {
  return {p.n_chain, p.m_atoms, p.omega_c, p.omega_a, p.g, p.lambda};
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TEST_CASE("vacuum sector holds the atomic ground energy") {
  for (int m = 1; m <= 4; ++m) {
    ModelParams p = params(3, m);
    const SectorBasis s = enumerate_sector(p, 0);
    const Eigen::MatrixXcd h = build_h1(p, s).to_dense();
    REQUIRE(h.rows() == 1);
    CHECK(h(0, 0).real() == doctest::Approx(-m * p.omega_a));
  }
}

TEST_CASE("single excitation, one atom per end: hand-built matrix") {
  ModelParams p = params(2, 1);
  const SectorBasis s = enumerate_sector(p, 1);
  const Eigen::MatrixXcd h = build_h1(p, s).to_dense();
  const Eigen::MatrixXcd hand = oracle::hand_h1_n2m1k1(p.omega_c, p.omega_a, p.g, p.lambda);
  CHECK(max_abs(h - hand) < 1e-15);
}

TEST_CASE("H_1 matches the tensor-product construction") {
  for (int n = 2; n <= 4; ++n) {
    for (int m = 1; m <= 3; ++m) {
      for (int k = 0; k <= 3; ++k) {
        const ModelParams p = params(n, m);
        const SectorBasis s = enumerate_sector(p, k);
        const Eigen::MatrixXcd h = build_h1(p, s).to_dense();
        const Eigen::MatrixXcd ref = oracle::h1_dense(to_oracle(p), k);
        REQUIRE(h.rows() == ref.rows());
        CHECK(max_abs(h - ref) < 1e-12);
      }
    }
  }
}

TEST_CASE("H_1 is exactly Hermitian and conserves the excitation number") {
  for (int n = 2; n <= 4; ++n) {
    for (int m = 1; m <= 3; ++m) {
      for (int k = 0; k <= 3; ++k) {
        const ModelParams p = params(n, m);
        const SectorBasis s = enumerate_sector(p, k);
        const SparseOperator h = build_h1(p, s);
        const SparseOperator num = build_number_op(p, s);
        CHECK(h.is_hermitian());
        CHECK(commutator_max_abs(h, num) < 1e-12);
      }
    }
  }
}

TEST_CASE("number operator is K on sector K") {
  const ModelParams p = params(3, 2);
  CHECK(build_number_op(p, enumerate_sector(p, 0)).max_abs() == 0.0);
  for (int k = 1; k <= 4; ++k) {
    const SectorBasis s = enumerate_sector(p, k);
    const Eigen::MatrixXcd num = build_number_op(p, s).to_dense();
    CHECK(max_abs(num - k * Eigen::MatrixXcd::Identity(num.rows(), num.cols())) == 0.0);
    CHECK(num.trace().real() == doctest::Approx(static_cast<double>(k * s.size())));
  }
}

TEST_CASE("end-cavity annihilation amplitudes") {
  const ModelParams p = params(2, 1);
  const SectorBasis s2 = enumerate_sector(p, 2);
  const SectorBasis s1 = enumerate_sector(p, 1);
  const SectorBasis s0 = enumerate_sector(p, 0);
  const std::vector<int> none{0};

  const SparseOperator a1 = build_end_annihilation(p, s1, s0, Side::kLeft);
  CHECK(std::abs(a1.coeff(0, *s1.index_of(BasisState(1, none, 0, 0, 0))) - 1.0) < 1e-15);

  const SparseOperator a2 = build_end_annihilation(p, s2, s1, Side::kLeft);
  const auto from = *s2.index_of(BasisState(2, none, 0, 0, 0));
  const auto to = *s1.index_of(BasisState(1, none, 0, 0, 0));
  CHECK(std::abs(a2.coeff(to, from) - std::sqrt(2.0)) < 1e-15);

  for (std::size_t c = 0; c < s2.size(); ++c) {
    if (s2.state(c).photons_left() != 0) continue;
    for (std::size_t r = 0; r < s1.size(); ++r) CHECK(a2.coeff(r, c) == cplx{});
  }

  const SparseOperator empty = build_end_annihilation(p, s0, enumerate_sector(p, -1), Side::kRight);
  CHECK(empty.rows() == 0);
  CHECK(empty.nnz() == 0);
}

TEST_CASE("ladder operators match the tensor-product construction") {
  const ModelParams p = params(3, 2);
  const oracle::Params o = to_oracle(p);
  for (int k = 1; k <= 3; ++k) {
    const SectorBasis from = enumerate_sector(p, k);
    const SectorBasis to = enumerate_sector(p, k - 1);
    CHECK(max_abs(build_end_annihilation(p, from, to, Side::kLeft).to_dense() -
                  oracle::lowering_dense(o, k, oracle::mode_left(o), false)) < 1e-14);
    CHECK(max_abs(build_end_annihilation(p, from, to, Side::kRight).to_dense() -
                  oracle::lowering_dense(o, k, oracle::mode_right(o), false)) < 1e-14);
    CHECK(max_abs(build_collective_lowering(p, from, to, Side::kLeft).to_dense() -
                  oracle::lowering_dense(o, k, oracle::mode_atoms_left(o), true)) < 1e-14);
    CHECK(max_abs(build_collective_lowering(p, from, to, Side::kRight).to_dense() -
                  oracle::lowering_dense(o, k, oracle::mode_atoms_right(o), true)) < 1e-14);
  }
}

TEST_CASE("couplings and frequencies of the chain modes") {
  ModelParams p = params(2, 1);
  p.lambda = 1.0;
  CHECK(coupling_lambda(p, 1, Side::kLeft) == doctest::Approx(1.0));
  CHECK(coupling_lambda(p, 1, Side::kRight) == doctest::Approx(1.0));
  CHECK(normal_mode_frequency(p, 1) == doctest::Approx(p.omega_c));

  p = params(4, 1);
  p.lambda = 1.0;
  CHECK(coupling_lambda(p, 2, Side::kRight) == doctest::Approx(-coupling_lambda(p, 2, Side::kLeft)));
  CHECK(coupling_lambda(p, 1, Side::kLeft) == doctest::Approx(0.5));
  CHECK(normal_mode_frequency(p, 1) == doctest::Approx(p.omega_c + std::sqrt(2.0)));
  CHECK(normal_mode_frequency(p, 3) == doctest::Approx(p.omega_c - std::sqrt(2.0)));
  CHECK_THROWS(normal_mode_frequency(p, 4));
}

TEST_CASE("normal-mode transform is orthogonal") {
  for (int n = 2; n <= 8; ++n) {
    const Eigen::MatrixXd s = normal_mode_matrix(n);
    REQUIRE(s.rows() == n - 1);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n - 1, n - 1);
    CHECK((s * s.transpose() - id).cwiseAbs().maxCoeff() < 1e-12);
  }
  const Eigen::MatrixXd s4 = normal_mode_matrix(4);
  const double c = std::sqrt(0.5);
  CHECK(s4(0, 0) == doctest::Approx(c * std::sin(std::numbers::pi / 4)));
  CHECK(s4(0, 1) == doctest::Approx(c * 1.0));
  CHECK(s4(0, 2) == doctest::Approx(c * std::sin(3 * std::numbers::pi / 4)));
}

TEST_CASE("B_1 equals b_1 for the triple cavity") {
  const ModelParams p = params(2, 2);
  const SectorBasis s2 = enumerate_sector(p, 2);
  const SectorBasis s1 = enumerate_sector(p, 1);
  const Eigen::MatrixXcd b = build_normal_mode(p, s2, s1, 1).to_dense();
  const Eigen::MatrixXcd ref = build_lowering(p, s2, s1, Mode::chain(1)).to_dense();
  CHECK(max_abs(b - ref) < 1e-15);
  CHECK_THROWS(build_normal_mode(p, s2, s1, 2));
}

TEST_CASE("normal modes obey canonical commutators below the cutoff") {
  const ModelParams p = params(4, 1);
  const int k = 2;
  const SectorBasis sk = enumerate_sector(p, k);
  const SectorBasis skm = enumerate_sector(p, k - 1);
  const SectorBasis skmm = enumerate_sector(p, k - 2);
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      // [B_i, B_j^dag] acting on sector k - 1 maps into k - 1
      const Eigen::MatrixXcd bi_k = build_normal_mode(p, sk, skm, i).to_dense();
      const Eigen::MatrixXcd bj_k = build_normal_mode(p, sk, skm, j).to_dense();
      const Eigen::MatrixXcd bi_km = build_normal_mode(p, skm, skmm, i).to_dense();
      const Eigen::MatrixXcd bj_km = build_normal_mode(p, skm, skmm, j).to_dense();
      const Eigen::MatrixXcd comm = bi_k * bj_k.adjoint() - bj_km.adjoint() * bi_km;
      const Eigen::MatrixXcd expect =
          (i == j ? 1.0 : 0.0) * Eigen::MatrixXcd::Identity(comm.rows(), comm.cols());
      CHECK(max_abs(comm - expect) < 1e-12);
    }
  }
}

TEST_CASE("normal-mode rebuild reproduces H_1") {
  for (int n = 2; n <= 5; ++n) {
    for (int m = 1; m <= 2; ++m) {
      for (int k = 1; k <= 3; ++k) {
        const ModelParams p = params(n, m);
        const SectorBasis s = enumerate_sector(p, k);
        const SectorBasis sm = enumerate_sector(p, k - 1);
        const Eigen::MatrixXcd h = build_h1(p, s).to_dense();
        const Eigen::MatrixXcd r = build_h1_normal_modes(p, s, sm).to_dense();
        CHECK(max_abs(h - r) < 1e-12);
      }
    }
  }
}
