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

#include <algorithm>
#include <cmath>

#include "ccabic/dynamics.hpp"
#include "ccabic/errors.hpp"
#include "ccabic/lindblad.hpp"
#include "ccabic/linear.hpp"
#include "oracles.hpp"

using namespace ccabic;

namespace {

ModelParams strong_coupling(double delta = 0.0) {
  ModelParams p;
  p.n_chain = 2;
  p.m_atoms = 2;
  p.g = 10.0;
  p.lambda = 1.0;
  p.gamma_c = 1.0;
  p.gamma_a = 0.01;
  p.omega_c = 0.0;
  p.omega_a = -delta;
  return p;
}

std::vector<double> sorted_real(const Vector5cd& v) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < 5; ++i) out.push_back(v(i).real());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("matrix matches the hand-built amplitude equations") {
  for (double delta : {0.0, 0.7, -2.0}) {
    ModelParams p = strong_coupling(delta);
    p.omega_c = 0.4;
    p.omega_a = 0.4 - delta;
    const LinearSystem s = linear_matrix(p);
    const Eigen::MatrixXcd hand =
        oracle::hand_linear_matrix(p.omega_c, delta, p.g, p.lambda, p.gamma_c, p.gamma_a, p.m_atoms);
    CHECK((s.matrix - hand).cwiseAbs().maxCoeff() < 1e-14);
    for (Eigen::Index j = 0; j < 5; ++j) {
      const Eigen::VectorXcd v = s.eigenvectors.col(j);
      CHECK((hand * v - s.eigenvalues(j) * v).norm() < 1e-10 * std::max(1.0, v.norm()));
    }
  }
  ModelParams chain = strong_coupling();
  chain.n_chain = 3;
  CHECK_THROWS_AS(linear_matrix(chain), ValidationError);
}

TEST_CASE("uncoupled spectrum") {
  ModelParams p = strong_coupling(0.5);
  p.g = 0.0;
  p.gamma_c = 0.0;
  p.gamma_a = 0.0;
  const auto ev = sorted_real(linear_matrix(p).eigenvalues);
  std::vector<double> expect{-std::sqrt(2.0), -0.5, -0.5, 0.0, std::sqrt(2.0)};
  std::sort(expect.begin(), expect.end());
  for (std::size_t i = 0; i < 5; ++i) CHECK(ev[i] == doctest::Approx(expect[i]).epsilon(1e-12));
}

TEST_CASE("lossless resonant matrix is Hermitian with a symmetric spectrum") {
  ModelParams p = strong_coupling();
  p.gamma_c = 0.0;
  p.gamma_a = 0.0;
  p.omega_c = p.omega_a = 1.5;
  const LinearSystem s = linear_matrix(p);
  CHECK((s.matrix - s.matrix.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  for (Eigen::Index i = 0; i < 5; ++i) CHECK(std::abs(s.eigenvalues(i).imag()) < 1e-10);
  const auto ev = sorted_real(s.eigenvalues);
  for (std::size_t i = 0; i < 5; ++i) CHECK(ev[i] - 1.5 == doctest::Approx(1.5 - ev[4 - i]).epsilon(1e-10));
}

TEST_CASE("passivity") {
  for (double g : {0.1, 1.0, 10.0}) {
    for (double delta : {-3.0, 0.0, 1.0}) {
      for (double ga : {0.0, 0.01, 0.5}) {
        ModelParams p = strong_coupling(delta);
        p.g = g;
        p.gamma_a = ga;
        const LinearSystem s = linear_matrix(p);
        for (Eigen::Index i = 0; i < 5; ++i) CHECK(s.eigenvalues(i).imag() <= 1e-10);
      }
    }
  }
}

TEST_CASE("trapped-mode decay rate") {
  ModelParams dec = strong_coupling();
  dec.g = 0.0;
  dec.lambda = 0.0;
  dec.gamma_a = 0.0;
  const TrappedMode t0 = trapped_mode(dec);
  CHECK(t0.gamma == doctest::Approx(0.0));
  CHECK(t0.degenerate);

  ModelParams dark = strong_coupling();
  dark.gamma_a = 0.0;
  CHECK(trapped_mode_decay(dark) < 1e-12);

  const double gamma = trapped_mode_decay(strong_coupling());
  CHECK(gamma == doctest::Approx(1e-4).epsilon(0.05));
  CHECK(q_factor(strong_coupling()) == doctest::Approx(1e4).epsilon(0.05));
}

TEST_CASE("closed-form rate and its limits") {
  ModelParams p = strong_coupling();
  CHECK(gamma_approx(p).value == doctest::Approx(p.gamma_a / (p.g * p.g)));
  CHECK_FALSE(gamma_approx(p).regime_warning);

  ModelParams q = strong_coupling(0.8);
  q.gamma_a = 0.0;
  const double d = 0.8, m = 2.0;
  CHECK(gamma_approx(q).value ==
        doctest::Approx(d * d * q.gamma_c / (m * m * std::pow(q.g, 4) + d * d * q.gamma_c * q.gamma_c / 4)));

  ModelParams weak = strong_coupling();
  weak.g = 2.0;
  CHECK(gamma_approx(weak).regime_warning);

  const ModelParams one = strong_coupling(1.0);
  const double exact = trapped_mode_decay(one);
  CHECK(std::abs(exact - gamma_approx(one).value) / exact < 0.05);

  for (int i = -30; i <= 30; ++i) {
    const ModelParams s = strong_coupling(0.1 * i);
    const double e = trapped_mode_decay(s);
    CHECK(std::abs(e - gamma_approx(s).value) / e < 0.05);
  }
}

TEST_CASE("quality factor") {
  const double chi = 10.0;
  const ModelParams p = strong_coupling();
  CHECK(q_factor(p) == doctest::Approx(chi * chi * p.gamma_c / p.gamma_a).epsilon(0.05));
  CHECK(q_factor_approx(p) == doctest::Approx(1e4));
  CHECK(q_factor(strong_coupling(0.5)) < q_factor(p));
  CHECK(q_factor(strong_coupling(0.5)) == doctest::Approx(q_factor(strong_coupling(-0.5))).epsilon(1e-8));

  ModelParams dark = strong_coupling();
  dark.gamma_a = 0.0;
  dark.lambda = 0.0;
  dark.g = 0.0;
  CHECK(std::isinf(q_factor(dark)));

  const double width = half_maximum_detuning(p, 3.0);
  const double predicted = p.m_atoms * p.g * std::sqrt(p.gamma_a / p.gamma_c);
  CHECK(width == doctest::Approx(predicted).epsilon(0.2));
  CHECK(q_factor(strong_coupling(width)) == doctest::Approx(q_factor(p) / 2).epsilon(1e-6));
  CHECK_THROWS_AS(half_maximum_detuning(p, 0.5), NumericalError);
}

TEST_CASE("polariton modes") {
  for (double g : {0.3, 1.0, 20.0}) {
    ModelParams p = strong_coupling();
    p.g = g;
    p.gamma_a = p.gamma_c = 0.0;
    const Polaritons pol = polariton_transform(p);
    Eigen::Matrix3d f;
    f << pol.f_plus, pol.f_minus, pol.f_zero;
    CHECK((f.transpose() * f - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(pol.xi_plus == doctest::Approx(std::sqrt(g * g * p.m_atoms + 2.0) / std::sqrt(2.0)));

    // rotate (d_L, d_R, b_1) into the polariton frame; F_0 must not touch a_L, a_R
    const Matrix5cd a = linear_matrix(p).matrix;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(5, 5);
    u(0, 0) = u(1, 1) = 1.0;
    const int map[3] = {3, 4, 2};  // (d_L, d_R, b_1) rows of the amplitude vector
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) u(map[r], 2 + c) = f(r, c);
    const Eigen::MatrixXcd rotated = u.adjoint() * a * u;
    CHECK(std::abs(rotated(0, 4)) < 1e-12);
    CHECK(std::abs(rotated(1, 4)) < 1e-12);
  }
  ModelParams big = strong_coupling();
  big.g = 20.0;
  CHECK(std::pow(polariton_transform(big).f_zero(2), 2) > 0.99);
}

TEST_CASE("population decay of the master equation follows twice the amplitude rate") {
  ModelParams p = strong_coupling();
  p.g = 3.0;
  p.gamma_a = 0.05;
  const auto sectors = make_sectors(p, 1);
  const LindbladGenerator gen(p, sectors, {true, true});
  const std::vector<int> mid{1};
  StateVector seed{sectors[1], Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(sectors[1]->size()))};
  seed.amplitudes(static_cast<Eigen::Index>(*sectors[1]->index_of(BasisState(0, mid, 0, 0, 0)))) = 1.0;
  EvolveOptions opt;
  opt.t_end = 400.0;
  opt.sample_interval = 2.0;
  opt.control.rtol = 1e-10;
  const Trajectory tr = evolve(gen, DensityMatrix::pure(sectors, seed), opt);
  const DecayFit fit =
      fit_decay_rate(tr, [](const DensityMatrix& rho) { return rho.block(1).trace().real(); }, {100.0, 400.0});
  CHECK(fit.rate == doctest::Approx(2.0 * trapped_mode_decay(p)).epsilon(0.1));
}
