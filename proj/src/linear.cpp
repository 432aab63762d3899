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

#include "ccabic/linear.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace ccabic {
namespace {

void require_triple_cavity(const ModelParams& p) {
  if (p.n_chain != 2) throw ValidationError("linear analysis requires N = 2");
}

}  // namespace

LinearSystem linear_matrix(const ModelParams& p) {
  require_triple_cavity(p);
  using namespace std::complex_literals;
  const double coupling = p.g * std::sqrt(static_cast<double>(p.m_atoms));
  const std::complex<double> cavity = p.omega_c - 0.5i * p.gamma_c;
  const std::complex<double> atom = p.omega_c - p.delta() - 0.5i * (p.m_atoms * p.gamma_a);

  LinearSystem sys;
  Matrix5cd& a = sys.matrix;
  a.setZero();
  a(0, 0) = cavity;
  a(1, 1) = cavity;
  a(2, 2) = p.omega_c;
  a(3, 3) = atom;
  a(4, 4) = atom;
  a(0, 2) = a(2, 0) = p.lambda;
  a(1, 2) = a(2, 1) = p.lambda;
  a(0, 3) = a(3, 0) = coupling;
  a(1, 4) = a(4, 1) = coupling;

  Eigen::ComplexEigenSolver<Matrix5cd> es(a);
  std::array<int, 5> order{};
  std::iota(order.begin(), order.end(), 0);
  const auto& ev = es.eigenvalues();
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (ev[x].imag() != ev[y].imag()) return ev[x].imag() < ev[y].imag();
    return ev[x].real() < ev[y].real();
  });
  for (int j = 0; j < 5; ++j) {
    sys.eigenvalues[j] = ev[order[static_cast<std::size_t>(j)]];
    sys.eigenvectors.col(j) = es.eigenvectors().col(order[static_cast<std::size_t>(j)]);
  }
  return sys;
}

TrappedMode trapped_mode(const ModelParams& p) {
  const LinearSystem sys = linear_matrix(p);
  std::array<double, 5> widths{};
  for (int j = 0; j < 5; ++j) widths[static_cast<std::size_t>(j)] = std::abs(sys.eigenvalues[j].imag());
  const auto best = static_cast<int>(std::min_element(widths.begin(), widths.end()) - widths.begin());
  TrappedMode mode;
  mode.gamma = widths[static_cast<std::size_t>(best)];
  mode.eigenvalue = sys.eigenvalues[best];
  const double scale = std::max({p.gamma_c, p.m_atoms * p.gamma_a, 1e-300});
  for (int j = 0; j < 5; ++j) {
    if (j != best && std::abs(widths[static_cast<std::size_t>(j)] - mode.gamma) <= 1e-12 * scale) {
      mode.degenerate = true;
    }
  }
  return mode;
}

double trapped_mode_decay(const ModelParams& p) { return trapped_mode(p).gamma; }

GammaApprox gamma_approx(const ModelParams& p) {
  const double m2 = static_cast<double>(p.m_atoms) * p.m_atoms;
  const double g2 = p.g * p.g;
  const double d2 = p.delta() * p.delta();
  GammaApprox out;
  out.value = (m2 * p.gamma_a * g2 + d2 * p.gamma_c) /
              (m2 * g2 * g2 + 0.25 * d2 * p.gamma_c * p.gamma_c) * p.lambda * p.lambda;
  out.regime_warning = std::abs(p.g) < 5.0 * std::max({p.gamma_a, p.gamma_c, p.lambda});
  return out;
}

double q_factor(const ModelParams& p) {
  const double gamma = trapped_mode_decay(p);
  if (gamma == 0.0) return std::numeric_limits<double>::infinity();
  return p.gamma_c / gamma;
}

double q_factor_approx(const ModelParams& p) {
  const double gamma = gamma_approx(p).value;
  if (gamma == 0.0) return std::numeric_limits<double>::infinity();
  return p.gamma_c / gamma;
}

double half_maximum_detuning(const ModelParams& p, double delta_max) {
  auto q_at = [&](double delta) {
    ModelParams d = p;
    d.omega_a = p.omega_c - delta;
    return q_factor(d);
  };
  const double half = 0.5 * q_at(0.0);
  if (!std::isfinite(half)) throw NumericalError("quality factor is unbounded at resonance");
  double lo = 0.0, hi = delta_max;
  if (q_at(hi) > half) throw NumericalError("quality factor does not halve within the bracket");
  for (int it = 0; it < 200 && hi - lo > 1e-13 * delta_max; ++it) {
    const double mid = 0.5 * (lo + hi);
    (q_at(mid) > half ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Polaritons polariton_transform(const ModelParams& p) {
  require_triple_cavity(p);
  const double gm = p.g * std::sqrt(static_cast<double>(p.m_atoms));
  const double root = std::sqrt(gm * gm + 2.0 * p.lambda * p.lambda);
  Polaritons out;
  // Components over (d_L, d_R, b_1).
  out.f_plus = Eigen::Vector3d(gm, gm, 2.0 * p.lambda) / (std::sqrt(2.0) * root);
  out.f_minus = Eigen::Vector3d(1.0, -1.0, 0.0) / std::sqrt(2.0);
  out.f_zero = Eigen::Vector3d(-p.lambda, -p.lambda, gm) / root;
  out.xi_plus = root / std::sqrt(2.0);
  out.xi_minus = std::abs(gm) / std::sqrt(2.0);
  return out;
}

}  // namespace ccabic
