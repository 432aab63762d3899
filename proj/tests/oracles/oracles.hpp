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

// Reference constructions used only by the tests. None of them calls into the
// library's operator builders: matrices are assembled from dense single-mode
// factors acting on explicit occupation tuples.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Tuple = std::vector<int>;  // [a_L, b_1..b_{N-1}, a_R, n_L, n_R]

struct Params {
  int n_chain = 2;
  int m_atoms = 1;
  double omega_c = 0.0;
  double omega_a = 0.0;
  double g = 0.1;
  double lambda = 1.0;
};

/// Every occupation tuple with photons <= cap and total excitation k, found
/// by counting through the full product space.
inline std::vector<Tuple> brute_force_states(int n_chain, int m_atoms, int k, int cap) {
  const int modes = n_chain + 1;
  std::vector<int> radix(static_cast<std::size_t>(modes), cap + 1);
  radix.push_back(m_atoms + 1);
  radix.push_back(m_atoms + 1);
  long long total = 1;
  for (int r : radix) total *= r;
  std::vector<Tuple> out;
  for (long long idx = 0; idx < total; ++idx) {
    Tuple t(radix.size());
    long long rest = idx;
    int sum = 0;
    for (std::size_t i = radix.size(); i-- > 0;) {
      t[i] = static_cast<int>(rest % radix[i]);
      rest /= radix[i];
      sum += t[i];
    }
    if (sum == k) out.push_back(t);
  }
  return out;  // mixed-radix counting order is lexicographic
}

inline Eigen::MatrixXd boson_lowering(int cap) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(cap + 1, cap + 1);
  for (int n = 1; n <= cap; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline Eigen::MatrixXd spin_lowering(int m) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(m + 1, m + 1);
  for (int n = 1; n <= m; ++n) j(n - 1, n) = std::sqrt(static_cast<double>(n * (m - n + 1)));
  return j;
}

inline Eigen::MatrixXd spin_z(int m) {
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(m + 1, m + 1);
  for (int n = 0; n <= m; ++n) z(n, n) = n - 0.5 * m;
  return z;
}

struct Factor {
  int mode;
  Eigen::MatrixXd op;
};

/// coeff * product of factors; the last factor acts first.
struct Term {
  cplx coeff;
  std::vector<Factor> factors;
};

/// <row| sum of terms |col> on explicit tuple lists. Tuples produced outside
/// `rows` are discarded.
inline Eigen::MatrixXcd matrix_on(const std::vector<Tuple>& rows, const std::vector<Tuple>& cols,
                                  const std::vector<Term>& terms) {
  std::map<Tuple, Eigen::Index> row_index;
  for (std::size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = static_cast<Eigen::Index>(i);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows.size()),
                                                static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (const Term& term : terms) {
      std::vector<std::pair<Tuple, cplx>> frontier{{cols[c], term.coeff}};
      for (auto f = term.factors.rbegin(); f != term.factors.rend(); ++f) {
        std::vector<std::pair<Tuple, cplx>> next;
        for (const auto& [t, amp] : frontier) {
          const int from = t[static_cast<std::size_t>(f->mode)];
          if (from >= f->op.cols()) continue;
          for (Eigen::Index to = 0; to < f->op.rows(); ++to) {
            const double v = f->op(to, from);
            if (v == 0.0) continue;
            Tuple u = t;
            u[static_cast<std::size_t>(f->mode)] = static_cast<int>(to);
            next.emplace_back(std::move(u), amp * v);
          }
        }
        frontier = std::move(next);
      }
      for (const auto& [t, amp] : frontier) {
        if (auto it = row_index.find(t); it != row_index.end()) {
          out(it->second, static_cast<Eigen::Index>(c)) += amp;
        }
      }
    }
  }
  return out;
}

inline int mode_left(const Params&) { return 0; }
inline int mode_chain(const Params&, int n) { return n; }
inline int mode_right(const Params& p) { return p.n_chain; }
inline int mode_atoms_left(const Params& p) { return p.n_chain + 1; }
inline int mode_atoms_right(const Params& p) { return p.n_chain + 2; }

/// Hopping coeff (x^dag y + y^dag x) between two modes.
inline void add_exchange(std::vector<Term>& terms, double coeff, int x, const Eigen::MatrixXd& xl,
                         int y, const Eigen::MatrixXd& yl) {
  terms.push_back({coeff, {{x, xl.transpose()}, {y, yl}}});
  terms.push_back({coeff, {{y, yl.transpose()}, {x, xl}}});
}

/// H_1 of the local-basis model with photon matrices truncated at `cap`.
inline std::vector<Term> h1_terms(const Params& p, int cap) {
  const Eigen::MatrixXd a = boson_lowering(cap);
  const Eigen::MatrixXd n = a.transpose() * a;
  const Eigen::MatrixXd j = spin_lowering(p.m_atoms);
  const Eigen::MatrixXd z = spin_z(p.m_atoms);
  std::vector<Term> terms;
  for (int mode = 0; mode <= p.n_chain; ++mode) terms.push_back({p.omega_c, {{mode, n}}});
  terms.push_back({p.omega_a, {{mode_atoms_left(p), z}}});
  terms.push_back({p.omega_a, {{mode_atoms_right(p), z}}});
  add_exchange(terms, p.g, mode_left(p), a, mode_atoms_left(p), j);
  add_exchange(terms, p.g, mode_right(p), a, mode_atoms_right(p), j);
  for (int mode = 0; mode < p.n_chain; ++mode) add_exchange(terms, p.lambda, mode, a, mode + 1, a);
  return terms;
}

/// H_1 on sector k in the brute-force (lexicographic) ordering.
inline Eigen::MatrixXcd h1_dense(const Params& p, int k) {
  const auto states = brute_force_states(p.n_chain, p.m_atoms, k, k);
  return matrix_on(states, states, h1_terms(p, k));
}

/// Single-mode lowering operator between sectors k and k - 1.
inline Eigen::MatrixXcd lowering_dense(const Params& p, int k, int mode, bool atomic) {
  const auto from = brute_force_states(p.n_chain, p.m_atoms, k, k);
  const auto to = brute_force_states(p.n_chain, p.m_atoms, k - 1, k);
  const Eigen::MatrixXd op = atomic ? spin_lowering(p.m_atoms) : boson_lowering(k);
  return matrix_on(to, from, {{1.0, {{mode, op}}}});
}

/// Hand-written H_1 for N = 2, M = 1, K = 1 in the order
/// (n_R), (n_L), (a_R), (b_1), (a_L).
inline Eigen::MatrixXcd hand_h1_n2m1k1(double omega_c, double omega_a, double g, double lambda) {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(5, 5);
  h(0, 0) = 0.0;  // one atom up, one down: J^z sum 0
  h(1, 1) = 0.0;
  h(2, 2) = omega_c - omega_a;
  h(3, 3) = omega_c - omega_a;
  h(4, 4) = omega_c - omega_a;
  h(0, 2) = h(2, 0) = g;
  h(1, 4) = h(4, 1) = g;
  h(2, 3) = h(3, 2) = lambda;
  h(3, 4) = h(4, 3) = lambda;
  return h;
}

/// Clebsch-Gordan coefficient <j1 m1; j2 m2 | j m> (Racah formula), with
/// all arguments given as twice their value.
inline double clebsch_gordan(int tj1, int tm1, int tj2, int tm2, int tj, int tm) {
  if (tm1 + tm2 != tm) return 0.0;
  auto f = [](int twice) { return std::tgamma(twice / 2 + 1.0); };
  if (tj < std::abs(tj1 - tj2) || tj > tj1 + tj2) return 0.0;
  if (std::abs(tm) > tj || std::abs(tm1) > tj1 || std::abs(tm2) > tj2) return 0.0;
  const double pre = std::sqrt((tj + 1) * f(tj + tj1 - tj2) * f(tj - tj1 + tj2) * f(tj1 + tj2 - tj) /
                               f(tj1 + tj2 + tj + 2)) *
                     std::sqrt(f(tj + tm) * f(tj - tm) * f(tj1 - tm1) * f(tj1 + tm1) * f(tj2 - tm2) *
                               f(tj2 + tm2));
  double sum = 0.0;
  for (int k = 0; k <= tj1 + tj2 + tj; k += 2) {
    const int d1 = tj1 + tj2 - tj - k;
    const int d2 = tj1 - tm1 - k;
    const int d3 = tj2 + tm2 - k;
    const int d4 = tj - tj2 + tm1 + k;
    const int d5 = tj - tj1 - tm2 + k;
    if (d1 < 0 || d2 < 0 || d3 < 0 || d4 < 0 || d5 < 0) continue;
    const double term = 1.0 / (f(k) * f(d1) * f(d2) * f(d3) * f(d4) * f(d5));
    sum += ((k / 2) % 2 ? -1.0 : 1.0) * term;
  }
  return pre * sum;
}

/// Column-stacking super-operator of the Lindblad generator.
inline Eigen::MatrixXcd liouvillian(const Eigen::MatrixXcd& h,
                                    const std::vector<std::pair<double, Eigen::MatrixXcd>>& jumps) {
  const Eigen::Index d = h.rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  auto kron = [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j)
        out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
  };
  const cplx i(0.0, 1.0);
  // vec(A X B) = (B^T kron A) vec(X)
  Eigen::MatrixXcd l = -i * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& [rate, x] : jumps) {
    const Eigen::MatrixXcd xdx = x.adjoint() * x;
    l += rate * kron(x.conjugate(), x);
    l -= 0.5 * rate * (kron(id, xdx) + kron(xdx.transpose(), id));
  }
  return l;
}

inline Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, Eigen::Index d) {
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), d, d);
}

/// rho(t) = exp(L t) rho(0).
inline Eigen::MatrixXcd propagate(const Eigen::MatrixXcd& l, const Eigen::MatrixXcd& rho0, double t) {
  const Eigen::MatrixXcd lt = l * t;
  const Eigen::MatrixXcd e = lt.exp();
  const Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho0.data(), rho0.size());
  return unvec(e * v, rho0.rows());
}

/// Eigenvector of a Hermitian matrix at `energy` with no weight on the
/// states flagged in `forbidden`: the eigenspace at `energy` is projected
/// onto the complement of the flagged states and the smallest singular
/// direction is taken. Returns an empty vector if no such state exists.
inline Eigen::VectorXcd dark_eigenvector(const Eigen::MatrixXcd& h, double energy,
                                         const std::vector<bool>& forbidden, double tol = 1e-9) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    if (std::abs(es.eigenvalues()(i) - energy) < tol) cols.push_back(i);
  }
  if (cols.empty()) return {};
  Eigen::MatrixXcd e(h.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) e.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(cols[c]);
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(h.rows(), e.cols());
  for (Eigen::Index r = 0; r < h.rows(); ++r) {
    if (forbidden[static_cast<std::size_t>(r)]) p.row(r) = e.row(r);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(p, Eigen::ComputeFullV);
  const Eigen::Index last = e.cols() - 1;
  if (svd.singularValues()(last) > 1e-8) return {};
  return e * svd.matrixV().col(last);
}

/// 5x5 amplitude matrix over (a_L, a_R, b_1, d_L, d_R).
inline Eigen::MatrixXcd hand_linear_matrix(double omega_c, double delta, double g, double lambda,
                                           double gamma_c, double gamma_a, int m) {
  const cplx i(0.0, 1.0);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(5, 5);
  a(0, 0) = omega_c - 0.5 * i * gamma_c;
  a(1, 1) = omega_c - 0.5 * i * gamma_c;
  a(2, 2) = omega_c;
  a(3, 3) = omega_c - delta - 0.5 * i * gamma_a * static_cast<double>(m);
  a(4, 4) = omega_c - delta - 0.5 * i * gamma_a * static_cast<double>(m);
  a(0, 2) = a(2, 0) = lambda;
  a(1, 2) = a(2, 1) = lambda;
  const double gm = g * std::sqrt(static_cast<double>(m));
  a(0, 3) = a(3, 0) = gm;
  a(1, 4) = a(4, 1) = gm;
  return a;
}

}  // namespace oracle
