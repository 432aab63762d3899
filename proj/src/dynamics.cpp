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

#include "ccabic/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ccabic/operators.hpp"

namespace ccabic {

Trajectory evolve(const LindbladGenerator& generator, const DensityMatrix& rho0,
                  const EvolveOptions& options) {
  if (!(options.sample_interval > 0.0)) throw ValidationError("sample_interval must be positive");
  if (!(options.t_end >= 0.0)) throw ValidationError("t_end must be non-negative");

  std::vector<double> times;
  const auto n_samples = static_cast<std::size_t>(std::floor(options.t_end / options.sample_interval + 1e-9));
  for (std::size_t i = 0; i <= n_samples; ++i) times.push_back(static_cast<double>(i) * options.sample_interval);
  if (times.back() < options.t_end) times.push_back(options.t_end);

  DensityMatrix scratch_in = rho0;
  DensityMatrix scratch_out(rho0.sectors());
  const OdeRhs rhs = [&](double, const Eigen::VectorXcd& y, Eigen::VectorXcd& dydt) {
    scratch_in.flat() = y;
    generator.apply(scratch_in, scratch_out);
    dydt = scratch_out.flat();
  };
  const OdePostStep symmetrise = [&](Eigen::VectorXcd& y) {
    scratch_in.flat() = y;
    scratch_in.hermitize();
    y = scratch_in.flat();
  };

  const double lambda_scale = generator.params().lambda != 0.0 ? std::abs(generator.params().lambda) : 1.0;
  Trajectory traj;
  int quiet_samples = 0;
  const OdeObserver observe = [&](double t, const Eigen::VectorXcd& y) {
    Snapshot snap;
    snap.t = t;
    snap.rho = rho0;
    snap.rho.flat() = y;
    snap.trace = snap.rho.trace().real();
    snap.min_eigenvalue = snap.rho.min_eigenvalue();
    snap.rate_max = generator(snap.rho).max_abs();
    if (snap.min_eigenvalue < -options.positivity_abort) {
      std::ostringstream msg;
      msg << "positivity lost at t=" << t << " (min eigenvalue " << snap.min_eigenvalue << ")";
      throw NumericalError(msg.str());
    }
    quiet_samples = snap.rate_max < options.steady_threshold * lambda_scale ? quiet_samples + 1 : 0;
    traj.snapshots.push_back(std::move(snap));
    if (options.stop_at_steady_state && quiet_samples >= 2) {
      traj.reached_steady_state = true;
      return false;
    }
    return true;
  };

  Eigen::VectorXcd y = rho0.flat();
  traj.stats = integrate_dopri5(rhs, y, 0.0, times, options.control, observe, symmetrise);
  traj.t_final = traj.snapshots.empty() ? 0.0 : traj.snapshots.back().t;
  return traj;
}

std::vector<double> trapped_probabilities(const DensityMatrix& rho,
                                          std::span<const StateVector> states) {
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& psi : states) out.push_back(rho.expectation(psi));
  return out;
}

StateVector atomic_product_state(const ModelParams& p, int excited_left, int excited_right) {
  if (excited_left < 0 || excited_right < 0 || excited_left > p.m_atoms ||
      excited_right > p.m_atoms) {
    throw ValidationError("atomic excitation out of range");
  }
  const SectorPtr sector = make_sector(p, excited_left + excited_right);
  const std::vector<int> chain(static_cast<std::size_t>(p.n_chain - 1), 0);
  const auto idx = sector->index_of(BasisState(0, chain, 0, excited_left, excited_right));
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(sector->size()));
  v[static_cast<Eigen::Index>(*idx)] = 1.0;
  return StateVector{sector, std::move(v)};
}

StateVector embed_atomic_state(const ModelParams& p, int k, const Eigen::VectorXcd& atomic) {
  const int dim = p.m_atoms + 1;
  if (atomic.size() != dim * dim) throw ValidationError("atomic vector has wrong dimension");
  const SectorPtr sector = make_sector(p, k);
  const std::vector<int> chain(static_cast<std::size_t>(p.n_chain - 1), 0);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(sector->size()));
  for (int nl = 0; nl <= p.m_atoms; ++nl) {
    for (int nr = 0; nr <= p.m_atoms; ++nr) {
      const cplx a = atomic[nl * dim + nr];
      if (nl + nr != k) {
        if (std::abs(a) > 1e-12) throw ValidationError("atomic state has weight outside sector");
        continue;
      }
      v[static_cast<Eigen::Index>(*sector->index_of(BasisState(0, chain, 0, nl, nr)))] = a;
    }
  }
  return StateVector{sector, std::move(v)};
}

TwistedSpinOperators twisted_spin_operators(int m_atoms) {
  const int dim = m_atoms + 1;
  const int n = dim * dim;
  TwistedSpinOperators ops;
  ops.s_plus = Eigen::MatrixXd::Zero(n, n);
  ops.s_z = Eigen::MatrixXd::Zero(n, n);
  for (int nl = 0; nl <= m_atoms; ++nl) {
    for (int nr = 0; nr <= m_atoms; ++nr) {
      const int i = nl * dim + nr;
      ops.s_z(i, i) = nl + nr - m_atoms;
      if (nl < m_atoms) ops.s_plus((nl + 1) * dim + nr, i) += std::sqrt((nl + 1.0) * (m_atoms - nl));
      if (nr < m_atoms) ops.s_plus(nl * dim + nr + 1, i) -= std::sqrt((nr + 1.0) * (m_atoms - nr));
    }
  }
  ops.s_minus = ops.s_plus.transpose();
  ops.s_squared = ops.s_plus * ops.s_minus + ops.s_z * ops.s_z - ops.s_z;
  return ops;
}

std::vector<DickeState> dicke_basis(const ModelParams& p) {
  const TwistedSpinOperators ops = twisted_spin_operators(p.m_atoms);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s2(ops.s_squared);

  std::map<int, std::vector<Eigen::Index>> by_spin;
  for (Eigen::Index i = 0; i < s2.eigenvalues().size(); ++i) {
    const double ev = std::max(0.0, s2.eigenvalues()[i]);
    by_spin[static_cast<int>(std::lround((-1.0 + std::sqrt(1.0 + 4.0 * ev)) / 2.0))].push_back(i);
  }

  std::vector<DickeState> out;
  for (const auto& [s, cols] : by_spin) {
    Eigen::MatrixXd v(s2.eigenvectors().rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) v.col(static_cast<Eigen::Index>(j)) = s2.eigenvectors().col(cols[j]);
    const Eigen::MatrixXd restricted = v.transpose() * ops.s_z * v;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sz(restricted);
    for (Eigen::Index j = 0; j < sz.eigenvalues().size(); ++j) {
      Eigen::VectorXd vec = v * sz.eigenvectors().col(j);
      const double peak = vec.cwiseAbs().maxCoeff();
      for (Eigen::Index i = 0; i < vec.size(); ++i) {
        if (std::abs(vec[i]) >= peak - 1e-12) {
          if (vec[i] < 0.0) vec = -vec;
          break;
        }
      }
      out.push_back({s, static_cast<int>(std::lround(sz.eigenvalues()[j])), vec.normalized()});
    }
  }
  std::sort(out.begin(), out.end(), [](const DickeState& a, const DickeState& b) {
    return a.s != b.s ? a.s < b.s : a.m_s < b.m_s;
  });
  return out;
}

std::vector<SpinWeight> steady_state_prediction(const ModelParams& p,
                                                const Eigen::VectorXcd& psi0_atomic) {
  const auto basis = dicke_basis(p);
  if (psi0_atomic.size() != basis.front().vector.size()) {
    throw ValidationError("atomic vector has wrong dimension");
  }
  std::vector<SpinWeight> out;
  for (int s = 0; s <= p.m_atoms; ++s) out.push_back({s, 0.0});
  for (const auto& d : basis) {
    out[static_cast<std::size_t>(d.s)].weight +=
        std::norm(d.vector.cast<cplx>().dot(psi0_atomic));
  }
  return out;
}

namespace {

double tc_diagonal(const ModelParams& p, const BasisState& s) {
  return p.omega_a * (s.excited_left() + s.excited_right() - p.m_atoms) +
         0.5 * p.omega_c * (s.photons_left() + s.photons_right());
}

}  // namespace

SparseOperator effective_tc_hamiltonian(const ModelParams& p, const SectorBasis& sector) {
  if (p.n_chain != 2) throw ValidationError("effective Tavis-Cummings model requires N = 2");
  const Mode al = Mode::end(Side::kLeft), ar = Mode::end(Side::kRight);
  const Mode jl = Mode::atoms(Side::kLeft), jr = Mode::atoms(Side::kRight);
  const double h = 0.5 * p.g;
  const std::vector<PairTerm> terms = {
      {-0.5 * p.omega_c, al, ar}, {-0.5 * p.omega_c, ar, al},
      {h, al, jl},  {h, jl, al},  {-h, ar, jl}, {-h, jl, ar},
      {-h, al, jr}, {-h, jr, al}, {h, ar, jr},  {h, jr, ar},
  };
  return build_sector_operator(p, sector, terms, &tc_diagonal);
}

SparseOperator build_spin_squared(const ModelParams& p, const SectorBasis& sector) {
  const Eigen::MatrixXd s2 = twisted_spin_operators(p.m_atoms).s_squared;
  const int dim = p.m_atoms + 1;
  std::vector<Triplet> t;
  for (std::size_t col = 0; col < sector.size(); ++col) {
    const BasisState& s = sector.state(col);
    const int from = s.excited_left() * dim + s.excited_right();
    for (int nl = 0; nl <= p.m_atoms; ++nl) {
      for (int nr = 0; nr <= p.m_atoms; ++nr) {
        const double v = s2(nl * dim + nr, from);
        if (v == 0.0) continue;
        const std::size_t base = s.slots().size();
        const auto row = sector.index_of(s.with_slot(base - 2, nl).with_slot(base - 1, nr));
        if (row) t.push_back({*row, col, v});
      }
    }
  }
  return SparseOperator::from_triplets(sector.size(), sector.size(), std::move(t));
}

DecayFit fit_decay_rate(std::span<const double> t, std::span<const double> y, FitWindow window) {
  if (t.size() != y.size()) throw ValidationError("time and value series differ in length");
  std::vector<double> xs, ls;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < window.t_begin || t[i] > window.t_end) continue;
    if (!(y[i] > 0.0)) throw ValidationError("decay fit needs positive samples");
    xs.push_back(t[i]);
    ls.push_back(std::log(y[i]));
  }
  if (xs.size() < 3) throw ValidationError("decay fit needs at least three samples in the window");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ls[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ls[i] - my);
    syy += (ls[i] - my) * (ls[i] - my);
  }
  DecayFit fit;
  const double slope = sxy / sxx;
  fit.rate = -slope;
  fit.intercept = my - slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.points = xs.size();
  fit.decaying = fit.rate > 0.0;
  fit.noisy = fit.r_squared < kNoiseRSquared;
  return fit;
}

DecayFit fit_decay_rate(const Trajectory& trajectory,
                        const std::function<double(const DensityMatrix&)>& observable,
                        FitWindow window) {
  std::vector<double> t, y;
  for (const auto& s : trajectory.snapshots) {
    t.push_back(s.t);
    y.push_back(observable(s.rho));
  }
  return fit_decay_rate(t, y, window);
}

}  // namespace ccabic
