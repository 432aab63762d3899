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

#include "ccabic/app/experiments.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "ccabic/bic.hpp"
#include "ccabic/dynamics.hpp"
#include "ccabic/errors.hpp"
#include "ccabic/lindblad.hpp"
#include "ccabic/linear.hpp"
#include "ccabic/operators.hpp"

namespace ccabic::app {
namespace {

std::string fmt(double v) { return format_double(v == 0.0 ? 0.0 : v); }

void comment(std::ostream& out, const std::string& key, const std::string& value) {
  out << "# " << key << " = " << value << '\n';
}

std::vector<double> grid(double lo, double hi, int points, bool logarithmic) {
  if (points < 1) throw ValidationError("grid needs at least one point");
  if (logarithmic && (lo <= 0.0 || hi <= 0.0)) {
    throw ValidationError("logarithmic grid needs positive bounds");
  }
  if (hi < lo) throw ValidationError("grid upper bound below lower bound");
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double f = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    out[static_cast<std::size_t>(i)] =
        logarithmic ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo);
  }
  out.front() = lo;
  if (points > 1) out.back() = hi;
  return out;
}

void set_threads(const RunConfig& cfg) {
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
}

Eigen::VectorXcd initial_atomic(const RunConfig& cfg) {
  const int m = cfg.params.m_atoms;
  const int k = cfg.excitations();
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero((m + 1) * (m + 1));
  auto at = [m](int nl, int nr) { return nl * (m + 1) + nr; };
  if (cfg.initial == "left-excited") {
    v(at(k, 0)) = 1.0;
  } else if (cfg.initial == "right-excited") {
    v(at(0, k)) = 1.0;
  } else if (cfg.initial == "random") {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> normal;
    for (int nl = std::max(0, k - m); nl <= std::min(k, m); ++nl) {
      const double re = normal(rng);
      const double im = normal(rng);
      v(at(nl, k - nl)) = {re, im};
    }
    v.normalize();
  } else {
    throw ValidationError("unknown initial state: " + cfg.initial);
  }
  return v;
}

}  // namespace

void write_header(std::ostream& out, const RunConfig& cfg) {
  out << "# ccabic " << experiment_name(cfg.experiment) << '\n';
  for (const auto& [k, v] : describe(cfg)) comment(out, k, v);
}

int run_bic(const RunConfig& cfg, std::ostream& out) {
  const ModelParams& p = cfg.params;
  const int k = cfg.excitations();
  if (k > p.m_atoms) throw ValidationError("no trapped state with K > M");

  const BicCoefficients closed = closed_form_coefficients(p, k);
  const BicCoefficients recursive = recursive_coefficients(p, k);
  const StateVector psi = embed_coefficients(p, closed);
  const TrappingResiduals res = verify_trapping(p, psi, k);
  const NullSpaceResult null_space = trapping_null_space(p, k);
  const RegimeObservables obs = regime_observables(p, k);

  write_header(out, cfg);
  out << "m,n,amplitude_re,amplitude_im,recursive_re,recursive_im\n";
  double recursion_gap = 0.0;
  for (int m = 0; m <= k; ++m) {
    for (int n = 0; n <= k - m; ++n) {
      const cplx a = closed.at(m, n);
      const cplx b = recursive.at(m, n);
      recursion_gap = std::max(recursion_gap, std::abs(a - b));
      out << m << ',' << n << ',' << fmt(a.real()) << ',' << fmt(a.imag()) << ',' << fmt(b.real())
          << ',' << fmt(b.imag()) << '\n';
    }
  }
  const double overlap = overlap_sq(psi, null_space.state);
  comment(out, "chi", fmt(closed.chi));
  comment(out, "energy", fmt((k - p.m_atoms) * p.omega_a));
  comment(out, "norm", fmt(psi.norm()));
  comment(out, "residual_eigen", fmt(res.eigen));
  comment(out, "residual_left", fmt(res.left));
  comment(out, "residual_right", fmt(res.right));
  comment(out, "recursion_gap", fmt(recursion_gap));
  comment(out, "nullspace_dimension", std::to_string(null_space.dimension));
  comment(out, "nullspace_overlap", fmt(overlap));
  comment(out, "mean_photons", fmt(obs.mean_photons));
  comment(out, "mean_excited", fmt(obs.mean_excited));
  comment(out, "photon_fraction", fmt(obs.photon_fraction));
  comment(out, "atom_fraction", fmt(obs.atom_fraction));

  const bool ok = res.max() <= cfg.residual_tol && recursion_gap <= cfg.residual_tol &&
                  null_space.dimension == 1 && std::abs(1.0 - overlap) <= cfg.residual_tol;
  comment(out, "checks", ok ? "pass" : "fail");
  return ok ? kExitOk : kExitTolerance;
}

int run_sweep_chi(const RunConfig& cfg, std::ostream& out) {
  const int k = cfg.excitations();
  if (k > cfg.params.m_atoms) throw ValidationError("no trapped state with K > M");
  const std::vector<double> chis = grid(cfg.chi_min, cfg.chi_max, cfg.chi_points, cfg.chi_log);
  const double lq = std::abs(coupling_lambda(cfg.params, cfg.params.q, Side::kLeft));
  if (lq == 0.0) throw ValidationError("resonant mode decoupled from the end cavities");

  std::vector<RegimeObservables> rows(chis.size());
  set_threads(cfg);
  const auto n = static_cast<long>(chis.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    ModelParams p = cfg.params;
    p.g = chis[static_cast<std::size_t>(i)] * lq;
    rows[static_cast<std::size_t>(i)] = regime_observables(p, k);
  }

  write_header(out, cfg);
  out << "chi,mean_photons,mean_excited,photon_fraction,atom_fraction\n";
  for (std::size_t i = 0; i < chis.size(); ++i) {
    const auto& r = rows[i];
    out << fmt(chis[i]) << ',' << fmt(r.mean_photons) << ',' << fmt(r.mean_excited) << ','
        << fmt(r.photon_fraction) << ',' << fmt(r.atom_fraction) << '\n';
  }
  return kExitOk;
}

int run_evolve(const RunConfig& cfg, std::ostream& out) {
  const ModelParams& p = cfg.params;
  const int k = cfg.excitations();
  if (k > p.m_atoms) throw ValidationError("initial excitation K exceeds M");
  if (cfg.t_end <= 0.0 || cfg.sample_interval <= 0.0) {
    throw ValidationError("t_end and sample_interval must be positive");
  }
  set_threads(cfg);

  const auto sectors = make_sectors(p, k);
  StateVector psi0;
  Eigen::VectorXcd atomic;
  if (cfg.initial == "bic") {
    psi0 = assemble_bic_state(p, k);
  } else {
    atomic = initial_atomic(cfg);
    psi0 = embed_atomic_state(p, k, atomic);
  }
  const DensityMatrix rho0 = DensityMatrix::pure(sectors, psi0);

  std::vector<StateVector> trapped;
  for (int i = 0; i <= k; ++i) trapped.push_back(assemble_bic_state(p, i));

  LindbladOptions lopt;
  lopt.atomic_damping = cfg.atomic_damping;
  const LindbladGenerator gen(p, sectors, lopt);

  EvolveOptions eopt;
  eopt.t_end = cfg.t_end;
  eopt.sample_interval = cfg.sample_interval;
  eopt.control.rtol = cfg.rtol;
  eopt.control.atol = cfg.atol;
  eopt.stop_at_steady_state = cfg.stop_at_steady;
  const Trajectory traj = evolve(gen, rho0, eopt);

  write_header(out, cfg);
  out << "lambda_t";
  for (int i = 0; i <= k; ++i) out << ",P" << i;
  out << ",trace,min_eig\n";
  double drift = 0.0;
  double worst_eig = std::numeric_limits<double>::infinity();
  for (const Snapshot& s : traj.snapshots) {
    const auto probs = trapped_probabilities(s.rho, trapped);
    out << fmt(s.t * p.lambda);
    for (double v : probs) out << ',' << fmt(v);
    out << ',' << fmt(s.trace) << ',' << fmt(s.min_eigenvalue) << '\n';
    drift = std::max(drift, std::abs(s.trace - 1.0));
    worst_eig = std::min(worst_eig, s.min_eigenvalue);
  }
  comment(out, "steady_state_reached", traj.reached_steady_state ? "true" : "false");
  comment(out, "t_final", fmt(traj.t_final * p.lambda));
  comment(out, "steps_accepted", std::to_string(traj.stats.accepted));
  comment(out, "steps_rejected", std::to_string(traj.stats.rejected));
  if (atomic.size() > 0) {
    const auto weights = steady_state_prediction(p, atomic);
    for (const SpinWeight& w : weights) {
      const int i = p.m_atoms - w.s;
      if (i >= 0 && i <= k) comment(out, "predicted_P" + std::to_string(i), fmt(w.weight));
    }
  }
  comment(out, "max_trace_drift", fmt(drift));
  comment(out, "min_eigenvalue", fmt(worst_eig));

  const bool ok = drift <= cfg.invariant_tol && worst_eig >= -cfg.invariant_tol;
  comment(out, "checks", ok ? "pass" : "fail");
  return ok ? kExitOk : kExitTolerance;
}

int run_qfactor(const RunConfig& cfg, std::ostream& out) {
  const ModelParams& base = cfg.params;
  if (base.n_chain != 2) throw ValidationError("qfactor requires n_chain = 2");
  if (base.gamma_c <= 0.0) throw ValidationError("qfactor requires gamma_c > 0");
  const std::vector<double> ratios = grid(cfg.delta_min, cfg.delta_max, cfg.delta_points, false);

  struct Row {
    double q_exact, q_approx, rel_err;
  };
  std::vector<Row> rows(ratios.size());
  set_threads(cfg);
  const auto n = static_cast<long>(ratios.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    ModelParams p = base;
    p.omega_a = p.omega_c - ratios[static_cast<std::size_t>(i)] * p.gamma_c;
    const double exact = trapped_mode_decay(p);
    const double approx = gamma_approx(p).value;
    rows[static_cast<std::size_t>(i)] = {base.gamma_c / exact, base.gamma_c / approx,
                                         std::abs(exact - approx) / exact};
  }

  write_header(out, cfg);
  out << "delta_over_gc,q_exact,q_approx,rel_err\n";
  double worst = 0.0;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    const Row& r = rows[i];
    out << fmt(ratios[i]) << ',' << fmt(r.q_exact) << ',' << fmt(r.q_approx) << ',' << fmt(r.rel_err)
        << '\n';
    worst = std::max(worst, std::isnan(r.rel_err) ? std::numeric_limits<double>::infinity() : r.rel_err);
  }
  ModelParams resonant = base;
  resonant.omega_a = base.omega_c;
  const double q_peak = q_factor(resonant);
  comment(out, "q_peak", fmt(q_peak));
  comment(out, "gamma_approx_regime_warning", gamma_approx(resonant).regime_warning ? "true" : "false");
  if (base.gamma_a > 0.0) {
    comment(out, "q_peak_predicted", fmt(base.g * base.g / (base.gamma_a * base.lambda * base.lambda)));
    comment(out, "half_width_predicted",
            fmt(base.m_atoms * base.g * std::sqrt(base.gamma_a / base.gamma_c)));
    try {
      const double delta_max = std::max(std::abs(cfg.delta_min), std::abs(cfg.delta_max)) * base.gamma_c;
      comment(out, "half_width", fmt(half_maximum_detuning(resonant, std::max(delta_max, 1e-12))));
    } catch (const NumericalError&) {
      comment(out, "half_width", "outside_grid");
    }
  }
  comment(out, "max_rel_err", fmt(worst));
  const bool ok = worst <= cfg.rel_err_tol;
  comment(out, "checks", ok ? "pass" : "fail");
  return ok ? kExitOk : kExitTolerance;
}

int run_experiment(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.experiment) {
      case Experiment::kBic: return run_bic(cfg, out);
      case Experiment::kSweepChi: return run_sweep_chi(cfg, out);
      case Experiment::kEvolve: return run_evolve(cfg, out);
      case Experiment::kQFactor: return run_qfactor(cfg, out);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitValidation;
}

}  // namespace ccabic::app
