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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ccabic/model.hpp"

namespace ccabic::app {

enum class Experiment { kBic, kSweepChi, kEvolve, kQFactor };

std::string_view experiment_name(Experiment e);
Experiment parse_experiment(std::string_view name);

/// Fully resolved run configuration. Frequencies and rates are in units of
/// lambda, which is fixed to 1.
struct RunConfig {
  Experiment experiment = Experiment::kBic;
  ModelParams params{};
  int q_auto = 1;            // q = 0 in the input selects the nearest-resonant mode
  double chi = -1.0;         // >= 0 overrides g with chi |lambda_q^L|
  int k = -1;                // -1: K = M

  // sweep-chi
  double chi_min = 0.01;
  double chi_max = 100.0;
  int chi_points = 41;
  bool chi_log = true;

  // evolve
  std::string initial = "left-excited";
  double t_end = 5000.0;
  double sample_interval = 1.0;
  double rtol = 1e-10;
  double atol = 1e-12;
  bool stop_at_steady = true;
  bool atomic_damping = false;

  // qfactor, detunings in units of gamma_c
  double delta_min = -3.0;
  double delta_max = 3.0;
  int delta_points = 61;

  // tolerances for the exit status
  double residual_tol = 1e-10;
  double rel_err_tol = 0.05;
  double invariant_tol = 1e-8;

  std::uint64_t seed = 0;
  int threads = 0;  // 0: OpenMP default

  [[nodiscard]] int excitations() const { return k < 0 ? params.m_atoms : k; }
};

/// Per-experiment defaults: triple cavity, M = 2.
RunConfig default_config(Experiment e);

/// Sets one key from its textual value. Throws ValidationError for unknown
/// keys or unparsable values.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Applies a flat `key = value` file; `#` starts a comment.
void apply_config_text(RunConfig& cfg, std::string_view text);

/// Splits "key=value".
std::pair<std::string, std::string> split_assignment(std::string_view kv);

/// Builds the configuration: defaults, then the file, then overrides in order.
/// Resolves q and chi, then validates the model parameters.
RunConfig resolve_config(Experiment e, const std::optional<std::string>& config_path,
                         const std::vector<std::string>& overrides);

/// Every key with its resolved value, in a fixed order.
std::vector<std::pair<std::string, std::string>> describe(const RunConfig& cfg);

/// Shortest round-trip text (17 significant digits).
std::string format_double(double v);

}  // namespace ccabic::app
