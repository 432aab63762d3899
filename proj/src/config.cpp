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

#include "ccabic/app/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <sstream>

#include "ccabic/operators.hpp"

namespace ccabic::app {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ValidationError("invalid number for " + std::string(key) + ": " + std::string(v));
  }
  return out;
}

long long parse_integer(std::string_view key, std::string_view v) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ValidationError("invalid integer for " + std::string(key) + ": " + std::string(v));
  }
  return out;
}

int parse_int(std::string_view key, std::string_view v) {
  const long long x = parse_integer(key, v);
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    throw ValidationError("integer out of range for " + std::string(key));
  }
  return static_cast<int>(x);
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ValidationError("invalid boolean for " + std::string(key) + ": " + std::string(v));
}

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

struct Key {
  std::string_view name;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define CCABIC_REAL(NAME, FIELD)                                                     \
  Key {                                                                              \
    NAME, [](RunConfig& c, std::string_view v) { c.FIELD = parse_double(NAME, v); }, \
        [](const RunConfig& c) { return format_double(c.FIELD); }                    \
  }
#define CCABIC_INT(NAME, FIELD)                                                   \
  Key {                                                                           \
    NAME, [](RunConfig& c, std::string_view v) { c.FIELD = parse_int(NAME, v); }, \
        [](const RunConfig& c) { return std::to_string(c.FIELD); }                \
  }
#define CCABIC_BOOL(NAME, FIELD)                                                   \
  Key {                                                                            \
    NAME, [](RunConfig& c, std::string_view v) { c.FIELD = parse_bool(NAME, v); }, \
        [](const RunConfig& c) { return fmt_bool(c.FIELD); }                       \
  }

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      CCABIC_INT("n_chain", params.n_chain),
      CCABIC_INT("m_atoms", params.m_atoms),
      CCABIC_REAL("omega_c", params.omega_c),
      CCABIC_REAL("omega_a", params.omega_a),
      CCABIC_REAL("g", params.g),
      CCABIC_REAL("chi", chi),
      Key{"lambda",
          [](RunConfig&, std::string_view v) {
            if (parse_double("lambda", v) != 1.0) {
              throw ValidationError("lambda is the unit of frequency and must be 1");
            }
          },
          [](const RunConfig& c) { return format_double(c.params.lambda); }},
      CCABIC_REAL("gamma_c", params.gamma_c),
      CCABIC_REAL("gamma_a", params.gamma_a),
      CCABIC_INT("q", params.q),
      CCABIC_INT("fock_cutoff", params.fock_cutoff),
      CCABIC_INT("K", k),
      CCABIC_REAL("chi_min", chi_min),
      CCABIC_REAL("chi_max", chi_max),
      CCABIC_INT("chi_points", chi_points),
      CCABIC_BOOL("chi_log", chi_log),
      Key{"initial", [](RunConfig& c, std::string_view v) { c.initial = std::string(v); },
          [](const RunConfig& c) { return c.initial; }},
      CCABIC_REAL("t_end", t_end),
      CCABIC_REAL("sample_interval", sample_interval),
      CCABIC_REAL("rtol", rtol),
      CCABIC_REAL("atol", atol),
      CCABIC_BOOL("stop_at_steady", stop_at_steady),
      CCABIC_BOOL("atomic_damping", atomic_damping),
      CCABIC_REAL("delta_min", delta_min),
      CCABIC_REAL("delta_max", delta_max),
      CCABIC_INT("delta_points", delta_points),
      CCABIC_REAL("residual_tol", residual_tol),
      CCABIC_REAL("rel_err_tol", rel_err_tol),
      CCABIC_REAL("invariant_tol", invariant_tol),
      Key{"seed",
          [](RunConfig& c, std::string_view v) {
            const long long s = parse_integer("seed", v);
            if (s < 0) throw ValidationError("seed must be non-negative");
            c.seed = static_cast<std::uint64_t>(s);
          },
          [](const RunConfig& c) { return std::to_string(c.seed); }},
      CCABIC_INT("threads", threads),
  };
  return table;
}

#undef CCABIC_REAL
#undef CCABIC_INT
#undef CCABIC_BOOL

}  // namespace

std::string_view experiment_name(Experiment e) {
  switch (e) {
    case Experiment::kBic: return "bic";
    case Experiment::kSweepChi: return "sweep-chi";
    case Experiment::kEvolve: return "evolve";
    case Experiment::kQFactor: return "qfactor";
  }
  return "?";
}

Experiment parse_experiment(std::string_view name) {
  for (auto e : {Experiment::kBic, Experiment::kSweepChi, Experiment::kEvolve, Experiment::kQFactor}) {
    if (experiment_name(e) == name) return e;
  }
  throw ValidationError("unknown experiment: " + std::string(name));
}

RunConfig default_config(Experiment e) {
  RunConfig c;
  c.experiment = e;
  c.params.n_chain = 2;
  c.params.m_atoms = 2;
  c.params.lambda = 1.0;
  c.params.q = 0;
  switch (e) {
    case Experiment::kBic:
    case Experiment::kSweepChi:
      c.params.g = 0.1;
      break;
    case Experiment::kEvolve:
      c.params.g = 0.1;
      c.params.gamma_c = 1.0;
      break;
    case Experiment::kQFactor:
      c.params.g = 10.0;
      c.params.gamma_c = 1.0;
      c.params.gamma_a = 0.01;
      break;
  }
  return c;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  for (const Key& k : keys()) {
    if (k.name == key) {
      k.set(cfg, value);
      return;
    }
  }
  throw ValidationError("unknown configuration key: " + std::string(key));
}

std::pair<std::string, std::string> split_assignment(std::string_view kv) {
  const auto eq = kv.find('=');
  if (eq == std::string_view::npos) {
    throw ValidationError("expected key=value, got: " + std::string(kv));
  }
  return {std::string(trim(kv.substr(0, eq))), std::string(trim(kv.substr(eq + 1)))};
}

void apply_config_text(RunConfig& cfg, std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      const auto [k, v] = split_assignment(line);
      apply_setting(cfg, k, v);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

RunConfig resolve_config(Experiment e, const std::optional<std::string>& config_path,
                         const std::vector<std::string>& overrides) {
  RunConfig cfg = default_config(e);
  if (config_path) {
    std::ifstream in(*config_path);
    if (!in) throw ValidationError("cannot read config file " + *config_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    apply_config_text(cfg, buf.str());
  }
  for (const auto& kv : overrides) {
    const auto [k, v] = split_assignment(kv);
    apply_setting(cfg, k, v);
  }

  ModelParams& p = cfg.params;
  if (p.n_chain < 2) throw ValidationError("n_chain must be at least 2");
  if (p.q == 0) {
    p.q = resonant_mode_index(p, std::numeric_limits<double>::infinity());
    cfg.q_auto = 1;
  } else {
    cfg.q_auto = 0;
  }
  validate_params(p);
  if (cfg.chi >= 0.0) p.g = cfg.chi * std::abs(coupling_lambda(p, p.q, Side::kLeft));
  if (cfg.k < -1) throw ValidationError("K must be non-negative");
  if (p.fock_cutoff > 0 && p.fock_cutoff < cfg.excitations()) {
    throw ValidationError("fock_cutoff below the excitation number K");
  }
  if (cfg.threads < 0) throw ValidationError("threads must be non-negative");
  return cfg;
}

std::vector<std::pair<std::string, std::string>> describe(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("experiment", std::string(experiment_name(cfg.experiment)));
  for (const Key& k : keys()) out.emplace_back(std::string(k.name), k.get(cfg));
  out.emplace_back("q_auto", cfg.q_auto ? "true" : "false");
  out.emplace_back("K_resolved", std::to_string(cfg.excitations()));
  return out;
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace ccabic::app
