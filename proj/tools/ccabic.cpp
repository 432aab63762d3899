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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ccabic/app/config.hpp"
#include "ccabic/app/experiments.hpp"
#include "ccabic/errors.hpp"

namespace {

struct Options {
  std::optional<std::string> config;
  std::vector<std::string> sets;
  std::optional<std::string> out;
  std::optional<long long> seed;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "flat key=value configuration file");
  sub->add_option("--set", o.sets, "override one key (key=value), repeatable")->take_all();
  sub->add_option("--out", o.out, "write the CSV here instead of stdout");
  sub->add_option("--seed", o.seed, "random seed");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ccabic::app;
  CLI::App app{"Trapped states of atom ensembles in coupled-cavity arrays"};
  app.require_subcommand(1);

  Options opts;
  const std::vector<std::pair<const char*, const char*>> commands = {
      {"bic", "trapped-state amplitudes and trapping residuals"},
      {"sweep-chi", "photon and atom fractions of the trapped state against chi"},
      {"evolve", "open-system evolution and trapped-state populations"},
      {"qfactor", "quality factor of the linearised model against detuning"},
  };
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help), opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  const Experiment experiment = parse_experiment(app.get_subcommands().front()->get_name());
  std::vector<std::string> overrides = opts.sets;
  if (opts.seed) overrides.push_back("seed=" + std::to_string(*opts.seed));

  RunConfig cfg;
  try {
    cfg = resolve_config(experiment, opts.config, overrides);
  } catch (const ccabic::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  std::ostringstream buffer;
  const int code = run_experiment(cfg, buffer, std::cerr);
  if (code == kExitValidation || code == kExitNumerical) return code;

  if (opts.out) {
    std::ofstream file(*opts.out, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot write " << *opts.out << '\n';
      return kExitValidation;
    }
    file << buffer.str();
  } else {
    std::cout << buffer.str();
  }
  if (code == kExitTolerance) std::cerr << "tolerance check failed\n";
  return code;
}
