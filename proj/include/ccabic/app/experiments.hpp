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

#include <iosfwd>

#include "ccabic/app/config.hpp"

namespace ccabic::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitNumerical = 2,
  kExitTolerance = 3,
};

/// Writes the `#` header echoing every resolved key.
void write_header(std::ostream& out, const RunConfig& cfg);

// Each runner writes the CSV table and returns kExitOk or kExitTolerance.
// Validation and numerical failures propagate as exceptions.
int run_bic(const RunConfig& cfg, std::ostream& out);
int run_sweep_chi(const RunConfig& cfg, std::ostream& out);
int run_evolve(const RunConfig& cfg, std::ostream& out);
int run_qfactor(const RunConfig& cfg, std::ostream& out);

/// Dispatches on cfg.experiment and maps exceptions to exit codes, printing
/// the message to `err`.
int run_experiment(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace ccabic::app
