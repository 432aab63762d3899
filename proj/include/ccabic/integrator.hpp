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

#include <cstddef>
#include <functional>
#include <span>

#include <Eigen/Dense>

namespace ccabic {

struct StepControl {
  double rtol = 1e-8;
  double atol = 1e-10;
  double initial_step = 0.0;  // 0: estimated from the first derivative
  double min_step = 1e-12;
  double max_step = 0.0;      // 0: unlimited
  std::size_t max_steps = 100'000'000;
};

struct IntegrationStats {
  double t_reached = 0.0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  bool stopped_by_observer = false;
};

using OdeRhs = std::function<void(double t, const Eigen::VectorXcd& y, Eigen::VectorXcd& dydt)>;
/// Called at every output time; returning false ends the integration.
using OdeObserver = std::function<bool(double t, const Eigen::VectorXcd& y)>;
/// Called after every accepted step; may project y (e.g. re-symmetrise).
using OdePostStep = std::function<void(Eigen::VectorXcd& y)>;

/// Dormand-Prince 5(4) embedded pair with proportional step control. Steps are
/// shortened to land exactly on each output time. Throws NumericalError on
/// step-size underflow, reporting the time reached.
IntegrationStats integrate_dopri5(const OdeRhs& rhs, Eigen::VectorXcd& y, double t0,
                                  std::span<const double> output_times, const StepControl& control,
                                  const OdeObserver& observer, const OdePostStep& post_step = {});

}  // namespace ccabic
