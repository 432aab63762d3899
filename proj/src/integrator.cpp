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

#include "ccabic/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ccabic/errors.hpp"

namespace ccabic {
namespace {

// Dormand & Prince (1980) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// Difference between the 5th- and 4th-order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

double error_norm(const Eigen::VectorXcd& err, const Eigen::VectorXcd& y0,
                  const Eigen::VectorXcd& y1, const StepControl& c) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const double scale = c.atol + c.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    worst = std::max(worst, std::abs(err[i]) / scale);
  }
  return worst;
}

}  // namespace

IntegrationStats integrate_dopri5(const OdeRhs& rhs, Eigen::VectorXcd& y, double t0,
                                  std::span<const double> output_times, const StepControl& control,
                                  const OdeObserver& observer, const OdePostStep& post_step) {
  IntegrationStats stats;
  double t = t0;
  stats.t_reached = t;
  const Eigen::Index n = y.size();
  Eigen::VectorXcd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), err(n);

  std::size_t next_out = 0;
  while (next_out < output_times.size() && output_times[next_out] <= t) {
    if (!observer(t, y)) {
      stats.stopped_by_observer = true;
      return stats;
    }
    ++next_out;
  }
  if (next_out == output_times.size()) return stats;

  rhs(t, y, k1);
  double h = control.initial_step;
  if (h <= 0.0) {
    const double dy = k1.cwiseAbs().maxCoeff();
    const double yy = std::max(y.cwiseAbs().maxCoeff(), control.atol);
    h = dy > 0.0 ? 0.01 * yy / dy : 1e-3;
    h = std::min(h, output_times.back() - t);
  }

  while (next_out < output_times.size()) {
    if (stats.accepted + stats.rejected >= control.max_steps) {
      std::ostringstream msg;
      msg << "step limit exceeded at t=" << t;
      throw NumericalError(msg.str());
    }
    if (control.max_step > 0.0) h = std::min(h, control.max_step);
    const double target = output_times[next_out];
    const double h_proposed = h;
    bool lands = false;
    if (t + h >= target) {
      h = target - t;
      lands = true;
    }
    if (h < control.min_step) {
      std::ostringstream msg;
      msg << "step size underflow at t=" << t;
      throw NumericalError(msg.str());
    }

    ytmp = y + h * a21 * k1;
    rhs(t + c2 * h, ytmp, k2);
    ytmp = y + h * (a31 * k1 + a32 * k2);
    rhs(t + c3 * h, ytmp, k3);
    ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(t + c4 * h, ytmp, k4);
    ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(t + c5 * h, ytmp, k5);
    ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(t + h, ytmp, k6);
    ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    rhs(t + h, ynew, k7);
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const double e = error_norm(err, y, ynew, control);
    if (!std::isfinite(e)) {
      std::ostringstream msg;
      msg << "non-finite error estimate at t=" << t;
      throw NumericalError(msg.str());
    }
    const double factor =
        e == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(e, -0.2), 0.2, 5.0);
    if (e > 1.0) {
      ++stats.rejected;
      h *= std::min(factor, 1.0);
      continue;
    }

    ++stats.accepted;
    t = lands ? target : t + h;
    y.swap(ynew);
    if (post_step) {
      post_step(y);
      rhs(t, y, k1);
    } else {
      k1.swap(k7);
    }
    stats.t_reached = t;
    h *= factor;

    while (next_out < output_times.size() && output_times[next_out] <= t) {
      if (!observer(t, y)) {
        stats.stopped_by_observer = true;
        return stats;
      }
      ++next_out;
    }
    // A landing step is often much shorter than the stable step; do not let it
    // throttle the next one.
    if (lands) h = std::max(h, std::min(h_proposed, h_proposed * factor));
  }
  return stats;
}

}  // namespace ccabic
