// SPDX-License-Identifier: Apache-2.0
//
// Dormand-Prince 5(4) adaptive integrator for real state vectors.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>

#include <Eigen/Dense>

namespace xyq {

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-10;
  double initial_step = 1e-12;
  double max_step = 0.0;  // 0: unlimited
  double min_step = 1e-22;
  long max_steps = 50'000'000;
};

struct OdeStats {
  long accepted = 0;
  long rejected = 0;
};

class StepUnderflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integrates y' = f(t, y) from t0 through every time in `stops` (ascending,
// each >= t0). `observe(k, t, y)` is called when stop k is reached exactly;
// the step size is clipped so stops are hit without interpolation.
template <typename Rhs, typename Observer>
OdeStats integrate_dopri5(Rhs&& f, double t0, Eigen::VectorXd y, std::span<const double> stops,
                          Observer&& observe, const OdeOptions& opt = {}) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  OdeStats stats;
  double t = t0;
  double h = opt.initial_step;
  const Eigen::Index n = y.size();
  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), err(n);
  k1 = f(t, y);

  for (std::size_t s = 0; s < stops.size(); ++s) {
    const double target = stops[s];
    if (target < t) throw std::invalid_argument("integrate_dopri5: stops must be ascending");
    while (t < target) {
      if (stats.accepted + stats.rejected > opt.max_steps)
        throw std::runtime_error("integrate_dopri5: step budget exhausted");
      if (opt.max_step > 0) h = std::min(h, opt.max_step);
      const double h_free = h;
      bool last = false;
      if (t + h >= target) {
        h = target - t;
        last = true;
      }
      ytmp = y + h * a21 * k1;
      k2 = f(t + c2 * h, ytmp);
      ytmp = y + h * (a31 * k1 + a32 * k2);
      k3 = f(t + c3 * h, ytmp);
      ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
      k4 = f(t + c4 * h, ytmp);
      ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
      k5 = f(t + c5 * h, ytmp);
      ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
      k6 = f(t + h, ytmp);
      ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      k7 = f(t + h, ynew);
      err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      double norm = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
        norm = std::max(norm, std::abs(err[i]) / sc);
      }
      if (norm <= 1.0) {
        t = last ? target : t + h;
        y = ynew;
        k1 = k7;
        ++stats.accepted;
        const double fac = norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
        h = last ? std::max(h * fac, h_free) : h * fac;
      } else {
        ++stats.rejected;
        h *= std::clamp(0.9 * std::pow(norm, -0.2), 0.1, 1.0);
        if (h < opt.min_step) throw StepUnderflow("integrate_dopri5: step size underflow");
      }
    }
    observe(s, t, y);
  }
  return stats;
}

}  // namespace xyq
