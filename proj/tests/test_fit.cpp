// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "xyq/fit.hpp"

using namespace xyq;

TEST_CASE("levenberg_marquardt recovers an exponential decay") {
  std::vector<double> x, y;
  for (int k = 0; k < 30; ++k) {
    x.push_back(k);
    y.push_back(0.25 + 0.7 * std::pow(0.93, k));
  }
  auto r = [&](const Eigen::VectorXd& p) {
    Eigen::VectorXd out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = p[0] + p[1] * std::pow(p[2], x[i]) - y[i];
    return out;
  };
  Eigen::VectorXd p0(3), lo(3), hi(3);
  p0 << 0.5, 0.5, 0.8;
  lo << 0, 0, 0;
  hi << 1, 1, 1;
  const auto res = levenberg_marquardt(r, p0, lo, hi);
  CHECK(res.x[0] == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(res.x[1] == doctest::Approx(0.7).epsilon(1e-8));
  CHECK(res.x[2] == doctest::Approx(0.93).epsilon(1e-10));
}

TEST_CASE("bounds are respected") {
  auto r = [](const Eigen::VectorXd& p) {
    Eigen::VectorXd out(1);
    out[0] = p[0] - 5.0;
    return out;
  };
  Eigen::VectorXd p0(1), lo(1), hi(1);
  p0 << 0.0;
  lo << -1.0;
  hi << 2.0;
  CHECK(levenberg_marquardt(r, p0, lo, hi).x[0] == doctest::Approx(2.0));
}

TEST_CASE("fit_sinusoid") {
  std::vector<double> t, y;
  const double f = 857.76e6;
  for (int k = 0; k <= 100; ++k) {
    t.push_back(k * 0.1e-9);
    y.push_back(0.5 + 0.4 * std::cos(2 * M_PI * f * t.back() + 0.3));
  }
  const auto fit = fit_sinusoid(t, y);
  CHECK(fit.frequency == doctest::Approx(f).epsilon(1e-9));
  CHECK(fit.amplitude == doctest::Approx(0.4).epsilon(1e-8));
  CHECK(fit.offset == doctest::Approx(0.5).epsilon(1e-8));

  std::vector<double> flat(t.size(), 0.5);
  CHECK(fit_sinusoid(t, flat).frequency == 0.0);

  std::vector<double> slow;
  for (double tt : t) slow.push_back(std::cos(2 * M_PI * 1e8 * tt));
  CHECK_THROWS_AS(fit_sinusoid(t, slow), FitError);
}

TEST_CASE("fit_cosine_fixed_frequency") {
  std::vector<double> x, y;
  for (int k = 0; k < 16; ++k) {
    x.push_back(k * 2 * M_PI / 16);
    y.push_back(0.1 - 0.8 * std::cos(2 * x.back() + 0.4));
  }
  const auto c = fit_cosine_fixed_frequency(x, y, 2.0);
  CHECK(std::hypot(c.a, c.b) == doctest::Approx(0.8));
  CHECK(c.c == doctest::Approx(0.1));
  CHECK(c.rms_residual < 1e-12);
}
