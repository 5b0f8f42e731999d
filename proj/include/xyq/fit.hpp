// SPDX-License-Identifier: Apache-2.0
//
// Small nonlinear least-squares toolkit (bounded Levenberg-Marquardt) and the
// curve fits built on it.

#pragma once

#include <functional>
#include <span>
#include <stdexcept>

#include <Eigen/Dense>

namespace xyq {

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LsqResult {
  Eigen::VectorXd x;
  Eigen::MatrixXd covariance;  // (J^T J)^{-1}, scaled by chi2/dof when requested
  double chi2 = 0.0;
  int dof = 0;
  int iterations = 0;
};

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

// Minimizes |r(x)|^2 with box constraints lower <= x <= upper (projected
// steps). The Jacobian is taken by central differences.
LsqResult levenberg_marquardt(const ResidualFn& residual, Eigen::VectorXd x0,
                              const Eigen::VectorXd& lower, const Eigen::VectorXd& upper,
                              bool scale_covariance_by_chi2 = true, int max_iter = 500);

struct SinusoidFit {
  double frequency = 0.0;  // Hz (non-negative)
  double amplitude = 0.0;
  double phase = 0.0;      // y = offset + amplitude cos(2 pi f t + phase)
  double offset = 0.0;
  double frequency_stderr = 0.0;
  double rms_residual = 0.0;
};

// Fits offset + A cos(2 pi f t + phi). The initial frequency comes from a
// periodogram scan up to the Nyquist frequency of the mean sample spacing.
// A flat signal (peak-to-peak below `flat_tol`) returns frequency 0.
// Throws FitError when fewer than two periods are covered.
SinusoidFit fit_sinusoid(std::span<const double> t, std::span<const double> y,
                         double flat_tol = 1e-9);

// y = a cos(k x) + b sin(k x) + c
struct CosineFit {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double rms_residual = 0.0;
};

// Linear least squares for y = a cos(k x) + b sin(k x) + c.
CosineFit fit_cosine_fixed_frequency(std::span<const double> x, std::span<const double> y, double k);

}  // namespace xyq
