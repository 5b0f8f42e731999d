// SPDX-License-Identifier: Apache-2.0

#include "xyq/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace xyq {

namespace {

Eigen::VectorXd project(Eigen::VectorXd x, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
  return x.cwiseMax(lo).cwiseMin(hi);
}

Eigen::MatrixXd jacobian(const ResidualFn& r, const Eigen::VectorXd& x, const Eigen::VectorXd& r0,
                         const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
  Eigen::MatrixXd j(r0.size(), x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double h = 1e-7 * std::max(1.0, std::abs(x[k]));
    Eigen::VectorXd xp = x, xm = x;
    xp[k] = std::min(x[k] + h, hi[k]);
    xm[k] = std::max(x[k] - h, lo[k]);
    const double span = xp[k] - xm[k];
    if (span <= 0) {
      j.col(k).setZero();
      continue;
    }
    j.col(k) = (r(xp) - r(xm)) / span;
  }
  return j;
}

}  // namespace

LsqResult levenberg_marquardt(const ResidualFn& residual, Eigen::VectorXd x0,
                              const Eigen::VectorXd& lower, const Eigen::VectorXd& upper,
                              bool scale_covariance_by_chi2, int max_iter) {
  Eigen::VectorXd x = project(std::move(x0), lower, upper);
  Eigen::VectorXd r = residual(x);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  LsqResult out;
  int it = 0;
  for (; it < max_iter; ++it) {
    const Eigen::MatrixXd j = jacobian(residual, x, r, lower, upper);
    const Eigen::MatrixXd jtj = j.transpose() * j;
    const Eigen::VectorXd g = j.transpose() * r;
    bool improved = false;
    for (int tries = 0; tries < 30; ++tries) {
      Eigen::MatrixXd a = jtj;
      a.diagonal() += lambda * (jtj.diagonal().array() + 1e-12).matrix();
      const Eigen::VectorXd step = a.ldlt().solve(-g);
      const Eigen::VectorXd xn = project(x + step, lower, upper);
      const Eigen::VectorXd rn = residual(xn);
      const double cn = rn.squaredNorm();
      if (std::isfinite(cn) && cn <= cost) {
        const double rel = (cost - cn) / std::max(cost, 1e-300);
        const double dx = (xn - x).norm() / (x.norm() + 1e-12);
        x = xn;
        r = rn;
        cost = cn;
        lambda = std::max(lambda / 10, 1e-12);
        improved = true;
        if (rel < 1e-15 && dx < 1e-12) it = max_iter;
        break;
      }
      lambda *= 10;
    }
    if (!improved) break;
  }
  out.x = x;
  out.chi2 = cost;
  out.iterations = it;
  out.dof = static_cast<int>(r.size() - x.size());
  const Eigen::MatrixXd j = jacobian(residual, x, r, lower, upper);
  Eigen::MatrixXd cov = (j.transpose() * j).completeOrthogonalDecomposition().pseudoInverse();
  if (scale_covariance_by_chi2 && out.dof > 0) cov *= cost / out.dof;
  out.covariance = cov;
  if (!x.allFinite()) throw FitError("levenberg_marquardt: non-finite parameters");
  return out;
}

SinusoidFit fit_sinusoid(std::span<const double> t, std::span<const double> y, double flat_tol) {
  const auto n = static_cast<Eigen::Index>(t.size());
  if (n < 4 || y.size() != t.size()) throw FitError("fit_sinusoid: need at least 4 samples");
  const double ymax = *std::max_element(y.begin(), y.end());
  const double ymin = *std::min_element(y.begin(), y.end());
  double mean = 0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(n);
  SinusoidFit fit;
  if (ymax - ymin < flat_tol) {
    fit.offset = mean;
    return fit;
  }
  const double span = t.back() - t.front();
  if (span <= 0) throw FitError("fit_sinusoid: samples must span a positive interval");
  const double fs = static_cast<double>(n - 1) / span;
  const double fmax = fs / 2;

  // Periodogram scan. Oversample by 20 relative to the natural resolution.
  const double df = 1.0 / (20.0 * span);
  double best_f = 0, best_p = -1;
  for (double f = df; f <= fmax; f += df) {
    double c = 0, s = 0;
    const double w = 2 * std::numbers::pi * f;
    for (Eigen::Index i = 0; i < n; ++i) {
      c += (y[i] - mean) * std::cos(w * t[i]);
      s += (y[i] - mean) * std::sin(w * t[i]);
    }
    const double p = c * c + s * s;
    if (p > best_p) {
      best_p = p;
      best_f = f;
    }
  }
  if (best_f * span < 2.0) throw FitError("fit_sinusoid: fewer than two oscillation periods covered");

  const auto model_residual = [&](const Eigen::VectorXd& p) {
    Eigen::VectorXd r(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double ph = 2 * std::numbers::pi * p[2] * t[i];
      r[i] = p[0] * std::cos(ph) + p[1] * std::sin(ph) + p[3] - y[i];
    }
    return r;
  };
  // Linear amplitudes at the periodogram peak seed the nonlinear fit.
  const CosineFit lin = fit_cosine_fixed_frequency(t, y, 2 * std::numbers::pi * best_f);
  Eigen::VectorXd p0(4);
  p0 << lin.a, lin.b, best_f, lin.c;
  const double inf = std::numeric_limits<double>::infinity();
  Eigen::VectorXd lo(4), hi(4);
  lo << -inf, -inf, 0.0, -inf;
  hi << inf, inf, inf, inf;
  const LsqResult res = levenberg_marquardt(model_residual, p0, lo, hi);
  fit.frequency = res.x[2];
  fit.amplitude = std::hypot(res.x[0], res.x[1]);
  fit.phase = std::atan2(-res.x[1], res.x[0]);
  fit.offset = res.x[3];
  fit.frequency_stderr = std::sqrt(std::max(0.0, res.covariance(2, 2)));
  fit.rms_residual = std::sqrt(res.chi2 / static_cast<double>(n));
  return fit;
}

CosineFit fit_cosine_fixed_frequency(std::span<const double> x, std::span<const double> y, double k) {
  const auto n = static_cast<Eigen::Index>(x.size());
  if (n < 3 || y.size() != x.size()) throw FitError("fit_cosine: need at least 3 samples");
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, 0) = std::cos(k * x[i]);
    a(i, 1) = std::sin(k * x[i]);
    a(i, 2) = 1.0;
    b[i] = y[i];
  }
  const Eigen::VectorXd p = a.colPivHouseholderQr().solve(b);
  CosineFit fit{p[0], p[1], p[2], 0.0};
  fit.rms_residual = std::sqrt((a * p - b).squaredNorm() / static_cast<double>(n));
  return fit;
}

}  // namespace xyq
