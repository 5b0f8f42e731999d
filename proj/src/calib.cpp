// SPDX-License-Identifier: Apache-2.0

#include "xyq/calib.hpp"

#include <algorithm>
#include <stdexcept>

namespace xyq {

namespace {

Matrix4c z_pair(const std::array<double, 2>& a) { return kron(rz(a[0]), rz(a[1])); }

// Multinomial sample of the computational-basis distribution of psi.
std::array<double, 4> measure(const CVector& psi, int shots, Rng& rng) {
  std::array<double, 4> p{};
  for (int i = 0; i < 4; ++i) p[i] = std::norm(psi(i));
  if (shots <= 0) return p;
  std::array<double, 4> counts{};
  for (int s = 0; s < shots; ++s) {
    double u = uniform01(rng), acc = 0.0;
    int k = 0;
    for (; k < 3; ++k) {
      acc += p[k];
      if (u < acc) break;
    }
    counts[k] += 1.0;
  }
  for (auto& c : counts) c /= shots;
  return counts;
}

}  // namespace

CalibrationScenario CalibrationScenario::random(std::uint64_t seed, DeviceModel device) {
  Rng rng = make_stream(seed, 0);
  CalibrationScenario s;
  s.hidden_phi0 = wrap_angle(kPi * (uniform01(rng) - 0.5) * 2.0) / 2.0;
  s.hidden_rz_pair = {uniform01(rng) - 0.5, uniform01(rng) - 0.5};
  s.device = device;
  return s;
}

CalibrationDevice::CalibrationDevice(const CalibrationScenario& s) : s_(s) {
  if (s.device == DeviceModel::pulsesim) backend_ = std::make_shared<PulsesimBackend>(PulsesimBackend::make_default());
}

Matrix4c CalibrationDevice::half_pulse(double phi_p) const {
  const double phi = phi_p + s_.hidden_phi0;
  Matrix4c u;
  if (backend_) {
    FluxPulse p = backend_->half;
    p.phi_p = phi;
    u = evolve(backend_->pair, p, p.duration()).unitary;
  } else {
    u = xy_unitary(-2.0 * phi, kPi / 2);
  }
  return z_pair(s_.hidden_rz_pair) * u;
}

Matrix4c execute(const CalibrationDevice& dev, const Corrections& c, const PulseProgram& p) {
  if (p.space != QuditSpace::qubits(2)) throw std::invalid_argument("execute: two-qubit programs only");
  Matrix4c u = Matrix4c::Identity();
  int k = 0;
  for (const auto& step : p.steps) {
    if (const auto* r = std::get_if<RzFrameStep>(&step)) {
      u = (r->qubit == 0 ? kron(rz(r->angle), Matrix2c::Identity()) : kron(Matrix2c::Identity(), rz(r->angle))) * u;
      continue;
    }
    const auto& f = std::get<FluxStep>(step);
    if (f.kind != PulseKind::xy_half) throw std::invalid_argument("execute: only xy_half pulses are calibrated");
    const double beta = f.phase + k * c.pulse_shift;
    // beta = -2 (phi_p + phi0)
    u = dev.half_pulse(-0.5 * beta - c.phi0) * u;
    ++k;
  }
  return z_pair(c.final_rz) * u;
}

Phi0Calibration calibrate_phi0(const CalibrationDevice& dev, const Corrections& c,
                               std::span<const double> grid, const CalibOptions& opt) {
  if (grid.size() < 8) throw std::invalid_argument("calibrate_phi0: need >= 8 grid points");
  const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
  const double n = static_cast<double>(grid.size());
  if ((*hi - *lo) * n / (n - 1) < kPi - 1e-12) throw std::invalid_argument("calibrate_phi0: grid must span pi");

  Rng rng = make_stream(opt.seed, 1);
  CVector psi0(4);
  psi0 << 0.5, 0.5, cplx(0, 0.5), cplx(0, 0.5);
  auto signal_at = [&](double phi_p) {
    const CVector psi = dev.half_pulse(phi_p - c.phi0) * psi0;
    const auto p = measure(psi, opt.shots, rng);
    return 2.0 * (p[1] - p[2]);
  };

  Phi0Calibration out;
  out.phi_p.assign(grid.begin(), grid.end());
  for (double x : grid) out.signal.push_back(signal_at(x));
  out.fit = fit_cosine_fixed_frequency(out.phi_p, out.signal, 2.0);
  const double amp = std::hypot(out.fit.a, out.fit.b);
  if (amp < 1e-3) throw FitError("calibrate_phi0: flat signal");
  // signal = -cos(2 (phi_p + phi0)) = -cos(2 phi0) cos(2 phi_p) + sin(2 phi0) sin(2 phi_p)
  double est = 0.5 * std::atan2(out.fit.b, -out.fit.a);
  // Follow-up point: the response must be at its minimum at phi_p = -phi0.
  // If it is at its maximum the drive responds with the opposite sign.
  if (signal_at(-est) > out.fit.c) est += kPi / 2;
  out.estimate = wrap_angle(2.0 * est) / 2.0;
  return out;
}

SecondPulseCalibration calibrate_second_pulse_phase(const CalibrationDevice& dev, const Corrections& c,
                                                    const CalibOptions& opt) {
  Rng rng = make_stream(opt.seed, 2);
  CVector psi0 = CVector::Zero(4);
  psi0(1) = 1.0;
  auto population = [&](double beta2) {
    PulseProgram p;
    p.space = QuditSpace::qubits(2);
    p.steps = {FluxStep{PulseKind::xy_half, 0.0, {0, 1}}, FluxStep{PulseKind::xy_half, beta2, {0, 1}}};
    Corrections no_final = c;
    no_final.final_rz = {0.0, 0.0};
    const CVector psi = execute(dev, no_final, p) * psi0;
    return measure(psi, opt.shots, rng)[1];
  };

  SecondPulseCalibration out;
  const int n = std::max(opt.grid_points, 8);
  const double h = kTwoPi / n;
  for (int i = 0; i < n; ++i) {
    out.beta2.push_back(i * h);
    out.population.push_back(population(i * h));
  }
  // P(beta2) = |A + B e^{i beta2}|^2 is a single harmonic whatever the two
  // pulses are, so a linear fit over the whole sweep locates the peak.
  const CosineFit f = fit_cosine_fixed_frequency(out.beta2, out.population, 1.0);
  if (2 * std::hypot(f.a, f.b) < 0.5) throw FitError("calibrate_second_pulse_phase: no clear maximum");
  const double x = std::atan2(f.b, f.a);
  out.peak_population = population(x);
  out.pulse_shift = wrap_angle(x - kPi);
  // Command actually sent for pulse 2 at the optimum.
  out.second_pulse_phase = wrap_angle(-0.5 * (x + c.pulse_shift) - c.phi0);
  return out;
}

std::array<double, 2> calibrate_final_rz(const CalibrationDevice& dev, const Corrections& c, const CalibOptions& opt) {
  Rng rng = make_stream(opt.seed, 3);
  const Matrix4c u = execute(dev, c, decompose_xy(0.0, 0.0));
  const double r = 1.0 / std::sqrt(2.0);
  std::array<double, 2> out{};
  for (int q = 0; q < 2; ++q) {
    CVector psi0 = CVector::Zero(4);
    psi0(0) = r;
    psi0(q == 0 ? 2 : 1) = r;
    const CVector psi = u * psi0;
    // Analysis rz(psi) then H reads cos(phase + psi); sweeping psi and
    // fitting averages the shot noise over the whole sweep.
    const int n = std::max(opt.grid_points, 8);
    std::vector<double> psi_grid, signal;
    for (int k = 0; k < n; ++k) {
      const double a = kTwoPi * k / n;
      const Matrix2c rot = hadamard() * rz(a);
      const Matrix4c m = q == 0 ? kron(rot, Matrix2c::Identity()) : kron(Matrix2c::Identity(), rot);
      const auto p = measure(m * psi, opt.shots, rng);
      psi_grid.push_back(a);
      signal.push_back(q == 0 ? p[0] + p[1] - p[2] - p[3] : p[0] - p[1] + p[2] - p[3]);
    }
    const CosineFit f = fit_cosine_fixed_frequency(psi_grid, signal, 1.0);
    if (std::hypot(f.a, f.b) < 0.5) throw FitError("calibrate_final_rz: no Ramsey contrast");
    out[q] = -std::atan2(-f.b, f.a);
  }
  return out;
}

CalibrationResult calibrate(const CalibrationDevice& dev, const CalibOptions& opt) {
  CalibrationResult res;
  Corrections c;
  std::vector<double> grid;
  const int n = std::max(opt.grid_points, 8);
  for (int i = 0; i < n; ++i) grid.push_back(kPi * i / n);

  res.phi0_sweep = calibrate_phi0(dev, c, grid, opt);
  c.phi0 = res.phi0_sweep.estimate;
  res.second_sweep = calibrate_second_pulse_phase(dev, c, opt);
  c.pulse_shift = res.second_sweep.pulse_shift;
  c.final_rz = calibrate_final_rz(dev, c, opt);

  res.phi0_estimate = c.phi0;
  res.second_pulse_phase = res.second_sweep.second_pulse_phase;
  res.final_rz_pair = c.final_rz;
  res.corrections = c;
  res.residual = distance_global_phase(execute(dev, c, decompose_xy(0.0, 0.0)), Matrix4c::Identity());
  return res;
}

}  // namespace xyq
