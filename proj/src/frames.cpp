// SPDX-License-Identifier: Apache-2.0

#include "xyq/frames.hpp"

#include <cmath>
#include <stdexcept>

namespace xyq {

double frame_phase_at(const Frame& f, double t) {
  return f.phase + kTwoPi * f.frequency * (t - f.epoch);
}

FrameSet FrameSet::from_qubit_frequencies(double f0_hz, double f1_hz) {
  if (!std::isfinite(f0_hz) || !std::isfinite(f1_hz))
    throw std::invalid_argument("FrameSet: frequencies must be finite");
  FrameSet fs;
  fs.qubit_frames[0].frequency = f0_hz;
  fs.qubit_frames[1].frequency = f1_hz;
  fs.two_qubit_frame.frequency = std::abs(f0_hz - f1_hz);
  fs.sign = f0_hz >= f1_hz ? 1 : -1;
  return fs;
}

FrameSet FrameSet::with_two_qubit_frequency(double f_hz) const {
  FrameSet out = *this;
  out.two_qubit_frame.frequency = f_hz;
  return out;
}

FrameSet apply_rz_update(const FrameSet& fs, int qubit, double angle) {
  if (qubit != 0 && qubit != 1) throw std::out_of_range("apply_rz_update: qubit must be 0 or 1");
  FrameSet out = fs;
  out.qubit_frames[qubit].phase += angle;
  // Keeps sign * phase(F2) - (p0 - p1) invariant.
  out.two_qubit_frame.phase += (qubit == 0 ? 1.0 : -1.0) * fs.sign * angle;
  return out;
}

namespace {

double drift(const FrameSet& fs, double t) {
  return fs.sign * frame_phase_at(fs.two_qubit_frame, t) - kTwoPi * fs.detuning() * t;
}

double frame_difference(const FrameSet& fs) {
  return fs.qubit_frames[0].phase - fs.qubit_frames[1].phase;
}

}  // namespace

double effective_beta(const FrameSet& fs, double phi_p, double t) {
  return fs.pulse_sign * 2.0 * phi_p + fs.beta_offset + drift(fs, t) - frame_difference(fs);
}

double lab_beta(const FrameSet& fs, double phi_p, double t) {
  return effective_beta(fs, phi_p, t) + frame_difference(fs);
}

double pulse_phase_for(const FrameSet& fs, double beta, double t) {
  return (beta - fs.beta_offset - drift(fs, t) + frame_difference(fs)) / (2.0 * fs.pulse_sign);
}

FrameRun run_frame_program(const FrameSet& fs, std::span<const FrameInstruction> program,
                           double start_time) {
  FrameRun run;
  run.final_frames = fs;
  double t = start_time;
  Matrix4c u = Matrix4c::Identity();
  for (const auto& ins : program) {
    if (const auto* rzu = std::get_if<RzUpdate>(&ins)) {
      run.final_frames = apply_rz_update(run.final_frames, rzu->qubit, rzu->angle);
    } else if (const auto* adv = std::get_if<Advance>(&ins)) {
      if (adv->duration < 0) throw std::invalid_argument("run_frame_program: negative duration");
      t += adv->duration;
    } else {
      const auto& ev = std::get<FluxEvent>(ins);
      const double b = lab_beta(run.final_frames, ev.phi_p, t);
      run.gates.push_back({ev.theta, b});
      u = xy_unitary(b, ev.theta) * u;
    }
  }
  const auto& qf = run.final_frames.qubit_frames;
  const Matrix4c residual = kron(rz(qf[0].phase), rz(qf[1].phase));
  run.unitary = residual * u;
  run.final_time = t;
  return run;
}

RamseyResult simulate_frame_ramsey(const FrameSet& fs, double f_f_hz, std::span<const double> delays,
                                   double beta0) {
  if (delays.size() < 20) throw std::invalid_argument("simulate_frame_ramsey: need >= 20 delays");
  const FrameSet tracked = fs.with_two_qubit_frequency(2.0 * f_f_hz);
  RamseyResult res;
  res.frame_frequency = f_f_hz;
  res.delays.assign(delays.begin(), delays.end());
  // The commanded phase is fixed; the frame supplies the accrued beta_1.
  const double phi_cmd = pulse_phase_for(tracked, beta0, 0.0);
  CVector psi0 = CVector::Zero(4);
  psi0(1) = 1.0;  // |01>: tunable qubit (site 1) excited
  for (double tau : delays) {
    const double b1 = effective_beta(tracked, phi_cmd, 0.0);
    const double b2 = effective_beta(tracked, phi_cmd, tau);
    const CVector psi = xy_unitary(b2, kPi / 2) * xy_unitary(b1, kPi / 2) * psi0;
    res.p1.push_back(std::norm(psi(1)) + std::norm(psi(3)));
  }
  res.fit = fit_sinusoid(res.delays, res.p1);
  return res;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return out;
}

}  // namespace xyq
