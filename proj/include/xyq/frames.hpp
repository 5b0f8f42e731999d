// SPDX-License-Identifier: Apache-2.0
//
// Abstract rotating-frame bookkeeping for a qubit pair driven by a
// parametric flux pulse.
//
// Model. Single-qubit frames rotate at the qubit frequencies f0, f1, so in the
// doubly rotating frame idle evolution is the identity. A flux pulse played
// with lab phase phi at time t realizes, in that frame, the exchange phase
//
//     beta_lab = pulse_sign * 2 * phi - 2 pi (f0 - f1) t + beta_offset.
//
// The controller defines phi relative to a two-qubit frame whose phase is
// measured in beta units: phi_lab = phi_cmd + (sign * phase(F2, t)) / (2 pulse_sign).
// With F2 at |f0 - f1| the time dependence cancels, and Z rotations become
// pure frame updates (qubit frame phase += angle, F2 phase shifted to match).
// effective_beta() reports beta in the current (updated) single-qubit frames.

#pragma once

#include <array>
#include <span>
#include <variant>
#include <vector>

#include "xyq/fit.hpp"
#include "xyq/qcore.hpp"

namespace xyq {

struct Frame {
  double frequency = 0.0;  // Hz
  double phase = 0.0;      // rad, unreduced
  double epoch = 0.0;      // s
};

// phase + 2 pi f (t - epoch). Times before the epoch extrapolate linearly.
double frame_phase_at(const Frame& f, double t);

struct FrameSet {
  std::array<Frame, 2> qubit_frames;
  Frame two_qubit_frame;
  int sign = 1;              // sign of f0 - f1
  double pulse_sign = -1.0;  // d(beta)/d(2 phi) of the flux drive
  double beta_offset = 0.0;  // constant offset absorbed by calibration

  // Two-qubit frame at |f0 - f1| with the sign flag taken from f0 - f1.
  static FrameSet from_qubit_frequencies(double f0_hz, double f1_hz);

  // Same set with the two-qubit frame frequency replaced (beta units, Hz).
  FrameSet with_two_qubit_frequency(double f_hz) const;

  // f0 - f1, the physical detuning the doubly rotating frame removes.
  double detuning() const { return qubit_frames[0].frequency - qubit_frames[1].frequency; }
};

FrameSet apply_rz_update(const FrameSet& fs, int qubit, double angle);

// Beta of the XY gate realized by a pulse commanded at phase phi_p (relative
// to the two-qubit frame) at time t, expressed in the current frames.
double effective_beta(const FrameSet& fs, double phi_p, double t);

// The same gate's beta in the base (never-updated) frames:
// effective_beta + (p0 - p1) with p_q the accumulated qubit frame phases.
double lab_beta(const FrameSet& fs, double phi_p, double t);

// Inverse of effective_beta in phi_p.
double pulse_phase_for(const FrameSet& fs, double beta, double t);

struct RzUpdate {
  int qubit;
  double angle;
};
struct Advance {
  double duration;
};
struct FluxEvent {
  double phi_p;
  double theta;
};
using FrameInstruction = std::variant<RzUpdate, Advance, FluxEvent>;

struct FrameRun {
  FrameSet final_frames;
  double final_time = 0.0;
  // Realized flux gates, in order, as base-frame (beta, theta).
  std::vector<GateAngle> gates;
  // Full two-qubit unitary: realized gates followed by the residual frame
  // rotation rz(p0) (x) rz(p1) that maps back to the updated frames.
  Matrix4c unitary;
};

// Plays a frame program. Flux events are instantaneous at the current clock.
FrameRun run_frame_program(const FrameSet& fs, std::span<const FrameInstruction> program,
                           double start_time = 0.0);

struct RamseyResult {
  double frame_frequency = 0.0;   // f_f, Hz (flux-phase units)
  std::vector<double> delays;     // s
  std::vector<double> p1;         // P(tunable qubit in |1>)
  SinusoidFit fit;
};

// Frame-tracking Ramsey in the 01/10 manifold: |01>, XY(beta0, pi/2), wait,
// XY(beta0 + beta1, pi/2) with beta1 accrued by a flux frame at f_f; the
// tunable qubit (site 1) is measured. Requires >= 20 delays.
RamseyResult simulate_frame_ramsey(const FrameSet& fs, double f_f_hz, std::span<const double> delays,
                                   double beta0 = 0.0);

// Evenly spaced delays [0, span] with n points.
std::vector<double> linspace(double a, double b, int n);

}  // namespace xyq
