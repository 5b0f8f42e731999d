// SPDX-License-Identifier: Apache-2.0
//
// Composite-pulse compiler. Every program is a list of flux pulses drawn
// from a handful of calibrated shapes (only their phase changes) and
// virtual Z updates. Phases are betas in the current frame: a frame update
// rz_frame(q, a) acts like a physical rz(a) on qubit q at that point.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "xyq/frames.hpp"
#include "xyq/pulsesim.hpp"
#include "xyq/qcore.hpp"

namespace xyq {

enum class PulseKind {
  xy_half,  // XY(beta, pi/2) on a 01/10 pair
  xy_full,  // XY(beta, pi) on a 01/10 pair, the iSWAP pulse
  xy02_pi,  // XY02(beta, pi) on a qutrit pair
  xy20_pi,  // XY20(beta, pi) on a qutrit pair
  x_pi,     // single-qubit microwave pi pulse about cos(beta) X + sin(beta) Y
};

std::string_view to_string(PulseKind k);
std::optional<PulseKind> pulse_kind_from_string(std::string_view s);

struct CalibratedPulseKind {
  PulseKind kind;
  double nominal_theta;
  double duration;  // s, 0 for virtual or single-qubit pulses
  std::optional<FluxPulse> flux_template;
};

// Nominal table for the default device. Durations are those of the pulsesim
// templates built by PulsesimBackend::make_default.
CalibratedPulseKind calibrated_kind(PulseKind k);

struct FluxStep {
  PulseKind kind;
  double phase;             // beta, rad
  std::vector<int> targets;  // one site for x_pi, two for the rest
};

struct RzFrameStep {
  int qubit;
  double angle;
};

using ProgramStep = std::variant<FluxStep, RzFrameStep>;

struct PulseProgram {
  QuditSpace space;
  std::vector<ProgramStep> steps;
  CMatrix declared_unitary;

  int flux_pulse_count() const;
};

// Ideal local matrix for one pulse. Site dims follow `dims`.
CMatrix ideal_pulse(PulseKind kind, double phase, std::span<const int> dims);

// Multiplies ideal pulse matrices in order, resolving frame updates as Z
// rotations. Two-qubit programs made of xy_half/xy_full pulses are played
// through the frame tracker instead, so the commanded flux phases are the
// ones a device would receive.
Unitary reconstruct(const PulseProgram& p);

// Pulses realized by a pulse-level simulation instead of ideal matrices.
// Only xy_half and xy_full are supported.
struct PulsesimBackend {
  CoupledPair pair;
  FluxPulse half;  // tau tuned to theta = pi/2
  FluxPulse full;  // tau tuned to theta = pi
  // Residual relative Z of each pulse, nulled by a trailing frame update
  // rz(z) (x) rz(-z). Measured once at phi_p = 0.
  double z_half = 0.0;
  double z_full = 0.0;
  double alpha_half = 0.0;  // beta realized at phi_p = 0, after the Z null
  double alpha_full = 0.0;

  static PulsesimBackend make_default();
  // 4x4 realized gate for the requested beta, Z null included.
  Matrix4c realize(PulseKind kind, double beta) const;
};

Unitary reconstruct(const PulseProgram& p, const PulsesimBackend& backend);

// XY(beta, theta) from two xy_half pulses and a pair of frame updates.
PulseProgram decompose_xy(double theta, double beta);

struct IswapAbsorption {
  PulseProgram pulse;               // single xy_full pulse at phase 0
  std::array<double, 2> post_rz{};  // frame updates on qubits 0 and 1 after it
};
IswapAbsorption iswap_phase_absorption(double beta);
// The absorbed program with the post-gate frame updates appended.
PulseProgram with_post_rz(const IswapAbsorption& a);

// CPHASE(theta) on two qutrits from two xy02_pi pulses.
PulseProgram decompose_cphase(double theta);

// CCPHASE(theta) on three qutrits in a line (0-1-2): qubit 1 is shelved to
// |2> unless qubit 0 is set, then CPHASE on (1, 2) and unshelve. The two x_pi
// pulses on qubit 0 turn the shelving condition around.
PulseProgram decompose_ccphase(double theta);

}  // namespace xyq
