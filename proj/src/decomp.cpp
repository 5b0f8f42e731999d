// SPDX-License-Identifier: Apache-2.0

#include "xyq/decomp.hpp"

#include <stdexcept>

namespace xyq {

namespace {

// Frame set used when replaying qubit-pair programs through the frame
// tracker. The reconstructed unitary does not depend on it.
FrameSet replay_frames() { return FrameSet::from_qubit_frequencies(3.821e9, 3.821e9 + 937.76e6); }

// Exchange between |01> and |10> of a pair with site dims (d0, d1).
CMatrix exchange_01_10(double beta, double theta, int d0, int d1) {
  CMatrix u = CMatrix::Identity(d0 * d1, d0 * d1);
  const Matrix4c x = xy_unitary(beta, theta);
  const Eigen::Index i01 = 1, i10 = d1;
  u(i01, i01) = x(1, 1);
  u(i01, i10) = x(1, 2);
  u(i10, i01) = x(2, 1);
  u(i10, i10) = x(2, 2);
  return u;
}

bool is_pair_kind(PulseKind k) { return k != PulseKind::x_pi; }

}  // namespace

std::string_view to_string(PulseKind k) {
  switch (k) {
    case PulseKind::xy_half: return "xy_half";
    case PulseKind::xy_full: return "xy_full";
    case PulseKind::xy02_pi: return "xy02_pi";
    case PulseKind::xy20_pi: return "xy20_pi";
    case PulseKind::x_pi: return "x_pi";
  }
  return "?";
}

std::optional<PulseKind> pulse_kind_from_string(std::string_view s) {
  for (PulseKind k : {PulseKind::xy_half, PulseKind::xy_full, PulseKind::xy02_pi, PulseKind::xy20_pi, PulseKind::x_pi})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

CalibratedPulseKind calibrated_kind(PulseKind k) {
  FluxPulse full = default_pulse();
  switch (k) {
    case PulseKind::xy_half: {
      // Tuned once against default_pair(); see PulsesimBackend::make_default.
      FluxPulse half = full;
      half.tau = 77.577e-9;
      return {k, kPi / 2, half.duration(), half};
    }
    case PulseKind::xy_full: return {k, kPi, full.duration(), full};
    case PulseKind::xy02_pi:
    case PulseKind::xy20_pi: return {k, kPi, full.duration(), std::nullopt};
    case PulseKind::x_pi: return {k, kPi, 0.0, std::nullopt};
  }
  throw std::invalid_argument("calibrated_kind: unknown pulse kind");
}

int PulseProgram::flux_pulse_count() const {
  int n = 0;
  for (const auto& s : steps)
    if (const auto* f = std::get_if<FluxStep>(&s); f && is_pair_kind(f->kind)) ++n;
  return n;
}

CMatrix ideal_pulse(PulseKind kind, double phase, std::span<const int> dims) {
  const std::size_t want = kind == PulseKind::x_pi ? 1 : 2;
  if (dims.size() != want) throw std::invalid_argument("ideal_pulse: wrong number of targets");
  switch (kind) {
    case PulseKind::xy_half: return exchange_01_10(phase, kPi / 2, dims[0], dims[1]);
    case PulseKind::xy_full: return exchange_01_10(phase, kPi, dims[0], dims[1]);
    case PulseKind::xy02_pi:
    case PulseKind::xy20_pi:
      if (dims[0] != 3 || dims[1] != 3) throw std::invalid_argument("ideal_pulse: xy02/xy20 need qutrit targets");
      return kind == PulseKind::xy02_pi ? xy02_unitary(phase, kPi) : xy20_unitary(phase, kPi);
    case PulseKind::x_pi: return lift_single(rx_phased(phase, kPi), dims[0]);
  }
  throw std::invalid_argument("ideal_pulse: unknown pulse kind");
}

namespace {

template <typename PulseFn>
CMatrix multiply_steps(const PulseProgram& p, PulseFn&& pulse) {
  const QuditSpace& sp = p.space;
  CMatrix u = CMatrix::Identity(sp.total(), sp.total());
  for (const auto& step : p.steps) {
    if (const auto* r = std::get_if<RzFrameStep>(&step)) {
      if (r->qubit < 0 || r->qubit >= sp.sites()) throw std::out_of_range("reconstruct: frame update on missing site");
      u = embed(lift_rz(r->angle, sp.dim(r->qubit)), {r->qubit}, sp) * u;
      continue;
    }
    const auto& f = std::get<FluxStep>(step);
    std::vector<int> dims;
    for (int t : f.targets) {
      if (t < 0 || t >= sp.sites()) throw std::out_of_range("reconstruct: pulse on missing site");
      dims.push_back(sp.dim(t));
    }
    u = embed(pulse(f, dims), f.targets, sp) * u;
  }
  return u;
}

bool frame_replayable(const PulseProgram& p) {
  if (p.space != QuditSpace::qubits(2)) return false;
  for (const auto& s : p.steps) {
    if (const auto* f = std::get_if<FluxStep>(&s)) {
      if (f->kind != PulseKind::xy_half && f->kind != PulseKind::xy_full) return false;
      if (f->targets != std::vector<int>{0, 1}) return false;
    }
  }
  return true;
}

CMatrix replay_through_frames(const PulseProgram& p) {
  FrameSet fs = replay_frames();
  std::vector<FrameInstruction> prog;
  double t = 0.0;
  for (const auto& s : p.steps) {
    if (const auto* r = std::get_if<RzFrameStep>(&s)) {
      prog.push_back(RzUpdate{r->qubit, r->angle});
      fs = apply_rz_update(fs, r->qubit, r->angle);
      continue;
    }
    const auto& f = std::get<FluxStep>(s);
    const double theta = f.kind == PulseKind::xy_half ? kPi / 2 : kPi;
    prog.push_back(FluxEvent{pulse_phase_for(fs, f.phase, t), theta});
    const double dur = calibrated_kind(f.kind).duration;
    prog.push_back(Advance{dur});
    t += dur;
  }
  return run_frame_program(replay_frames(), prog).unitary;
}

}  // namespace

Unitary reconstruct(const PulseProgram& p) {
  if (frame_replayable(p)) return Unitary::checked(p.space, replay_through_frames(p), 1e-10);
  return Unitary::checked(p.space, multiply_steps(p, [](const FluxStep& f, const std::vector<int>& dims) {
                            return ideal_pulse(f.kind, f.phase, dims);
                          }),
                          1e-10);
}

PulsesimBackend PulsesimBackend::make_default() {
  PulsesimBackend b;
  b.pair = default_pair();
  b.full = default_pulse();
  b.half = b.full;
  b.half.tau = tune_tau_for_theta(b.pair, b.full, kPi / 2);
  b.half.phi_p = b.full.phi_p = 0.0;
  auto measure = [&](const FluxPulse& p, double& z, double& alpha) {
    const Matrix4c u = evolve(b.pair, p, p.duration()).unitary;
    z = 0.5 * (std::arg(u(1, 1)) - std::arg(u(2, 2)));
    const Matrix4c c = kron(rz(z), rz(-z)) * u;
    alpha = extract_xy(c.block<2, 2>(1, 1)).beta;
  };
  measure(b.half, b.z_half, b.alpha_half);
  measure(b.full, b.z_full, b.alpha_full);
  return b;
}

Matrix4c PulsesimBackend::realize(PulseKind kind, double beta) const {
  if (kind != PulseKind::xy_half && kind != PulseKind::xy_full)
    throw std::invalid_argument("PulsesimBackend: only xy_half and xy_full are simulated");
  FluxPulse p = kind == PulseKind::xy_half ? half : full;
  const double a = kind == PulseKind::xy_half ? alpha_half : alpha_full;
  const double z = kind == PulseKind::xy_half ? z_half : z_full;
  // beta = -2 phi_p + alpha.
  p.phi_p = 0.5 * wrap_angle(a - beta);
  return kron(rz(z), rz(-z)) * evolve(pair, p, p.duration()).unitary;
}

Unitary reconstruct(const PulseProgram& p, const PulsesimBackend& backend) {
  return Unitary::checked(p.space, multiply_steps(p, [&](const FluxStep& f, const std::vector<int>& dims) -> CMatrix {
                            if (dims != std::vector<int>{2, 2})
                              throw std::invalid_argument("reconstruct: pulse-level backend needs qubit pairs");
                            return backend.realize(f.kind, f.phase);
                          }),
                          1e-6);
}

PulseProgram decompose_xy(double theta, double beta) {
  PulseProgram p;
  p.space = QuditSpace::qubits(2);
  p.steps = {
      FluxStep{PulseKind::xy_half, wrap_angle(beta - kPi / 2), {0, 1}},
      FluxStep{PulseKind::xy_half, wrap_angle(beta + kPi / 2 - theta), {0, 1}},
      RzFrameStep{0, -theta / 2},
      RzFrameStep{1, theta / 2},
  };
  p.declared_unitary = xy_unitary(beta, theta);
  return p;
}

IswapAbsorption iswap_phase_absorption(double beta) {
  IswapAbsorption a;
  a.pulse.space = QuditSpace::qubits(2);
  a.pulse.steps = {FluxStep{PulseKind::xy_full, 0.0, {0, 1}}};
  a.pulse.declared_unitary = iswap();
  // (rz(-beta) (x) rz(beta)) iSWAP = XY(beta, pi).
  a.post_rz = {-beta, beta};
  return a;
}

PulseProgram with_post_rz(const IswapAbsorption& a) {
  PulseProgram p = a.pulse;
  p.steps.push_back(RzFrameStep{0, a.post_rz[0]});
  p.steps.push_back(RzFrameStep{1, a.post_rz[1]});
  p.declared_unitary = kron(rz(a.post_rz[0]), rz(a.post_rz[1])) * a.pulse.declared_unitary;
  return p;
}

PulseProgram decompose_cphase(double theta) {
  // |11> -> -i e^{-i b1}|02> -> -e^{i(b2 - b1)}|11>, so b2 - b1 = theta - pi.
  PulseProgram p;
  p.space = QuditSpace::qutrits(2);
  p.steps = {
      FluxStep{PulseKind::xy02_pi, 0.0, {0, 1}},
      FluxStep{PulseKind::xy02_pi, wrap_angle(theta - kPi), {0, 1}},
  };
  p.declared_unitary = cphase(theta);
  return p;
}

PulseProgram decompose_ccphase(double theta) {
  // Shelve and unshelve pick up -e^{i(b4 - b1)} on |01x>, cancelled by
  // b4 - b1 = pi. The inner pair is decompose_cphase on (1, 2).
  PulseProgram p;
  p.space = QuditSpace::qutrits(3);
  p.steps = {
      FluxStep{PulseKind::x_pi, 0.0, {0}},
      FluxStep{PulseKind::xy02_pi, 0.0, {0, 1}},
      FluxStep{PulseKind::xy02_pi, 0.0, {1, 2}},
      FluxStep{PulseKind::xy02_pi, wrap_angle(theta - kPi), {1, 2}},
      FluxStep{PulseKind::xy02_pi, kPi, {0, 1}},
      FluxStep{PulseKind::x_pi, kPi, {0}},
  };
  p.declared_unitary = ccphase(theta);
  return p;
}

}  // namespace xyq
