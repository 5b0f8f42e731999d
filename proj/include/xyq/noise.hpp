// SPDX-License-Identifier: Apache-2.0
//
// Density matrices, T1/T2 channels and the coherence limit of a gate.

#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "xyq/qcore.hpp"

namespace xyq {

struct QubitCoherence {
  double t1 = 0.0;  // s
  double t2 = 0.0;  // s, total (T2*), at most 2 T1
};

struct NoiseModel {
  std::vector<QubitCoherence> qubits;
  // Idle-equivalent duration per gate label (s). Missing labels count as 0.
  std::map<std::string, double> durations;
  // Probability of a full depolarization of the gate's targets, per label.
  std::map<std::string, double> depolarizing;
  // P(read 1 | 0), P(read 0 | 1); applied to every qubit.
  std::array<double, 2> readout{0.0, 0.0};

  // Throws std::invalid_argument on T1 <= 0, T2 <= 0, T2 > 2 T1 or a
  // probability outside [0, 1].
  void validate() const;
  double duration_of(const std::string& label) const;
  double depolarizing_of(const std::string& label) const;
  bool coherent_limit() const { return qubits.empty(); }

  // No decoherence, no readout error.
  static NoiseModel noiseless();
  // Coherence under flux modulation: T1 = 24 / 26 us, T2* = 13 / 14 us.
  // Gate durations: single-qubit rotations 40 ns, virtual rz 0, cz and the
  // single-pulse iSWAP 240 ns, half pulses 152 ns.
  static NoiseModel modulated_pair();
};

// Depolarizing probability giving average gate fidelity f on dimension d.
double depolarizing_for_fidelity(double f, int d);

struct DensityMatrix {
  QuditSpace space;
  CMatrix rho;

  static DensityMatrix pure(const QuditSpace& space, const CVector& psi);
  static DensityMatrix basis(const QuditSpace& space, Eigen::Index index);

  // Hermitian and unit trace to `tol`, eigenvalues above -`psd_floor`.
  // Throws std::domain_error otherwise.
  void validate(double tol = 1e-12, double psd_floor = 1e-10) const;
  double population(Eigen::Index index) const { return rho(index, index).real(); }
};

DensityMatrix apply_unitary(const DensityMatrix& r, const CMatrix& u);
// Unitary acting on `sites` only.
DensityMatrix apply_local(const DensityMatrix& r, const CMatrix& u, std::span<const int> sites);

// Amplitude damping with 1 - e^{-t/T1} and pure dephasing taking the total
// coherence decay to e^{-t/T2}, on every qubit site. Qubits only.
DensityMatrix apply_decoherence(const DensityMatrix& r, const NoiseModel& m, double duration);
// The same linear map on an arbitrary operator (no state checks), for
// building Choi matrices.
CMatrix decoherence_map(const CMatrix& x, const QuditSpace& space, const NoiseModel& m, double duration);

// rho -> (1 - lambda) rho + lambda * (Tr_sites rho) (x) I/d on `sites`.
DensityMatrix apply_depolarizing(const DensityMatrix& r, double lambda, std::span<const int> sites);

using Channel = std::function<DensityMatrix(const DensityMatrix&)>;

// Choi matrix sum_ij |i><j| (x) E(|i><j|), trace d.
CMatrix choi_matrix(const Channel& e, const QuditSpace& space);
double process_fidelity_identity(const CMatrix& choi, int d);
double average_fidelity_from_process(double f_pro, int d);

// Average gate fidelity of idling for `duration` under the model's T1/T2
// on two qubits, closed form: per-qubit process fidelity (1 + a + 2c)/4 with
// a = e^{-t/T1}, c = e^{-t/T2}, multiplied, then (d F + 1)/(d + 1).
double coherence_limited_fidelity(const NoiseModel& m, double duration);

// Same quantity by integrating the Lindblad equation with sigma_- at rate
// 1/T1 and sigma_z dephasing at 1/T_phi = 1/T2 - 1/(2 T1).
double coherence_limited_fidelity_lindblad(const NoiseModel& m, double duration);

}  // namespace xyq
