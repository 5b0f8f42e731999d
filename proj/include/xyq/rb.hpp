// SPDX-License-Identifier: Apache-2.0
//
// Interleaved randomized benchmarking on two qubits with density-matrix
// simulation, and the B + A p^L decay fit.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "xyq/clifford.hpp"
#include "xyq/fit.hpp"
#include "xyq/noise.hpp"

namespace xyq {

struct DecayFit {
  double A = 0.0, B = 0.0, p = 0.0;
  double A_err = 0.0, B_err = 0.0, p_err = 0.0;
  double reduced_chi2 = 0.0;
};

// Needs >= 3 distinct lengths. Weights are 1/sigma^2 per point; when empty,
// the covariance is scaled by the reduced chi^2. Throws FitError on constant
// data or when no restart converges inside the bounds.
DecayFit fit_decay(std::span<const double> lengths, std::span<const double> means,
                   std::span<const double> weights = {});

struct IrbConfig {
  std::vector<int> lengths{2, 4, 8, 16, 32, 64};
  int randomizations = 32;
  int shots = 500;  // 0: exact survival probabilities
  NativeTwoQubit native = NativeTwoQubit::cz;
  std::uint64_t seed = 1;
  int jobs = 1;
};

struct RbCircuitRecord {
  bool interleaved = false;
  int length = 0;
  int randomization = 0;
  int execution_order = 0;  // position in the shuffled run order
  int two_qubit_gates = 0;
  double survival = 0.0;    // P(read 00), sampled if shots > 0
};

struct IrbResult {
  DecayFit reference;
  DecayFit interleaved;
  double r = 0.0;
  double fidelity = 0.0;
  int n_pulses = 0;
  IrbConfig config;
  std::vector<RbCircuitRecord> circuits;
};

// (d - 1)/d (1 - p_il/p).
double irb_error(double p_ref, double p_il, int d = 4);

// Runs reference and interleaved sequences, each closed by the inverting
// Clifford. `unit` must be a two-qubit Clifford; its "xy" ops count as
// pulses. Throws std::invalid_argument otherwise.
IrbResult run_irb(const Circuit& unit, const NoiseModel& model, const IrbConfig& cfg = {});

// Single-pulse fidelity from a unit of n pulses: 1 - (3/4)(1 - (p_il/p)^{1/n}).
double scaled_fidelity(const IrbResult& r, int n);
double scaled_fidelity(double p_ref, double p_il, int n);
// One-sigma error of scaled_fidelity from the decay-rate errors.
double scaled_fidelity_stderr(const IrbResult& r, int n);

// Survival of one op sequence from |00> under the model (exact).
double simulate_survival(const std::vector<Op>& ops, const NoiseModel& model);

}  // namespace xyq
