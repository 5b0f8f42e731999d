// SPDX-License-Identifier: Apache-2.0
//
// Simulated tune-up of the two-pulse XY family: the offset phi0 between the
// single-qubit and flux drives, the phase of the second pulse, and the final
// single-qubit Z pair. The procedures only see the device through pulses and
// measurements, never through the hidden parameters.

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "xyq/decomp.hpp"
#include "xyq/rng.hpp"

namespace xyq {

enum class DeviceModel { ideal, pulsesim };

struct CalibrationScenario {
  double hidden_phi0 = 0.0;
  std::array<double, 2> hidden_rz_pair{};  // Z phase per pulse on each qubit
  DeviceModel device = DeviceModel::ideal;

  // phi0 uniform in (-pi/2, pi/2], Z phases uniform in [-0.5, 0.5].
  static CalibrationScenario random(std::uint64_t seed, DeviceModel device = DeviceModel::ideal);
};

// A half pulse commanded at flux phase phi_p. The ideal device plays
// XY(-2(phi_p + phi0), pi/2); the pulsesim device plays the simulated pulse at
// phi_p + phi0 (its own alpha and Z residue become part of what is
// calibrated). Both are followed by the hidden Z pair.
class CalibrationDevice {
 public:
  explicit CalibrationDevice(const CalibrationScenario& s);
  Matrix4c half_pulse(double phi_p) const;

 private:
  CalibrationScenario s_;
  std::shared_ptr<const PulsesimBackend> backend_;
};

struct Corrections {
  double phi0 = 0.0;
  // Beta shift each earlier pulse imposes on the later ones.
  double pulse_shift = 0.0;
  // Frame updates appended to every two-pulse program.
  std::array<double, 2> final_rz{};
};

// Plays a program of xy_half pulses and frame updates on the device with the
// given corrections. Pulse k is commanded at beta + k * pulse_shift.
Matrix4c execute(const CalibrationDevice& dev, const Corrections& c, const PulseProgram& p);

struct CalibOptions {
  int shots = 0;  // 0: exact expectation values
  std::uint64_t seed = 1;
  int grid_points = 64;  // points per sweep
};

struct Phi0Calibration {
  double estimate = 0.0;  // residual phi0, in (-pi/2, pi/2]
  CosineFit fit;
  std::vector<double> phi_p;
  std::vector<double> signal;  // <ZI> - <IZ>
};

// `phi_p_grid` must hold >= 8 points spanning a full period (pi).
Phi0Calibration calibrate_phi0(const CalibrationDevice& dev, const Corrections& c,
                               std::span<const double> phi_p_grid, const CalibOptions& opt = {});

struct SecondPulseCalibration {
  double pulse_shift = 0.0;         // residual shift, beta units
  double second_pulse_phase = 0.0;  // commanded phi_p of pulse 2 at the optimum
  double peak_population = 0.0;     // P(|01>) there
  std::vector<double> beta2;
  std::vector<double> population;
};

SecondPulseCalibration calibrate_second_pulse_phase(const CalibrationDevice& dev, const Corrections& c,
                                                    const CalibOptions& opt = {});

// Residual Z pair accumulated by the nominal XY(0) on |+> inputs, negated.
std::array<double, 2> calibrate_final_rz(const CalibrationDevice& dev, const Corrections& c,
                                         const CalibOptions& opt = {});

struct CalibrationResult {
  double phi0_estimate = 0.0;
  double second_pulse_phase = 0.0;
  std::array<double, 2> final_rz_pair{};
  double residual = 0.0;  // distance of the calibrated XY(0) from identity
  Corrections corrections;
  Phi0Calibration phi0_sweep;
  SecondPulseCalibration second_sweep;
};

// The three steps in order, each starting from the previous corrections.
CalibrationResult calibrate(const CalibrationDevice& dev, const CalibOptions& opt = {});

}  // namespace xyq
