// SPDX-License-Identifier: Apache-2.0
//
// File formats: device profiles, pulse programs, circuit text, matrix dumps,
// CSV tables and run manifests.

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "xyq/decomp.hpp"
#include "xyq/frames.hpp"
#include "xyq/noise.hpp"
#include "xyq/pulsesim.hpp"

namespace xyq {

using Json = nlohmann::ordered_json;

// Unreadable or malformed input file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kProfileEnv = "XYQ_PROFILE";

struct DeviceProfile {
  CoupledPair pair;
  FluxPulse pulse;
  double f_fixed_hz = 3.821e9;  // single-qubit frame frequencies
  double f_tunable_hz = 3.821e9 + 937.76e6;
  NoiseModel noise;

  FrameSet frames() const { return FrameSet::from_qubit_frequencies(f_fixed_hz, f_tunable_hz); }
};

DeviceProfile default_profile();

// Every key is optional and falls back to default_profile():
// {"nu": [Hz...], "phi_dc", "g_hz", "omega_F01_hz" (f, not omega), "sideband_n0",
//  "transient_model": "linear_switch"|"exact",
//  "pulse": {"phi_ac", "f_p_hz", "phi_p", "t_rise_s", "tau_s"},
//  "frames": {"f_fixed_hz", "f_tunable_hz"},
//  "noise": {"t1_s": [...], "t2_s": [...], "durations_s": {label: s},
//            "depolarizing": {label: p}, "readout": [e0, e1]}}
DeviceProfile profile_from_json(const Json& j);
Json profile_to_json(const DeviceProfile& p);
// Throws FormatError if the file cannot be read or parsed.
DeviceProfile load_profile(const std::filesystem::path& path);
// `explicit_path` if non-empty, else $XYQ_PROFILE if set, else the default.
DeviceProfile resolve_profile(const std::string& explicit_path, std::string* source = nullptr);

// 16 hex digits, FNV-1a over the compact profile JSON.
std::string profile_hash(const DeviceProfile& p);

// Angle rounded to 12 significant digits.
double round12(double x);

// {"space": [dims], "steps": [{"pulse": kind, "phase", "targets"} |
//  {"rz": qubit, "angle"}], "declared_unitary": [[[re, im], ...], ...]}
Json program_to_json(const PulseProgram& p);
PulseProgram program_from_json(const Json& j);

// Row-major [[re, im], ...] rows.
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

// One op per line: "label(p0,p1) t0 t1", params at 12 significant digits;
// first line "qubits n".
std::string circuit_to_text(const Circuit& c);
Circuit circuit_from_text(const std::string& text);

// Shortest round-trip decimal form.
std::string format_double(double x);

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const Json& j);

struct RunManifest {
  std::string command;
  Json parameters = Json::object();
  std::uint64_t seed = 0;
  std::string profile_hash;
  std::string profile_source;
  std::vector<std::string> outputs;

  // Adds tool version and a UTC timestamp.
  Json to_json() const;
};

}  // namespace xyq
