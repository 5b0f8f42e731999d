// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "xyq/io.hpp"
#include "xyq/rng.hpp"

using namespace xyq;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "xyq_test_io";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("empty profile json gives the default device") {
  const DeviceProfile d = default_profile();
  const DeviceProfile p = profile_from_json(Json::object());
  CHECK(profile_hash(p) == profile_hash(d));
  CHECK(p.pair.g_hz == d.pair.g_hz);
  CHECK(p.f_tunable_hz - p.f_fixed_hz == doctest::Approx(937.76e6));
  CHECK(profile_hash(d).size() == 16);
}

TEST_CASE("profile round trip through json and file") {
  DeviceProfile p = default_profile();
  p.pair.g_hz = 5.0e6;
  p.pulse.phi_p = 0.3;
  p.f_fixed_hz = 4.0e9;
  p.noise.readout = {0.01, 0.02};
  const DeviceProfile q = profile_from_json(profile_to_json(p));
  CHECK(profile_hash(q) == profile_hash(p));
  CHECK(profile_hash(q) != profile_hash(default_profile()));

  const fs::path f = scratch("profile.json");
  write_json(f, profile_to_json(p));
  CHECK(profile_hash(load_profile(f)) == profile_hash(p));

  // Partial override keeps the remaining defaults.
  const DeviceProfile r = profile_from_json(Json{{"g_hz", 5.0e6}});
  CHECK(r.pair.g_hz == 5.0e6);
  CHECK(r.pulse.t_rise == default_profile().pulse.t_rise);
}

TEST_CASE("profile resolution order") {
  const fs::path f = scratch("env_profile.json");
  write_json(f, Json{{"g_hz", 6.0e6}});
  std::string src;

  ::unsetenv(kProfileEnv);
  CHECK(resolve_profile("", &src).pair.g_hz == default_profile().pair.g_hz);
  CHECK(src == "builtin");

  ::setenv(kProfileEnv, f.c_str(), 1);
  CHECK(resolve_profile("", &src).pair.g_hz == 6.0e6);
  CHECK(src == f.string());

  const fs::path g = scratch("explicit_profile.json");
  write_json(g, Json{{"g_hz", 7.0e6}});
  CHECK(resolve_profile(g.string(), &src).pair.g_hz == 7.0e6);
  CHECK(src == g.string());
  ::unsetenv(kProfileEnv);
}

TEST_CASE("malformed profiles raise FormatError") {
  CHECK_THROWS_AS(profile_from_json(Json::array()), FormatError);
  CHECK_THROWS_AS(profile_from_json(Json{{"g_hz", "fast"}}), FormatError);
  CHECK_THROWS_AS(profile_from_json(Json{{"transient_model", "magic"}}), FormatError);
  CHECK_THROWS_AS(profile_from_json(Json{{"nu", std::vector<double>{}}}), FormatError);
  CHECK_THROWS_AS(profile_from_json(Json{{"noise", {{"readout", {0.1}}}}}), FormatError);
  CHECK_THROWS_AS(profile_from_json(Json{{"noise", {{"t1_s", {1e-5}}, {"t2_s", {1e-5, 2e-5}}}}}), FormatError);
  CHECK_THROWS_AS(load_profile(scratch("does_not_exist.json")), FormatError);
  const fs::path bad = scratch("bad.json");
  write_text(bad, "{ not json");
  CHECK_THROWS_AS(load_profile(bad), FormatError);
}

TEST_CASE("round12 keeps 12 significant digits") {
  CHECK(round12(kPi) == 3.14159265359);
  CHECK(round12(0.0) == 0.0);
  CHECK(round12(-1.0 / 3.0) == -0.333333333333);
  CHECK(round12(1.0) == 1.0);
}

TEST_CASE("program json round trip") {
  for (const PulseProgram& p : {decompose_xy(0.7, -1.1), decompose_cphase(1.3), decompose_ccphase(2.1)}) {
    const Json j = program_to_json(p);
    const PulseProgram q = program_from_json(Json::parse(j.dump()));
    REQUIRE(q.steps.size() == p.steps.size());
    CHECK(q.space == p.space);
    CHECK(q.flux_pulse_count() == p.flux_pulse_count());
    CHECK(max_abs(q.declared_unitary - p.declared_unitary) == 0.0);
    // Phases are stored at 12 digits, so the rebuilt program is within ~1e-11.
    CHECK(distance_global_phase(reconstruct(q).mat, reconstruct(p).mat) < 1e-10);
    CHECK(program_to_json(q) == j);
  }
}

TEST_CASE("malformed programs raise FormatError") {
  const Json good = program_to_json(decompose_xy(0.5, 0.5));
  Json j = good;
  j["steps"][0]["pulse"] = "warp";
  CHECK_THROWS_AS(program_from_json(j), FormatError);
  j = good;
  j["steps"].push_back({{"rz", 7}, {"angle", 0.1}});
  CHECK_THROWS_AS(program_from_json(j), FormatError);
  j = good;
  j["steps"].push_back({{"nop", 0}});
  CHECK_THROWS_AS(program_from_json(j), FormatError);
  j = good;
  j.erase("space");
  CHECK_THROWS_AS(program_from_json(j), FormatError);
}

TEST_CASE("matrix json round trip is exact") {
  Rng rng = make_stream(5, 0);
  CMatrix m(3, 2);
  for (Eigen::Index r = 0; r < 3; ++r)
    for (Eigen::Index c = 0; c < 2; ++c) m(r, c) = cplx(uniform01(rng) - 0.5, uniform01(rng));
  CHECK(max_abs(matrix_from_json(Json::parse(matrix_to_json(m).dump())) - m) == 0.0);
  CHECK_THROWS_AS(matrix_from_json(Json{{Json{1.0, 0.0}}, Json::array()}), FormatError);
}

TEST_CASE("circuit text round trip") {
  Circuit c{QuditSpace::qubits(3), {}};
  c.add("h", {0}).add("cz", {0, 1}).add("rz", {2}, {0.123456789012345}).add("xy", {1, 2}, {0.0, kPi});
  const std::string text = circuit_to_text(c);
  CHECK(text.rfind("qubits 3\n", 0) == 0);
  const Circuit d = circuit_from_text(text);
  REQUIRE(d.ops.size() == c.ops.size());
  for (std::size_t k = 0; k < c.ops.size(); ++k) {
    CHECK(d.ops[k].label == c.ops[k].label);
    CHECK(d.ops[k].targets == c.ops[k].targets);
  }
  CHECK(circuit_to_text(d) == text);
  CHECK(distance_global_phase(circuit_unitary(d), circuit_unitary(c)) < 1e-10);

  CHECK_THROWS_AS(circuit_from_text(""), FormatError);
  CHECK_THROWS_AS(circuit_from_text("h 0\n"), FormatError);
  CHECK_THROWS_AS(circuit_from_text("qubits 2\nh 5\n"), FormatError);
  CHECK_THROWS_AS(circuit_from_text("qubits 2\ncz 0\n"), FormatError);
  CHECK_THROWS_AS(circuit_from_text("qubits 2\nfoo 0\n"), FormatError);
  CHECK_THROWS_AS(circuit_from_text("qubits 2\nrz(0.1 0\n"), FormatError);
  CHECK(circuit_from_text("# comment\nqubits 1\n\nh 0\n").ops.size() == 1);
}

TEST_CASE("csv uses shortest round-trip numbers") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e-300) == "1e-300");
  CHECK(std::stod(format_double(kPi)) == kPi);
  const fs::path f = scratch("t.csv");
  write_csv(f, {"a", "b"}, {{1.0, 0.25}, {-2.5, 3e9}});
  CHECK(slurp(f) == "a,b\n1,0.25\n-2.5,3e+09\n");
}

TEST_CASE("manifest fields") {
  RunManifest m;
  m.command = "ramsey";
  m.seed = 42;
  m.profile_hash = profile_hash(default_profile());
  m.profile_source = "builtin";
  m.outputs = {"ramsey.csv"};
  const Json j = m.to_json();
  CHECK(j.at("seed") == 42);
  CHECK(j.at("tool_version") == kToolVersion);
  CHECK(j.at("outputs").size() == 1);
  const std::string ts = j.at("timestamp");
  CHECK(ts.size() == 20);
  CHECK(ts.back() == 'Z');
}
