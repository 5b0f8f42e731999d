// SPDX-License-Identifier: Apache-2.0
//
// xyq command-line front end. Every subcommand writes its results and a
// manifest.json into --out and echoes the main result as JSON on stdout.
// Exit codes: 0 ok, 1 domain error, 2 usage error.

#include <CLI11.hpp>

#include <array>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "xyq/calib.hpp"
#include "xyq/decomp.hpp"
#include "xyq/frames.hpp"
#include "xyq/io.hpp"
#include "xyq/pulsesim.hpp"
#include "xyq/qaoa.hpp"
#include "xyq/rb.hpp"

using namespace xyq;
namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  int jobs = 1;
  std::string profile;
  std::string out;
};

void add_common(CLI::App* app, Common& c, const std::string& default_out) {
  c.seed_opt = app->add_option("--seed", c.seed, "Master seed (generated and recorded if omitted)");
  app->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app->add_option("--profile", c.profile, std::string("Device profile JSON (default: $") + kProfileEnv + ")");
  c.out = default_out;
  app->add_option("--out", c.out, "Output directory")->capture_default_str();
}

// Resolved run context shared by every command.
struct Run {
  RunManifest manifest;
  DeviceProfile profile;
  fs::path dir;
  std::uint64_t seed = 0;
  int jobs = 1;

  void output_json(const std::string& name, const Json& j) {
    write_json(dir / name, j);
    manifest.outputs.push_back(name);
  }
  void output_csv(const std::string& name, const std::vector<std::string>& header,
                  const std::vector<std::vector<double>>& rows) {
    write_csv(dir / name, header, rows);
    manifest.outputs.push_back(name);
  }
  void output_text(const std::string& name, const std::string& text) {
    write_text(dir / name, text);
    manifest.outputs.push_back(name);
  }
  void finish(const Json& result) {
    manifest.outputs.push_back("manifest.json");
    write_json(dir / "manifest.json", manifest.to_json());
    std::cout << result.dump(2) << "\n";
  }
};

Run start(const std::string& command, const Common& c, Json params) {
  Run r;
  r.seed = c.seed;
  if (!c.seed_opt || c.seed_opt->count() == 0) {
    std::random_device rd;
    r.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  r.jobs = c.jobs;
  std::string source;
  r.profile = resolve_profile(c.profile, &source);
  r.dir = c.out;
  fs::create_directories(r.dir);
  params["jobs"] = c.jobs;
  r.manifest.command = command;
  r.manifest.parameters = std::move(params);
  r.manifest.seed = r.seed;
  r.manifest.profile_hash = profile_hash(r.profile);
  r.manifest.profile_source = source;
  return r;
}

Json fit_json(const DecayFit& f) {
  return {{"A", f.A},         {"B", f.B},         {"p", f.p},
          {"A_err", f.A_err}, {"B_err", f.B_err}, {"p_err", f.p_err},
          {"reduced_chi2", f.reduced_chi2}};
}

std::vector<int> parse_int_list(const std::string& s, const std::string& flag) {
  std::vector<int> out;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size() || v < 1) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(flag + ": expected comma-separated positive integers, got '" + s + "'");
    }
  }
  if (out.size() < 3) throw UsageError(flag + ": need at least 3 lengths");
  return out;
}

// ---------------------------------------------------------------------------

struct ChevronArgs {
  Common c;
  double span_mhz = 10.0;
  int fp_points = 41;
  double duration_max_ns = 600.0;
  int duration_points = 61;
};

void cmd_chevron(const ChevronArgs& a) {
  if (a.fp_points < 2 || a.duration_points < 2) throw UsageError("--fp-points and --duration-points must be >= 2");
  Run r = start("chevron", a.c,
                {{"fp_span_mhz", a.span_mhz},
                 {"fp_points", a.fp_points},
                 {"duration_max_ns", a.duration_max_ns},
                 {"duration_points", a.duration_points}});
  const CoupledPair& pair = r.profile.pair;
  const FluxPulse& pulse = r.profile.pulse;
  const double f_res = resonant_omega_p(pair, pulse.phi_ac) / kTwoPi;
  const auto fp = linspace(f_res - 0.5 * a.span_mhz * 1e6, f_res + 0.5 * a.span_mhz * 1e6, a.fp_points);
  const auto durations = linspace(0.0, a.duration_max_ns * 1e-9, a.duration_points);
  const ChevronMap map = chevron(pair, pulse, fp, durations, r.jobs);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < map.f_p_hz.size(); ++i)
    for (std::size_t j = 0; j < map.durations.size(); ++j)
      rows.push_back({map.f_p_hz[i], map.durations[j], map.transfer(i, j)});
  r.output_csv("chevron.csv", {"f_p_hz", "duration_s", "p_transfer"}, rows);
  FluxPulse at_res = pulse;
  at_res.omega_p = kTwoPi * f_res;
  const double g_eff = g_eff_hz(pair, at_res);
  const Json meta = {{"predicted_resonance_hz", f_res},
                     {"g_eff_hz", g_eff},
                     {"predicted_period_s", 1.0 / (2.0 * g_eff)},
                     {"f_p_hz", map.f_p_hz},
                     {"durations_s", map.durations},
                     {"profile_hash", r.manifest.profile_hash},
                     {"seed", r.seed}};
  r.output_json("chevron.json", meta);
  r.finish({{"predicted_resonance_hz", f_res}, {"g_eff_hz", g_eff}, {"rows", rows.size()}});
}

struct RamseyArgs {
  Common c;
  double frame_freq_mhz = 40.0;
  double span_ns = 10.0;
  int points = 101;
  double beta0 = 0.0;
};

void cmd_ramsey(const RamseyArgs& a) {
  Run r = start("ramsey", a.c,
                {{"frame_freq_mhz", a.frame_freq_mhz}, {"span_ns", a.span_ns}, {"points", a.points}, {"beta0", a.beta0}});
  const FrameSet frames = r.profile.frames();
  const auto delays = linspace(0.0, a.span_ns * 1e-9, a.points);
  const double ff = a.frame_freq_mhz * 1e6;
  const RamseyResult res = simulate_frame_ramsey(frames, ff, delays, a.beta0);
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < res.delays.size(); ++k) rows.push_back({res.delays[k], res.p1[k]});
  r.output_csv("ramsey.csv", {"delay_s", "p1"}, rows);
  const Json out = {{"frame_frequency_hz", ff},
                    {"fitted_frequency_hz", res.fit.frequency},
                    {"fitted_frequency_stderr_hz", res.fit.frequency_stderr},
                    {"predicted_frequency_hz", std::abs(frames.two_qubit_frame.frequency - 2 * ff)},
                    {"amplitude", res.fit.amplitude},
                    {"rms_residual", res.fit.rms_residual}};
  r.output_json("ramsey.json", out);
  r.finish(out);
}

struct DecomposeArgs {
  Common c;
  std::string gate = "xy";
  double theta = 0.0;
  double beta = 0.0;
  bool check = false;
  std::string backend = "ideal";
  CLI::Option* theta_opt = nullptr;
  CLI::Option* beta_opt = nullptr;
};

// Programs on qutrits declare their action on the qubit subspace.
double check_distance(const PulseProgram& p, const std::string& backend) {
  CMatrix u;
  if (backend == "pulsesim") {
    static const PulsesimBackend be = PulsesimBackend::make_default();
    u = reconstruct(p, be).mat;
  } else {
    u = reconstruct(p).mat;
  }
  if (u.rows() != p.declared_unitary.rows()) {
    if (leakage(u, p.space) > 1e-9) return 1.0;
    u = restrict_to_qubits(u, p.space);
  }
  return distance_global_phase(u, p.declared_unitary);
}

void cmd_decompose(const DecomposeArgs& a) {
  const bool has_theta = a.theta_opt->count() > 0, has_beta = a.beta_opt->count() > 0;
  if ((a.gate == "xy" || a.gate == "cphase" || a.gate == "ccphase") && !has_theta)
    throw UsageError("--theta is required for --gate " + a.gate);
  if ((a.gate == "cphase" || a.gate == "ccphase") && has_beta)
    throw UsageError("--beta does not apply to --gate " + a.gate);
  if (a.gate == "iswap-absorb" && has_theta) throw UsageError("--theta does not apply to --gate iswap-absorb");
  if (a.backend == "pulsesim" && a.gate != "xy" && a.gate != "iswap-absorb")
    throw UsageError("--backend pulsesim supports --gate xy and iswap-absorb only");
  Run r = start("decompose", a.c,
                {{"gate", a.gate}, {"theta", a.theta}, {"beta", a.beta}, {"check", a.check}, {"backend", a.backend}});
  PulseProgram p;
  if (a.gate == "xy") p = decompose_xy(a.theta, a.beta);
  else if (a.gate == "iswap-absorb") p = with_post_rz(iswap_phase_absorption(a.beta));
  else if (a.gate == "cphase") p = decompose_cphase(a.theta);
  else p = decompose_ccphase(a.theta);
  const Json pj = program_to_json(p);
  Json out = {{"program", pj}, {"flux_pulses", p.flux_pulse_count()}};
  if (a.check) out["distance"] = check_distance(program_from_json(pj), a.backend);
  r.output_json("program.json", pj);
  r.finish(out);
}

struct VerifyArgs {
  Common c;
  std::string program;
  std::string backend = "ideal";
  double tol = -1.0;
};

int cmd_verify(const VerifyArgs& a) {
  Run r = start("verify", a.c, {{"program", a.program}, {"backend", a.backend}, {"tol", a.tol}});
  std::ifstream in(a.program);
  if (!in) throw FormatError("cannot read program '" + a.program + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("program '" + a.program + "': " + e.what());
  }
  const PulseProgram p = program_from_json(j.contains("program") ? j.at("program") : j);
  if (p.declared_unitary.size() == 0) throw FormatError("program has no declared_unitary");
  const double tol = a.tol > 0 ? a.tol : (a.backend == "pulsesim" ? 1e-3 : 1e-10);
  const double d = check_distance(p, a.backend);
  const Json out = {{"distance", d}, {"tolerance", tol}, {"ok", d < tol}, {"flux_pulses", p.flux_pulse_count()}};
  r.output_json("verify.json", out);
  r.finish(out);
  return d < tol ? 0 : 1;
}

struct CalibrateArgs {
  Common c;
  std::string device = "ideal";
  int shots = 0;
  int grid_points = 64;
};

void cmd_calibrate(const CalibrateArgs& a) {
  if (a.shots < 0) throw UsageError("--shots must be >= 0");
  Run r = start("calibrate-sim", a.c, {{"device", a.device}, {"shots", a.shots}, {"grid_points", a.grid_points}});
  const auto scenario =
      CalibrationScenario::random(r.seed, a.device == "pulsesim" ? DeviceModel::pulsesim : DeviceModel::ideal);
  const CalibrationDevice dev(scenario);
  CalibOptions opt;
  opt.shots = a.shots;
  opt.seed = r.seed;
  opt.grid_points = a.grid_points;
  const CalibrationResult res = calibrate(dev, opt);
  std::vector<std::vector<double>> s1, s2;
  for (std::size_t k = 0; k < res.phi0_sweep.phi_p.size(); ++k) s1.push_back({res.phi0_sweep.phi_p[k], res.phi0_sweep.signal[k]});
  for (std::size_t k = 0; k < res.second_sweep.beta2.size(); ++k)
    s2.push_back({res.second_sweep.beta2[k], res.second_sweep.population[k]});
  r.output_csv("phi0_sweep.csv", {"phi_p", "signal"}, s1);
  r.output_csv("second_pulse_sweep.csv", {"beta2", "p01"}, s2);
  const Json out = {
      {"hidden", {{"phi0", scenario.hidden_phi0}, {"rz_pair", scenario.hidden_rz_pair}}},
      {"recovered",
       {{"phi0", res.corrections.phi0},
        {"pulse_shift", res.corrections.pulse_shift},
        {"final_rz", res.corrections.final_rz},
        {"second_pulse_phase", res.second_pulse_phase}}},
      {"residual", res.residual},
  };
  r.output_json("calibration.json", out);
  r.finish(out);
}

struct IrbArgs {
  Common c;
  int pulses = 1;
  std::string native = "cz";
  std::string lengths = "2,4,8,16,32,64";
  int randomizations = 32;
  int shots = 500;
  double inject_fidelity = -1.0;
};

void cmd_irb(const IrbArgs& a) {
  if (a.pulses < 1 || a.pulses > 3) throw UsageError("--pulses must be 1, 2 or 3");
  if (a.inject_fidelity != -1.0 && !(a.inject_fidelity > 0.25 && a.inject_fidelity <= 1.0))
    throw UsageError("--inject-fidelity must lie in (0.25, 1]");
  IrbConfig cfg;
  cfg.lengths = parse_int_list(a.lengths, "--lengths");
  cfg.randomizations = a.randomizations;
  cfg.shots = a.shots;
  cfg.native = a.native == "iswap" ? NativeTwoQubit::iswap : NativeTwoQubit::cz;
  Run r = start("irb", a.c,
                {{"pulses", a.pulses},
                 {"native", a.native},
                 {"lengths", cfg.lengths},
                 {"randomizations", a.randomizations},
                 {"shots", a.shots},
                 {"inject_fidelity", a.inject_fidelity}});
  cfg.seed = r.seed;
  cfg.jobs = r.jobs;
  // n equal XY pulses composing to iSWAP.
  Circuit unit{QuditSpace::qubits(2), {}};
  for (int k = 0; k < a.pulses; ++k) unit.add("xy", {0, 1}, {0.0, kPi / a.pulses});
  NoiseModel model = r.profile.noise;
  if (a.inject_fidelity > 0) {
    // Known per-pulse error only: the pulses themselves take no time.
    model.durations["xy"] = 0.0;
    model.depolarizing["xy"] = depolarizing_for_fidelity(a.inject_fidelity, 4);
  }
  const IrbResult res = run_irb(unit, model, cfg);
  std::vector<std::vector<double>> rows;
  for (const auto& c : res.circuits)
    rows.push_back({c.interleaved ? 1.0 : 0.0, double(c.length), double(c.randomization), double(c.execution_order),
                    double(c.two_qubit_gates), c.survival});
  r.output_csv("irb_circuits.csv",
               {"interleaved", "length", "randomization", "execution_order", "two_qubit_gates", "survival"}, rows);
  const Json out = {{"reference", fit_json(res.reference)},
                    {"interleaved", fit_json(res.interleaved)},
                    {"r", res.r},
                    {"unit_fidelity", res.fidelity},
                    {"n_pulses", res.n_pulses},
                    {"per_pulse_fidelity", scaled_fidelity(res, res.n_pulses)},
                    {"per_pulse_fidelity_stderr", scaled_fidelity_stderr(res, res.n_pulses)}};
  r.output_json("irb.json", out);
  r.finish(out);
}

struct QaoaArgs {
  std::string graph = "ring4";
  std::uint64_t weight_seed = WeightedGraph::kDefaultWeightSeed;
  std::string gateset = "cz+xy";
  std::string strategy = "automatic";
  double gamma = 0.0;
  double beta_mix = 0.0;
  int gamma_points = 64;
  int beta_points = 32;
  int shots = 0;
  bool noisy = false;
};

RouteStrategy strategy_from(const std::string& s) {
  if (s == "automatic") return RouteStrategy::automatic;
  if (s == "greedy") return RouteStrategy::greedy;
  return RouteStrategy::swap_network;
}

Json counts_json(const CompiledCircuit& c) {
  Json j = Json::object();
  for (const auto& [k, v] : c.counts) j[k] = v;
  return j;
}

Json qaoa_params(const QaoaArgs& a) {
  return {{"graph", a.graph},         {"weight_seed", a.weight_seed},   {"gateset", a.gateset},
          {"strategy", a.strategy},   {"gamma", a.gamma},               {"beta_mix", a.beta_mix},
          {"gamma_points", a.gamma_points}, {"beta_points", a.beta_points}, {"shots", a.shots},
          {"noisy", a.noisy}};
}

void cmd_qaoa(const std::string& action, const QaoaArgs& a, const Common& common) {
  const WeightedGraph g = WeightedGraph::named(a.graph, a.weight_seed);
  const GateSet gs = gateset_from_string(a.gateset);
  const auto topo = DeviceTopology::line(g.n_vertices);
  Run r = start("qaoa " + action, common, qaoa_params(a));
  const QAOAAngles angles{a.gamma, a.beta_mix};
  const auto compiled = compile_qaoa(g, angles, topo, gs, strategy_from(a.strategy));
  if (action == "counts") {
    const Json out = counts_json(compiled);
    r.output_json("counts.json", out);
    r.finish(out);
    return;
  }
  if (action == "compile") {
    r.output_text("circuit.txt", circuit_to_text(compiled.circuit));
    const Json out = {{"counts", counts_json(compiled)},
                      {"single_qubit_gates", compiled.single_qubit_gates},
                      {"final_permutation", compiled.final_permutation},
                      {"distance", verify_compiled(compiled, g, angles)}};
    r.output_json("compiled.json", out);
    r.finish(out);
    return;
  }
  if (action == "optimal") {
    const auto o = optimal_angles(g, a.gamma_points);
    const Json out = {{"gamma", o.angles.gamma}, {"beta_mix", o.angles.beta_mix}, {"expected_cut", o.expected_cut}};
    r.output_json("optimal.json", out);
    r.finish(out);
    return;
  }
  // landscape
  if (a.gamma_points < 1 || a.beta_points < 1) throw UsageError("--gamma-points and --beta-points must be >= 1");
  std::vector<double> gg, bb;
  for (int k = 0; k < a.gamma_points; ++k) gg.push_back(kTwoPi * k / a.gamma_points);
  for (int k = 0; k < a.beta_points; ++k) bb.push_back(kPi * k / a.beta_points);
  LandscapeOptions opt;
  opt.shots = a.shots;
  opt.seed = r.seed;
  opt.jobs = r.jobs;
  opt.gateset = gs;
  if (a.noisy) {
    NoiseModel m = r.profile.noise;
    if (m.qubits.empty()) throw UsageError("--noisy needs a profile with coherence times");
    const auto base = m.qubits;
    m.qubits.clear();
    for (int q = 0; q < g.n_vertices; ++q) m.qubits.push_back(base[q % base.size()]);
    opt.noise = m;
  }
  const Eigen::MatrixXd land = landscape(g, gg, bb, opt);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < gg.size(); ++i)
    for (std::size_t j = 0; j < bb.size(); ++j) rows.push_back({gg[i], bb[j], land(i, j)});
  r.output_csv("landscape.csv", {"gamma", "beta_mix", "expected_cut"}, rows);
  Eigen::Index bi, bj;
  const double best = land.maxCoeff(&bi, &bj);
  Json edges = Json::array();
  for (const auto& e : g.edges) edges.push_back({e.u, e.v, e.w});
  const Json out = {{"graph", {{"name", a.graph}, {"n_vertices", g.n_vertices}, {"edges", edges}}},
                    {"seed", r.seed},
                    {"gateset", to_string(gs)},
                    {"counts", counts_json(compiled)},
                    {"max", {{"gamma", gg[bi]}, {"beta_mix", bb[bj]}, {"expected_cut", best}}}};
  r.output_json("landscape.json", out);
  r.finish(out);
}

struct CountsArgs {
  Common c;
  std::uint64_t weight_seed = WeightedGraph::kDefaultWeightSeed;
};

void cmd_counts(const CountsArgs& a) {
  Run r = start("counts", a.c, {{"weight_seed", a.weight_seed}});
  Json out = Json::object();
  Rng rng = make_stream(r.seed, 0);
  for (const char* name : {"ring4", "k4"}) {
    const auto g = WeightedGraph::named(std::string(name) + "-random", a.weight_seed);
    for (GateSet gs : {GateSet::cz_only, GateSet::cz_and_xy}) {
      const QAOAAngles angles{kTwoPi * uniform01(rng), kPi * uniform01(rng)};
      const auto c = compile_qaoa(g, angles, DeviceTopology::line(4), gs);
      out[name][to_string(gs)] = {{"counts", counts_json(c)}, {"distance", verify_compiled(c, g, angles)}};
    }
  }
  r.output_json("counts.json", out);
  r.finish(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"XY-gate simulation and compilation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  ChevronArgs chev;
  auto* s_chev = app.add_subcommand("chevron", "Population-transfer map vs modulation frequency and duration");
  add_common(s_chev, chev.c, "xyq-out/chevron");
  s_chev->add_option("--fp-span-mhz", chev.span_mhz, "Modulation-frequency span around resonance")->capture_default_str();
  s_chev->add_option("--fp-points", chev.fp_points)->capture_default_str();
  s_chev->add_option("--duration-max-ns", chev.duration_max_ns)->capture_default_str();
  s_chev->add_option("--duration-points", chev.duration_points)->capture_default_str();

  RamseyArgs ram;
  auto* s_ram = app.add_subcommand("ramsey", "Frame-tracking Ramsey in the 01/10 manifold");
  add_common(s_ram, ram.c, "xyq-out/ramsey");
  s_ram->add_option("--frame-freq-mhz", ram.frame_freq_mhz)->capture_default_str();
  s_ram->add_option("--span-ns", ram.span_ns)->capture_default_str();
  s_ram->add_option("--points", ram.points)->capture_default_str()->check(CLI::Range(20, 100000));
  s_ram->add_option("--beta0", ram.beta0, "Phase of the first pulse, rad")->capture_default_str();

  DecomposeArgs dec;
  auto* s_dec = app.add_subcommand("decompose", "Compile a gate into calibrated pulses");
  add_common(s_dec, dec.c, "xyq-out/decompose");
  s_dec->add_option("--gate", dec.gate)->check(CLI::IsMember({"xy", "iswap-absorb", "cphase", "ccphase"}))->capture_default_str();
  dec.theta_opt = s_dec->add_option("--theta", dec.theta, "Rotation angle, rad");
  dec.beta_opt = s_dec->add_option("--beta", dec.beta, "Phase, rad");
  s_dec->add_flag("--check", dec.check, "Reconstruct and print the distance to the target");
  s_dec->add_option("--backend", dec.backend)->check(CLI::IsMember({"ideal", "pulsesim"}))->capture_default_str();

  VerifyArgs ver;
  auto* s_ver = app.add_subcommand("verify", "Reconstruct a program file and compare to its declared unitary");
  add_common(s_ver, ver.c, "xyq-out/verify");
  s_ver->add_option("--program", ver.program)->required();
  s_ver->add_option("--backend", ver.backend)->check(CLI::IsMember({"ideal", "pulsesim"}))->capture_default_str();
  s_ver->add_option("--tol", ver.tol, "Pass threshold (default 1e-10 ideal, 1e-3 pulsesim)");

  CalibrateArgs cal;
  auto* s_cal = app.add_subcommand("calibrate-sim", "Recover seeded hidden phase offsets");
  add_common(s_cal, cal.c, "xyq-out/calibrate-sim");
  s_cal->add_option("--device", cal.device)->check(CLI::IsMember({"ideal", "pulsesim"}))->capture_default_str();
  s_cal->add_option("--shots", cal.shots, "0 for exact expectation values")->capture_default_str();
  s_cal->add_option("--grid-points", cal.grid_points)->capture_default_str()->check(CLI::Range(8, 100000));

  IrbArgs irb;
  auto* s_irb = app.add_subcommand("irb", "Interleaved randomized benchmarking of n XY pulses composing to iSWAP");
  add_common(s_irb, irb.c, "xyq-out/irb");
  s_irb->add_option("--pulses", irb.pulses)->capture_default_str();
  s_irb->add_option("--native", irb.native)->check(CLI::IsMember({"cz", "iswap"}))->capture_default_str();
  s_irb->add_option("--lengths", irb.lengths)->capture_default_str();
  s_irb->add_option("--randomizations", irb.randomizations)->capture_default_str()->check(CLI::PositiveNumber);
  s_irb->add_option("--shots", irb.shots)->capture_default_str()->check(CLI::NonNegativeNumber);
  s_irb->add_option("--inject-fidelity", irb.inject_fidelity,
                    "Replace pulse decoherence by a depolarizing channel of this average fidelity");

  QaoaArgs qa;
  auto* s_qaoa = app.add_subcommand("qaoa", "MaxCut QAOA compilation and landscapes");
  s_qaoa->require_subcommand(1);
  std::vector<CLI::App*> qaoa_actions;
  // Action options share one QaoaArgs; only one action runs per invocation.
  std::array<Common, 4> qaoa_common;
  const std::array<const char*, 4> qaoa_names{"counts", "compile", "landscape", "optimal"};
  for (std::size_t k = 0; k < qaoa_names.size(); ++k) {
    const char* action = qaoa_names[k];
    auto* s = s_qaoa->add_subcommand(action);
    add_common(s, qaoa_common[k], std::string("xyq-out/qaoa-") + action);
    s->add_option("--graph", qa.graph)
        ->check(CLI::IsMember({"ring4", "k4", "ring4-random", "k4-random"}))
        ->capture_default_str();
    s->add_option("--weight-seed", qa.weight_seed, "Seed for random edge weights")->capture_default_str();
    s->add_option("--gateset", qa.gateset)->check(CLI::IsMember({"cz", "cz+xy"}))->capture_default_str();
    s->add_option("--strategy", qa.strategy)
        ->check(CLI::IsMember({"automatic", "greedy", "swap_network"}))
        ->capture_default_str();
    s->add_option("--gamma", qa.gamma)->capture_default_str();
    s->add_option("--beta-mix", qa.beta_mix)->capture_default_str();
    s->add_option("--gamma-points", qa.gamma_points)->capture_default_str();
    s->add_option("--beta-points", qa.beta_points)->capture_default_str();
    s->add_option("--shots", qa.shots, "0 for exact expectation values")->capture_default_str()->check(CLI::NonNegativeNumber);
    s->add_flag("--noisy", qa.noisy, "Run compiled circuits under the profile noise model");
    qaoa_actions.push_back(s);
  }

  CountsArgs cnt;
  auto* s_cnt = app.add_subcommand("counts", "Two-qubit gate counts for ring and K4 under both gate sets");
  add_common(s_cnt, cnt.c, "xyq-out/counts");
  s_cnt->add_option("--weight-seed", cnt.weight_seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*s_chev) cmd_chevron(chev);
    else if (*s_ram) cmd_ramsey(ram);
    else if (*s_dec) cmd_decompose(dec);
    else if (*s_ver) return cmd_verify(ver);
    else if (*s_cal) cmd_calibrate(cal);
    else if (*s_irb) cmd_irb(irb);
    else if (*s_cnt) cmd_counts(cnt);
    else
      for (std::size_t k = 0; k < qaoa_actions.size(); ++k)
        if (*qaoa_actions[k]) cmd_qaoa(qaoa_names[k], qa, qaoa_common[k]);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
