// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "xyq/calib.hpp"
#include "xyq/clifford.hpp"
#include "xyq/decomp.hpp"
#include "xyq/fit.hpp"
#include "xyq/frames.hpp"
#include "xyq/io.hpp"
#include "xyq/noise.hpp"
#include "xyq/pulsesim.hpp"
#include "xyq/qaoa.hpp"
#include "xyq/rb.hpp"

using namespace xyq;

namespace {

// Identities, constructions and the landscape are exact up to rounding.
constexpr double kExactTol = 1e-10;
constexpr double kLandscapeTol = 1e-12;
constexpr double kRamseyRelTol = 1e-4;
constexpr double kBetaTol = 1e-2;
constexpr double kThetaSpreadTol = 1e-3;
constexpr double kChevronPeriodRelTol = 1e-2;
constexpr double kIrbAbsTol = 0.003;
constexpr double kIrbInjected = 0.9798;
constexpr double kCoherenceAbsTol = 0.003;
constexpr double kLindbladTol = 1e-6;
constexpr double kCalibNoiselessTol = 1e-6;
constexpr double kCalibShotTol = 1e-2;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::mt19937_64& rng() {
  static std::mt19937_64 r(20240601);
  return r;
}

double angle() { return std::uniform_real_distribution<double>(-kPi, kPi)(rng()); }

Outcome identities() {
  double conj = 0, recon = 0, absorb = 0;
  for (int k = 0; k < 1000; ++k) {
    const double a = angle(), b = angle(), beta = angle(), theta = angle();
    const Matrix4c A = kron(rz(a), rz(b));
    conj = std::max(conj, distance_global_phase(A * xy_unitary(beta, theta) * A.adjoint(),
                                                xy_unitary(beta + b - a, theta)));
  }
  for (int k = 0; k < 1000; ++k) {
    const double beta = angle(), theta = 2 * angle();
    recon = std::max(recon, distance_global_phase(reconstruct(decompose_xy(theta, beta)).mat, xy_unitary(beta, theta)));
  }
  for (int k = 0; k < 1000; ++k) {
    const double beta = angle();
    const auto s = iswap_phase_absorption(beta);
    const CMatrix post = kron(rz(s.post_rz[0]), rz(s.post_rz[1]));
    absorb = std::max(absorb, distance_global_phase(post * reconstruct(s.pulse).mat, xy_unitary(beta, kPi)));
  }
  const double worst = std::max({conj, recon, absorb});
  return {worst < kExactTol,
          fmt("3x1000 trials; max distance conjugation %.1e, two-pulse %.1e, iSWAP absorption %.1e", conj, recon,
              absorb)};
}

Outcome ramsey_line() {
  const FrameSet fs = default_profile().frames();
  const auto delays = linspace(0.0, 10e-9, 101);
  double worst = 0;
  for (int k = 0; k < 10; ++k) {
    const double ff = 35e6 * k + 5e6;
    const double want = std::abs(fs.two_qubit_frame.frequency - 2 * ff);
    worst = std::max(worst, std::abs(simulate_frame_ramsey(fs, ff, delays).fit.frequency - want) / want);
  }
  const double f40 = simulate_frame_ramsey(fs, 40e6, delays).fit.frequency;
  const bool ok40 = std::abs(f40 - 857.76e6) < kRamseyRelTol * 857.76e6;
  return {worst < kRamseyRelTol && ok40,
          fmt("10 frame frequencies, max rel error %.1e; f_f = 40 MHz gives %.4f MHz", worst, f40 / 1e6)};
}

Outcome phase_law() {
  // Absolute law on a pair tuned to the bare sideband resonance.
  CoupledPair bare = default_pair();
  const FluxPulse p0 = default_pulse();
  bare.omega_F01 = harmonics(bare.transmon, p0.phi_ac).omega[0] + bare.sideband_n0 * p0.omega_p;
  double beta_err = 0;
  FluxPulse p = p0;
  p.tau = 80e-9;
  for (int k = 0; k < 20; ++k) {
    p.phi_p = angle();
    beta_err = std::max(beta_err, std::abs(wrap_angle(evolve(bare, p, p.duration()).beta - predicted_beta(bare, p))));
  }
  // theta spread on the default pair at the shortest allowed rise and the default one.
  const double f_p = p0.omega_p / kTwoPi;
  double spread = 0;
  for (double tr : {2.0 / f_p, p0.t_rise}) {
    FluxPulse q = p0;
    q.t_rise = tr;
    double lo = 1e9, hi = -1e9;
    for (int k = 0; k < 20; ++k) {
      q.phi_p = angle();
      const double th = evolve(default_pair(), q, q.duration()).theta;
      lo = std::min(lo, th);
      hi = std::max(hi, th);
    }
    spread = std::max(spread, hi - lo);
  }
  return {beta_err < kBetaTol && spread < kThetaSpreadTol,
          fmt("20 random phi_p; max |beta - (n0 phi_p + alpha)| %.1e rad; theta spread %.1e rad at f_p = %.0f MHz",
              beta_err, spread, f_p / 1e6)};
}

Outcome chevron_map() {
  const CoupledPair pair = default_pair();
  const FluxPulse p = default_pulse();
  const double step = 0.5e6;
  std::vector<double> fp;
  for (int k = -8; k <= 8; ++k) fp.push_back(200e6 + step * k);
  const auto durations = linspace(0.0, 1200e-9, 121);
  const auto map = chevron(pair, p, fp, durations, 4);
  const double f_res = resonant_omega_p(pair, p.phi_ac) / kTwoPi;
  Eigen::Index best = 0;
  map.transfer.rowwise().maxCoeff().maxCoeff(&best);
  const double f_best = fp[static_cast<std::size_t>(best)];
  std::vector<double> col(map.transfer.cols()), oracle(map.transfer.cols());
  const double geff = kTwoPi * g_eff_hz(pair, p);
  for (Eigen::Index j = 0; j < map.transfer.cols(); ++j) {
    col[j] = map.transfer(best, j);
    oracle[j] = rabi_transfer(geff, 0.0, durations[j]);
  }
  const double period = 1.0 / fit_sinusoid(durations, col).frequency;
  const double period_oracle = 1.0 / fit_sinusoid(durations, oracle).frequency;
  const double rel = std::abs(period - period_oracle) / period_oracle;
  return {std::abs(f_best - f_res) <= step && rel < kChevronPeriodRelTol,
          fmt("peak at %.2f MHz vs resonance %.3f MHz (grid %.1f MHz); period %.2f ns vs Rabi %.2f ns (%.2f%%)",
              f_best / 1e6, f_res / 1e6, step / 1e6, period * 1e9, period_oracle * 1e9, 100 * rel)};
}

Outcome irb_recovery() {
  NoiseModel m = NoiseModel::modulated_pair();
  // The pulse carries only the injected error.
  m.durations["xy"] = 0.0;
  m.depolarizing["xy"] = depolarizing_for_fidelity(kIrbInjected, 4);
  IrbConfig cfg;  // 6 lengths x 32 randomizations x 2 curves, 500 shots
  cfg.jobs = 4;
  Circuit iswap_unit{QuditSpace::qubits(2), {}};
  iswap_unit.add("xy", {0, 1}, {0.0, kPi});
  double worst = 0, mean = 0;
  const int seeds = 10;
  for (int s = 1; s <= seeds; ++s) {
    cfg.seed = static_cast<std::uint64_t>(s);
    const double err = run_irb(iswap_unit, m, cfg).fidelity - kIrbInjected;
    worst = std::max(worst, std::abs(err));
    mean += err / seeds;
  }

  // Per-pulse error of n pulses composing to iSWAP.
  cfg.seed = 11;
  std::vector<double> f, e;
  for (int n = 1; n <= 3; ++n) {
    Circuit unit{QuditSpace::qubits(2), {}};
    for (int k = 0; k < n; ++k) unit.add("xy", {0, 1}, {0.0, kPi / n});
    const auto r = run_irb(unit, m, cfg);
    f.push_back(scaled_fidelity(r, n));
    e.push_back(scaled_fidelity_stderr(r, n));
  }
  double z = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) z = std::max(z, std::abs(f[a] - f[b]) / std::hypot(e[a], e[b]));
  return {worst < kIrbAbsTol && z < 2.0,
          fmt("injected %.2f%%: %d seeds, max |error| %.3f%%, mean error %+.3f%%; per-pulse 1/2/3: "
              "%.2f/%.2f/%.2f%%, max pair gap %.2f sigma",
              100 * kIrbInjected, seeds, 100 * worst, 100 * mean, 100 * f[0], 100 * f[1], 100 * f[2], z)};
}

Outcome coherence_limit() {
  const NoiseModel m = NoiseModel::modulated_pair();
  const double f240 = coherence_limited_fidelity(m, 240e-9), f304 = coherence_limited_fidelity(m, 304e-9);
  const double l240 = coherence_limited_fidelity_lindblad(m, 240e-9);
  const double l304 = coherence_limited_fidelity_lindblad(m, 304e-9);
  const double agree = std::max(std::abs(f240 - l240), std::abs(f304 - l304));
  return {std::abs(f240 - 0.9815) < kCoherenceAbsTol && std::abs(f304 - 0.9765) < kCoherenceAbsTol &&
              agree < kLindbladTol,
          fmt("240 ns %.3f%% (ref 98.15), 304 ns %.3f%% (ref 97.65); Lindblad agreement %.1e", 100 * f240, 100 * f304,
              agree)};
}

Outcome qaoa_counts() {
  const DeviceTopology line = DeviceTopology::line(4);
  const QAOAAngles a0{0.7, 0.3};
  const std::map<std::string, int> ring_cz{{"CZ", 10}}, ring_xy{{"CZ", 6}, {"XY", 2}};
  const std::map<std::string, int> k4_cz{{"CZ", 17}}, k4_xy{{"CZ", 7}, {"XY", 5}};
  const auto ring = WeightedGraph::ring(4), k4 = WeightedGraph::complete(4);
  const bool counts_ok = compile_qaoa(ring, a0, line, GateSet::cz_only).counts == ring_cz &&
                         compile_qaoa(ring, a0, line, GateSet::cz_and_xy).counts == ring_xy &&
                         compile_qaoa(k4, a0, line, GateSet::cz_only).counts == k4_cz &&
                         compile_qaoa(k4, a0, line, GateSet::cz_and_xy).counts == k4_xy;
  double worst = 0;
  int circuits = 0;
  for (const char* name : {"ring4", "k4", "ring4-random", "k4-random"})
    for (GateSet gs : {GateSet::cz_only, GateSet::cz_and_xy})
      for (RouteStrategy st : {RouteStrategy::automatic, RouteStrategy::greedy, RouteStrategy::swap_network})
        for (int k = 0; k < 10; ++k) {
          const auto g = WeightedGraph::named(name);
          const QAOAAngles a{angle(), angle()};
          worst = std::max(worst, verify_compiled(compile_qaoa(g, a, line, gs, st), g, a));
          ++circuits;
        }
  return {counts_ok && worst < kExactTol,
          fmt("ring4 {CZ:10} / {CZ:6, XY:2}, K4 {CZ:17} / {CZ:7, XY:5} %s; %d compiled circuits, max distance %.1e",
              counts_ok ? "exact" : "MISMATCH", circuits, worst)};
}

// <C> summed over the 16 input bitstrings of |+>^4 with a closed-form mixer.
double enumeration_oracle(const WeightedGraph& g, double gamma, double beta) {
  const int n = g.n_vertices;
  const std::size_t d = std::size_t{1} << n;
  const cplx m[2][2] = {{std::cos(beta), {0, -std::sin(beta)}}, {{0, -std::sin(beta)}, std::cos(beta)}};
  std::vector<cplx> in(d);
  for (std::size_t y = 0; y < d; ++y) {
    double s = 0;
    for (const auto& e : g.edges) s += e.w * ((((y >> e.u) ^ (y >> e.v)) & 1) ? -1.0 : 1.0);
    in[y] = std::polar(std::pow(2.0, -0.5 * n), -0.5 * gamma * s);
  }
  double acc = 0;
  for (std::size_t x = 0; x < d; ++x) {
    cplx amp = 0;
    for (std::size_t y = 0; y < d; ++y) {
      cplx t = in[y];
      for (int q = 0; q < n; ++q) t *= m[(x >> q) & 1][(y >> q) & 1];
      amp += t;
    }
    acc += std::norm(amp) * g.cut_value(x);
  }
  return acc;
}

Outcome qaoa_landscape() {
  std::vector<double> gammas, betas;
  for (int i = 0; i < 32; ++i) gammas.push_back(kTwoPi * i / 32);
  for (int j = 0; j < 16; ++j) betas.push_back(kPi * j / 16);
  double worst = 0;
  for (const char* name : {"ring4", "k4", "ring4-random", "k4-random"}) {
    const auto g = WeightedGraph::named(name);
    LandscapeOptions opt;
    opt.jobs = 4;
    const Eigen::MatrixXd l = landscape(g, gammas, betas, opt);
    for (std::size_t i = 0; i < gammas.size(); ++i)
      for (std::size_t j = 0; j < betas.size(); ++j)
        worst = std::max(worst, std::abs(l(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) -
                                         enumeration_oracle(g, gammas[i], betas[j])));
  }
  return {worst < kLandscapeTol, fmt("4 graphs x 32x16 grid, max |<C> - enumeration| %.1e", worst)};
}

Outcome qutrit_constructions() {
  const QuditSpace two = QuditSpace::qutrits(2), three = QuditSpace::qutrits(3);
  double worst = 0, leak = 0;
  for (int k = 0; k < 100; ++k) {
    const double th = angle();
    const CMatrix u = reconstruct(decompose_cphase(th)).mat, v = reconstruct(decompose_ccphase(th)).mat;
    worst = std::max({worst, distance_global_phase(restrict_to_qubits(u, two), cphase(th)),
                      distance_global_phase(restrict_to_qubits(v, three), ccphase(th))});
    leak = std::max({leak, leakage(u, two), leakage(v, three)});
  }
  CMatrix ccz = CMatrix::Identity(8, 8);
  ccz(7, 7) = -1.0;
  const double d_cz = distance_global_phase(restrict_to_qubits(reconstruct(decompose_cphase(kPi)).mat, two), cz());
  const double d_ccz =
      distance_global_phase(restrict_to_qubits(reconstruct(decompose_ccphase(kPi)).mat, three), ccz);
  return {worst < kExactTol && leak < kExactTol && d_cz < kExactTol && d_ccz < kExactTol,
          fmt("100 random theta, max distance %.1e, max leakage %.1e; theta = pi: CZ %.1e, CCZ %.1e", worst, leak,
              d_cz, d_ccz)};
}

Outcome calibration() {
  double noiseless = 0, offset = 0;
  for (std::uint64_t s = 1; s <= 5; ++s) {
    const auto sc = CalibrationScenario::random(s);
    const auto r = calibrate(CalibrationDevice(sc));
    noiseless = std::max(noiseless, r.residual);
    offset = std::max(offset, std::abs(wrap_angle(2 * (r.phi0_estimate - sc.hidden_phi0))) / 2);
  }
  double shot = 0;
  const int shot_seeds = 20;
  CalibOptions opt;
  opt.shots = 500;
  for (int s = 1; s <= shot_seeds; ++s) {
    opt.seed = static_cast<std::uint64_t>(s);
    shot = std::max(shot, calibrate(CalibrationDevice(CalibrationScenario::random(100 + s)), opt).residual);
  }
  return {noiseless < kCalibNoiselessTol && offset < kCalibNoiselessTol && shot < kCalibShotTol,
          fmt("noiseless: 5 scenarios, max residual %.1e, max phi0 error %.1e; 500 shots: %d scenarios, max residual "
              "%.2e",
              noiseless, offset, shot_seeds, shot)};
}

// Unitary closure with the first nonzero entry made real positive.
std::vector<long long> canonical(const Matrix4c& u) {
  cplx ph = 1.0;
  for (Eigen::Index k = 0; k < 16; ++k)
    if (const cplx v = u(k / 4, k % 4); std::abs(v) > 1e-6) {
      ph = std::abs(v) / v;
      break;
    }
  std::vector<long long> out;
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) {
      const cplx v = ph * u(i, j);
      out.push_back(std::llround(v.real() * 1e6));
      out.push_back(std::llround(v.imag() * 1e6));
    }
  return out;
}

Outcome clifford_group_check() {
  const std::vector<Matrix4c> gens{kron(hadamard(), Matrix2c::Identity()), kron(Matrix2c::Identity(), hadamard()),
                                   kron(phase_s(), Matrix2c::Identity()), kron(Matrix2c::Identity(), phase_s()), cz()};
  std::set<std::vector<long long>> seen{canonical(Matrix4c::Identity())};
  std::vector<Matrix4c> frontier{Matrix4c::Identity()};
  while (!frontier.empty()) {
    std::vector<Matrix4c> next;
    for (const auto& u : frontier)
      for (const auto& g : gens) {
        const Matrix4c v = g * u;
        if (seen.insert(canonical(v)).second) next.push_back(v);
      }
    frontier = std::move(next);
  }
  Rng r = make_stream(20240601, 0);
  int bad = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto a = sample_clifford(r), b = sample_clifford(r);
    if (!compose(a, invert(a)).is_identity() || !compose(invert(a), a).is_identity()) ++bad;
    // The tableau product must match the matrix product of the synthesized circuits.
    const Matrix4c ua = circuit_unitary(native_circuit(a)), ub = circuit_unitary(native_circuit(b));
    const auto prod = CliffordElement::from_unitary(ub * ua);
    if (!prod || !(*prod == compose(a, b))) ++bad;
  }
  const std::size_t table = clifford_group().size();
  return {seen.size() == 11520 && table == 11520 && bad == 0,
          fmt("matrix closure %zu, tableau group %zu; 1000 compose/invert round trips, %d mismatches", seen.size(),
              table, bad)};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{identities,    ramsey_line,    phase_law,
                                                       chevron_map,   irb_recovery,   coherence_limit,
                                                       qaoa_counts,   qaoa_landscape, qutrit_constructions,
                                                       calibration,   clifford_group_check};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%-4s criterion %2zu: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, o.detail.c_str(), dt);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
