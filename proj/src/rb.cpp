// SPDX-License-Identifier: Apache-2.0

#include "xyq/rb.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace xyq {

DecayFit fit_decay(std::span<const double> lengths, std::span<const double> means, std::span<const double> weights) {
  if (lengths.size() != means.size() || (!weights.empty() && weights.size() != means.size()))
    throw std::invalid_argument("fit_decay: size mismatch");
  std::vector<double> distinct(lengths.begin(), lengths.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3) throw std::invalid_argument("fit_decay: need >= 3 distinct lengths");
  const auto [mn, mx] = std::minmax_element(means.begin(), means.end());
  if (*mx - *mn < 1e-12) throw FitError("fit_decay: constant data, p is unidentifiable");

  const std::size_t n = means.size();
  std::vector<double> w(n, 1.0);
  if (!weights.empty()) w.assign(weights.begin(), weights.end());

  // Log-linear start on means - B0 with B0 the mean at the longest length.
  const std::size_t ilong = static_cast<std::size_t>(std::max_element(lengths.begin(), lengths.end()) - lengths.begin());
  auto start_from = [&](double b0) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = means[i] - b0;
      if (d <= 1e-12) continue;
      const double y = std::log(d);
      sx += lengths[i];
      sy += y;
      sxx += lengths[i] * lengths[i];
      sxy += lengths[i] * y;
      ++m;
    }
    Eigen::Vector3d x0(0.5, b0, 0.9);
    if (m >= 2 && m * sxx - sx * sx > 0) {
      const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
      const double icpt = (sy - slope * sx) / m;
      x0 << std::exp(icpt), b0, std::clamp(std::exp(slope), 1e-6, 1 - 1e-9);
    }
    x0[1] = std::clamp(x0[1], 0.0, 1.0);
    return x0;
  };

  const ResidualFn res = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = std::sqrt(w[i]) * (x[1] + x[0] * std::pow(x[2], lengths[i]) - means[i]);
    return r;
  };
  Eigen::Vector3d lo(-2.0, 0.0, 1e-9), hi(2.0, 1.0, 1.0 - 1e-12);

  std::optional<LsqResult> best;
  for (double b0 : {means[ilong], 0.25, 0.0, 0.5}) {
    try {
      const LsqResult r = levenberg_marquardt(res, start_from(b0), lo, hi, weights.empty());
      if (!best || r.chi2 < best->chi2) best = r;
    } catch (const FitError&) {
    }
  }
  if (!best) throw FitError("fit_decay: no restart converged");
  DecayFit f;
  f.A = best->x[0];
  f.B = best->x[1];
  f.p = best->x[2];
  f.A_err = std::sqrt(std::max(0.0, best->covariance(0, 0)));
  f.B_err = std::sqrt(std::max(0.0, best->covariance(1, 1)));
  f.p_err = std::sqrt(std::max(0.0, best->covariance(2, 2)));
  f.reduced_chi2 = best->dof > 0 ? best->chi2 / best->dof : 0.0;
  return f;
}

double irb_error(double p_ref, double p_il, int d) { return (d - 1.0) / d * (1.0 - p_il / p_ref); }

double simulate_survival(const std::vector<Op>& ops, const NoiseModel& model) {
  const QuditSpace sp = QuditSpace::qubits(2);
  CMatrix rho = CMatrix::Zero(4, 4);
  rho(0, 0) = 1.0;
  DensityMatrix r{sp, rho};
  for (const auto& op : ops) {
    const std::vector<int> dims(op.targets.size(), 2);
    r = apply_local(r, gate_matrix(op, dims), op.targets);
    if (const double t = model.duration_of(op.label); t > 0) r.rho = decoherence_map(r.rho, sp, model, t);
    if (const double lam = model.depolarizing_of(op.label); lam > 0) r = apply_depolarizing(r, lam, op.targets);
  }
  // Readout: each qubit reads 0 from 0 with 1 - e0 and from 1 with e1.
  const double e0 = model.readout[0], e1 = model.readout[1];
  double p = 0.0;
  for (int s = 0; s < 4; ++s) {
    const double q0 = (s & 2) ? e1 : 1 - e0;
    const double q1 = (s & 1) ? e1 : 1 - e0;
    p += r.population(s) * q0 * q1;
  }
  return std::clamp(p, 0.0, 1.0);
}

IrbResult run_irb(const Circuit& unit, const NoiseModel& model, const IrbConfig& cfg) {
  if (unit.space != QuditSpace::qubits(2)) throw std::invalid_argument("run_irb: unit must act on two qubits");
  const auto unit_cliff = CliffordElement::from_unitary(circuit_unitary(unit));
  if (!unit_cliff) throw std::invalid_argument("run_irb: interleaved unit is not a Clifford");
  if (cfg.lengths.empty() || cfg.randomizations < 1) throw std::invalid_argument("run_irb: empty design");
  model.validate();

  IrbResult out;
  out.config = cfg;
  out.n_pulses = static_cast<int>(std::count_if(unit.ops.begin(), unit.ops.end(), [](const Op& o) { return o.label == "xy"; }));

  // Circuit list: (interleaved, length, randomization).
  for (int il = 0; il < 2; ++il)
    for (int L : cfg.lengths)
      for (int k = 0; k < cfg.randomizations; ++k) out.circuits.push_back({il == 1, L, k, 0, 0, 0.0});
  const std::size_t n = out.circuits.size();
  {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng shuffle = make_stream(cfg.seed, 0);
    for (std::size_t i = n; i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform01(shuffle) * static_cast<double>(i));
      std::swap(order[i - 1], order[std::min(j, i - 1)]);
    }
    for (std::size_t pos = 0; pos < n; ++pos) out.circuits[order[pos]].execution_order = static_cast<int>(pos);
  }

  auto run_one = [&](std::size_t idx) {
    auto& rec = out.circuits[idx];
    // Reference and interleaved share the Clifford draws of the same
    // (length, randomization); the stream index ignores the interleaving flag.
    Rng rng = make_stream(cfg.seed, 1 + (static_cast<std::uint64_t>(rec.length) << 20) + rec.randomization);
    std::vector<Op> ops;
    CliffordElement total;
    int two_q = 0;
    for (int m = 0; m < rec.length; ++m) {
      const CliffordElement c = sample_clifford(rng);
      const Circuit nc = native_circuit(c, cfg.native);
      ops.insert(ops.end(), nc.ops.begin(), nc.ops.end());
      two_q += two_qubit_gate_count(c, cfg.native);
      total = compose(total, c);
      if (rec.interleaved) {
        ops.insert(ops.end(), unit.ops.begin(), unit.ops.end());
        total = compose(total, *unit_cliff);
      }
    }
    const CliffordElement inv = invert(total);
    const Circuit nc = native_circuit(inv, cfg.native);
    ops.insert(ops.end(), nc.ops.begin(), nc.ops.end());
    two_q += two_qubit_gate_count(inv, cfg.native);
    rec.two_qubit_gates = two_q;
    const double p = simulate_survival(ops, model);
    Rng shots = make_stream(cfg.seed ^ 0x5eed5eedULL, idx + 1);
    rec.survival = cfg.shots > 0 ? static_cast<double>(binomial(shots, cfg.shots, p)) / cfg.shots : p;
  };

  // Run in the shuffled order; results land by index so the schedule does
  // not change them.
  std::vector<std::size_t> by_order(n);
  for (std::size_t i = 0; i < n; ++i) by_order[out.circuits[i].execution_order] = i;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < n;) run_one(by_order[k]);
  };
  const int jobs = std::max(1, cfg.jobs);
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  auto fit_curve = [&](bool il) {
    std::vector<double> ls, means, weights;
    bool all_one = true;
    for (int L : cfg.lengths) {
      double s = 0, s2 = 0;
      int c = 0;
      for (const auto& rec : out.circuits)
        if (rec.interleaved == il && rec.length == L) {
          s += rec.survival;
          s2 += rec.survival * rec.survival;
          ++c;
          all_one = all_one && rec.survival >= 1.0 - 1e-12;
        }
      const double mean = s / c;
      // Standard error of the mean, floored by the shot-noise level.
      const double var = c > 1 ? std::max(0.0, (s2 - c * mean * mean) / (c - 1)) : 0.0;
      const double shot_var = cfg.shots > 0 ? std::max(mean * (1 - mean), 1.0 / cfg.shots) / cfg.shots : 1e-12;
      ls.push_back(L);
      means.push_back(mean);
      weights.push_back(1.0 / (std::max(var, shot_var) / c));
    }
    if (all_one) {
      // No decay at all: p = 1 exactly.
      DecayFit f;
      f.p = 1.0;
      f.B = 1.0;
      return f;
    }
    return fit_decay(ls, means, weights);
  };
  out.reference = fit_curve(false);
  out.interleaved = fit_curve(true);
  out.r = irb_error(out.reference.p, out.interleaved.p);
  out.fidelity = 1.0 - out.r;
  return out;
}

double scaled_fidelity(double p_ref, double p_il, int n) {
  if (n < 1) throw std::invalid_argument("scaled_fidelity: n must be >= 1");
  const double q = p_il / p_ref;
  if (!(q > 0)) throw std::domain_error("scaled_fidelity: p_il/p must be positive");
  return 1.0 - 0.75 * (1.0 - std::pow(q, 1.0 / n));
}

double scaled_fidelity(const IrbResult& r, int n) { return scaled_fidelity(r.reference.p, r.interleaved.p, n); }

double scaled_fidelity_stderr(const IrbResult& r, int n) {
  const double q = r.interleaved.p / r.reference.p;
  const double rel = std::hypot(r.reference.p_err / r.reference.p, r.interleaved.p_err / r.interleaved.p);
  return 0.75 / n * std::pow(q, 1.0 / n) * rel;
}

}  // namespace xyq
