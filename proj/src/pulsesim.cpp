// SPDX-License-Identifier: Apache-2.0

#include "xyq/pulsesim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace xyq {

double TunableTransmon::frequency_at(double phi) const {
  double f = 0.0;
  for (std::size_t n = 0; n < nu.size(); ++n) f += nu[n] * std::cos(static_cast<double>(n) * phi);
  return f;
}

TunableTransmon TunableTransmon::asymmetric_squid(double f_max_hz, double f_min_hz, double cutoff_hz) {
  if (!(f_max_hz > f_min_hz && f_min_hz > 0))
    throw std::invalid_argument("asymmetric_squid: need f_max > f_min > 0");
  const double d = (f_min_hz / f_max_hz) * (f_min_hz / f_max_hz);
  const int m = 8192;
  std::vector<double> f(m);
  for (int j = 0; j < m; ++j) {
    const double phi = kTwoPi * j / m;
    const double c = std::cos(phi / 2), s = std::sin(phi / 2);
    f[j] = f_max_hz * std::pow(c * c + d * d * s * s, 0.25);
  }
  // Trapezoid on a periodic grid: spectrally accurate cosine coefficients.
  TunableTransmon t;
  for (int n = 0; n < m / 2; ++n) {
    double acc = 0.0;
    for (int j = 0; j < m; ++j) acc += f[j] * std::cos(kTwoPi * n * j / m);
    const double nu = (n == 0 ? 1.0 : 2.0) * acc / m;
    if (n > 0 && std::abs(nu) < cutoff_hz) break;
    t.nu.push_back(nu);
  }
  return t;
}

Harmonics harmonics(const TunableTransmon& t, double phi_ac, double u, double tol_hz) {
  if (t.nu.size() < 2) throw std::invalid_argument("harmonics: need at least two nu coefficients");
  Harmonics h;
  h.omega_dc = kTwoPi * t.frequency_at(t.phi_dc);
  const double nmax = static_cast<double>(t.nu.size() - 1);
  const double x_max = nmax * std::abs(phi_ac * u);
  for (int k = 0; k < 400; ++k) {
    double w = 0.0, bound = 0.0;
    for (std::size_t n = 1; n < t.nu.size(); ++n) {
      const double x = static_cast<double>(n) * phi_ac * u;
      const double j = std::cyl_bessel_j(static_cast<double>(k), std::abs(x)) * (x < 0 && k % 2 ? -1.0 : 1.0);
      w += t.nu[n] * std::cos(static_cast<double>(n) * t.phi_dc + k * kPi / 2) * j;
      bound += std::abs(t.nu[n] * j);
    }
    if (k == 0) w += t.nu[0];
    if (k > 0 && k > x_max && bound < tol_hz) break;
    h.omega.push_back(kTwoPi * w);
  }
  return h;
}

double envelope(const FluxPulse& p, double t) {
  const double w = p.sigma * p.t_rise;
  return 0.5 * (std::erf((t - p.t1()) / w) - std::erf((t - p.t2()) / w));
}

namespace {

// Precomputed drive for one (pair, pulse).
struct Drive {
  const CoupledPair* pair;
  const FluxPulse* p;
  Harmonics steady;

  Drive(const CoupledPair& pr, const FluxPulse& pl) : pair(&pr), p(&pl), steady(harmonics(pr.transmon, pl.phi_ac)) {}

  double omega_T(double t) const {
    const double u = envelope(*p, t);
    const double x = p->omega_p * t + p->phi_p;
    if (pair->model == TransientModel::exact) {
      const auto& tr = pair->transmon;
      return kTwoPi * tr.frequency_at(tr.phi_dc + p->phi_ac * u * std::cos(x));
    }
    double w = steady.omega_dc + (steady.omega[0] - steady.omega_dc) * u;
    for (std::size_t k = 1; k < steady.omega.size(); ++k)
      w += 2.0 * u * steady.omega[k] * std::cos(static_cast<double>(k) * x);
    return w;
  }
};

// exp(S) with S = -(g/delta)(e^{i Delta}|01><10| - h.c.), the first-order
// dressing of the idle pair in the interaction picture.
Eigen::Matrix2cd dressing(double g, double delta, double phase) {
  const double a = g / delta;
  const cplx e = std::polar(1.0, phase);
  Eigen::Matrix2cd u;
  u << std::cos(a), -std::sin(a) * e, std::sin(a) * std::conj(e), std::cos(a);
  return u;
}

Eigen::Matrix2cd block_from_state(const Eigen::VectorXd& y) {
  Eigen::Matrix2cd b;
  b << cplx(y[0], y[1]), cplx(y[2], y[3]), cplx(y[4], y[5]), cplx(y[6], y[7]);
  return b;
}

}  // namespace

double omega_T(const CoupledPair& pair, const FluxPulse& p, double t) {
  const double u = envelope(p, t);
  const Harmonics h = pair.model == TransientModel::exact ? harmonics(pair.transmon, p.phi_ac, u)
                                                          : harmonics(pair.transmon, p.phi_ac);
  const double x = p.omega_p * t + p.phi_p;
  const double scale = pair.model == TransientModel::exact ? 1.0 : u;
  double w = pair.model == TransientModel::exact ? h.omega[0] : h.omega_dc + (h.omega[0] - h.omega_dc) * u;
  for (std::size_t k = 1; k < h.omega.size(); ++k)
    w += 2.0 * scale * h.omega[k] * std::cos(static_cast<double>(k) * x);
  return w;
}

double dynamical_phase_numeric(const CoupledPair& pair, const FluxPulse& p, double t) {
  if (t < 0) throw std::invalid_argument("dynamical_phase_numeric: t must be >= 0");
  if (t == 0) return 0.0;
  const Drive drive(pair, p);
  OdeOptions opt;
  opt.rtol = 0.0;
  opt.atol = 1e-10;
  opt.max_step = 0.05 * kTwoPi / std::max(p.omega_p, 1.0);
  double out = 0.0;
  const double stops[] = {t};
  integrate_dopri5(
      [&](double tt, const Eigen::VectorXd&) {
        Eigen::VectorXd d(1);
        d[0] = drive.omega_T(tt) - pair.omega_F01;
        return d;
      },
      0.0, Eigen::VectorXd::Zero(1), stops, [&](std::size_t, double, const Eigen::VectorXd& y) { out = y[0]; },
      opt);
  return out;
}

double alpha(const CoupledPair& pair, const FluxPulse& p) {
  const Harmonics h = harmonics(pair.transmon, p.phi_ac);
  double a = 0.5 * (h.omega_dc - h.omega[0]) * p.t_rise;
  for (std::size_t k = 1; k < h.omega.size(); ++k) {
    const double kw = static_cast<double>(k) * p.omega_p;
    const double damp = std::exp(-std::pow(0.5 * p.sigma * kw * p.t_rise, 2));
    a -= damp * 2.0 * h.omega[k] / kw * std::sin(static_cast<double>(k) * (0.5 * p.omega_p * p.t_rise + p.phi_p));
  }
  return a;
}

double dynamical_phase_analytic(const CoupledPair& pair, const FluxPulse& p, double t) {
  const Harmonics h = harmonics(pair.transmon, p.phi_ac);
  double d = (h.omega[0] - pair.omega_F01) * t;
  for (std::size_t k = 1; k < h.omega.size(); ++k) {
    const double kw = static_cast<double>(k) * p.omega_p;
    d += 2.0 * h.omega[k] / kw * std::sin(static_cast<double>(k) * (p.omega_p * t + p.phi_p));
  }
  return d + alpha(pair, p);
}

std::vector<std::pair<int, cplx>> sideband_weights(const CoupledPair& pair, const FluxPulse& p, int n_max,
                                                   int samples) {
  if (p.omega_p <= 0) throw std::invalid_argument("sideband_weights: omega_p must be positive");
  const Harmonics h = harmonics(pair.transmon, p.phi_ac);
  std::vector<cplx> e(samples);
  for (int j = 0; j < samples; ++j) {
    const double x = kTwoPi * j / samples;
    double d = 0.0;
    for (std::size_t k = 1; k < h.omega.size(); ++k)
      d += 2.0 * h.omega[k] / (static_cast<double>(k) * p.omega_p) * std::sin(static_cast<double>(k) * x);
    e[j] = std::polar(1.0, d);
  }
  std::vector<std::pair<int, cplx>> out;
  for (int n = -n_max; n <= n_max; ++n) {
    cplx acc = 0.0;
    for (int j = 0; j < samples; ++j) acc += e[j] * std::polar(1.0, -kTwoPi * n * j / samples);
    out.emplace_back(n, acc / static_cast<double>(samples));
  }
  return out;
}

cplx sideband_weight(const CoupledPair& pair, const FluxPulse& p, int n) {
  const auto w = sideband_weights(pair, p, std::abs(n));
  return n >= 0 ? w.back().second : w.front().second;
}

double g_eff_hz(const CoupledPair& pair, const FluxPulse& p) {
  return pair.g_hz * std::abs(sideband_weight(pair, p, pair.sideband_n0));
}

double resonant_omega_p(const CoupledPair& pair, double phi_ac) {
  if (pair.sideband_n0 == 0) throw std::domain_error("resonant_omega_p: sideband 0 has no modulation frequency");
  const double w0 = harmonics(pair.transmon, phi_ac).omega[0];
  const double wp = (pair.omega_F01 - w0) / pair.sideband_n0;
  if (wp <= 0) throw std::domain_error("resonant_omega_p: sideband cannot reach the fixed transmon");
  return wp;
}

double solve_phi_ac(const CoupledPair& pair, double omega_p) {
  const double target = pair.omega_F01 - pair.sideband_n0 * omega_p;
  auto w0 = [&](double a) { return harmonics(pair.transmon, a).omega[0] - target; };
  double lo = 0.0, hi = kPi;
  if (w0(lo) * w0(hi) > 0) throw std::domain_error("solve_phi_ac: resonance not reachable with |phi_ac| <= pi");
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (w0(lo) * w0(mid) <= 0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

double predicted_beta(const CoupledPair& pair, const FluxPulse& p) {
  const double eps = sideband_weight(pair, p, pair.sideband_n0).real();
  return pair.sideband_n0 * p.phi_p + alpha(pair, p) + (eps > 0 ? kPi : 0.0);
}

GateExtraction extract_xy(const Eigen::Matrix2cd& b) {
  GateExtraction g;
  g.theta = 2.0 * std::atan2(0.5 * (std::abs(b(0, 1)) + std::abs(b(1, 0))),
                             0.5 * (std::abs(b(0, 0)) + std::abs(b(1, 1))));
  const double base = 0.5 * (std::arg(b(0, 1)) - std::arg(b(1, 0)));
  double best = 2.0;
  for (double cand : {base, base + kPi}) {
    const Matrix4c u = xy_unitary(cand, g.theta);
    const double d = distance_global_phase(u.block<2, 2>(1, 1), b);
    if (d < best) {
      best = d;
      g.beta = wrap_angle(cand);
    }
  }
  g.unitary.setIdentity();
  g.unitary.block<2, 2>(1, 1) = b;
  g.unitarity_error = unitarity_error(b);
  return g;
}

std::vector<GateExtraction> evolve_trace(const CoupledPair& pair, const FluxPulse& p, std::span<const double> times,
                                         const EvolveOptions& opt) {
  const Drive drive(pair, p);
  const double g = kTwoPi * pair.g_hz;
  Eigen::VectorXd y0 = Eigen::VectorXd::Zero(9);
  y0[0] = 1.0;
  y0[6] = 1.0;
  OdeOptions ode = opt.ode;
  if (ode.max_step == 0.0 && p.omega_p > 0) ode.max_step = 0.05 * kTwoPi / p.omega_p;
  std::vector<GateExtraction> out(times.size());
  const double idle_detuning = drive.steady.omega_dc - pair.omega_F01;
  const bool dress = opt.dressed_frame && std::abs(idle_detuning) > 0;
  integrate_dopri5(
      [&](double t, const Eigen::VectorXd& y) {
        Eigen::VectorXd dy(9);
        const cplx c = g * std::polar(1.0, y[8]);  // <01|H|10>
        const cplx u00(y[0], y[1]), u01(y[2], y[3]), u10(y[4], y[5]), u11(y[6], y[7]);
        const cplx mi(0, -1);
        const cplx d00 = mi * c * u10, d01 = mi * c * u11;
        const cplx d10 = mi * std::conj(c) * u00, d11 = mi * std::conj(c) * u01;
        dy << d00.real(), d00.imag(), d01.real(), d01.imag(), d10.real(), d10.imag(), d11.real(), d11.imag(),
            drive.omega_T(t) - pair.omega_F01;
        return dy;
      },
      0.0, y0, times,
      [&](std::size_t k, double t, const Eigen::VectorXd& y) {
        Eigen::Matrix2cd b = block_from_state(y);
        const double err = unitarity_error(b);
        if (err > opt.fail_above) throw std::runtime_error("evolve: propagator lost unitarity");
        if (err > opt.renormalize_above) {
          Eigen::JacobiSVD<Eigen::Matrix2cd> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
          b = svd.matrixU() * svd.matrixV().adjoint();
        }
        if (dress) {
          const Eigen::Matrix2cd w0 = dressing(g, idle_detuning, 0.0);
          b = b * w0;
          if (t >= p.duration() * (1 - 1e-12)) b = dressing(g, idle_detuning, y[8]).adjoint() * b;
        }
        out[k] = extract_xy(b);
        out[k].unitarity_error = err;
      },
      ode);
  return out;
}

GateExtraction evolve(const CoupledPair& pair, const FluxPulse& p, double t_final, const EvolveOptions& opt) {
  const double times[] = {t_final};
  return evolve_trace(pair, p, times, opt).front();
}

ChevronMap chevron(const CoupledPair& pair, const FluxPulse& tmpl, std::span<const double> f_p_hz,
                   std::span<const double> durations, int jobs) {
  if (f_p_hz.empty() || durations.empty()) throw std::invalid_argument("chevron: empty grid");
  ChevronMap map;
  map.f_p_hz.assign(f_p_hz.begin(), f_p_hz.end());
  map.durations.assign(durations.begin(), durations.end());
  std::sort(map.durations.begin(), map.durations.end());
  map.transfer.resize(static_cast<Eigen::Index>(f_p_hz.size()), static_cast<Eigen::Index>(durations.size()));
  std::vector<double> times;
  for (double d : map.durations) times.push_back(tmpl.t_rise + d);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < map.f_p_hz.size(); i = next++) {
      FluxPulse p = tmpl;
      p.omega_p = kTwoPi * map.f_p_hz[i];
      p.tau = map.durations.back() + 10 * p.t_rise;  // stays on through the last sample
      const auto tr = evolve_trace(pair, p, times);
      for (std::size_t j = 0; j < tr.size(); ++j)
        map.transfer(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::norm(tr[j].unitary(1, 2));
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(map.f_p_hz.size())));
  std::vector<std::thread> pool;
  for (int k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return map;
}

double rabi_transfer(double g, double delta, double t) {
  const double om = std::sqrt(g * g + 0.25 * delta * delta);
  if (om == 0.0) return 0.0;
  const double s = std::sin(om * t);
  return g * g / (om * om) * s * s;
}

double tune_iswap_tau(const CoupledPair& pair, FluxPulse p) {
  const double geff = kTwoPi * g_eff_hz(pair, p);
  if (geff <= 0) throw std::domain_error("tune_iswap_tau: no effective coupling");
  const double guess = kPi / (2 * geff);
  auto transfer = [&](double tau) {
    p.tau = tau;
    return std::norm(evolve(pair, p, p.duration()).unitary(1, 2));
  };
  // Golden-section search for the transfer maximum near the guess.
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = std::max(0.0, 0.6 * guess - p.t_rise), b = 1.4 * guess;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = transfer(c), fd = transfer(d);
  while (b - a > 1e-13) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = transfer(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = transfer(d);
    }
  }
  return 0.5 * (a + b);
}

double tune_tau_for_theta(const CoupledPair& pair, FluxPulse p, double theta) {
  if (!(theta > 0 && theta < kPi)) throw std::domain_error("tune_tau_for_theta: theta must lie in (0, pi)");
  const double geff = kTwoPi * g_eff_hz(pair, p);
  if (geff <= 0) throw std::domain_error("tune_tau_for_theta: no effective coupling");
  auto angle = [&](double tau) {
    p.tau = tau;
    return evolve(pair, p, p.duration()).theta;
  };
  // theta grows monotonically until the first full transfer.
  double lo = 0.0, hi = std::max(kPi / (2 * geff), p.t_rise);
  while (angle(hi) < theta && hi < 1e-3) hi *= 1.5;
  for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (angle(mid) < theta ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

CoupledPair default_pair() {
  CoupledPair pair;
  pair.transmon = TunableTransmon::asymmetric_squid(4.759e9, 3.992e9);
  pair.sideband_n0 = -2;
  // Found by alternately maximizing the |01> -> |10> transfer of the default
  // 240 ns pulse over g and the fixed-qubit frequency. The fixed transmon sits
  // 214 kHz above the bare sideband resonance, which absorbs the shift from
  // the off-resonant sidebands, so the transfer is complete to 1e-12.
  pair.g_hz = 4.2321900246e6;
  pair.omega_F01 = kTwoPi * 4.0962923797e9;
  return pair;
}

FluxPulse default_pulse() {
  FluxPulse p;
  p.omega_p = kTwoPi * 200e6;
  p.phi_ac = 2.0;
  p.t_rise = 32e-9;
  p.tau = 176e-9;
  return p;
}

}  // namespace xyq
