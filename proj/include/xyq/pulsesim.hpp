// SPDX-License-Identifier: Apache-2.0
//
// Flux-modulated fixed/tunable transmon pair, simulated in the 01/10
// manifold under the rotating-wave approximation.
//
// Units: nu and g in Hz, angular frequencies (omega_*) in rad/s, times in s.
// Site 0 is the fixed transmon F, site 1 the tunable transmon T, so the
// two-level basis is (|01>, |10>) = (T excited, F excited).

#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "xyq/ode.hpp"
#include "xyq/qcore.hpp"

namespace xyq {

struct TunableTransmon {
  // Cosine-series coefficients of f01(phi) in Hz: f01 = sum_n nu[n] cos(n phi).
  std::vector<double> nu;
  double phi_dc = 0.0;
  double anharmonicity = -200e6;  // Hz, unused by the 01/10 model

  double frequency_at(double phi) const;  // Hz

  // Asymmetric-SQUID transmon with f01 = f_max at phi = 0 and f_min at phi = pi,
  // coefficients kept up to the first one below `cutoff_hz`.
  static TunableTransmon asymmetric_squid(double f_max_hz, double f_min_hz, double cutoff_hz = 1e3);
};

struct FluxPulse {
  double phi_ac = 0.0;
  double omega_p = 0.0;
  double phi_p = 0.0;
  double t_rise = 0.0;
  double tau = 0.0;
  double sigma = 0.21233045007200477;  // 1/sqrt(32 ln 2)

  double t1() const { return t_rise / 2; }
  double t2() const { return tau + 1.5 * t_rise; }
  double duration() const { return tau + 2 * t_rise; }
};

// How the modulation harmonics respond to the envelope u(t).
//   linear_switch: harmonic amplitudes are their steady values scaled by u(t)
//                  (the model behind the closed-form alpha).
//   exact:         the flux u(t) phi_ac cos(...) is fed through the full
//                  frequency curve, i.e. J_k(n phi_ac u(t)).
enum class TransientModel { linear_switch, exact };

struct CoupledPair {
  double g_hz = 0.0;
  double omega_F01 = 0.0;
  TunableTransmon transmon;
  int sideband_n0 = -2;
  TransientModel model = TransientModel::linear_switch;
};

// Steady-state Fourier amplitudes of omega_T01 at envelope value u:
// omega_T = omega[0] + 2 sum_k omega[k] cos(k(omega_p t + phi_p)).
struct Harmonics {
  double omega_dc = 0.0;       // unmodulated frequency, rad/s
  std::vector<double> omega;   // rad/s, index k
};

// Terms with k beyond the point where every remaining amplitude is below
// `tol_hz` are dropped.
Harmonics harmonics(const TunableTransmon& t, double phi_ac, double u = 1.0, double tol_hz = 1e-6);

double envelope(const FluxPulse& p, double t);

// Bessel-expanded omega_T01(t) for the pair's transient model.
double omega_T(const CoupledPair& pair, const FluxPulse& p, double t);

// Integral of omega_T - omega_F01 from 0 to t by adaptive quadrature.
double dynamical_phase_numeric(const CoupledPair& pair, const FluxPulse& p, double t);
// Closed form valid inside the interaction window (linear-switch model).
double dynamical_phase_analytic(const CoupledPair& pair, const FluxPulse& p, double t);
double alpha(const CoupledPair& pair, const FluxPulse& p);

// eps_n for n in [-n_max, n_max], from the steady Fourier series of e^{i Delta}.
std::vector<std::pair<int, cplx>> sideband_weights(const CoupledPair& pair, const FluxPulse& p,
                                                   int n_max = 8, int samples = 4096);
cplx sideband_weight(const CoupledPair& pair, const FluxPulse& p, int n);

double g_eff_hz(const CoupledPair& pair, const FluxPulse& p);

// omega_p putting sideband n0 on resonance: omega_0 + n0 omega_p = omega_F01.
double resonant_omega_p(const CoupledPair& pair, double phi_ac);

// n0 phi_p + alpha, plus pi when eps_{n0} > 0.
double predicted_beta(const CoupledPair& pair, const FluxPulse& p);

struct GateExtraction {
  double theta = 0.0;
  double beta = 0.0;
  double leakage_proxy = 0.0;
  double unitarity_error = 0.0;
  Matrix4c unitary = Matrix4c::Identity();  // 2x2 block lifted onto |00>,|01>,|10>,|11>
};

// Maps a 2x2 propagator in (|01>,|10>) onto (theta, beta) of xy_unitary.
GateExtraction extract_xy(const Eigen::Matrix2cd& block);

struct EvolveOptions {
  OdeOptions ode{};
  double renormalize_above = 1e-12;
  double fail_above = 1e-8;
  // Report the propagator between dressed idle states: the static coupling
  // g hybridizes |01> and |10> by ~g/delta at the pulse edges, which would
  // otherwise interfere with the resonant amplitude. The first-order
  // Schrieffer-Wolff frame is undone at t = 0 and at samples at or after the
  // end of the pulse.
  bool dressed_frame = true;
};

// Interaction-picture propagator at every requested time (ascending).
std::vector<GateExtraction> evolve_trace(const CoupledPair& pair, const FluxPulse& p,
                                         std::span<const double> times, const EvolveOptions& opt = {});
GateExtraction evolve(const CoupledPair& pair, const FluxPulse& p, double t_final,
                      const EvolveOptions& opt = {});

struct ChevronMap {
  std::vector<double> f_p_hz;
  std::vector<double> durations;     // interaction time after the rise
  Eigen::MatrixXd transfer;          // rows: f_p, cols: duration; P(|10> -> |01>)
};

// For each f_p the pulse is held on for the longest duration and sampled at
// t_rise + d, one integration per modulation frequency.
ChevronMap chevron(const CoupledPair& pair, const FluxPulse& tmpl, std::span<const double> f_p_hz,
                   std::span<const double> durations, int jobs = 1);

// Two-level Rabi transfer probability for coupling g (rad/s) and detuning
// delta (rad/s) of the effective exchange.
double rabi_transfer(double g, double delta, double t);

// Interaction time tau giving theta = pi, by root finding on the transfer.
double tune_iswap_tau(const CoupledPair& pair, FluxPulse p);
// Interaction time giving rotation angle theta in (0, pi), by bisection.
double tune_tau_for_theta(const CoupledPair& pair, FluxPulse p, double theta);

// Device defaults: 4.759 GHz sweet spot with 0.767 GHz tunability, phi_ac = 2
// at f_p = 200 MHz on sideband -2, 32 ns rise and 176 ns flat top. g and the
// fixed-qubit frequency are tuned so that this 240 ns pulse is a complete
// iSWAP.
CoupledPair default_pair();
FluxPulse default_pulse();

// Modulation amplitude phi_ac putting the n0 sideband on resonance at omega_p.
double solve_phi_ac(const CoupledPair& pair, double omega_p);

}  // namespace xyq
