// SPDX-License-Identifier: Apache-2.0

#include "xyq/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "xyq/ode.hpp"

namespace xyq {

void NoiseModel::validate() const {
  for (const auto& q : qubits) {
    if (!(q.t1 > 0) || !(q.t2 > 0)) throw std::invalid_argument("NoiseModel: T1 and T2 must be positive");
    if (q.t2 > 2 * q.t1 * (1 + 1e-12)) throw std::invalid_argument("NoiseModel: T2 exceeds 2 T1");
  }
  for (double p : readout)
    if (!(p >= 0 && p <= 1)) throw std::invalid_argument("NoiseModel: readout probability outside [0, 1]");
  for (const auto& [label, p] : depolarizing)
    if (!(p >= 0 && p <= 1)) throw std::invalid_argument("NoiseModel: depolarizing probability outside [0, 1]");
  for (const auto& [label, t] : durations)
    if (!(t >= 0)) throw std::invalid_argument("NoiseModel: negative gate duration");
}

double NoiseModel::duration_of(const std::string& label) const {
  const auto it = durations.find(label);
  return it == durations.end() ? 0.0 : it->second;
}

double NoiseModel::depolarizing_of(const std::string& label) const {
  const auto it = depolarizing.find(label);
  return it == depolarizing.end() ? 0.0 : it->second;
}

NoiseModel NoiseModel::noiseless() { return {}; }

NoiseModel NoiseModel::modulated_pair() {
  NoiseModel m;
  m.qubits = {{24e-6, 13e-6}, {26e-6, 14e-6}};
  m.durations = {{"rx", 40e-9}, {"rx_phased", 40e-9}, {"h", 40e-9}, {"x", 40e-9}, {"y", 40e-9},
                 {"cz", 240e-9}, {"iswap", 240e-9}, {"xy", 240e-9}, {"xy_half", 152e-9}};
  return m;
}

double depolarizing_for_fidelity(double f, int d) {
  // (1 - lambda) rho + lambda I/d has F_avg = 1 - lambda (d - 1) / d.
  return (1.0 - f) * d / (d - 1.0);
}

DensityMatrix DensityMatrix::pure(const QuditSpace& space, const CVector& psi) {
  if (psi.size() != space.total()) throw std::invalid_argument("DensityMatrix::pure: dimension mismatch");
  return {space, psi * psi.adjoint()};
}

DensityMatrix DensityMatrix::basis(const QuditSpace& space, Eigen::Index index) {
  CVector psi = CVector::Zero(space.total());
  psi(index) = 1.0;
  return pure(space, psi);
}

void DensityMatrix::validate(double tol, double psd_floor) const {
  if (rho.rows() != space.total() || rho.cols() != space.total())
    throw std::domain_error("DensityMatrix: dimension mismatch");
  if (max_abs(rho - rho.adjoint()) > tol) throw std::domain_error("DensityMatrix: not Hermitian");
  if (std::abs(rho.trace() - cplx(1.0)) > tol) throw std::domain_error("DensityMatrix: trace is not 1");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho + rho.adjoint()));
  if (es.eigenvalues().minCoeff() < -psd_floor) throw std::domain_error("DensityMatrix: not positive semidefinite");
}

DensityMatrix apply_unitary(const DensityMatrix& r, const CMatrix& u) { return {r.space, u * r.rho * u.adjoint()}; }

DensityMatrix apply_local(const DensityMatrix& r, const CMatrix& u, std::span<const int> sites) {
  return apply_unitary(r, embed(u, sites, r.space));
}

namespace {

CMatrix apply_kraus(const CMatrix& x, const QuditSpace& sp, const std::vector<Matrix2c>& ks, int site) {
  CMatrix out = CMatrix::Zero(x.rows(), x.cols());
  const int s[] = {site};
  for (const auto& k : ks) {
    const CMatrix big = embed(k, s, sp);
    out += big * x * big.adjoint();
  }
  return out;
}

}  // namespace

DensityMatrix apply_decoherence(const DensityMatrix& r, const NoiseModel& m, double duration) {
  r.validate(1e-10, 1e-8);
  return {r.space, decoherence_map(r.rho, r.space, m, duration)};
}

CMatrix decoherence_map(const CMatrix& x, const QuditSpace& sp, const NoiseModel& m, double duration) {
  if (duration < 0) throw std::invalid_argument("apply_decoherence: negative duration");
  if (duration == 0 || m.qubits.empty()) return x;
  m.validate();
  if (static_cast<int>(m.qubits.size()) < sp.sites())
    throw std::invalid_argument("apply_decoherence: model has fewer qubits than the state");
  CMatrix out = x;
  for (int q = 0; q < sp.sites(); ++q) {
    if (sp.dim(q) != 2) throw std::invalid_argument("apply_decoherence: qubit sites only");
    const auto& c = m.qubits[q];
    const double gamma = -std::expm1(-duration / c.t1);
    // Extra dephasing factor on top of the sqrt(1 - gamma) from damping.
    const double lam = std::exp(-duration / c.t2 + duration / (2 * c.t1));
    Matrix2c k0 = Matrix2c::Zero(), k1 = Matrix2c::Zero();
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1.0 - gamma);
    k1(0, 1) = std::sqrt(gamma);
    out = apply_kraus(out, sp, {k0, k1}, q);
    const Matrix2c d0 = std::sqrt(0.5 * (1 + lam)) * Matrix2c::Identity();
    const Matrix2c d1 = std::sqrt(0.5 * (1 - lam)) * pauli_z();
    out = apply_kraus(out, sp, {d0, d1}, q);
  }
  return out;
}

DensityMatrix apply_depolarizing(const DensityMatrix& r, double lambda, std::span<const int> sites) {
  if (!(lambda >= 0 && lambda <= 1)) throw std::invalid_argument("apply_depolarizing: lambda outside [0, 1]");
  if (lambda == 0) return r;
  // Twirl over the Weyl operators of the target sites gives full
  // depolarization: (1/d^2) sum_W W rho W^dag = Tr_sites(rho) (x) I/d.
  std::vector<int> dims;
  for (int s : sites) dims.push_back(r.space.dim(s));
  const QuditSpace local(dims);
  const Eigen::Index d = local.total();
  CMatrix twirled = CMatrix::Zero(r.rho.rows(), r.rho.cols());
  // Generalized Pauli X^a Z^b per site.
  std::vector<CMatrix> weyl{CMatrix::Identity(1, 1)};
  for (int dim : dims) {
    std::vector<CMatrix> next;
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        CMatrix w = CMatrix::Zero(dim, dim);
        for (int k = 0; k < dim; ++k) w((k + a) % dim, k) = std::polar(1.0, kTwoPi * b * k / dim);
        for (const auto& prev : weyl) next.push_back(kron(prev, w));
      }
    weyl = std::move(next);
  }
  for (const auto& w : weyl) {
    const CMatrix big = embed(w, sites, r.space);
    twirled += big * r.rho * big.adjoint();
  }
  twirled /= static_cast<double>(d * d);
  return {r.space, (1 - lambda) * r.rho + lambda * twirled};
}

CMatrix choi_matrix(const Channel& e, const QuditSpace& space) {
  const Eigen::Index d = space.total();
  CMatrix j = CMatrix::Zero(d * d, d * d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) {
      CMatrix unit = CMatrix::Zero(d, d);
      unit(a, b) = 1.0;
      const CMatrix img = e(DensityMatrix{space, unit}).rho;
      j.block(a * d, b * d, d, d) = img;
    }
  return j;
}

double process_fidelity_identity(const CMatrix& choi, int d) {
  // <Phi|J|Phi> / d with |Phi> = sum_i |ii>.
  cplx acc = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) acc += choi(a * d + a, b * d + b);
  return acc.real() / (static_cast<double>(d) * d);
}

double average_fidelity_from_process(double f_pro, int d) { return (d * f_pro + 1.0) / (d + 1.0); }

double coherence_limited_fidelity(const NoiseModel& m, double duration) {
  m.validate();
  if (m.qubits.size() != 2) throw std::invalid_argument("coherence_limited_fidelity: two-qubit model required");
  double f = 1.0;
  for (const auto& q : m.qubits) {
    const double a = std::exp(-duration / q.t1), c = std::exp(-duration / q.t2);
    f *= (1 + a + 2 * c) / 4;
  }
  return average_fidelity_from_process(f, 4);
}

double coherence_limited_fidelity_lindblad(const NoiseModel& m, double duration) {
  m.validate();
  if (m.qubits.size() != 2) throw std::invalid_argument("coherence_limited_fidelity_lindblad: two-qubit model required");
  const QuditSpace sp = QuditSpace::qubits(2);
  std::vector<CMatrix> ls;
  for (int q = 0; q < 2; ++q) {
    const auto& c = m.qubits[q];
    Matrix2c lower = Matrix2c::Zero();
    lower(0, 1) = 1.0;
    const int s[] = {q};
    ls.push_back(std::sqrt(1.0 / c.t1) * embed(lower, s, sp));
    const double rate_phi = 1.0 / c.t2 - 0.5 / c.t1;
    if (rate_phi > 0) ls.push_back(std::sqrt(0.5 * rate_phi) * embed(pauli_z(), s, sp));
  }
  CMatrix ldl = CMatrix::Zero(4, 4);
  for (const auto& l : ls) ldl += l.adjoint() * l;

  auto rhs = [&](double, const Eigen::VectorXd& y) {
    CMatrix rho(4, 4);
    for (int i = 0; i < 16; ++i) rho(i / 4, i % 4) = cplx(y[2 * i], y[2 * i + 1]);
    CMatrix d = -0.5 * (ldl * rho + rho * ldl);
    for (const auto& l : ls) d += l * rho * l.adjoint();
    Eigen::VectorXd dy(32);
    for (int i = 0; i < 16; ++i) {
      dy[2 * i] = d(i / 4, i % 4).real();
      dy[2 * i + 1] = d(i / 4, i % 4).imag();
    }
    return dy;
  };
  Channel evolve_channel = [&](const DensityMatrix& r) {
    Eigen::VectorXd y(32);
    for (int i = 0; i < 16; ++i) {
      y[2 * i] = r.rho(i / 4, i % 4).real();
      y[2 * i + 1] = r.rho(i / 4, i % 4).imag();
    }
    const double stop[] = {duration};
    OdeOptions opt;
    opt.rtol = 1e-12;
    opt.atol = 1e-14;
    integrate_dopri5(rhs, 0.0, y, stop, [&](std::size_t, double, const Eigen::VectorXd& yf) { y = yf; }, opt);
    CMatrix out(4, 4);
    for (int i = 0; i < 16; ++i) out(i / 4, i % 4) = cplx(y[2 * i], y[2 * i + 1]);
    return DensityMatrix{r.space, out};
  };
  return average_fidelity_from_process(process_fidelity_identity(choi_matrix(evolve_channel, sp), 4), 4);
}

}  // namespace xyq
