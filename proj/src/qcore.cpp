// SPDX-License-Identifier: Apache-2.0

#include "xyq/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace xyq {

QuditSpace::QuditSpace(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("QuditSpace: need at least one site");
  total_ = 1;
  for (int d : dims_) {
    if (d < 2) throw std::invalid_argument("QuditSpace: every dim must be >= 2");
    total_ *= d;
  }
}

std::vector<int> QuditSpace::digits(Eigen::Index index) const {
  std::vector<int> out(dims_.size());
  for (int s = sites() - 1; s >= 0; --s) {
    out[s] = static_cast<int>(index % dims_[s]);
    index /= dims_[s];
  }
  return out;
}

Eigen::Index QuditSpace::index(std::span<const int> digits) const {
  Eigen::Index idx = 0;
  for (int s = 0; s < sites(); ++s) idx = idx * dims_[s] + digits[s];
  return idx;
}

Unitary Unitary::identity(const QuditSpace& space) {
  return {space, CMatrix::Identity(space.total(), space.total())};
}

Unitary Unitary::checked(QuditSpace space, CMatrix mat, double tol) {
  if (mat.rows() != space.total() || mat.cols() != space.total())
    throw std::invalid_argument("Unitary: matrix size does not match space");
  if (unitarity_error(mat) > tol) throw std::domain_error("Unitary: matrix is not unitary");
  return {std::move(space), std::move(mat)};
}

Matrix2c hadamard() {
  Matrix2c h;
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

Matrix2c phase_s() {
  Matrix2c s = Matrix2c::Identity();
  s(1, 1) = cplx(0, 1);
  return s;
}

Matrix2c pauli_x() {
  Matrix2c m;
  m << 0, 1, 1, 0;
  return m;
}

Matrix2c pauli_y() {
  Matrix2c m;
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

Matrix2c pauli_z() {
  Matrix2c m;
  m << 1, 0, 0, -1;
  return m;
}

Matrix4c cz() { return cphase(kPi).eval(); }

Matrix4c cnot() {
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
  return m;
}

Matrix4c swap_gate() {
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
  return m;
}

Matrix4c iswap() { return xy_unitary(0.0, kPi); }

namespace {

// exp(-i theta/2 (e^{i beta}|a><b| + h.c.)) on the 9-dim two-qutrit space.
CMatrix two_level_exchange(Eigen::Index a, Eigen::Index b, double beta, double theta) {
  CMatrix u = CMatrix::Identity(9, 9);
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  const cplx mi(0, -1);
  u(a, a) = c;
  u(b, b) = c;
  u(a, b) = mi * s * std::polar(1.0, beta);
  u(b, a) = mi * s * std::polar(1.0, -beta);
  return u;
}

}  // namespace

CMatrix xy02_unitary(double beta, double theta) { return two_level_exchange(4, 2, beta, theta); }
CMatrix xy20_unitary(double beta, double theta) { return two_level_exchange(4, 6, beta, theta); }

CMatrix ccphase(double theta) {
  CMatrix u = CMatrix::Identity(8, 8);
  u(7, 7) = std::polar(1.0, theta);
  return u;
}

CMatrix lift_single(const Matrix2c& gate, int d) {
  CMatrix u = CMatrix::Identity(d, d);
  u.topLeftCorner(2, 2) = gate;
  return u;
}

CMatrix lift_rz(double phi, int d) {
  CMatrix u = CMatrix::Zero(d, d);
  for (int n = 0; n < d; ++n) u(n, n) = std::polar(1.0, phi * (n - 0.5));
  return u;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix embed(const CMatrix& gate, std::span<const int> sites, const QuditSpace& space) {
  const int n = space.sites();
  Eigen::Index gdim = 1;
  std::vector<int> seen(n, 0);
  for (int s : sites) {
    if (s < 0 || s >= n) throw std::out_of_range("embed: site out of range");
    if (seen[s]++) throw std::invalid_argument("embed: repeated site");
    gdim *= space.dim(s);
  }
  if (gate.rows() != gdim || gate.cols() != gdim)
    throw std::invalid_argument("embed: gate dims do not match selected sites");

  const Eigen::Index total = space.total();
  CMatrix out = CMatrix::Zero(total, total);
  const int k = static_cast<int>(sites.size());
  std::vector<int> sub_dims(k);
  for (int j = 0; j < k; ++j) sub_dims[j] = space.dim(sites[j]);

  for (Eigen::Index col = 0; col < total; ++col) {
    std::vector<int> dig = space.digits(col);
    Eigen::Index gcol = 0;
    for (int j = 0; j < k; ++j) gcol = gcol * sub_dims[j] + dig[sites[j]];
    for (Eigen::Index grow = 0; grow < gdim; ++grow) {
      const cplx v = gate(grow, gcol);
      if (v == cplx(0)) continue;
      Eigen::Index r = grow;
      for (int j = k - 1; j >= 0; --j) {
        dig[sites[j]] = static_cast<int>(r % sub_dims[j]);
        r /= sub_dims[j];
      }
      out(space.index(dig), col) += v;
    }
  }
  return out;
}

namespace {

struct GateSpec {
  int arity;
  int nparams;
};

const std::map<std::string, GateSpec>& gate_table() {
  static const std::map<std::string, GateSpec> table = {
      {"id", {1, 0}},      {"h", {1, 0}},       {"s", {1, 0}},     {"sdg", {1, 0}},
      {"x", {1, 0}},       {"y", {1, 0}},       {"z", {1, 0}},     {"rz", {1, 1}},
      {"rx", {1, 1}},      {"ry", {1, 1}},      {"rx_phased", {1, 2}}, {"cz", {2, 0}},
      {"cnot", {2, 0}},    {"swap", {2, 0}},    {"iswap", {2, 0}}, {"cphase", {2, 1}},
      {"xy", {2, 2}},      {"xy02", {2, 2}},    {"xy20", {2, 2}},  {"ccphase", {3, 1}},
  };
  return table;
}

Matrix2c ry(double phi) {
  Matrix2c m;
  m << std::cos(phi / 2), -std::sin(phi / 2), std::sin(phi / 2), std::cos(phi / 2);
  return m;
}

}  // namespace

bool is_known_gate(const std::string& label) { return gate_table().count(label) > 0; }

int gate_arity(const std::string& label) {
  auto it = gate_table().find(label);
  if (it == gate_table().end()) throw std::invalid_argument("unknown gate label: " + label);
  return it->second.arity;
}

CMatrix gate_matrix(const Op& op, std::span<const int> dims) {
  auto it = gate_table().find(op.label);
  if (it == gate_table().end()) throw std::invalid_argument("unknown gate label: " + op.label);
  const GateSpec spec = it->second;
  if (static_cast<int>(op.targets.size()) != spec.arity || static_cast<int>(dims.size()) != spec.arity)
    throw std::invalid_argument("gate " + op.label + ": wrong number of targets");
  if (static_cast<int>(op.params.size()) != spec.nparams)
    throw std::invalid_argument("gate " + op.label + ": wrong number of parameters");
  const auto& p = op.params;
  const std::string& l = op.label;

  if (spec.arity == 1) {
    const int d = dims[0];
    if (l == "rz") return lift_rz(p[0], d);
    Matrix2c g;
    if (l == "id") g = Matrix2c::Identity();
    else if (l == "h") g = hadamard();
    else if (l == "s") g = phase_s();
    else if (l == "sdg") g = phase_s().adjoint();
    else if (l == "x") g = pauli_x();
    else if (l == "y") g = pauli_y();
    else if (l == "z") g = pauli_z();
    else if (l == "rx") g = rx(p[0]);
    else if (l == "ry") g = ry(p[0]);
    else g = rx_phased(p[0], p[1]);
    return lift_single(g, d);
  }

  if (l == "xy02" || l == "xy20") {
    if (dims[0] != 3 || dims[1] != 3) throw std::invalid_argument(l + " needs two qutrit sites");
    return l == "xy02" ? xy02_unitary(p[0], p[1]) : xy20_unitary(p[0], p[1]);
  }

  if (l == "ccphase") {
    for (int d : dims)
      if (d != 2) throw std::invalid_argument("ccphase needs qubit sites");
    return ccphase(p[0]);
  }

  Matrix4c g;
  if (l == "cz") g = cz();
  else if (l == "cnot") g = cnot();
  else if (l == "swap") g = swap_gate();
  else if (l == "iswap") g = iswap();
  else if (l == "cphase") g = cphase(p[0]);
  else g = xy_unitary(p[0], p[1]);

  if (dims[0] == 2 && dims[1] == 2) return g;
  // Two-qubit gates on qutrit sites act on the qubit block, identity elsewhere.
  const int d0 = dims[0], d1 = dims[1];
  CMatrix out = CMatrix::Identity(d0 * d1, d0 * d1);
  auto idx = [d1](int a, int b) { return a * d1 + b; };
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int e = 0; e < 2; ++e) out(idx(a, b), idx(c, e)) = g(2 * a + b, 2 * c + e);
  return out;
}

CMatrix circuit_unitary(const Circuit& c) {
  CMatrix u = CMatrix::Identity(c.space.total(), c.space.total());
  for (const Op& op : c.ops) {
    std::vector<int> dims;
    for (int t : op.targets) {
      if (t < 0 || t >= c.space.sites()) throw std::out_of_range("circuit: target out of range");
      dims.push_back(c.space.dim(t));
    }
    u = embed(gate_matrix(op, dims), op.targets, c.space) * u;
  }
  return u;
}

double distance_global_phase(const CMatrix& u, const CMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw std::invalid_argument("distance_global_phase: dimension mismatch");
  // For unitaries 1 - |tr(U^dag V)|/d = |V - e^{i phi} U|_F^2 / 2d at the
  // optimal phase. The norm form keeps full precision near zero, where the
  // trace form loses half the digits to the square root.
  const double d = static_cast<double>(u.rows());
  const cplx t = (u.adjoint() * v).trace();
  const cplx phase = std::abs(t) > 0 ? t / std::abs(t) : cplx(1.0);
  return (v - phase * u).norm() / std::sqrt(2.0 * d);
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double unitarity_error(const CMatrix& u) {
  return max_abs(u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols()));
}

CMatrix excitation_number(const QuditSpace& space) {
  CMatrix n = CMatrix::Zero(space.total(), space.total());
  for (Eigen::Index i = 0; i < space.total(); ++i) {
    int tot = 0;
    for (int d : space.digits(i)) tot += d;
    n(i, i) = tot;
  }
  return n;
}

namespace {

std::vector<Eigen::Index> qubit_indices(const QuditSpace& space) {
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; i < space.total(); ++i) {
    const auto dig = space.digits(i);
    if (std::all_of(dig.begin(), dig.end(), [](int x) { return x < 2; })) out.push_back(i);
  }
  return out;
}

}  // namespace

CMatrix restrict_to_qubits(const CMatrix& u, const QuditSpace& space) {
  const auto idx = qubit_indices(space);
  const auto k = static_cast<Eigen::Index>(idx.size());
  CMatrix out(k, k);
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index c = 0; c < k; ++c) out(r, c) = u(idx[r], idx[c]);
  return out;
}

double leakage(const CMatrix& u, const QuditSpace& space) {
  const auto idx = qubit_indices(space);
  double worst = 0.0;
  for (Eigen::Index c : idx) {
    double inside = 0.0;
    for (Eigen::Index r : idx) inside += std::norm(u(r, c));
    worst = std::max(worst, 1.0 - inside);
  }
  return std::max(0.0, worst);
}

double wrap_angle(double a) {
  double r = std::remainder(a, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

}  // namespace xyq
