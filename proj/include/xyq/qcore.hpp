// SPDX-License-Identifier: Apache-2.0
//
// Dense complex linear algebra over small qudit spaces: the gate zoo,
// kron embedding, circuit products and phase-insensitive distances.
//
// Conventions used throughout the library:
//   * basis states are indexed in mixed radix with site 0 as the most
//     significant digit (|01> on two qubits is index 1, |10> is index 2);
//   * circuits list gates in application order, so the circuit unitary is
//     U_n ... U_2 U_1;
//   * rz(phi) = diag(e^{-i phi/2}, e^{+i phi/2}).

#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace xyq {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <typename Scalar>
using CMat2 = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
template <typename Scalar>
using CMat4 = Eigen::Matrix<std::complex<Scalar>, 4, 4>;
template <typename Scalar>
using CMatX = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

class QuditSpace {
 public:
  QuditSpace() = default;
  explicit QuditSpace(std::vector<int> dims);

  static QuditSpace qubits(int n) { return QuditSpace(std::vector<int>(n, 2)); }
  static QuditSpace qutrits(int n) { return QuditSpace(std::vector<int>(n, 3)); }

  const std::vector<int>& dims() const { return dims_; }
  int sites() const { return static_cast<int>(dims_.size()); }
  int dim(int site) const { return dims_.at(site); }
  Eigen::Index total() const { return total_; }

  // Mixed-radix digits of a basis index, site 0 first.
  std::vector<int> digits(Eigen::Index index) const;
  Eigen::Index index(std::span<const int> digits) const;

  bool operator==(const QuditSpace&) const = default;

 private:
  std::vector<int> dims_;
  Eigen::Index total_ = 1;
};

struct Unitary {
  QuditSpace space;
  CMatrix mat;

  static Unitary identity(const QuditSpace& space);
  // Throws if mat is not unitary to `tol` in max-abs-element norm.
  static Unitary checked(QuditSpace space, CMatrix mat, double tol = 1e-12);
};

struct GateAngle {
  double theta = 0.0;
  double beta = 0.0;
};

// ---------------------------------------------------------------------------
// Gate constructors. Templated on the real scalar so they can be evaluated in
// extended precision where a test needs it.

template <typename Scalar = double>
CMat4<Scalar> xy_unitary(Scalar beta, Scalar theta) {
  using C = std::complex<Scalar>;
  using std::cos;
  using std::sin;
  const C i(0, 1);
  CMat4<Scalar> u = CMat4<Scalar>::Identity();
  const Scalar c = cos(theta / 2), s = sin(theta / 2);
  u(1, 1) = c;
  u(2, 2) = c;
  u(1, 2) = i * s * std::polar(Scalar(1), beta);
  u(2, 1) = i * s * std::polar(Scalar(1), -beta);
  return u;
}

template <typename Scalar = double>
CMat2<Scalar> rz(Scalar phi) {
  CMat2<Scalar> u = CMat2<Scalar>::Zero();
  u(0, 0) = std::polar(Scalar(1), -phi / 2);
  u(1, 1) = std::polar(Scalar(1), phi / 2);
  return u;
}

template <typename Scalar = double>
CMat2<Scalar> rx(Scalar phi) {
  using C = std::complex<Scalar>;
  using std::cos;
  using std::sin;
  CMat2<Scalar> u;
  u << C(cos(phi / 2)), C(0, -sin(phi / 2)), C(0, -sin(phi / 2)), C(cos(phi / 2));
  return u;
}

// Rotation by phi about the equatorial axis at azimuth beta. As a matrix this
// is rz(beta) rx(phi) rz(-beta): rz(-beta) acts first.
template <typename Scalar = double>
CMat2<Scalar> rx_phased(Scalar beta, Scalar phi) {
  return rz<Scalar>(beta) * rx<Scalar>(phi) * rz<Scalar>(-beta);
}

template <typename Scalar = double>
CMat4<Scalar> cphase(Scalar theta) {
  CMat4<Scalar> u = CMat4<Scalar>::Identity();
  u(3, 3) = std::polar(Scalar(1), theta);
  return u;
}

Matrix2c hadamard();
Matrix2c phase_s();
Matrix2c pauli_x();
Matrix2c pauli_y();
Matrix2c pauli_z();
Matrix4c cz();
Matrix4c cnot();  // control site 0, target site 1
Matrix4c swap_gate();
Matrix4c iswap();

// exp[-i theta/2 (e^{i beta}|11><02| + h.c.)] on two qutrits (9x9).
CMatrix xy02_unitary(double beta, double theta);
// exp[-i theta/2 (e^{i beta}|11><20| + h.c.)] on two qutrits (9x9).
CMatrix xy20_unitary(double beta, double theta);

// CCPHASE on three qubits: e^{i theta} on |111>.
CMatrix ccphase(double theta);

// Lift a single-qubit gate to a d-level site. Z rotations are lifted as
// number-operator rotations, every other gate acts on {|0>,|1>} only.
CMatrix lift_single(const Matrix2c& gate, int d);
CMatrix lift_rz(double phi, int d);

// ---------------------------------------------------------------------------

// a (x) b, with a on the more significant site.
CMatrix kron(const CMatrix& a, const CMatrix& b);

// Kron-embed `gate` acting on `sites` (in that order) into `space`.
CMatrix embed(const CMatrix& gate, std::span<const int> sites, const QuditSpace& space);
inline CMatrix embed(const CMatrix& gate, std::initializer_list<int> sites,
                     const QuditSpace& space) {
  return embed(gate, std::span<const int>(sites.begin(), sites.size()), space);
}

struct Op {
  std::string label;
  std::vector<double> params;
  std::vector<int> targets;
};

struct Circuit {
  QuditSpace space;
  std::vector<Op> ops;

  Circuit& add(std::string label, std::vector<int> targets, std::vector<double> params = {}) {
    ops.push_back({std::move(label), std::move(params), std::move(targets)});
    return *this;
  }
};

// Local matrix for a gate label. `dims` are the dims of the target sites.
// Throws std::invalid_argument for unknown labels or wrong arity.
CMatrix gate_matrix(const Op& op, std::span<const int> dims);
bool is_known_gate(const std::string& label);
int gate_arity(const std::string& label);

CMatrix circuit_unitary(const Circuit& c);

// sqrt(1 - |tr(U^dag V)|/d) for unitaries, evaluated as a phase-aligned
// Frobenius distance. Zero iff U and V agree up to global phase.
double distance_global_phase(const CMatrix& u, const CMatrix& v);

double max_abs(const CMatrix& m);
double unitarity_error(const CMatrix& u);

// Diagonal number operator for a space (sum of per-site excitation).
CMatrix excitation_number(const QuditSpace& space);

// Restrict an operator on `space` to the qubit subspace (every digit < 2).
CMatrix restrict_to_qubits(const CMatrix& u, const QuditSpace& space);
// Probability mass mapped outside the qubit subspace, maximized over qubit
// basis inputs.
double leakage(const CMatrix& u, const QuditSpace& space);

// Reduce an angle into (-pi, pi].
double wrap_angle(double a);

}  // namespace xyq
