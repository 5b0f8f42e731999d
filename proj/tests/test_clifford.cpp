// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <map>
#include <set>

#include "xyq/clifford.hpp"

using namespace xyq;

namespace {

// Independent closure on unitaries: make the first nonzero entry real positive
// and round, then breadth-first search from {H, S on each qubit, CZ}.
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

// Pauli-image check against the tableau.
void check_matches(const Matrix4c& u, const CliffordElement& c) {
  const std::array<Pauli2, 4> gens{Pauli2{1, 0, 0}, Pauli2{2, 0, 0}, Pauli2{0, 1, 0}, Pauli2{0, 2, 0}};
  for (int k = 0; k < 4; ++k) CHECK(max_abs(u * gens[k].matrix() * u.adjoint() - c.images()[k].matrix()) < 1e-10);
}

}  // namespace

TEST_CASE("closure of the generators by matrix enumeration has 11520 elements") {
  const std::vector<Matrix4c> gens{kron(hadamard(), Matrix2c::Identity()), kron(Matrix2c::Identity(), hadamard()),
                                   kron(phase_s(), Matrix2c::Identity()), kron(Matrix2c::Identity(), phase_s()),
                                   cz()};
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
  CHECK(seen.size() == 11520);
  CHECK(clifford_group().size() == 11520);
}

TEST_CASE("tableau group") {
  const auto& g = clifford_group();
  CHECK(g[0].is_identity());
  for (const auto& c : g) CHECK(c.is_symplectic());
  Rng rng = make_stream(5, 0);
  for (int k = 0; k < 1000; ++k) {
    const auto a = sample_clifford(rng), b = sample_clifford(rng);
    CHECK(compose(a, invert(a)).is_identity());
    CHECK(compose(invert(a), a).is_identity());
    CHECK(invert(compose(a, b)) == compose(invert(b), invert(a)));
  }
}

TEST_CASE("sampling is close to uniform") {
  Rng rng = make_stream(6, 0);
  std::map<std::uint32_t, int> counts;
  const int n = 230400;  // 20 per element on average
  for (int k = 0; k < n; ++k) counts[sample_clifford(rng).key()]++;
  CHECK(counts.size() > 11500);
  // Chi-square against uniform, 11519 dof: mean 11519, sd ~152.
  double chi2 = 0.0;
  for (const auto& [key, c] : counts) chi2 += (c - 20.0) * (c - 20.0) / 20.0;
  chi2 += (11520.0 - counts.size()) * 20.0;
  CHECK(std::abs(chi2 - 11519.0) < 6 * 152.0);
}

TEST_CASE("native circuits") {
  CHECK(native_circuit(CliffordElement()).ops.empty());
  const auto& g = clifford_group();
  for (NativeTwoQubit native : {NativeTwoQubit::cz, NativeTwoQubit::iswap}) {
    int max_2q = 0;
    for (std::size_t i = 0; i < g.size(); i += 7) {
      const Circuit c = native_circuit(g[i], native);
      for (const auto& op : c.ops) {
        CHECK((op.label == "rz" || op.label == "rx" || op.label == "cz" || op.label == "iswap"));
        if (op.label == "rx") CHECK(std::abs(std::abs(op.params[0]) - kPi / 2) < 1e-15);
      }
      const Matrix4c u = circuit_unitary(c);
      check_matches(u, g[i]);
      const auto back = CliffordElement::from_unitary(u);
      REQUIRE(back.has_value());
      CHECK(*back == g[i]);
      max_2q = std::max(max_2q, two_qubit_gate_count(g[i], native));
    }
    CHECK(max_2q == 3);
  }
}

TEST_CASE("from_unitary") {
  CHECK(CliffordElement::from_unitary(cnot()).has_value());
  CHECK(CliffordElement::from_unitary(iswap()).has_value());
  CHECK_FALSE(CliffordElement::from_unitary(xy_unitary(0.0, 0.7)).has_value());
  check_matches(iswap(), CliffordElement::iswap());
  check_matches(cz(), CliffordElement::cz());
}
