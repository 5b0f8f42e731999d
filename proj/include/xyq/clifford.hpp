// SPDX-License-Identifier: Apache-2.0
//
// Two-qubit Clifford group as Pauli tableaux: the images of X0, X1, Z0, Z1
// under conjugation, with signs. Elements are identified modulo global
// phase, so the group has 11520 members.

#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "xyq/qcore.hpp"
#include "xyq/rng.hpp"

namespace xyq {

// i^phase X^x Z^z, bit j of x/z for qubit j (qubit 0 is site 0).
struct Pauli2 {
  std::uint8_t x = 0, z = 0;
  std::uint8_t phase = 0;  // mod 4

  bool operator==(const Pauli2&) const = default;
  Pauli2 operator*(const Pauli2& o) const;
  Matrix4c matrix() const;
};

enum class NativeTwoQubit { cz, iswap };

class CliffordElement {
 public:
  CliffordElement();  // identity

  // Images of X0, X1, Z0, Z1.
  const std::array<Pauli2, 4>& images() const { return img_; }
  Pauli2 conjugate(const Pauli2& p) const;

  // this after `first` (apply `first`, then this).
  CliffordElement after(const CliffordElement& first) const;
  CliffordElement inverse() const;

  bool is_identity() const { return *this == CliffordElement(); }
  // Commutation relations of the images are those of X0, X1, Z0, Z1.
  bool is_symplectic() const;
  std::uint32_t key() const;

  bool operator==(const CliffordElement&) const = default;

  // Generators.
  static CliffordElement h(int q);
  static CliffordElement s(int q);
  static CliffordElement cz();
  static CliffordElement iswap();

  static std::optional<CliffordElement> from_unitary(const Matrix4c& u, double tol = 1e-8);

 private:
  std::array<Pauli2, 4> img_;
};

CliffordElement compose(const CliffordElement& first, const CliffordElement& second);
CliffordElement invert(const CliffordElement& a);

// Closure of {H, S on each qubit, CZ} by breadth-first search, in discovery
// order (index 0 is the identity).
const std::vector<CliffordElement>& clifford_group();

CliffordElement sample_clifford(Rng& rng);

// Native circuit over {rz, rx(+-pi/2), cz or iswap}, fewest two-qubit gates
// first, then fewest single-qubit generators. Empty for the identity.
Circuit native_circuit(const CliffordElement& c, NativeTwoQubit native = NativeTwoQubit::cz);
int two_qubit_gate_count(const CliffordElement& c, NativeTwoQubit native = NativeTwoQubit::cz);

}  // namespace xyq
