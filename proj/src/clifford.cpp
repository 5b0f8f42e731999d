// SPDX-License-Identifier: Apache-2.0

#include "xyq/clifford.hpp"

#include <bit>
#include <deque>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace xyq {

Pauli2 Pauli2::operator*(const Pauli2& o) const {
  // Z^z X^x' = (-1)^{|z & x'|} X^x' Z^z
  Pauli2 r;
  r.x = x ^ o.x;
  r.z = z ^ o.z;
  r.phase = static_cast<std::uint8_t>((phase + o.phase + 2 * std::popcount(static_cast<unsigned>(z & o.x))) % 4);
  return r;
}

Matrix4c Pauli2::matrix() const {
  auto one = [&](int q) -> Matrix2c {
    Matrix2c m = Matrix2c::Identity();
    if (x >> q & 1) m = pauli_x() * m;
    if (z >> q & 1) m = m * pauli_z();
    return m;
  };
  const cplx ph[] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
  // Qubit 0 is the more significant site.
  return ph[phase] * kron(one(0), one(1));
}

namespace {

Pauli2 px(int q) { return {static_cast<std::uint8_t>(1 << q), 0, 0}; }
Pauli2 pz(int q) { return {0, static_cast<std::uint8_t>(1 << q), 0}; }
// Y = i X Z
Pauli2 py(int q) { return {static_cast<std::uint8_t>(1 << q), static_cast<std::uint8_t>(1 << q), 1}; }

bool commute(const Pauli2& a, const Pauli2& b) {
  return (std::popcount(static_cast<unsigned>((a.x & b.z) ^ (a.z & b.x))) % 2) == 0;
}

}  // namespace

CliffordElement::CliffordElement() : img_{px(0), px(1), pz(0), pz(1)} {}

Pauli2 CliffordElement::conjugate(const Pauli2& p) const {
  Pauli2 r{0, 0, p.phase};
  for (int q = 0; q < 2; ++q)
    if (p.x >> q & 1) r = r * img_[q];
  for (int q = 0; q < 2; ++q)
    if (p.z >> q & 1) r = r * img_[2 + q];
  return r;
}

CliffordElement CliffordElement::after(const CliffordElement& first) const {
  CliffordElement c;
  for (int k = 0; k < 4; ++k) c.img_[k] = conjugate(first.img_[k]);
  return c;
}

CliffordElement CliffordElement::inverse() const {
  // The group is finite: walk powers until the identity comes back.
  CliffordElement prev = CliffordElement(), cur = *this;
  for (int n = 0; n < 1000; ++n) {
    if (cur.is_identity()) return prev;
    prev = cur;
    cur = after(cur);
  }
  throw std::logic_error("CliffordElement::inverse: order exceeds bound");
}

bool CliffordElement::is_symplectic() const {
  const std::array<Pauli2, 4> ref{px(0), px(1), pz(0), pz(1)};
  for (int a = 0; a < 4; ++a) {
    // Images must be Hermitian: i^phase X^x Z^z with phase = |x & z| mod 2.
    if ((img_[a].phase + std::popcount(static_cast<unsigned>(img_[a].x & img_[a].z))) % 2) return false;
    if (img_[a].x == 0 && img_[a].z == 0) return false;
    for (int b = 0; b < 4; ++b)
      if (commute(img_[a], img_[b]) != commute(ref[a], ref[b])) return false;
  }
  return true;
}

std::uint32_t CliffordElement::key() const {
  std::uint32_t k = 0;
  for (const auto& p : img_) k = (k << 6) | (p.x << 4) | (p.z << 2) | p.phase;
  return k;
}

CliffordElement CliffordElement::h(int q) {
  CliffordElement c;
  c.img_[q] = pz(q);
  c.img_[2 + q] = px(q);
  return c;
}

CliffordElement CliffordElement::s(int q) {
  // S X S^dag = Y, S Z S^dag = Z
  CliffordElement c;
  c.img_[q] = py(q);
  return c;
}

CliffordElement CliffordElement::cz() {
  CliffordElement c;
  c.img_[0] = px(0) * pz(1);
  c.img_[1] = pz(0) * px(1);
  return c;
}

CliffordElement CliffordElement::iswap() {
  // Read off the matrix rather than by hand.
  static const CliffordElement c = *from_unitary(xyq::iswap());
  return c;
}

std::optional<CliffordElement> CliffordElement::from_unitary(const Matrix4c& u, double tol) {
  const std::array<Pauli2, 4> gens{px(0), px(1), pz(0), pz(1)};
  CliffordElement c;
  for (int k = 0; k < 4; ++k) {
    const Matrix4c m = u * gens[k].matrix() * u.adjoint();
    bool found = false;
    for (std::uint8_t x = 0; x < 4 && !found; ++x)
      for (std::uint8_t z = 0; z < 4 && !found; ++z)
        for (std::uint8_t ph = 0; ph < 4 && !found; ++ph) {
          const Pauli2 p{x, z, ph};
          if (max_abs(m - p.matrix()) < tol) {
            c.img_[k] = p;
            found = true;
          }
        }
    if (!found) return std::nullopt;
  }
  if (!c.is_symplectic()) return std::nullopt;
  return c;
}

CliffordElement compose(const CliffordElement& first, const CliffordElement& second) { return second.after(first); }
CliffordElement invert(const CliffordElement& a) { return a.inverse(); }

namespace {

struct Generator {
  CliffordElement element;
  int two_qubit;  // cost class
  // Native ops for this generator, application order.
  std::vector<Op> ops;
};

std::vector<Generator> generators(NativeTwoQubit native) {
  const double h = kPi / 2;
  std::vector<Generator> g;
  for (int q = 0; q < 2; ++q) {
    // H = rz(pi/2) rx(pi/2) rz(pi/2) up to phase.
    g.push_back({CliffordElement::h(q), 0, {{"rz", {h}, {q}}, {"rx", {h}, {q}}, {"rz", {h}, {q}}}});
    g.push_back({CliffordElement::s(q), 0, {{"rz", {h}, {q}}}});
  }
  if (native == NativeTwoQubit::cz)
    g.push_back({CliffordElement::cz(), 1, {{"cz", {}, {0, 1}}}});
  else
    g.push_back({CliffordElement::iswap(), 1, {{"iswap", {}, {0, 1}}}});
  return g;
}

struct Table {
  std::unordered_map<std::uint32_t, int> index;
  std::vector<CliffordElement> elements;
  std::vector<int> parent;     // element index reached from
  std::vector<int> via;        // generator index applied last
  std::vector<int> two_qubit;  // two-qubit gates on the optimal word
};

// Dijkstra with cost (two-qubit count, word length) lexicographic.
Table build_table(NativeTwoQubit native) {
  const auto gens = generators(native);
  Table t;
  using Node = std::pair<std::pair<int, int>, int>;
  std::priority_queue<Node, std::vector<Node>, std::greater<>> pq;
  std::vector<std::pair<int, int>> cost;
  auto add = [&](const CliffordElement& e) {
    const auto [it, fresh] = t.index.emplace(e.key(), static_cast<int>(t.elements.size()));
    if (fresh) {
      t.elements.push_back(e);
      t.parent.push_back(-1);
      t.via.push_back(-1);
      t.two_qubit.push_back(0);
      cost.push_back({1 << 30, 1 << 30});
    }
    return it->second;
  };
  const int root = add(CliffordElement());
  cost[root] = {0, 0};
  pq.push({{0, 0}, root});
  while (!pq.empty()) {
    const auto [c, i] = pq.top();
    pq.pop();
    if (c != cost[i]) continue;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const CliffordElement next = gens[g].element.after(t.elements[i]);
      const int j = add(next);
      const std::pair<int, int> nc{c.first + gens[g].two_qubit, c.second + 1};
      if (nc < cost[j]) {
        cost[j] = nc;
        t.parent[j] = i;
        t.via[j] = static_cast<int>(g);
        t.two_qubit[j] = nc.first;
        pq.push({nc, j});
      }
    }
  }
  return t;
}

const Table& table(NativeTwoQubit native) {
  static const Table cz_table = build_table(NativeTwoQubit::cz);
  static const Table iswap_table = build_table(NativeTwoQubit::iswap);
  return native == NativeTwoQubit::cz ? cz_table : iswap_table;
}

std::vector<CliffordElement> bfs_closure() {
  const std::vector<CliffordElement> gens{CliffordElement::h(0), CliffordElement::h(1), CliffordElement::s(0),
                                          CliffordElement::s(1), CliffordElement::cz()};
  std::vector<CliffordElement> out{CliffordElement()};
  std::unordered_map<std::uint32_t, int> seen{{out[0].key(), 0}};
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int i = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      const CliffordElement n = g.after(out[i]);
      if (seen.emplace(n.key(), static_cast<int>(out.size())).second) {
        out.push_back(n);
        queue.push_back(static_cast<int>(out.size()) - 1);
      }
    }
  }
  return out;
}

}  // namespace

const std::vector<CliffordElement>& clifford_group() {
  static const std::vector<CliffordElement> group = bfs_closure();
  return group;
}

CliffordElement sample_clifford(Rng& rng) {
  const auto& g = clifford_group();
  // Rejection sampling on 53-bit uniforms keeps this portable.
  const std::size_t n = g.size();
  std::size_t i;
  do {
    i = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
  } while (i >= n);
  return g[i];
}

Circuit native_circuit(const CliffordElement& c, NativeTwoQubit native) {
  const Table& t = table(native);
  const auto it = t.index.find(c.key());
  if (it == t.index.end()) throw std::invalid_argument("native_circuit: not a Clifford tableau");
  const auto gens = generators(native);
  std::vector<int> word;
  for (int i = it->second; t.parent[i] >= 0; i = t.parent[i]) word.push_back(t.via[i]);
  Circuit circ;
  circ.space = QuditSpace::qubits(2);
  for (auto w = word.rbegin(); w != word.rend(); ++w)
    for (const auto& op : gens[*w].ops) {
      // Merge consecutive rz on the same qubit.
      if (op.label == "rz" && !circ.ops.empty() && circ.ops.back().label == "rz" &&
          circ.ops.back().targets == op.targets) {
        circ.ops.back().params[0] += op.params[0];
        if (std::abs(wrap_angle(circ.ops.back().params[0])) < 1e-15) circ.ops.pop_back();
        continue;
      }
      circ.ops.push_back(op);
    }
  return circ;
}

int two_qubit_gate_count(const CliffordElement& c, NativeTwoQubit native) {
  const Table& t = table(native);
  const auto it = t.index.find(c.key());
  if (it == t.index.end()) throw std::invalid_argument("two_qubit_gate_count: not a Clifford tableau");
  return t.two_qubit[it->second];
}

}  // namespace xyq
