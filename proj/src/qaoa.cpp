// SPDX-License-Identifier: Apache-2.0

#include "xyq/qaoa.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

#include "xyq/rng.hpp"

namespace xyq {

WeightedGraph::WeightedGraph(int n, std::vector<Edge> es) : n_vertices(n), edges(std::move(es)) {
  if (n < 1) throw std::invalid_argument("WeightedGraph: need at least one vertex");
  std::set<std::pair<int, int>> seen;
  for (auto& e : edges) {
    if (e.u == e.v) throw std::invalid_argument("WeightedGraph: self-loop");
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u < 0 || e.v >= n) throw std::invalid_argument("WeightedGraph: vertex out of range");
    if (!std::isfinite(e.w)) throw std::invalid_argument("WeightedGraph: non-finite weight");
    if (!seen.insert({e.u, e.v}).second) throw std::invalid_argument("WeightedGraph: duplicate edge");
  }
}

double WeightedGraph::total_weight() const {
  double s = 0;
  for (const auto& e : edges) s += e.w;
  return s;
}

double WeightedGraph::cut_value(std::uint64_t bits) const {
  double s = 0;
  for (const auto& e : edges)
    if (((bits >> e.u) ^ (bits >> e.v)) & 1) s += e.w;
  return s;
}

WeightedGraph WeightedGraph::ring(int n, double w) {
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) es.push_back({i, (i + 1) % n, w});
  return WeightedGraph(n, es);
}

WeightedGraph WeightedGraph::complete(int n, double w) {
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.push_back({i, j, w});
  return WeightedGraph(n, es);
}

WeightedGraph WeightedGraph::with_random_weights(std::uint64_t seed) const {
  Rng rng = make_stream(seed, 0);
  WeightedGraph g = *this;
  for (auto& e : g.edges) e.w = uniform01(rng);
  return g;
}

WeightedGraph WeightedGraph::named(const std::string& name, std::uint64_t seed) {
  std::string base = name;
  bool random = false;
  if (const auto pos = name.find("-random"); pos != std::string::npos && pos + 7 == name.size()) {
    base = name.substr(0, pos);
    random = true;
  }
  std::optional<WeightedGraph> g;
  if (base == "ring4") g = ring(4);
  else if (base == "k4") g = complete(4);
  else throw std::invalid_argument("unknown graph '" + name + "' (ring4, k4, ring4-random, k4-random)");
  return random ? g->with_random_weights(seed) : *g;
}

DeviceTopology DeviceTopology::line(int n) {
  DeviceTopology t;
  t.n_qubits = n;
  for (int i = 0; i + 1 < n; ++i) t.coupled.push_back({i, i + 1});
  return t;
}

bool DeviceTopology::adjacent(int a, int b) const {
  return std::any_of(coupled.begin(), coupled.end(), [&](const auto& p) {
    return (p.first == a && p.second == b) || (p.first == b && p.second == a);
  });
}

bool DeviceTopology::is_line() const {
  if (static_cast<int>(coupled.size()) != n_qubits - 1) return false;
  for (int i = 0; i + 1 < n_qubits; ++i)
    if (!adjacent(i, i + 1)) return false;
  return true;
}

bool DeviceTopology::connected() const {
  if (n_qubits < 1) return false;
  std::vector<int> comp(n_qubits);
  std::iota(comp.begin(), comp.end(), 0);
  auto find = [&](int x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (const auto& [a, b] : coupled) {
    if (a < 0 || b < 0 || a >= n_qubits || b >= n_qubits) return false;
    comp[find(a)] = find(b);
  }
  for (int i = 1; i < n_qubits; ++i)
    if (find(i) != find(0)) return false;
  return true;
}

std::string to_string(GateSet g) { return g == GateSet::cz_only ? "cz" : "cz+xy"; }

GateSet gateset_from_string(const std::string& s) {
  if (s == "cz" || s == "cz_only") return GateSet::cz_only;
  if (s == "cz+xy" || s == "cz_and_xy" || s == "xy") return GateSet::cz_and_xy;
  throw std::invalid_argument("unknown gate set '" + s + "' (cz, cz+xy)");
}

Circuit build_qaoa_circuit(const WeightedGraph& g, const QAOAAngles& a, int p) {
  if (p != 1) throw std::invalid_argument("build_qaoa_circuit: only p = 1 is supported");
  Circuit c{QuditSpace::qubits(g.n_vertices), {}};
  for (int q = 0; q < g.n_vertices; ++q) c.add("h", {q});
  for (const auto& e : g.edges) {
    c.add("cnot", {e.u, e.v});
    c.add("rz", {e.v}, {a.gamma * e.w});
    c.add("cnot", {e.u, e.v});
  }
  for (int q = 0; q < g.n_vertices; ++q) c.add("rx", {q}, {2 * a.beta_mix});
  return c;
}

namespace {

struct Gadget {
  int u, v;  // logical, u < v
  double phi;
};

// One routing step on physical pair (i, i+1).
struct Step {
  enum Kind { gadget, swap, merged } kind;
  int i;
  int gadget_index = -1;
};

class Layout {
 public:
  explicit Layout(int n) : pos_(n), at_(n) {
    std::iota(pos_.begin(), pos_.end(), 0);
    std::iota(at_.begin(), at_.end(), 0);
  }
  int pos(int logical) const { return pos_[logical]; }
  int at(int physical) const { return at_[physical]; }
  void swap_phys(int i) {
    std::swap(at_[i], at_[i + 1]);
    pos_[at_[i]] = i;
    pos_[at_[i + 1]] = i + 1;
  }
  const std::vector<int>& positions() const { return pos_; }

 private:
  std::vector<int> pos_, at_;
};

// Steps for one run of commuting gadgets; `layout` is advanced.
std::vector<Step> plan_greedy(const std::vector<Gadget>& run, Layout& layout) {
  std::vector<Step> steps;
  std::vector<bool> done(run.size(), false);
  auto adjacent_now = [&](const Gadget& g) { return std::abs(layout.pos(g.u) - layout.pos(g.v)) == 1; };
  for (;;) {
    for (std::size_t k = 0; k < run.size(); ++k)
      if (!done[k] && adjacent_now(run[k])) {
        steps.push_back({Step::gadget, std::min(layout.pos(run[k].u), layout.pos(run[k].v)), static_cast<int>(k)});
        done[k] = true;
      }
    const auto it = std::find(done.begin(), done.end(), false);
    if (it == done.end()) break;
    const Gadget& g = run[static_cast<std::size_t>(it - done.begin())];
    // Move the ends toward each other, left end first.
    for (bool left = true; !adjacent_now(g); left = !left) {
      const int a = std::min(layout.pos(g.u), layout.pos(g.v));
      const int b = std::max(layout.pos(g.u), layout.pos(g.v));
      const int i = left ? a : b - 1;
      steps.push_back({Step::swap, i});
      layout.swap_phys(i);
    }
  }
  return steps;
}

std::vector<Step> plan_network(const std::vector<Gadget>& run, Layout& layout, int n_phys) {
  std::vector<Step> steps;
  std::vector<bool> done(run.size(), false);
  auto pending = [&] { return std::count(done.begin(), done.end(), false); };
  for (int layer = 0; pending() > 0; ++layer) {
    if (layer > n_phys) throw std::logic_error("plan_network: network did not cover every edge");
    std::vector<int> pairs;
    for (int i = layer % 2; i + 1 < n_phys; i += 2) pairs.push_back(i);
    for (int i : pairs) {
      const int a = std::min(layout.at(i), layout.at(i + 1)), b = std::max(layout.at(i), layout.at(i + 1));
      for (std::size_t k = 0; k < run.size(); ++k)
        if (!done[k] && run[k].u == a && run[k].v == b) {
          steps.push_back({Step::gadget, i, static_cast<int>(k)});
          done[k] = true;
        }
    }
    if (pending() == 0) break;
    for (int i : pairs) {
      steps.push_back({Step::swap, i});
      layout.swap_phys(i);
    }
  }
  return steps;
}

// Fold each swap into a gadget on the same logical pair. Gadgets are diagonal
// and commute, so one may run at any point where its pair is adjacent.
std::vector<Step> merge_swaps(std::vector<Step> steps, const std::vector<Gadget>& run, Layout start) {
  std::vector<std::pair<int, int>> swap_pair(steps.size(), {-1, -1});
  for (std::size_t s = 0; s < steps.size(); ++s) {
    const int i = steps[s].i;
    const int a = std::min(start.at(i), start.at(i + 1)), b = std::max(start.at(i), start.at(i + 1));
    swap_pair[s] = {a, b};
    if (steps[s].kind == Step::swap) start.swap_phys(i);
  }
  std::vector<bool> absorbed(run.size(), false);
  for (std::size_t s = 0; s < steps.size(); ++s) {
    if (steps[s].kind != Step::swap) continue;
    for (std::size_t t = 0; t < steps.size(); ++t) {
      if (steps[t].kind != Step::gadget || absorbed[steps[t].gadget_index]) continue;
      const Gadget& g = run[steps[t].gadget_index];
      if (std::pair{g.u, g.v} != swap_pair[s]) continue;
      steps[s].kind = Step::merged;
      steps[s].gadget_index = steps[t].gadget_index;
      absorbed[steps[t].gadget_index] = true;
      break;
    }
  }
  std::vector<Step> out;
  for (const auto& st : steps)
    if (!(st.kind == Step::gadget && absorbed[st.gadget_index])) out.push_back(st);
  return out;
}

void emit_cnot(Circuit& c, int ctl, int tgt) {
  c.add("h", {tgt});
  c.add("cz", {ctl, tgt});
  c.add("h", {tgt});
}

void emit_step(Circuit& c, const Step& st, double phi, GateSet gs) {
  const int p = st.i, q = st.i + 1;
  switch (st.kind) {
    case Step::gadget:
      emit_cnot(c, p, q);
      c.add("rz", {q}, {phi});
      emit_cnot(c, p, q);
      break;
    case Step::swap:
      if (gs == GateSet::cz_only) {
        emit_cnot(c, p, q);
        emit_cnot(c, q, p);
        emit_cnot(c, p, q);
      } else {
        // SWAP = iSWAP (S^dag x S^dag) CZ
        c.add("cz", {p, q});
        c.add("sdg", {p});
        c.add("sdg", {q});
        c.add("xy", {p, q}, {0.0, kPi});
      }
      break;
    case Step::merged:
      if (gs == GateSet::cz_only) {
        // SWAP CNOT rz CNOT = CNOT(p,q) CNOT(q,p) rz CNOT(p,q)
        emit_cnot(c, p, q);
        c.add("rz", {q}, {phi});
        emit_cnot(c, q, p);
        emit_cnot(c, p, q);
      } else {
        // SWAP CZ = iSWAP (S^dag x S^dag) turns the gadget's second CNOT and
        // the SWAP into one XY(pi).
        emit_cnot(c, p, q);
        c.add("rz", {q}, {phi});
        c.add("h", {q});
        c.add("sdg", {p});
        c.add("sdg", {q});
        c.add("xy", {p, q}, {0.0, kPi});
        c.add("h", {p});
      }
      break;
  }
}

// Cancels h-h pairs that meet on a qubit with nothing in between on that qubit.
void cancel_hadamards(Circuit& c) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k < c.ops.size() && !changed; ++k) {
      if (c.ops[k].label != "h") continue;
      const int q = c.ops[k].targets[0];
      for (std::size_t j = k + 1; j < c.ops.size(); ++j) {
        const auto& t = c.ops[j].targets;
        if (std::find(t.begin(), t.end(), q) == t.end()) continue;
        if (c.ops[j].label == "h") {
          c.ops.erase(c.ops.begin() + static_cast<std::ptrdiff_t>(j));
          c.ops.erase(c.ops.begin() + static_cast<std::ptrdiff_t>(k));
          changed = true;
        }
        break;
      }
    }
  }
}

bool is_complete(const std::vector<Gadget>& run, int n) {
  std::set<std::pair<int, int>> pairs;
  for (const auto& g : run) pairs.insert({g.u, g.v});
  return static_cast<int>(pairs.size()) == n * (n - 1) / 2;
}

}  // namespace

CompiledCircuit route(const Circuit& logical, const DeviceTopology& topo, GateSet gs, RouteStrategy strategy) {
  if (!topo.connected()) throw std::invalid_argument("route: topology is disconnected, circuit is unroutable");
  if (!topo.is_line()) throw std::invalid_argument("route: only line topologies are supported");
  const int n_log = logical.space.sites();
  const int n = topo.n_qubits;
  for (int d : logical.space.dims())
    if (d != 2) throw std::invalid_argument("route: qubit circuits only");
  if (n_log > n) throw std::invalid_argument("route: circuit has more qubits than the device");

  CompiledCircuit out;
  out.circuit.space = QuditSpace::qubits(n);
  Layout layout(n);
  std::vector<Gadget> run;

  auto flush = [&] {
    if (run.empty()) return;
    const Layout start = layout;
    const bool network = strategy == RouteStrategy::swap_network ||
                         (strategy == RouteStrategy::automatic && is_complete(run, n_log));
    auto steps = network ? plan_network(run, layout, n) : plan_greedy(run, layout);
    steps = merge_swaps(std::move(steps), run, start);
    for (const auto& st : steps) emit_step(out.circuit, st, st.gadget_index >= 0 ? run[st.gadget_index].phi : 0.0, gs);
    run.clear();
  };

  const auto& ops = logical.ops;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const Op& op = ops[k];
    if (op.targets.size() == 1) {
      flush();
      out.circuit.ops.push_back({op.label, op.params, {layout.pos(op.targets[0])}});
      continue;
    }
    // cnot(u,v) rz_v cnot(u,v) is a ZZ phase gadget.
    if (op.label == "cnot" && k + 2 < ops.size() && ops[k + 1].label == "rz" &&
        ops[k + 1].targets[0] == op.targets[1] && ops[k + 2].label == "cnot" && ops[k + 2].targets == op.targets) {
      run.push_back({std::min(op.targets[0], op.targets[1]), std::max(op.targets[0], op.targets[1]),
                     ops[k + 1].params[0]});
      k += 2;
      continue;
    }
    flush();
    const int a = layout.pos(op.targets.at(0)), b = layout.pos(op.targets.at(1));
    if (std::abs(a - b) != 1 || (op.label != "cnot" && op.label != "cz"))
      throw std::invalid_argument("route: unsupported two-qubit op '" + op.label + "' outside a phase gadget");
    if (op.label == "cnot") emit_cnot(out.circuit, a, b);
    else out.circuit.add("cz", {a, b});
  }
  flush();
  cancel_hadamards(out.circuit);

  out.final_permutation = layout.positions();
  for (const auto& op : out.circuit.ops) {
    if (op.label == "cz") ++out.counts["CZ"];
    else if (op.label == "xy") ++out.counts["XY"];
    else ++out.single_qubit_gates;
  }
  return out;
}

CompiledCircuit compile_qaoa(const WeightedGraph& g, const QAOAAngles& a, const DeviceTopology& topo, GateSet gs,
                             RouteStrategy strategy) {
  return route(build_qaoa_circuit(g, a), topo, gs, strategy);
}

namespace {

// Permutation matrix sending site q's digit to site perm[q].
CMatrix permutation_matrix(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  const Eigen::Index d = Eigen::Index{1} << n;
  CMatrix p = CMatrix::Zero(d, d);
  for (Eigen::Index x = 0; x < d; ++x) {
    Eigen::Index y = 0;
    for (int q = 0; q < n; ++q)
      if ((x >> (n - 1 - q)) & 1) y |= Eigen::Index{1} << (n - 1 - perm[q]);
    p(y, x) = 1.0;
  }
  return p;
}

// Bits of a site-0-most-significant index, as vertex bitmask (bit q = site q).
std::uint64_t vertex_bits(Eigen::Index index, int n) {
  std::uint64_t b = 0;
  for (int q = 0; q < n; ++q)
    if ((index >> (n - 1 - q)) & 1) b |= std::uint64_t{1} << q;
  return b;
}

void apply_1q(CVector& psi, int n, int q, const Matrix2c& u) {
  const Eigen::Index stride = Eigen::Index{1} << (n - 1 - q);
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (i & stride) continue;
    const cplx a = psi[i], b = psi[i + stride];
    psi[i] = u(0, 0) * a + u(0, 1) * b;
    psi[i + stride] = u(1, 0) * a + u(1, 1) * b;
  }
}

void apply_2q(CVector& psi, int n, int q0, int q1, const Matrix4c& u) {
  const Eigen::Index s0 = Eigen::Index{1} << (n - 1 - q0), s1 = Eigen::Index{1} << (n - 1 - q1);
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if ((i & s0) || (i & s1)) continue;
    const Eigen::Index idx[4] = {i, i + s1, i + s0, i + s0 + s1};
    cplx v[4];
    for (int k = 0; k < 4; ++k) v[k] = psi[idx[k]];
    for (int r = 0; r < 4; ++r) {
      cplx acc = 0;
      for (int k = 0; k < 4; ++k) acc += u(r, k) * v[k];
      psi[idx[r]] = acc;
    }
  }
}

double expectation_from_probs(const WeightedGraph& g, const Eigen::VectorXd& probs, int n_sites,
                              const std::vector<int>& perm) {
  double s = 0;
  for (Eigen::Index x = 0; x < probs.size(); ++x) {
    if (probs[x] == 0) continue;
    // Physical bit at site perm[q] belongs to logical vertex q.
    const std::uint64_t phys = vertex_bits(x, n_sites);
    std::uint64_t bits = 0;
    for (int q = 0; q < g.n_vertices; ++q)
      if ((phys >> perm[q]) & 1) bits |= std::uint64_t{1} << q;
    s += probs[x] * g.cut_value(bits);
  }
  return s;
}

double sample_mean(const WeightedGraph& g, const Eigen::VectorXd& probs, int n_sites, const std::vector<int>& perm,
                   int shots, Rng& rng) {
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(probs.size());
  for (int s = 0; s < shots; ++s) {
    double r = uniform01(rng), acc = 0;
    Eigen::Index k = 0;
    for (; k + 1 < probs.size(); ++k) {
      acc += probs[k];
      if (r < acc) break;
    }
    counts[k] += 1.0;
  }
  return expectation_from_probs(g, counts / shots, n_sites, perm);
}

}  // namespace

double verify_compiled(const CompiledCircuit& c, const WeightedGraph& g, const QAOAAngles& a) {
  const int n = c.circuit.space.sites();
  CMatrix logical = circuit_unitary(build_qaoa_circuit(g, a));
  if (n > g.n_vertices) {
    const Eigen::Index extra = Eigen::Index{1} << (n - g.n_vertices);
    logical = kron(logical, CMatrix::Identity(extra, extra));
  }
  const CMatrix p = permutation_matrix(c.final_permutation);
  return distance_global_phase(p.adjoint() * circuit_unitary(c.circuit), logical);
}

CVector qaoa_state(const WeightedGraph& g, const QAOAAngles& a) {
  const int n = g.n_vertices;
  if (n > 20) throw std::invalid_argument("qaoa_state: too many vertices for a statevector");
  CVector psi = CVector::Zero(Eigen::Index{1} << n);
  psi[0] = 1.0;
  for (const auto& op : build_qaoa_circuit(g, a).ops) {
    const std::vector<int> dims(op.targets.size(), 2);
    const CMatrix u = gate_matrix(op, dims);
    if (op.targets.size() == 1) apply_1q(psi, n, op.targets[0], u);
    else apply_2q(psi, n, op.targets[0], op.targets[1], u);
  }
  return psi;
}

double expected_cut(const WeightedGraph& g, const QAOAAngles& a) {
  const CVector psi = qaoa_state(g, a);
  std::vector<int> id(g.n_vertices);
  std::iota(id.begin(), id.end(), 0);
  return expectation_from_probs(g, psi.cwiseAbs2(), g.n_vertices, id);
}

namespace {

// Measurement distribution (physical basis) of `c` run as a density matrix.
Eigen::VectorXd noisy_probs(const CompiledCircuit& c, const NoiseModel& model) {
  const QuditSpace& sp = c.circuit.space;
  DensityMatrix r = DensityMatrix::basis(sp, 0);
  for (const auto& op : c.circuit.ops) {
    const std::vector<int> dims(op.targets.size(), 2);
    r = apply_local(r, gate_matrix(op, dims), op.targets);
    if (const double t = model.duration_of(op.label); t > 0) r.rho = decoherence_map(r.rho, sp, model, t);
    if (const double lam = model.depolarizing_of(op.label); lam > 0) r = apply_depolarizing(r, lam, op.targets);
  }
  return r.rho.diagonal().real().cwiseMax(0.0);
}

}  // namespace

double expected_cut_noisy(const CompiledCircuit& c, const WeightedGraph& g, const NoiseModel& model) {
  return expectation_from_probs(g, noisy_probs(c, model), c.circuit.space.sites(), c.final_permutation);
}

Eigen::MatrixXd landscape(const WeightedGraph& g, const std::vector<double>& gamma_grid,
                          const std::vector<double>& beta_grid, const LandscapeOptions& opt) {
  if (gamma_grid.empty() || beta_grid.empty()) throw std::invalid_argument("landscape: empty grid");
  if (opt.shots < 0) throw std::invalid_argument("landscape: negative shot count");
  if (opt.noise) {
    opt.noise->validate();
    if (!opt.noise->qubits.empty() && static_cast<int>(opt.noise->qubits.size()) < g.n_vertices)
      throw std::invalid_argument("landscape: noise model needs one coherence entry per qubit");
  }
  const std::size_t nb = beta_grid.size(), total = gamma_grid.size() * nb;
  Eigen::MatrixXd out(gamma_grid.size(), nb);
  const DeviceTopology topo = DeviceTopology::line(g.n_vertices);

  auto point = [&](std::size_t idx) {
    const QAOAAngles a{gamma_grid[idx / nb], beta_grid[idx % nb]};
    Eigen::VectorXd probs;
    std::vector<int> perm(g.n_vertices);
    std::iota(perm.begin(), perm.end(), 0);
    if (opt.noise) {
      const auto c = compile_qaoa(g, a, topo, opt.gateset);
      if (opt.shots == 0) {
        out(idx / nb, idx % nb) = expected_cut_noisy(c, g, *opt.noise);
        return;
      }
      probs = noisy_probs(c, *opt.noise);
      perm = c.final_permutation;
    } else {
      probs = qaoa_state(g, a).cwiseAbs2();
      if (opt.shots == 0) {
        out(idx / nb, idx % nb) = expectation_from_probs(g, probs, g.n_vertices, perm);
        return;
      }
    }
    Rng rng = make_stream(opt.seed, idx);
    out(idx / nb, idx % nb) = sample_mean(g, probs / probs.sum(), g.n_vertices, perm, opt.shots, rng);
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < total;) point(k);
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < std::max(1, opt.jobs); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

OptimalAngles optimal_angles(const WeightedGraph& g, int grid_points) {
  if (grid_points < 2) throw std::invalid_argument("optimal_angles: need at least 2 grid points");
  // gamma over [0, 2 pi), beta_mix over [0, pi): one period each for integer
  // weights, a window otherwise.
  std::vector<double> gs(grid_points), bs(grid_points);
  for (int k = 0; k < grid_points; ++k) {
    gs[k] = kTwoPi * k / grid_points;
    bs[k] = kPi * k / grid_points;
  }
  const Eigen::MatrixXd land = landscape(g, gs, bs);
  Eigen::Index bi = 0, bj = 0;
  land.maxCoeff(&bi, &bj);
  OptimalAngles best{{gs[bi], bs[bj]}, land(bi, bj)};
  double hg = gs[1] - gs[0], hb = bs[1] - bs[0];
  while (hg > 1e-10) {
    bool moved = false;
    for (const auto& [dg, db] : {std::pair{hg, 0.0}, {-hg, 0.0}, {0.0, hb}, {0.0, -hb}}) {
      const QAOAAngles t{best.angles.gamma + dg, best.angles.beta_mix + db};
      const double v = expected_cut(g, t);
      if (v > best.expected_cut) {
        best = {t, v};
        moved = true;
      }
    }
    if (!moved) {
      hg *= 0.5;
      hb *= 0.5;
    }
  }
  return best;
}

}  // namespace xyq
