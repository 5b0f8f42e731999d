// SPDX-License-Identifier: Apache-2.0
//
// Depth-one MaxCut QAOA: logical CNOT circuit, routing onto a qubit line with
// {CZ} or {CZ, XY(pi)}, gate counts, and expected-cut landscapes.
//
// Cost term per edge: CNOT(u->v) rz_v(gamma w) CNOT(u->v) = exp(-i gamma w/2 Z_u Z_v).
// Mixer: rx(2 beta_mix) on every qubit = exp(-i beta_mix X).

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xyq/noise.hpp"
#include "xyq/qcore.hpp"

namespace xyq {

struct Edge {
  int u = 0, v = 0;
  double w = 1.0;
};

struct WeightedGraph {
  int n_vertices = 0;
  std::vector<Edge> edges;

  // Normalizes u < v; rejects self-loops, duplicates, out-of-range ends and
  // non-finite weights (std::invalid_argument).
  WeightedGraph(int n, std::vector<Edge> edges);

  double total_weight() const;
  double cut_value(std::uint64_t bits) const;  // bit q of `bits` is vertex q

  static WeightedGraph ring(int n, double w = 1.0);
  static WeightedGraph complete(int n, double w = 1.0);
  // Same edges, weights uniform on [0, 1) from `seed`.
  WeightedGraph with_random_weights(std::uint64_t seed) const;
  // "ring4", "k4", or either with a "-random" suffix (weights from `seed`).
  static WeightedGraph named(const std::string& name, std::uint64_t seed = kDefaultWeightSeed);

  static constexpr std::uint64_t kDefaultWeightSeed = 20200415;
};

struct DeviceTopology {
  int n_qubits = 4;
  std::vector<std::pair<int, int>> coupled;

  static DeviceTopology line(int n);
  bool adjacent(int a, int b) const;
  bool is_line() const;  // 0-1-...-(n-1)
  bool connected() const;
};

struct QAOAAngles {
  double gamma = 0.0;
  double beta_mix = 0.0;
};

enum class GateSet { cz_only, cz_and_xy };
std::string to_string(GateSet g);
GateSet gateset_from_string(const std::string& s);

enum class RouteStrategy {
  automatic,     // network for complete graphs, greedy otherwise
  greedy,        // adjacent edges first, then meet-in-the-middle swaps
  swap_network,  // odd-even transposition network
};

struct CompiledCircuit {
  Circuit circuit;  // physical qubits
  // final_permutation[q] is the physical qubit holding logical q at the end.
  std::vector<int> final_permutation;
  // Two-qubit gate totals keyed "CZ" and "XY"; zero entries omitted.
  std::map<std::string, int> counts;
  int single_qubit_gates = 0;
};

// p must be 1.
Circuit build_qaoa_circuit(const WeightedGraph& g, const QAOAAngles& a, int p = 1);

// Throws std::invalid_argument if the topology is disconnected or smaller
// than the graph, or a non-line topology is given.
CompiledCircuit route(const Circuit& logical, const DeviceTopology& topo, GateSet gs,
                      RouteStrategy strategy = RouteStrategy::automatic);
CompiledCircuit compile_qaoa(const WeightedGraph& g, const QAOAAngles& a, const DeviceTopology& topo, GateSet gs,
                             RouteStrategy strategy = RouteStrategy::automatic);

// Distance (up to global phase) between the compiled unitary, with the final
// permutation undone, and the logical circuit unitary.
double verify_compiled(const CompiledCircuit& c, const WeightedGraph& g, const QAOAAngles& a);

// Statevector of the logical circuit, site 0 most significant.
CVector qaoa_state(const WeightedGraph& g, const QAOAAngles& a);
double expected_cut(const WeightedGraph& g, const QAOAAngles& a);

struct LandscapeOptions {
  int shots = 0;  // 0: exact
  std::uint64_t seed = 1;
  int jobs = 1;
  // If set, each point runs the compiled circuit as a density matrix under
  // this model (needs one coherence entry per qubit, or none).
  std::optional<NoiseModel> noise;
  GateSet gateset = GateSet::cz_and_xy;
};

// Row i is gamma_grid[i], column j is beta_grid[j].
Eigen::MatrixXd landscape(const WeightedGraph& g, const std::vector<double>& gamma_grid,
                          const std::vector<double>& beta_grid, const LandscapeOptions& opt = {});

// Expected cut after executing `c` as a density matrix under `model`.
double expected_cut_noisy(const CompiledCircuit& c, const WeightedGraph& g, const NoiseModel& model);

struct OptimalAngles {
  QAOAAngles angles;
  double expected_cut = 0.0;
};
// Exact-grid maximizer followed by a shrinking pattern search.
OptimalAngles optimal_angles(const WeightedGraph& g, int grid_points = 64);

}  // namespace xyq
