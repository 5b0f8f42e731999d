// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <set>

#include "xyq/qaoa.hpp"
#include "xyq/rng.hpp"

using namespace xyq;

namespace {

// <C> by summing over all 2^n input bitstrings: the cost layer is a phase on
// each computational state of |+>^n, the mixer a product of 2x2 blocks.
double enumeration_oracle(const WeightedGraph& g, double gamma, double beta) {
  const int n = g.n_vertices;
  const std::size_t d = std::size_t{1} << n;
  const std::complex<double> m[2][2] = {{std::cos(beta), {0, -std::sin(beta)}},
                                        {{0, -std::sin(beta)}, std::cos(beta)}};
  std::vector<std::complex<double>> in(d);
  for (std::size_t y = 0; y < d; ++y) {
    double s = 0;
    for (const auto& e : g.edges) s += e.w * ((((y >> e.u) ^ (y >> e.v)) & 1) ? -1.0 : 1.0);
    in[y] = std::polar(std::pow(2.0, -0.5 * n), -0.5 * gamma * s);
  }
  double acc = 0;
  for (std::size_t x = 0; x < d; ++x) {
    std::complex<double> amp = 0;
    for (std::size_t y = 0; y < d; ++y) {
      std::complex<double> t = in[y];
      for (int q = 0; q < n; ++q) t *= m[(x >> q) & 1][(y >> q) & 1];
      amp += t;
    }
    acc += std::norm(amp) * g.cut_value(x);
  }
  return acc;
}

int count_label(const Circuit& c, const std::string& l) {
  return static_cast<int>(std::count_if(c.ops.begin(), c.ops.end(), [&](const Op& o) { return o.label == l; }));
}

}  // namespace

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(WeightedGraph(3, {{1, 1, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(WeightedGraph(3, {{0, 3, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(WeightedGraph(3, {{0, 1, NAN}}), std::invalid_argument);
  CHECK_THROWS_AS(WeightedGraph(3, {{0, 1, 1.0}, {1, 0, 2.0}}), std::invalid_argument);
  const WeightedGraph g(3, {{2, 0, 1.5}});
  CHECK(g.edges[0].u == 0);
  CHECK(g.edges[0].v == 2);
  CHECK_THROWS_AS(WeightedGraph::named("petersen"), std::invalid_argument);
  const auto r = WeightedGraph::named("ring4-random");
  for (const auto& e : r.edges) CHECK((e.w >= 0 && e.w < 1));
  CHECK(WeightedGraph::named("ring4-random", 9).edges[0].w != r.edges[0].w);
}

TEST_CASE("logical circuit structure") {
  const WeightedGraph empty(4, {});
  const Circuit c0 = build_qaoa_circuit(empty, {0.4, 0.3});
  CHECK(c0.ops.size() == 8);
  CHECK(count_label(c0, "h") == 4);
  CHECK(count_label(c0, "rx") == 4);

  const auto ring = WeightedGraph::ring(4);
  const Circuit c = build_qaoa_circuit(ring, {0.4, 0.3});
  CHECK(count_label(c, "cnot") == 8);
  CHECK(count_label(c, "rz") == 4);
  // gamma = 0: the CNOT pairs cancel.
  const Circuit z = build_qaoa_circuit(ring, {0.0, 0.3});
  CHECK(distance_global_phase(circuit_unitary(z), circuit_unitary(build_qaoa_circuit(empty, {0.0, 0.3}))) < 1e-12);
  // Each gadget is exp(-i gamma w/2 ZZ).
  const WeightedGraph one(2, {{0, 1, 0.8}});
  const CMatrix zz = kron(pauli_z(), pauli_z());
  CMatrix expected = CMatrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) expected(k, k) = std::polar(1.0, -0.5 * 1.1 * 0.8 * zz(k, k).real());
  Circuit gadget{QuditSpace::qubits(2), {}};
  for (std::size_t k = 2; k < 5; ++k) gadget.ops.push_back(build_qaoa_circuit(one, {1.1, 0}).ops[k]);
  CHECK(distance_global_phase(circuit_unitary(gadget), expected) < 1e-12);
  CHECK_THROWS_AS(build_qaoa_circuit(ring, {0.1, 0.1}, 2), std::invalid_argument);
}

TEST_CASE("gate counts on the 4-qubit line") {
  const auto line = DeviceTopology::line(4);
  const QAOAAngles a{0.7, 0.3};
  const auto ring = WeightedGraph::named("ring4-random");
  const auto k4 = WeightedGraph::named("k4-random");
  CHECK(compile_qaoa(ring, a, line, GateSet::cz_only).counts == std::map<std::string, int>{{"CZ", 10}});
  CHECK(compile_qaoa(ring, a, line, GateSet::cz_and_xy).counts == std::map<std::string, int>{{"CZ", 6}, {"XY", 2}});
  CHECK(compile_qaoa(k4, a, line, GateSet::cz_only).counts == std::map<std::string, int>{{"CZ", 17}});
  CHECK(compile_qaoa(k4, a, line, GateSet::cz_and_xy).counts == std::map<std::string, int>{{"CZ", 7}, {"XY", 5}});
  // The greedy strategy finds a cheaper K4 routing.
  CHECK(compile_qaoa(k4, a, line, GateSet::cz_only, RouteStrategy::greedy).counts.at("CZ") == 16);
  const auto gx = compile_qaoa(k4, a, line, GateSet::cz_and_xy, RouteStrategy::greedy).counts;
  CHECK(gx.at("CZ") == 8);
  CHECK(gx.at("XY") == 4);
}

TEST_CASE("compiled circuits match the logical unitary") {
  const auto line = DeviceTopology::line(4);
  Rng rng = make_stream(404, 0);
  for (const char* name : {"ring4", "k4", "ring4-random", "k4-random"})
    for (GateSet gs : {GateSet::cz_only, GateSet::cz_and_xy})
      for (RouteStrategy st : {RouteStrategy::automatic, RouteStrategy::greedy, RouteStrategy::swap_network})
        for (int t = 0; t < 20; ++t) {
          const auto g = WeightedGraph::named(name);
          const QAOAAngles a{kTwoPi * uniform01(rng), kPi * uniform01(rng)};
          const auto c = compile_qaoa(g, a, line, gs, st);
          CHECK(verify_compiled(c, g, a) < 1e-10);
          std::set<int> img(c.final_permutation.begin(), c.final_permutation.end());
          CHECK(img.size() == 4);
          CHECK(*img.begin() == 0);
          CHECK(*img.rbegin() == 3);
          int tq = 0;
          for (const auto& op : c.circuit.ops) {
            if (op.targets.size() == 2) {
              ++tq;
              CHECK(std::abs(op.targets[0] - op.targets[1]) == 1);
              CHECK((op.label == "cz" || op.label == "xy"));
              if (op.label == "xy") CHECK(op.params == std::vector<double>{0.0, kPi});
            }
          }
          int counted = 0;
          for (const auto& [k, v] : c.counts) counted += v;
          CHECK(counted == tq);
          CHECK(tq + c.single_qubit_gates == static_cast<int>(c.circuit.ops.size()));
          if (gs == GateSet::cz_only) CHECK(c.counts.count("XY") == 0);
        }
  const auto g = WeightedGraph::ring(4);
  CHECK(verify_compiled(compile_qaoa(g, {}, line, GateSet::cz_and_xy), g, {}) < 1e-12);
}

TEST_CASE("routing on a longer line and bad topologies") {
  const auto g = WeightedGraph::ring(4);
  const QAOAAngles a{0.9, 0.2};
  const auto c = compile_qaoa(g, a, DeviceTopology::line(5), GateSet::cz_and_xy);
  CHECK(c.final_permutation.size() == 5);
  CHECK(verify_compiled(c, g, a) < 1e-10);
  DeviceTopology split{4, {{0, 1}, {2, 3}}};
  CHECK_THROWS_AS(compile_qaoa(g, a, split, GateSet::cz_only), std::invalid_argument);
  DeviceTopology star{4, {{0, 1}, {0, 2}, {0, 3}}};
  CHECK_THROWS_AS(compile_qaoa(g, a, star, GateSet::cz_only), std::invalid_argument);
  CHECK_THROWS_AS(compile_qaoa(WeightedGraph::ring(5), a, DeviceTopology::line(4), GateSet::cz_only),
                  std::invalid_argument);
}

TEST_CASE("expected cut limits and oracle agreement") {
  for (const char* name : {"ring4", "k4", "ring4-random", "k4-random"}) {
    const auto g = WeightedGraph::named(name);
    CHECK(expected_cut(g, {0.0, 0.8}) == doctest::Approx(g.total_weight() / 2).epsilon(1e-12));
    CHECK(expected_cut(g, {1.3, 0.0}) == doctest::Approx(g.total_weight() / 2).epsilon(1e-12));
    std::vector<double> gs, bs;
    for (int k = 0; k < 17; ++k) gs.push_back(-kPi + kTwoPi * k / 16);
    for (int k = 0; k < 13; ++k) bs.push_back(-kPi / 2 + kPi * k / 12);
    const auto land = landscape(g, gs, bs);
    double worst = 0;
    for (std::size_t i = 0; i < gs.size(); ++i)
      for (std::size_t j = 0; j < bs.size(); ++j)
        worst = std::max(worst, std::abs(land(i, j) - enumeration_oracle(g, gs[i], bs[j])));
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("unit ring landscape: maximum and period") {
  const auto g = WeightedGraph::ring(4);
  std::vector<double> gs, bs;
  for (int k = 0; k < 48; ++k) gs.push_back(kPi * k / 24);
  for (int k = 0; k < 24; ++k) bs.push_back(kPi * k / 24);
  const auto land = landscape(g, gs, bs, {.jobs = 4});
  Eigen::Index i0, j0;
  const double best = land.maxCoeff(&i0, &j0);
  double oracle_best = -1;
  std::size_t oi = 0, oj = 0;
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = 0; j < bs.size(); ++j)
      if (const double v = enumeration_oracle(g, gs[i], bs[j]); v > oracle_best + 1e-12) {
        oracle_best = v;
        oi = i;
        oj = j;
      }
  CHECK(std::abs(best - oracle_best) < 1e-12);
  CHECK(std::abs(land(oi, oj) - best) < 1e-12);
  // Period pi in gamma for the unit ring.
  for (int i = 0; i < 24; ++i)
    for (int j = 0; j < 24; ++j) CHECK(std::abs(land(i, j) - land(i + 24, j)) < 1e-12);
  const auto opt = optimal_angles(g, 32);
  CHECK(opt.expected_cut == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(opt.expected_cut >= best - 1e-12);
}

TEST_CASE("sampled and noisy landscapes") {
  const auto g = WeightedGraph::named("ring4-random");
  const std::vector<double> gs{0.3, 1.1, 2.0}, bs{0.2, 0.9};
  const auto exact = landscape(g, gs, bs);
  LandscapeOptions opt;
  opt.shots = 5000;
  opt.seed = 12;
  const auto s1 = landscape(g, gs, bs, opt);
  opt.jobs = 3;
  const auto s3 = landscape(g, gs, bs, opt);
  CHECK(s1 == s3);
  // Cut values are at most the total weight, so the shot noise on the mean is
  // bounded by total/(2 sqrt(shots)).
  CHECK((s1 - exact).cwiseAbs().maxCoeff() < 5 * g.total_weight() / (2 * std::sqrt(5000.0)));

  LandscapeOptions quiet;
  quiet.noise = NoiseModel::noiseless();
  CHECK((landscape(g, gs, bs, quiet) - exact).cwiseAbs().maxCoeff() < 1e-12);

  NoiseModel m = NoiseModel::modulated_pair();
  m.qubits = {{24e-6, 13e-6}, {26e-6, 14e-6}, {24e-6, 13e-6}, {26e-6, 14e-6}};
  LandscapeOptions noisy;
  noisy.noise = m;
  const auto nl = landscape(g, gs, bs, noisy);
  const double half = g.total_weight() / 2;
  for (Eigen::Index i = 0; i < nl.rows(); ++i)
    for (Eigen::Index j = 0; j < nl.cols(); ++j) {
      CHECK(std::abs(nl(i, j) - half) < std::abs(exact(i, j) - half) + 1e-12);
      CHECK(std::abs(nl(i, j) - exact(i, j)) > 1e-6);
    }
  CHECK_THROWS_AS(landscape(g, {}, bs), std::invalid_argument);
}
