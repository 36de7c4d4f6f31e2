#include <optional>

#include "doctest.h"
#include "latgossip/conductance.hpp"
#include "latgossip/generators.hpp"

using namespace latgossip;

namespace {

LatencyGraph triangle_114() {
  LatencyGraph g(3);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 1);
  g.add_edge(0, 2, 4);
  return g;
}

LatencyGraph two_nodes(Latency l) {
  LatencyGraph g(2);
  g.add_edge(0, 1, l);
  return g;
}

/// Independent oracle: walk every node subset through make_cut and the per-cut formulas.
template <class F>
Rational brute_min(const LatencyGraph& g, F per_cut) {
  const std::size_t n = g.node_count();
  std::optional<Rational> best;
  for (std::uint64_t s = 1; s + 1 < (std::uint64_t{1} << n); ++s) {
    std::vector<bool> side(n);
    for (std::size_t v = 0; v < n; ++v) side[v] = (s >> v) & 1U;
    const Cut cut = make_cut(g, side);
    if (cut.min_volume() == 0) continue;
    const Rational value = per_cut(cut);
    if (!best || value < *best) best = value;
  }
  return *best;
}

/// Classical conductance ignoring latencies, by a direct count over subsets.
Rational classical_conductance(const LatencyGraph& g) {
  return brute_min(g, [&](const Cut& c) {
    return Rational(static_cast<std::int64_t>(c.crossing_edges()),
                    static_cast<std::int64_t>(c.min_volume()));
  });
}

}  // namespace

TEST_CASE("phi_ell_cut examples") {
  std::vector<NodeId> a{0};
  const auto g = triangle_114();
  const auto cut = make_cut(g, a);
  CHECK(phi_ell_cut(g, cut, 1) == Rational(1, 2));
  CHECK(phi_ell_cut(g, cut, 4) == Rational(1));
  CHECK(phi_ell_cut(g, cut, 0) == Rational(0));
}

TEST_CASE("phi_ell_exact examples") {
  auto k4 = phi_ell_exact(gen_clique(4), 1);
  CHECK(k4.value == Rational(2, 3));
  CHECK(k4.witness.side_nodes().size() == 2);
  CHECK(phi_ell_exact(triangle_114(), 1).value == Rational(1, 2));
  CHECK(phi_ell_exact(triangle_114(), 4).value == Rational(1));
  CHECK(phi_ell_exact(triangle_114(), 0).value == Rational(0));
  // between realized latencies the step function holds its value
  CHECK(phi_ell_exact(triangle_114(), 3).value == Rational(1, 2));
}

TEST_CASE("critical conductance examples") {
  auto tri = critical_conductance(triangle_114());
  CHECK(tri.phi_star == Rational(1, 2));
  CHECK(tri.ell_star == 1u);
  auto two = critical_conductance(two_nodes(5));
  CHECK(two.phi_star == Rational(1));
  CHECK(two.ell_star == 5u);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = gen_random_connected(8, 0.5, 1, 1, seed);
    auto crit = critical_conductance(g);
    CHECK(crit.ell_star == 1u);
    CHECK(crit.phi_star == classical_conductance(g));
  }
}

TEST_CASE("critical conductance prefers the smaller latency on ties") {
  // phi_1 = 1/2 and phi_2 = 1 give equal ratios 1/2
  LatencyGraph g(3);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 1);
  g.add_edge(0, 2, 2);
  auto crit = critical_conductance(g);
  CHECK(crit.ell_star == 1u);
  CHECK(crit.phi_star == Rational(1, 2));
}

TEST_CASE("avg conductance examples") {
  CHECK(avg_conductance(two_nodes(5)).value == Rational(1, 8));
  auto tri = avg_conductance(triangle_114());
  CHECK(tri.value == Rational(3, 8));
  CHECK(tri.witness.side_nodes() == std::vector<NodeId>{0});
  CHECK(avg_conductance(gen_clique(4)).value == Rational(1, 3));
}

TEST_CASE("count_nonempty_classes examples") {
  CHECK(count_nonempty_classes(gen_clique(5)) == 1);
  std::vector<Latency> a{1, 5};
  CHECK(count_nonempty_classes(gen_path(a)) == 2);
  std::vector<Latency> b{1, 2, 3, 4, 8};
  CHECK(count_nonempty_classes(gen_path(b)) == 3);
}

TEST_CASE("edge induced graph examples") {
  const auto g = triangle_114();
  auto g1 = edge_induced_graph(g, 1);
  CHECK(g1.self_loops == std::vector<std::uint64_t>{1, 0, 1});
  CHECK(g1.edges.size() == 2);
  auto g4 = edge_induced_graph(g, 4);
  CHECK(g4.self_loops == std::vector<std::uint64_t>{0, 0, 0});
  CHECK(g4.edges.size() == 3);
  auto g0 = edge_induced_graph(g, 0);
  CHECK(g0.self_loops == std::vector<std::uint64_t>{2, 2, 2});
  CHECK(g0.edges.empty());
  for (NodeId v = 0; v < 3; ++v) CHECK(g1.volume(v) == g.degree(v));
}

TEST_CASE("check_relation examples") {
  auto two = check_relation(two_nodes(5));
  CHECK(two.lower == Rational(1, 10));
  CHECK(two.phi_avg == Rational(1, 8));
  CHECK(two.upper == Rational(1, 5));
  CHECK(two.holds());
  auto tri = check_relation(triangle_114());
  CHECK(tri.lower == Rational(1, 4));
  CHECK(tri.phi_avg == Rational(3, 8));
  CHECK(tri.upper == Rational(1));
  CHECK(tri.holds());
  // unit-latency K4 sits on the lower boundary
  auto k4 = check_relation(gen_clique(4));
  CHECK(k4.boundary_hit);
  CHECK_FALSE(k4.lower_strict);
}

TEST_CASE("exact routines agree with the brute-force oracle") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::uint32_t n = 3 + seed % 8;
    auto g = gen_random_connected(n, 0.45, 1, 64, seed);
    auto report = analyze_exact(g);
    for (const auto& [ell, value] : report.phi_ell) {
      CHECK(value == brute_min(g, [&](const Cut& c) { return phi_ell_cut(g, c, ell); }));
      CHECK(value == multigraph_conductance(edge_induced_graph(g, ell)));
      CHECK(phi_ell_cut(g, report.phi_ell_witness.at(ell), ell) == value);
    }
    // an intermediate latency that is not realized
    const Latency mid = 33;
    CHECK(phi_ell_exact(g, mid).value ==
          brute_min(g, [&](const Cut& c) { return phi_ell_cut(g, c, mid); }));
    CHECK(report.phi_avg ==
          brute_min(g, [&](const Cut& c) { return avg_cut_conductance(g, c); }));
    CHECK(avg_cut_conductance(g, report.avg_witness) == report.phi_avg);
    CHECK(report.phi_star == report.phi_ell.at(report.ell_star));
    Rational prev(0);
    for (const auto& [ell, value] : report.phi_ell) {
      CHECK(value >= prev);
      CHECK(value <= Rational(1));
      prev = value;
    }
  }
}

TEST_CASE("serial and parallel scans produce identical results") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = gen_random_connected(10 + seed % 5, 0.4, 1, 16, seed);
    auto a = detail::scan_cuts(g, Execution::serial);
    auto b = detail::scan_cuts(g, Execution::parallel);
    REQUIRE(a.per_latency.size() == b.per_latency.size());
    for (std::size_t j = 0; j < a.per_latency.size(); ++j) {
      CHECK(a.per_latency[j].num == b.per_latency[j].num);
      CHECK(a.per_latency[j].den == b.per_latency[j].den);
      CHECK(a.per_latency[j].mask == b.per_latency[j].mask);
    }
    CHECK(a.avg.mask == b.avg.mask);
  }
}

TEST_CASE("cap refusal") {
  auto g = gen_clique(21);
  CHECK_THROWS_AS(phi_ell_exact(g, 1), CapExceeded);
  CHECK_THROWS_AS(critical_conductance(g), CapExceeded);
  CHECK_THROWS_AS(avg_conductance(g), CapExceeded);
  CHECK_THROWS_AS(check_relation(g), CapExceeded);
  CHECK_NOTHROW(phi_ell_exact(g, 1, {.cap = 22}));
}

TEST_CASE("estimator returns upper bounds and finds easy optima") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = gen_random_connected(12, 0.4, 1, 32, seed);
    auto exact = analyze_exact(g);
    auto approx = estimate_conductance(g, seed);
    CHECK(approx.approximate);
    CHECK_FALSE(approx.relation.has_value());
    for (const auto& [ell, value] : exact.phi_ell) CHECK(approx.phi_ell.at(ell) >= value);
    CHECK(approx.phi_avg >= exact.phi_avg);
  }
  auto bridge = gen_two_cliques_bridge(6, 8);
  auto exact = analyze_exact(bridge);
  auto approx = estimate_conductance(bridge, 1);
  CHECK(approx.phi_ell == exact.phi_ell);
}
