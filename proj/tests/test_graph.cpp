#include <filesystem>
#include <numeric>
#include <set>
#include <sstream>

#include "doctest.h"
#include "latgossip/generators.hpp"
#include "latgossip/graph.hpp"
#include "latgossip/graph_io.hpp"
#include "latgossip/shortest_paths.hpp"

using namespace latgossip;

namespace {

LatencyGraph triangle_114() {
  // a=0, b=1, c=2; ab=1, bc=1, ac=4
  LatencyGraph g(3);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 1);
  g.add_edge(0, 2, 4);
  return g;
}

}  // namespace

TEST_CASE("add_edge rejects bad input") {
  LatencyGraph g(3);
  CHECK_THROWS_AS(g.add_edge(0, 0, 1), GraphError);
  CHECK_THROWS_AS(g.add_edge(0, 3, 1), GraphError);
  CHECK_THROWS_AS(g.add_edge(0, 1, 0), GraphError);
  g.add_edge(0, 1, 2);
  CHECK_THROWS_AS(g.add_edge(1, 0, 3), GraphError);
  CHECK(g.latency(1, 0) == 2u);
  CHECK_FALSE(g.latency(1, 2).has_value());
}

TEST_CASE("latency classes") {
  CHECK(latency_class(1) == 1);
  CHECK(latency_class(2) == 1);
  CHECK(latency_class(3) == 2);
  CHECK(latency_class(4) == 2);
  CHECK(latency_class(5) == 3);
  CHECK(latency_class(8) == 3);
  CHECK(latency_class(9) == 4);
  int prev = 1;
  for (Latency l = 1; l < 5000; ++l) {
    const int c = latency_class(l);
    CHECK(c >= prev);
    // (2^{c-1}, 2^c] for c > 1
    if (c > 1) CHECK(((1u << (c - 1)) < l && l <= (1u << c)));
    prev = c;
  }
}

TEST_CASE("max_degree examples") {
  CHECK(max_degree(gen_star(5)) == 5);
  CHECK(max_degree(gen_ring_of_gadgets(4, 8, 16, 1).graph) == 11);
  std::vector<Latency> one{1};
  CHECK(max_degree(gen_path(one)) == 1);
}

TEST_CASE("make_cut examples") {
  LatencyGraph two(2);
  two.add_edge(0, 1, 5);
  std::vector<NodeId> a{0};
  auto c = make_cut(two, a);
  CHECK(c.volume_side == 1);
  CHECK(c.volume_rest == 1);
  CHECK(c.class_counts == std::map<int, std::uint64_t>{{3, 1}});

  auto t = make_cut(triangle_114(), a);
  CHECK(t.volume_side == 2);
  CHECK(t.volume_rest == 4);
  CHECK(t.class_counts == std::map<int, std::uint64_t>{{1, 1}, {2, 1}});

  std::vector<NodeId> ab{0, 1};
  auto k = make_cut(gen_clique(4), ab);
  CHECK(k.volume_side == 6);
  CHECK(k.volume_rest == 6);
  CHECK(k.class_counts == std::map<int, std::uint64_t>{{1, 4}});

  std::vector<NodeId> none;
  std::vector<NodeId> all{0, 1};
  CHECK_THROWS_AS(make_cut(two, none), GraphError);
  CHECK_THROWS_AS(make_cut(two, all), GraphError);
}

TEST_CASE("make_cut class counts agree with a direct edge scan") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto g = gen_random_connected(9, 0.5, 1, 40, seed);
    Rng rng(seed);
    std::vector<bool> side(9, false);
    side[rng() % 9] = true;
    for (int i = 0; i < 3; ++i) side[rng() % 9] = true;
    if (std::count(side.begin(), side.end(), true) == 9) side[0] = false;
    auto cut = make_cut(g, side);
    std::uint64_t direct = 0;
    for (const Edge& e : g.edges()) direct += side[e.u] != side[e.v];
    CHECK(cut.crossing_edges() == direct);
  }
}

TEST_CASE("gadget construction") {
  auto single = gen_gadget({.m = 2, .lo = 1, .hi = 9, .predicate = SingletonTarget{}}, 7);
  int lo = 0, hi = 0;
  for (const Edge& e : single.graph.edges()) {
    if (!single.is_cross(e.u, e.v)) continue;
    (e.latency == 1 ? lo : hi) += 1;
  }
  CHECK(lo == 1);
  CHECK(hi == 3);
  REQUIRE(single.target.size() == 1);
  const PairAB t = single.target[0];
  CHECK(single.graph.latency(single.left(t.a), single.right(t.b)) == 1u);

  auto all = gen_gadget({.m = 3, .lo = 2, .hi = 9, .predicate = RandomTarget{1.0}}, 1);
  for (std::uint32_t a = 0; a < 3; ++a) {
    for (std::uint32_t b = 0; b < 3; ++b) CHECK(all.graph.latency(a, 3 + b) == 2u);
  }
  CHECK(all.graph.edge_count() == 3 + 9);

  auto none = gen_gadget(
      {.m = 3, .lo = 2, .hi = 9, .predicate = RandomTarget{0.0}, .symmetric = true}, 1);
  CHECK(none.graph.edge_count() == 3 + 3 + 9);
  for (const Edge& e : none.graph.edges()) {
    CHECK(e.latency == (none.is_cross(e.u, e.v) ? 9u : 1u));
  }
  CHECK(none.target.empty());
}

TEST_CASE("ring of gadgets") {
  for (auto [s, k] : std::vector<std::pair<int, int>>{{2, 4}, {3, 6}, {4, 8}, {5, 10}, {2, 6}}) {
    auto ring = gen_ring_of_gadgets(s, k, 16, 3);
    CHECK(ring.graph.node_count() == static_cast<std::size_t>(s * k));
    for (NodeId v = 0; v < ring.graph.node_count(); ++v) {
      CHECK(ring.graph.degree(v) == static_cast<std::size_t>(3 * s - 1));
    }
    CHECK(is_connected(ring.graph));
    // one latency-1 edge per consecutive layer pair
    std::map<std::pair<int, int>, int> fast;
    for (const Edge& e : ring.graph.edges()) {
      if (ring.layer_of(e.u) == ring.layer_of(e.v)) {
        CHECK(e.latency == 1u);
      } else if (e.latency == 1) {
        ++fast[{ring.layer_of(e.u), ring.layer_of(e.v)}];
      } else {
        CHECK(e.latency == 16u);
      }
    }
    CHECK(fast.size() == static_cast<std::size_t>(k));
    for (auto& [key, count] : fast) CHECK(count == 1);
  }
  CHECK_THROWS(gen_ring_of_gadgets(4, 7, 2, 1));
  CHECK_THROWS(gen_ring_of_gadgets(1, 4, 2, 1));
}

TEST_CASE("basic families") {
  auto k4 = gen_clique(4);
  CHECK(k4.edge_count() == 6);
  std::vector<Latency> lats{2, 3};
  auto p = gen_path(lats);
  CHECK(p.node_count() == 3);
  CHECK(p.latency(0, 1) == 2u);
  CHECK(p.latency(1, 2) == 3u);
  CHECK_FALSE(p.latency(0, 2).has_value());

  auto rr = gen_random_regular(16, 4, 1, 11);
  CHECK(rr.node_count() == 16);
  for (NodeId v = 0; v < 16; ++v) CHECK(rr.degree(v) == 4);
  std::set<std::pair<NodeId, NodeId>> seen;
  for (const Edge& e : rr.edges()) {
    CHECK(e.u != e.v);
    CHECK(seen.insert({e.u, e.v}).second);
  }
  CHECK_THROWS(gen_random_regular(5, 3, 1, 1));

  auto bridge = gen_two_cliques_bridge(4, 32);
  CHECK(bridge.node_count() == 8);
  CHECK(bridge.latency(3, 4) == 32u);
  CHECK(is_connected(bridge));

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = gen_random_connected(12, 0.3, 1, 64, seed);
    CHECK(is_connected(g));
    for (const Edge& e : g.edges()) CHECK((e.latency >= 1 && e.latency <= 64));
  }
}

TEST_CASE("graph io round trip and errors") {
  auto k4 = gen_clique(4, 3);
  std::stringstream buf;
  write_graph(k4, buf);
  CHECK(read_graph(buf) == k4);

  std::istringstream one("n 2\n# comment\n\n0 1 5\n");
  auto g = read_graph(one);
  CHECK(g.latency(0, 1) == 5u);

  auto expect_error = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(read_graph(in), GraphFormatError);
  };
  expect_error("n 2\n0 0 1\n");
  expect_error("n 2\n0 1 x\n");
  expect_error("n 2\n0 1\n");
  expect_error("n 2\n0 1 1\n1 0 2\n");
  expect_error("n 2\n0 1 0\n");
  expect_error("0 1 1\n");

  const auto path = std::filesystem::temp_directory_path() / "latgossip_io_test.txt";
  save_graph(k4, path);
  CHECK(load_graph(path) == k4);
  std::filesystem::remove(path);
}

TEST_CASE("shortest paths") {
  std::vector<Latency> lats{2, 3, 4};
  auto p = gen_path(lats);
  auto d = dijkstra(p, 0);
  CHECK(d == std::vector<std::uint64_t>{0, 2, 5, 9});
  CHECK(weighted_diameter(p) == 9);
  auto capped = dijkstra(p, 0, 3);
  CHECK(capped[3] == kUnreachable);
  CHECK(hop_distances(p, 0) == std::vector<std::uint64_t>{0, 1, 2, 3});

  LatencyGraph split(3);
  split.add_edge(0, 1, 1);
  CHECK_THROWS_AS(weighted_diameter(split), DisconnectedGraph);

  // Floyd-Warshall as an independent oracle
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = gen_random_connected(10, 0.35, 1, 20, seed);
    const std::size_t n = g.node_count();
    std::vector<std::vector<std::uint64_t>> fw(n, std::vector<std::uint64_t>(n, kUnreachable / 4));
    for (NodeId v = 0; v < n; ++v) fw[v][v] = 0;
    for (const Edge& e : g.edges()) fw[e.u][e.v] = fw[e.v][e.u] = e.latency;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) fw[i][j] = std::min(fw[i][j], fw[i][k] + fw[k][j]);
    CHECK(all_pairs_distances(g) == fw);
  }
}
