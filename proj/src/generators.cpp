#include "latgossip/generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace latgossip {

LatencyGraph gen_clique(std::uint32_t n, Latency latency) {
  LatencyGraph g(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) g.add_edge(u, v, latency);
  }
  return g;
}

LatencyGraph gen_path(std::span<const Latency> latencies) {
  LatencyGraph g(latencies.size() + 1);
  for (NodeId i = 0; i < latencies.size(); ++i) g.add_edge(i, i + 1, latencies[i]);
  return g;
}

LatencyGraph gen_star(std::uint32_t leaves, Latency latency) {
  LatencyGraph g(leaves + 1);
  for (NodeId v = 1; v <= leaves; ++v) g.add_edge(0, v, latency);
  return g;
}

LatencyGraph gen_random_regular(std::uint32_t n, std::uint32_t d, Latency latency,
                                std::uint64_t seed) {
  if ((static_cast<std::uint64_t>(n) * d) % 2 != 0) {
    throw std::invalid_argument("random_regular needs n*d even (n=" + std::to_string(n) +
                                ", d=" + std::to_string(d) + ")");
  }
  if (d >= n) throw std::invalid_argument("random_regular needs d < n");
  Rng rng(seed);
  std::vector<NodeId> points;
  for (NodeId v = 0; v < n; ++v) points.insert(points.end(), d, v);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::shuffle(points.begin(), points.end(), rng);
    LatencyGraph g(n);
    bool ok = true;
    for (std::size_t i = 0; ok && i + 1 < points.size(); i += 2) {
      const NodeId u = points[i];
      const NodeId v = points[i + 1];
      if (u == v || g.edge_id(u, v)) {
        ok = false;
      } else {
        g.add_edge(u, v, latency);
      }
    }
    if (ok && is_connected(g)) return g;
  }
  throw std::runtime_error("random_regular: pairing model did not produce a simple graph");
}

LatencyGraph gen_two_cliques_bridge(std::uint32_t size, Latency bridge_latency,
                                    Latency clique_latency) {
  if (size < 1) throw std::invalid_argument("two_cliques_bridge needs size >= 1");
  LatencyGraph g(2 * size);
  for (NodeId side = 0; side < 2; ++side) {
    for (NodeId i = 0; i < size; ++i) {
      for (NodeId j = i + 1; j < size; ++j) {
        g.add_edge(side * size + i, side * size + j, clique_latency);
      }
    }
  }
  g.add_edge(size - 1, size, bridge_latency);
  return g;
}

LatencyGraph gen_random_connected(std::uint32_t n, double p, Latency lat_lo, Latency lat_hi,
                                  std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("random_connected needs n >= 1");
  if (lat_lo < 1 || lat_hi < lat_lo) throw std::invalid_argument("bad latency range");
  Rng rng(seed);
  std::bernoulli_distribution coin(p);
  std::uniform_int_distribution<Latency> lat(lat_lo, lat_hi);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    LatencyGraph g(n);
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (coin(rng)) g.add_edge(u, v, lat(rng));
      }
    }
    if (is_connected(g)) return g;
  }
  throw std::runtime_error("random_connected: edge probability too small to connect");
}

PairAB Gadget::pair_of(NodeId u, NodeId v) const {
  if (!is_cross(u, v)) throw std::invalid_argument("not a cross edge");
  if (u > v) std::swap(u, v);
  return {u, v - m};
}

Gadget gen_gadget(const GadgetSpec& spec, std::uint64_t seed) {
  if (spec.m < 1) throw std::invalid_argument("gadget needs m >= 1");
  if (!(1 <= spec.lo && spec.lo < spec.hi)) throw std::invalid_argument("gadget needs 1 <= lo < hi");
  Rng rng(seed);
  Gadget out;
  out.m = spec.m;
  out.target = draw_target_set(spec.m, spec.predicate, rng);
  const std::uint32_t m = spec.m;
  out.graph = LatencyGraph(2 * m);
  for (NodeId i = 0; i < m; ++i) {
    for (NodeId j = i + 1; j < m; ++j) {
      out.graph.add_edge(i, j, 1);
      if (spec.symmetric) out.graph.add_edge(m + i, m + j, 1);
    }
  }
  std::vector<bool> fast(static_cast<std::size_t>(m) * m, false);
  for (const PairAB& pr : out.target) fast[static_cast<std::size_t>(pr.a) * m + pr.b] = true;
  for (std::uint32_t a = 0; a < m; ++a) {
    for (std::uint32_t b = 0; b < m; ++b) {
      out.graph.add_edge(a, m + b, fast[static_cast<std::size_t>(a) * m + b] ? spec.lo : spec.hi);
    }
  }
  return out;
}

std::vector<bool> RingOfGadgets::halving_side() const {
  std::vector<bool> side(graph.node_count(), false);
  for (NodeId v = 0; v < graph.node_count(); ++v) side[v] = layer_of(v) < k / 2;
  return side;
}

RingOfGadgets gen_ring_of_gadgets(std::uint32_t s, std::uint32_t k, Latency ell,
                                  std::uint64_t seed) {
  if (s < 2) throw std::invalid_argument("ring of gadgets needs s >= 2");
  if (k < 3) throw std::invalid_argument("ring of gadgets needs k >= 3");
  if (k % 2 != 0) throw std::invalid_argument("ring of gadgets needs an even layer count k");
  if (ell < 1) throw std::invalid_argument("ring of gadgets needs ell >= 1");
  Rng rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, s - 1);
  RingOfGadgets out;
  out.s = s;
  out.k = k;
  out.ell = ell;
  out.graph = LatencyGraph(static_cast<std::size_t>(s) * k);
  for (std::uint32_t layer = 0; layer < k; ++layer) {
    const NodeId base = layer * s;
    for (NodeId i = 0; i < s; ++i) {
      for (NodeId j = i + 1; j < s; ++j) out.graph.add_edge(base + i, base + j, 1);
    }
  }
  for (std::uint32_t layer = 0; layer < k; ++layer) {
    const NodeId base = layer * s;
    const NodeId next = ((layer + 1) % k) * s;
    const std::uint32_t fast_a = pick(rng);
    const std::uint32_t fast_b = pick(rng);
    for (NodeId i = 0; i < s; ++i) {
      for (NodeId j = 0; j < s; ++j) {
        const bool fast = i == fast_a && j == fast_b;
        const EdgeId id = out.graph.add_edge(base + i, next + j, fast ? 1 : ell);
        if (fast) out.fast_edges.push_back(id);
      }
    }
  }
  return out;
}

}  // namespace latgossip
