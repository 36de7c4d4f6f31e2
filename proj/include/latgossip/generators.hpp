#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "latgossip/graph.hpp"
#include "latgossip/predicate.hpp"

namespace latgossip {

LatencyGraph gen_clique(std::uint32_t n, Latency latency = 1);
/// Path with n = latencies.size() + 1 nodes; edge i joins i and i+1.
LatencyGraph gen_path(std::span<const Latency> latencies);
/// Node 0 is the center.
LatencyGraph gen_star(std::uint32_t leaves, Latency latency = 1);
/// Pairing model with rejection of loops, multi-edges and disconnected outcomes.
LatencyGraph gen_random_regular(std::uint32_t n, std::uint32_t d, Latency latency, std::uint64_t seed);
/// Two cliques of `size` nodes joined by one edge (size-1, size).
LatencyGraph gen_two_cliques_bridge(std::uint32_t size, Latency bridge_latency,
                                    Latency clique_latency = 1);
/// G(n,p) resampled until connected; latencies uniform in [lat_lo, lat_hi].
LatencyGraph gen_random_connected(std::uint32_t n, double p, Latency lat_lo, Latency lat_hi,
                                  std::uint64_t seed);

/// G(2m, lo, hi, P) and its symmetric variant.
struct GadgetSpec {
  std::uint32_t m = 1;
  Latency lo = 1;
  Latency hi = 2;
  TargetPredicate predicate = SingletonTarget{};
  bool symmetric = false;
};

/// L = nodes 0..m-1 (a_i = i), R = nodes m..2m-1 (b_j = m + j).
struct Gadget {
  LatencyGraph graph;
  std::uint32_t m = 0;
  std::vector<PairAB> target;

  NodeId left(std::uint32_t a) const { return a; }
  NodeId right(std::uint32_t b) const { return m + b; }
  bool is_cross(NodeId u, NodeId v) const { return (u < m) != (v < m); }
  /// Maps a cross edge to its (a, b) pair.
  PairAB pair_of(NodeId u, NodeId v) const;
};

Gadget gen_gadget(const GadgetSpec& spec, std::uint64_t seed);

/// k layers of s nodes wired as a ring: latency-1 cliques per layer, complete bipartite
/// latency-ell joins between consecutive layers with one random latency-1 edge per join.
struct RingOfGadgets {
  LatencyGraph graph;
  std::uint32_t s = 0;
  std::uint32_t k = 0;
  Latency ell = 1;
  std::vector<EdgeId> fast_edges;

  std::uint32_t layer_of(NodeId v) const { return v / s; }
  /// Layers 0..k/2-1 on one side; cuts no intra-layer edge.
  std::vector<bool> halving_side() const;
};

RingOfGadgets gen_ring_of_gadgets(std::uint32_t s, std::uint32_t k, Latency ell, std::uint64_t seed);

}  // namespace latgossip
