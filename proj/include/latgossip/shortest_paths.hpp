#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "latgossip/graph.hpp"

namespace latgossip {

inline constexpr std::uint64_t kUnreachable = std::numeric_limits<std::uint64_t>::max();

class DisconnectedGraph : public GraphError {
 public:
  DisconnectedGraph(NodeId from, NodeId to);
  NodeId from;
  NodeId to;
};

/// Latency-weighted single-source distances, using only edges with latency <= max_latency.
std::vector<std::uint64_t> dijkstra(const LatencyGraph& g, NodeId source,
                                    Latency max_latency = std::numeric_limits<Latency>::max());

std::vector<std::vector<std::uint64_t>> all_pairs_distances(
    const LatencyGraph& g, Latency max_latency = std::numeric_limits<Latency>::max());

/// Throws DisconnectedGraph naming the first unreachable pair.
std::uint64_t weighted_diameter(const LatencyGraph& g);

/// Hop distances from `source` (kUnreachable when not reachable).
std::vector<std::uint64_t> hop_distances(const LatencyGraph& g, NodeId source);

}  // namespace latgossip
