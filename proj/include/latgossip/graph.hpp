#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace latgossip {

using NodeId = std::uint32_t;
using Latency = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  NodeId u = 0;  // u < v
  NodeId v = 0;
  Latency latency = 1;
};

struct Neighbor {
  NodeId node = 0;
  Latency latency = 1;
  EdgeId edge = 0;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Undirected simple graph whose edges carry integer latencies >= 1.
/// Adjacency lists are kept sorted by neighbor id.
class LatencyGraph {
 public:
  LatencyGraph() = default;
  explicit LatencyGraph(std::size_t n);

  static LatencyGraph from_edges(std::size_t n, std::span<const Edge> edges);

  /// Throws GraphError on self-loops, parallel edges, zero latency or bad ids.
  EdgeId add_edge(NodeId u, NodeId v, Latency latency);

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Neighbor> neighbors(NodeId v) const { return adjacency_.at(v); }
  std::size_t degree(NodeId v) const { return adjacency_.at(v).size(); }

  std::optional<Latency> latency(NodeId u, NodeId v) const;
  std::optional<EdgeId> edge_id(NodeId u, NodeId v) const;

  /// Sorted, deduplicated edge latencies.
  std::vector<Latency> distinct_latencies() const;
  Latency max_latency() const;
  std::uint64_t total_volume() const { return 2 * static_cast<std::uint64_t>(edges_.size()); }

  bool operator==(const LatencyGraph& other) const;

 private:
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<Edge> edges_;
};

/// Class 1 holds latencies in [1,2]; class i > 1 holds (2^{i-1}, 2^i].
int latency_class(Latency latency);

std::size_t max_degree(const LatencyGraph& g);
bool is_connected(const LatencyGraph& g);

/// A proper node subset with cached volumes and per-class crossing counts.
struct Cut {
  std::vector<bool> in_side;
  std::uint64_t volume_side = 0;
  std::uint64_t volume_rest = 0;
  std::map<int, std::uint64_t> class_counts;

  std::uint64_t min_volume() const { return std::min(volume_side, volume_rest); }
  std::uint64_t crossing_edges() const;
  std::vector<NodeId> side_nodes() const;
};

/// Throws GraphError when `side` is empty, covers every node, or names a bad id.
Cut make_cut(const LatencyGraph& g, std::span<const NodeId> side);
Cut make_cut(const LatencyGraph& g, const std::vector<bool>& in_side);

}  // namespace latgossip
