#include "latgossip/graph.hpp"

#include <algorithm>
#include <bit>
#include <queue>

namespace latgossip {

LatencyGraph::LatencyGraph(std::size_t n) : adjacency_(n) {}

LatencyGraph LatencyGraph::from_edges(std::size_t n, std::span<const Edge> edges) {
  LatencyGraph g(n);
  for (const Edge& e : edges) g.add_edge(e.u, e.v, e.latency);
  return g;
}

EdgeId LatencyGraph::add_edge(NodeId u, NodeId v, Latency latency) {
  const auto n = node_count();
  if (u >= n || v >= n) {
    throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                     ") references a node outside 0.." + std::to_string(n == 0 ? 0 : n - 1));
  }
  if (u == v) throw GraphError("self-loop at node " + std::to_string(u));
  if (latency < 1) throw GraphError("latency must be >= 1");
  if (edge_id(u, v)) {
    throw GraphError("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  }
  const auto id = static_cast<EdgeId>(edges_.size());
  edges_.push_back({std::min(u, v), std::max(u, v), latency});
  auto insert = [&](NodeId a, NodeId b) {
    auto& list = adjacency_[a];
    auto it = std::lower_bound(list.begin(), list.end(), b,
                               [](const Neighbor& x, NodeId key) { return x.node < key; });
    list.insert(it, Neighbor{b, latency, id});
  };
  insert(u, v);
  insert(v, u);
  return id;
}

std::optional<EdgeId> LatencyGraph::edge_id(NodeId u, NodeId v) const {
  if (u >= node_count() || v >= node_count()) return std::nullopt;
  const auto& list = adjacency_[u];
  auto it = std::lower_bound(list.begin(), list.end(), v,
                             [](const Neighbor& x, NodeId key) { return x.node < key; });
  if (it == list.end() || it->node != v) return std::nullopt;
  return it->edge;
}

std::optional<Latency> LatencyGraph::latency(NodeId u, NodeId v) const {
  auto id = edge_id(u, v);
  if (!id) return std::nullopt;
  return edges_[*id].latency;
}

std::vector<Latency> LatencyGraph::distinct_latencies() const {
  std::vector<Latency> out;
  out.reserve(edges_.size());
  for (const Edge& e : edges_) out.push_back(e.latency);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Latency LatencyGraph::max_latency() const {
  Latency best = 0;
  for (const Edge& e : edges_) best = std::max(best, e.latency);
  return best;
}

bool LatencyGraph::operator==(const LatencyGraph& other) const {
  if (node_count() != other.node_count() || edge_count() != other.edge_count()) return false;
  for (const Edge& e : edges_) {
    if (other.latency(e.u, e.v) != e.latency) return false;
  }
  return true;
}

int latency_class(Latency latency) {
  if (latency <= 2) return 1;
  return static_cast<int>(std::bit_width(latency - 1));
}

std::size_t max_degree(const LatencyGraph& g) {
  std::size_t best = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) best = std::max(best, g.degree(v));
  return best;
}

bool is_connected(const LatencyGraph& g) {
  const auto n = g.node_count();
  if (n <= 1) return true;
  std::vector<bool> seen(n, false);
  std::queue<NodeId> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const NodeId v = frontier.front();
    frontier.pop();
    for (const Neighbor& nb : g.neighbors(v)) {
      if (!seen[nb.node]) {
        seen[nb.node] = true;
        ++reached;
        frontier.push(nb.node);
      }
    }
  }
  return reached == n;
}

std::uint64_t Cut::crossing_edges() const {
  std::uint64_t total = 0;
  for (const auto& [cls, count] : class_counts) total += count;
  return total;
}

std::vector<NodeId> Cut::side_nodes() const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < in_side.size(); ++v) {
    if (in_side[v]) out.push_back(v);
  }
  return out;
}

Cut make_cut(const LatencyGraph& g, const std::vector<bool>& in_side) {
  const auto n = g.node_count();
  if (in_side.size() != n) throw GraphError("cut membership vector has wrong size");
  const auto members = static_cast<std::size_t>(std::count(in_side.begin(), in_side.end(), true));
  if (members == 0) throw GraphError("cut side is empty");
  if (members == n) throw GraphError("cut side contains every node");

  Cut cut;
  cut.in_side = in_side;
  for (NodeId v = 0; v < n; ++v) {
    (in_side[v] ? cut.volume_side : cut.volume_rest) += g.degree(v);
  }
  for (const Edge& e : g.edges()) {
    if (in_side[e.u] != in_side[e.v]) ++cut.class_counts[latency_class(e.latency)];
  }
  return cut;
}

Cut make_cut(const LatencyGraph& g, std::span<const NodeId> side) {
  std::vector<bool> in_side(g.node_count(), false);
  for (NodeId v : side) {
    if (v >= g.node_count()) throw GraphError("cut names unknown node " + std::to_string(v));
    in_side[v] = true;
  }
  return make_cut(g, in_side);
}

}  // namespace latgossip
