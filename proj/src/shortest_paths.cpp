#include "latgossip/shortest_paths.hpp"

#include <queue>
#include <string>

namespace latgossip {

DisconnectedGraph::DisconnectedGraph(NodeId f, NodeId t)
    : GraphError("graph is disconnected: node " + std::to_string(t) +
                 " is unreachable from node " + std::to_string(f)),
      from(f),
      to(t) {}

std::vector<std::uint64_t> dijkstra(const LatencyGraph& g, NodeId source, Latency max_latency) {
  std::vector<std::uint64_t> dist(g.node_count(), kUnreachable);
  using Item = std::pair<std::uint64_t, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist.at(source) = 0;
  heap.push({0, source});
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d != dist[v]) continue;
    for (const Neighbor& nb : g.neighbors(v)) {
      if (nb.latency > max_latency) continue;
      const std::uint64_t cand = d + nb.latency;
      if (cand < dist[nb.node]) {
        dist[nb.node] = cand;
        heap.push({cand, nb.node});
      }
    }
  }
  return dist;
}

std::vector<std::vector<std::uint64_t>> all_pairs_distances(const LatencyGraph& g,
                                                            Latency max_latency) {
  std::vector<std::vector<std::uint64_t>> out(g.node_count());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t v = 0; v < static_cast<std::int64_t>(g.node_count()); ++v) {
    out[v] = dijkstra(g, static_cast<NodeId>(v), max_latency);
  }
  return out;
}

std::uint64_t weighted_diameter(const LatencyGraph& g) {
  std::uint64_t best = 0;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    const auto dist = dijkstra(g, s);
    for (NodeId t = 0; t < g.node_count(); ++t) {
      if (dist[t] == kUnreachable) throw DisconnectedGraph(s, t);
      best = std::max(best, dist[t]);
    }
  }
  return best;
}

std::vector<std::uint64_t> hop_distances(const LatencyGraph& g, NodeId source) {
  std::vector<std::uint64_t> dist(g.node_count(), kUnreachable);
  std::queue<NodeId> frontier;
  dist.at(source) = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const NodeId v = frontier.front();
    frontier.pop();
    for (const Neighbor& nb : g.neighbors(v)) {
      if (dist[nb.node] == kUnreachable) {
        dist[nb.node] = dist[v] + 1;
        frontier.push(nb.node);
      }
    }
  }
  return dist;
}

}  // namespace latgossip
