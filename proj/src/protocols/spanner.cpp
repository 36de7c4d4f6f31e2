#include "latgossip/protocols/spanner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <optional>
#include <tuple>

#include "latgossip/rng.hpp"
#include "latgossip/shortest_paths.hpp"

namespace latgossip {

SpannerParams resolve(const SpannerParams& p, std::size_t n) {
  SpannerParams out = p;
  const std::uint64_t nn = std::max<std::uint64_t>(n, 2);
  if (out.n_hat == 0) out.n_hat = nn * nn;
  if (out.n_hat < n) throw std::invalid_argument("n_hat must be at least n");
  if (out.k == 0) out.k = static_cast<std::uint32_t>(std::bit_width(out.n_hat - 1));
  out.k = std::max<std::uint32_t>(out.k, 1);
  return out;
}

std::size_t OrientedSpanner::max_out_degree() const {
  std::size_t best = 0;
  for (const auto& out : out_edges) best = std::max(best, out.size());
  return best;
}

std::size_t OrientedSpanner::edge_count() const {
  std::size_t total = 0;
  for (const auto& out : out_edges) total += out.size();
  return total;
}

LatencyGraph OrientedSpanner::as_graph() const {
  LatencyGraph h(n);
  for (NodeId v = 0; v < n; ++v) {
    for (const Neighbor& nb : out_edges[v]) h.add_edge(v, nb.node, nb.latency);
  }
  return h;
}

namespace {

using Weight = std::tuple<Latency, NodeId, NodeId>;

Weight weight_of(NodeId u, const Neighbor& nb) {
  return {nb.latency, std::min(u, nb.node), std::max(u, nb.node)};
}

constexpr NodeId kNone = static_cast<NodeId>(-1);

}  // namespace

OrientedSpanner build_spanner(const LatencyGraph& g, const SpannerParams& raw) {
  const auto n = g.node_count();
  const SpannerParams p = resolve(raw, n);
  const double keep = std::pow(static_cast<double>(p.n_hat), -1.0 / p.k);

  std::vector<NodeId> cluster(n);
  for (NodeId v = 0; v < n; ++v) cluster[v] = v;
  // alive[e] == false once an edge is discarded or becomes intra-cluster
  std::vector<char> alive(g.edge_count(), 1);
  std::vector<char> added(g.edge_count(), 0);
  OrientedSpanner h;
  h.n = n;
  h.k = p.k;
  h.out_edges.resize(n);

  // Additions within one step are collected first so the smaller endpoint wins a tie.
  std::vector<std::pair<NodeId, Neighbor>> batch;
  auto flush = [&] {
    std::sort(batch.begin(), batch.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [u, nb] : batch) {
      if (added[nb.edge]) continue;
      added[nb.edge] = 1;
      h.out_edges[u].push_back(nb);
    }
    batch.clear();
  };

  // Least live edge from u into each adjacent cluster.
  auto adjacent_clusters = [&](NodeId u) {
    std::map<NodeId, Neighbor> least;
    for (const Neighbor& nb : g.neighbors(u)) {
      if (!alive[nb.edge] || cluster[nb.node] == kNone) continue;
      auto [it, fresh] = least.try_emplace(cluster[nb.node], nb);
      if (!fresh && weight_of(u, nb) < weight_of(u, it->second)) it->second = nb;
    }
    return least;
  };
  auto discard_into = [&](NodeId u, NodeId c) {
    for (const Neighbor& nb : g.neighbors(u)) {
      if (alive[nb.edge] && cluster[nb.node] == c) alive[nb.edge] = 0;
    }
  };

  for (std::uint32_t i = 1; i < p.k; ++i) {
    std::vector<char> sampled(n, 0);
    for (NodeId v = 0; v < n; ++v) {
      if (cluster[v] == v) sampled[v] = hash_unit(p.seed, {v, i}) < keep;
    }
    std::vector<NodeId> next = cluster;
    std::vector<std::pair<NodeId, NodeId>> discards;  // (node, old cluster)
    for (NodeId u = 0; u < n; ++u) {
      if (cluster[u] == kNone || sampled[cluster[u]]) continue;
      const auto adj = adjacent_clusters(u);
      std::optional<std::pair<NodeId, Neighbor>> best;
      for (const auto& [c, nb] : adj) {
        if (!sampled[c]) continue;
        if (!best || weight_of(u, nb) < weight_of(u, best->second)) best = {c, nb};
      }
      if (!best) {
        for (const auto& [c, nb] : adj) {
          batch.emplace_back(u, nb);
          discards.emplace_back(u, c);
        }
        next[u] = kNone;
        continue;
      }
      batch.emplace_back(u, best->second);
      discards.emplace_back(u, best->first);
      next[u] = best->first;
      for (const auto& [c, nb] : adj) {
        if (c != best->first && weight_of(u, nb) < weight_of(u, best->second)) {
          batch.emplace_back(u, nb);
          discards.emplace_back(u, c);
        }
      }
    }
    flush();
    for (auto [u, c] : discards) discard_into(u, c);
    cluster = std::move(next);
    for (const Edge& e : g.edges()) {
      const auto id = *g.edge_id(e.u, e.v);
      if (alive[id] && cluster[e.u] != kNone && cluster[e.u] == cluster[e.v]) alive[id] = 0;
    }
  }

  for (NodeId u = 0; u < n; ++u) {
    for (const auto& [c, nb] : adjacent_clusters(u)) {
      if (c != cluster[u]) batch.emplace_back(u, nb);
    }
  }
  flush();

  for (auto& out : h.out_edges) {
    std::sort(out.begin(), out.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
  return h;
}

double spanner_stretch(const LatencyGraph& g, const OrientedSpanner& h) {
  const auto dg = all_pairs_distances(g);
  const auto dh = all_pairs_distances(h.as_graph());
  double worst = 1.0;
  for (std::size_t u = 0; u < g.node_count(); ++u) {
    for (std::size_t v = u + 1; v < g.node_count(); ++v) {
      if (dg[u][v] == kUnreachable) continue;
      if (dh[u][v] == kUnreachable) return std::numeric_limits<double>::infinity();
      worst = std::max(worst, static_cast<double>(dh[u][v]) / static_cast<double>(dg[u][v]));
    }
  }
  return worst;
}

}  // namespace latgossip
