#pragma once

#include <cstdint>
#include <vector>

#include "latgossip/graph.hpp"

namespace latgossip {

struct SpannerParams {
  std::uint64_t n_hat = 0;  // 0 means n^2
  std::uint32_t k = 0;      // 0 means ceil(log2 n_hat)
  std::uint64_t seed = 1;
};

/// Resolves the defaults against a node count.
SpannerParams resolve(const SpannerParams& p, std::size_t n);

struct OrientedSpanner {
  std::size_t n = 0;
  std::uint32_t k = 1;
  /// out_edges[v] holds the edges v added, sorted by neighbor id.
  std::vector<std::vector<Neighbor>> out_edges;

  std::size_t max_out_degree() const;
  std::size_t edge_count() const;
  /// Undirected spanner graph.
  LatencyGraph as_graph() const;
};

/// Clustering spanner with every added edge oriented away from the node that added it.
/// Edge order is (latency, min id, max id); cluster sampling is a pure function of
/// (seed, center, iteration) so any node simulating the run reaches the same clusters.
OrientedSpanner build_spanner(const LatencyGraph& g, const SpannerParams& params);

/// max over connected pairs of dist_H / dist_G.
double spanner_stretch(const LatencyGraph& g, const OrientedSpanner& h);

}  // namespace latgossip
