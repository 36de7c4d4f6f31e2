#include <algorithm>

#include "latgossip/conductance.hpp"

namespace latgossip::detail {
namespace {

struct ScanEdge {
  NodeId u;
  NodeId v;
  std::size_t lat_index;
  int cls;
};

struct ScanContext {
  std::size_t n = 0;
  std::vector<std::uint64_t> degree;
  std::uint64_t total_volume = 0;
  std::vector<ScanEdge> edges;
  std::vector<Latency> latencies;
  int max_class = 1;
};

ScanContext build_context(const LatencyGraph& g) {
  ScanContext ctx;
  ctx.n = g.node_count();
  ctx.latencies = g.distinct_latencies();
  for (NodeId v = 0; v < ctx.n; ++v) ctx.degree.push_back(g.degree(v));
  ctx.total_volume = g.total_volume();
  for (const Edge& e : g.edges()) {
    auto it = std::lower_bound(ctx.latencies.begin(), ctx.latencies.end(), e.latency);
    const int cls = latency_class(e.latency);
    ctx.max_class = std::max(ctx.max_class, cls);
    ctx.edges.push_back({e.u, e.v, static_cast<std::size_t>(it - ctx.latencies.begin()), cls});
  }
  return ctx;
}

bool improves(std::int64_t num, std::int64_t den, std::uint64_t mask, const ScanBest& best) {
  if (best.den == 0) return true;
  if (fraction_less(num, den, best.num, best.den)) return true;
  if (fraction_less(best.num, best.den, num, den)) return false;
  return mask < best.mask;
}

void offer(ScanBest& best, std::int64_t num, std::int64_t den, std::uint64_t mask) {
  if (improves(num, den, mask, best)) best = {num, den, mask};
}

struct Scratch {
  std::vector<std::uint64_t> by_latency;
  std::vector<std::uint64_t> by_class;
};

/// Per-thread running minima: one slot per distinct latency, then avg, then the first valid mask.
struct Bests {
  std::vector<ScanBest> per_latency;
  ScanBest avg;
  std::uint64_t first_valid = 0;
};

void evaluate(std::uint64_t mask, const ScanContext& ctx, Scratch& s, Bests& bests) {
  std::uint64_t vol_side = 0;
  for (std::size_t v = 0; v + 1 < ctx.n; ++v) {
    if ((mask >> v) & 1U) vol_side += ctx.degree[v];
  }
  const std::uint64_t S = std::min(vol_side, ctx.total_volume - vol_side);
  if (S == 0) return;
  if (bests.first_valid == 0 || mask < bests.first_valid) bests.first_valid = mask;

  std::fill(s.by_latency.begin(), s.by_latency.end(), 0);
  std::fill(s.by_class.begin(), s.by_class.end(), 0);
  auto side = [&](NodeId v) { return v + 1 < ctx.n && ((mask >> v) & 1U); };
  for (const ScanEdge& e : ctx.edges) {
    if (side(e.u) != side(e.v)) {
      ++s.by_latency[e.lat_index];
      ++s.by_class[e.cls];
    }
  }
  const auto den = static_cast<std::int64_t>(S);
  std::uint64_t prefix = 0;
  for (std::size_t j = 0; j < ctx.latencies.size(); ++j) {
    prefix += s.by_latency[j];
    offer(bests.per_latency[j], static_cast<std::int64_t>(prefix), den, mask);
  }
  std::uint64_t avg_num = 0;
  for (int c = 1; c <= ctx.max_class; ++c) avg_num += s.by_class[c] << (ctx.max_class - c);
  offer(bests.avg, static_cast<std::int64_t>(avg_num), den << ctx.max_class, mask);
}

void merge(Bests& into, const Bests& from) {
  for (std::size_t j = 0; j < into.per_latency.size(); ++j) {
    const ScanBest& b = from.per_latency[j];
    if (b.den != 0) offer(into.per_latency[j], b.num, b.den, b.mask);
  }
  if (from.avg.den != 0) offer(into.avg, from.avg.num, from.avg.den, from.avg.mask);
  if (from.first_valid != 0 && (into.first_valid == 0 || from.first_valid < into.first_valid)) {
    into.first_valid = from.first_valid;
  }
}

}  // namespace

ScanResult scan_cuts(const LatencyGraph& g, Execution execution) {
  const ScanContext ctx = build_context(g);
  if (ctx.n < 2) throw GraphError("conductance needs at least two nodes");
  if (ctx.n > 62) throw GraphError("cut enumeration limited to 62 nodes");
  const std::uint64_t last = (std::uint64_t{1} << (ctx.n - 1)) - 1;
  const std::size_t L = ctx.latencies.size();

  Bests total;
  total.per_latency.assign(L, {});

  if (execution == Execution::serial) {
    Scratch s{std::vector<std::uint64_t>(L), std::vector<std::uint64_t>(ctx.max_class + 1)};
    for (std::uint64_t mask = 1; mask <= last; ++mask) evaluate(mask, ctx, s, total);
  } else {
#pragma omp parallel
    {
      Bests local;
      local.per_latency.assign(L, {});
      Scratch s{std::vector<std::uint64_t>(L), std::vector<std::uint64_t>(ctx.max_class + 1)};
#pragma omp for schedule(static)
      for (std::int64_t m = 1; m <= static_cast<std::int64_t>(last); ++m) {
        evaluate(static_cast<std::uint64_t>(m), ctx, s, local);
      }
#pragma omp critical(latgossip_scan_merge)
      merge(total, local);
    }
  }

  if (total.first_valid == 0) throw GraphError("conductance undefined: no cut has positive volume");
  ScanResult result;
  result.latencies = ctx.latencies;
  result.per_latency = std::move(total.per_latency);
  result.avg = total.avg;
  result.first_valid_mask = total.first_valid;
  return result;
}

}  // namespace latgossip::detail
