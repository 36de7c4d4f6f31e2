#include <algorithm>
#include <numeric>

#include "latgossip/conductance.hpp"
#include "latgossip/rng.hpp"

namespace latgossip {
namespace {

constexpr int kMaxPasses = 64;

/// Incrementally maintained cut: crossing counts per distinct latency and per class.
class CutState {
 public:
  CutState(const LatencyGraph& g, const std::vector<Latency>& lats, int max_class)
      : g_(g), lats_(lats), max_class_(max_class), side_(g.node_count(), false),
        by_latency_(lats.size(), 0), by_class_(max_class + 1, 0) {}

  void assign(const std::vector<bool>& side) {
    side_ = side;
    members_ = static_cast<std::size_t>(std::count(side.begin(), side.end(), true));
    vol_side_ = 0;
    std::fill(by_latency_.begin(), by_latency_.end(), 0);
    std::fill(by_class_.begin(), by_class_.end(), 0);
    for (NodeId v = 0; v < g_.node_count(); ++v) {
      if (side_[v]) vol_side_ += g_.degree(v);
    }
    for (const Edge& e : g_.edges()) {
      if (side_[e.u] != side_[e.v]) bump(e.latency, +1);
    }
  }

  bool can_flip(NodeId v) const {
    return side_[v] ? members_ > 1 : members_ + 1 < g_.node_count();
  }

  void flip(NodeId v) {
    for (const Neighbor& nb : g_.neighbors(v)) {
      bump(nb.latency, side_[nb.node] == side_[v] ? +1 : -1);
    }
    if (side_[v]) {
      vol_side_ -= g_.degree(v);
      --members_;
    } else {
      vol_side_ += g_.degree(v);
      ++members_;
    }
    side_[v] = !side_[v];
  }

  /// Objective `j < lats.size()` is phi at lats[j]; objective lats.size() is the average.
  std::optional<std::pair<std::int64_t, std::int64_t>> value(std::size_t objective) const {
    const std::uint64_t S = std::min(vol_side_, g_.total_volume() - vol_side_);
    if (S == 0) return std::nullopt;
    if (objective < lats_.size()) {
      std::int64_t crossing = 0;
      for (std::size_t j = 0; j <= objective; ++j) crossing += by_latency_[j];
      return std::pair{crossing, static_cast<std::int64_t>(S)};
    }
    std::int64_t num = 0;
    for (int c = 1; c <= max_class_; ++c) num += by_class_[c] << (max_class_ - c);
    return std::pair{num, static_cast<std::int64_t>(S) << max_class_};
  }

  const std::vector<bool>& side() const { return side_; }

 private:
  void bump(Latency latency, std::int64_t delta) {
    auto it = std::lower_bound(lats_.begin(), lats_.end(), latency);
    by_latency_[static_cast<std::size_t>(it - lats_.begin())] += delta;
    by_class_[latency_class(latency)] += delta;
  }

  const LatencyGraph& g_;
  const std::vector<Latency>& lats_;
  int max_class_;
  std::vector<bool> side_;
  std::size_t members_ = 0;
  std::uint64_t vol_side_ = 0;
  std::vector<std::int64_t> by_latency_;
  std::vector<std::int64_t> by_class_;
};

using Value = std::pair<std::int64_t, std::int64_t>;

bool better(const std::optional<Value>& a, const std::optional<Value>& b) {
  if (!a) return false;
  if (!b) return true;
  return fraction_less(a->first, a->second, b->first, b->second);
}

void local_search(CutState& state, std::size_t objective) {
  auto current = state.value(objective);
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    bool improved = false;
    for (NodeId v = 0; v < state.side().size(); ++v) {
      if (!state.can_flip(v)) continue;
      state.flip(v);
      auto next = state.value(objective);
      if (better(next, current)) {
        current = next;
        improved = true;
      } else {
        state.flip(v);
      }
    }
    if (!improved) break;
  }
}

}  // namespace

ConductanceReport estimate_conductance(const LatencyGraph& g, std::uint64_t seed,
                                       std::size_t samples) {
  const std::size_t n = g.node_count();
  if (n < 2) throw GraphError("conductance needs at least two nodes");
  const auto lats = g.distinct_latencies();
  if (lats.empty()) throw GraphError("conductance undefined: graph has no edges");
  int max_class = 1;
  for (Latency l : lats) max_class = std::max(max_class, latency_class(l));

  const std::size_t objectives = lats.size() + 1;
  std::vector<std::optional<Value>> best(objectives);
  std::vector<std::vector<bool>> best_side(objectives);
  CutState state(g, lats, max_class);

  auto consider = [&](std::size_t objective) {
    auto v = state.value(objective);
    if (better(v, best[objective])) {
      best[objective] = v;
      best_side[objective] = state.side();
    }
  };

  for (NodeId v = 0; v < n; ++v) {
    std::vector<bool> side(n, false);
    side[v] = true;
    state.assign(side);
    for (std::size_t o = 0; o < objectives; ++o) consider(o);
  }

  for (std::size_t o = 0; o < objectives; ++o) {
    Rng rng(derive_seed(seed, {o}));
    std::vector<NodeId> order(n);
    for (std::size_t s = 0; s < samples; ++s) {
      std::iota(order.begin(), order.end(), NodeId{0});
      std::shuffle(order.begin(), order.end(), rng);
      // Alternate balanced bisections with random-size subsets.
      const std::size_t size =
          s % 2 == 0 ? n / 2 : std::uniform_int_distribution<std::size_t>(1, n - 1)(rng);
      std::vector<bool> side(n, false);
      for (std::size_t i = 0; i < size; ++i) side[order[i]] = true;
      state.assign(side);
      local_search(state, o);
      consider(o);
    }
    if (best_side[o].empty()) continue;
    state.assign(best_side[o]);
    local_search(state, o);
    consider(o);
  }

  ConductanceReport report;
  report.approximate = true;
  std::vector<Rational> values;
  for (std::size_t j = 0; j < lats.size(); ++j) {
    if (!best[j]) throw GraphError("conductance undefined: no cut has positive volume");
    values.emplace_back(best[j]->first, best[j]->second);
    report.phi_ell[lats[j]] = values.back();
    report.phi_ell_witness[lats[j]] = make_cut(g, best_side[j]);
  }
  std::size_t star = 0;
  for (std::size_t j = 1; j < lats.size(); ++j) {
    if (values[j] / static_cast<std::int64_t>(lats[j]) >
        values[star] / static_cast<std::int64_t>(lats[star])) {
      star = j;
    }
  }
  report.phi_star = values[star];
  report.ell_star = lats[star];
  report.phi_avg = Rational(best.back()->first, best.back()->second);
  report.avg_witness = make_cut(g, best_side.back());
  report.classes = count_nonempty_classes(g);
  return report;
}

}  // namespace latgossip
