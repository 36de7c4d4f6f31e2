#include "latgossip/protocols/pipeline.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>

#include "latgossip/protocols/dtg.hpp"
#include "latgossip/protocols/push_pull.hpp"

namespace latgossip {

RoundRobinHook::RoundRobinHook(const std::vector<std::vector<NodeId>>& out_targets, Carry carry,
                               const std::vector<char>* inactive)
    : out_(out_targets), carry_(carry), inactive_(inactive), next_(out_targets.size(), 0) {}

std::optional<NodeId> RoundRobinHook::on_round(NodeView& view, NodeState&) {
  const NodeId v = view.id();
  if ((inactive_ && (*inactive_)[v]) || out_[v].empty()) return std::nullopt;
  const NodeId target = out_[v][next_[v] % out_[v].size()];
  ++next_[v];
  return target;
}

void RoundRobinHook::on_deliver(NodeView&, NodeState& state, NodeId, const NodeState& snapshot,
                                bool) {
  absorb(state, snapshot, carry_);
}

std::uint64_t run_rr_phase(Engine<NodeState>& engine,
                           const std::vector<std::vector<NodeId>>& out_targets, Latency K,
                           std::size_t delta_out, const Carry& carry,
                           const std::vector<char>* inactive) {
  RoundRobinHook hook(out_targets, carry, inactive);
  const std::uint64_t window = static_cast<std::uint64_t>(K) * delta_out + K;
  std::uint64_t rounds = engine.run_rounds(hook, window);
  rounds += engine.drain(hook);
  return rounds;
}

std::vector<std::vector<NodeId>> rr_targets(const OrientedSpanner& h, Latency K) {
  std::vector<std::vector<NodeId>> out(h.n);
  for (NodeId v = 0; v < h.n; ++v) {
    for (const Neighbor& nb : h.out_edges[v]) {
      if (nb.latency <= K) out[v].push_back(nb.node);
    }
  }
  return out;
}

namespace {

std::size_t max_size(const std::vector<std::vector<NodeId>>& lists) {
  std::size_t best = 0;
  for (const auto& l : lists) best = std::max(best, l.size());
  return best;
}

std::uint32_t log2_ceil(std::uint64_t x) {
  return x <= 1 ? 0 : static_cast<std::uint32_t>(std::bit_width(x - 1));
}

/// True when every node within `depth` hops of `v` in the view has a fully known adjacency.
bool radius_covered(const LatencyGraph& view, const Bitset& complete, NodeId v,
                    std::uint32_t depth) {
  std::vector<std::uint32_t> dist(view.node_count(), std::numeric_limits<std::uint32_t>::max());
  std::queue<NodeId> frontier;
  dist[v] = 0;
  frontier.push(v);
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop();
    if (!complete.test(u)) return false;
    if (dist[u] == depth) continue;
    for (const Neighbor& nb : view.neighbors(u)) {
      if (dist[nb.node] > dist[u] + 1) {
        dist[nb.node] = dist[u] + 1;
        frontier.push(nb.node);
      }
    }
  }
  return true;
}

}  // namespace

ProtocolRun rr_broadcast(const LatencyGraph& g, const OrientedSpanner& h, Latency K,
                         const SimConfig& cfg) {
  Engine<NodeState> engine(g, cfg, initial_states(g.node_count(), Dissemination::all_to_all));
  engine.set_completion([](NodeId, const NodeState& s) { return holds_all(s); });
  const auto targets = rr_targets(h, K);
  run_rr_phase(engine, targets, K, max_size(targets), Carry{});
  return {engine.metrics(), engine.states(), engine.metrics().completed_at()};
}

EidPhase run_eid_phase(Engine<NodeState>& engine, Latency d_guess, const PipelineOptions& opts,
                       const std::vector<char>* inactive) {
  const LatencyGraph& g = engine.graph();
  const auto n = g.node_count();
  const SpannerParams params = resolve(opts.spanner, n);
  const std::uint64_t start = engine.round();

  for (NodeId v = 0; v < n; ++v) {
    NodeState& s = engine.states()[v];
    s.edges.clear();
    s.edges.resize(g.edge_count());
    s.complete.clear();
    s.complete.resize(n);
    const auto adj = g.neighbors(v);
    for (std::size_t i = 0; i < adj.size(); ++i) {
      if (engine.knows_latency(v, i) && adj[i].latency <= d_guess) s.edges.set(adj[i].edge);
    }
    s.complete.set(v);
  }

  const std::uint32_t reps = log2_ceil(params.n_hat) + 1;
  const Carry topology{.rumors = false, .topology = true};
  for (std::uint32_t r = 0; r < reps; ++r) run_dtg_phase(engine, d_guess, topology, inactive);

  EidPhase phase;
  phase.local_out.resize(n);
  std::map<Bitset, OrientedSpanner> cache;
  for (NodeId v = 0; v < n; ++v) {
    const NodeState& s = engine.states()[v];
    LatencyGraph view(n);
    for (auto id = s.edges.find_first(); id != Bitset::npos; id = s.edges.find_next(id)) {
      const Edge& e = g.edges()[id];
      view.add_edge(e.u, e.v, e.latency);
    }
    auto it = cache.find(s.edges);
    if (it == cache.end()) it = cache.emplace(s.edges, build_spanner(view, params)).first;
    phase.local_out[v] = it->second.out_edges[v];
    if (!radius_covered(view, s.complete, v, params.k)) phase.insufficient_radius = true;
  }

  const double scaled =
      std::ceil(opts.c_rr * static_cast<double>(d_guess) * std::max<std::uint32_t>(log2_ceil(params.n_hat), 1));
  phase.rr_k = static_cast<Latency>(std::max(1.0, scaled));
  phase.targets.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    for (const Neighbor& nb : phase.local_out[v]) {
      if (nb.latency <= phase.rr_k) phase.targets[v].push_back(nb.node);
    }
  }
  phase.delta_out = max_size(phase.targets);
  run_rr_phase(engine, phase.targets, phase.rr_k, phase.delta_out, Carry{}, inactive);
  phase.rounds = engine.round() - start;
  return phase;
}

EidRun eid(const LatencyGraph& g, Latency d_guess, const PipelineOptions& opts,
           const SimConfig& cfg) {
  Engine<NodeState> engine(g, cfg, initial_states(g.node_count(), Dissemination::all_to_all));
  engine.set_completion([](NodeId, const NodeState& s) { return holds_all(s); });
  EidRun run;
  run.phase = run_eid_phase(engine, d_guess, opts);
  run.metrics = engine.metrics();
  run.states = engine.states();
  run.completion_round = run.metrics.completed_at();
  return run;
}

std::vector<char> termination_check(Engine<NodeState>& engine, Latency k, const Replay& replay,
                                    const std::vector<char>* inactive) {
  const LatencyGraph& g = engine.graph();
  const auto n = g.node_count();
  for (NodeId v = 0; v < n; ++v) {
    NodeState& s = engine.states()[v];
    s.failed = false;
    s.flag = false;
    for (const Neighbor& nb : g.neighbors(v)) {
      if (!s.rumors.test(nb.node)) s.flag = true;
    }
  }
  run_dtg_phase(engine, k, Carry{.rumors = false, .compare = true}, inactive);

  for (NodeId v = 0; v < n; ++v) {
    NodeState& s = engine.states()[v];
    s.agg_union = s.rumors;
    s.agg_inter = s.rumors;
    s.flag_or = s.flag;
  }
  replay(Carry{.rumors = false, .aggregates = true});

  for (NodeId v = 0; v < n; ++v) {
    NodeState& s = engine.states()[v];
    s.failed = s.agg_union != s.rumors || s.agg_inter != s.rumors || s.flag_or;
  }
  replay(Carry{.rumors = false, .failure = true});

  std::vector<char> failed(n);
  for (NodeId v = 0; v < n; ++v) failed[v] = engine.states()[v].failed;
  return failed;
}

namespace {

constexpr Latency kMaxEstimate = Latency{1} << 30;

template <class Attempt>
GuessDoubleRun guess_and_double(const LatencyGraph& g, const SimConfig& cfg, Attempt attempt) {
  const auto n = g.node_count();
  Engine<NodeState> engine(g, cfg, initial_states(n, Dissemination::all_to_all));
  engine.set_completion([](NodeId, const NodeState& s) { return holds_all(s); });
  GuessDoubleRun run;
  run.termination_round.assign(n, std::nullopt);
  std::vector<char> terminated(n, 0);
  for (Latency k = 1;; k *= 2) {
    run.estimates.push_back(k);
    if (!cfg.latencies_known) {
      run_discover_phase(engine, k, k, &terminated);
    }
    const std::vector<char> failed = attempt(engine, k, terminated, run);
    if (engine.metrics().hit_cap) break;
    bool everyone = true;
    for (NodeId v = 0; v < n; ++v) {
      if (!terminated[v] && !failed[v]) {
        terminated[v] = 1;
        run.termination_round[v] = engine.round();
      }
      everyone = everyone && terminated[v];
    }
    if (everyone || k >= kMaxEstimate) break;
  }
  run.metrics = engine.metrics();
  run.states = engine.states();
  run.completion_round = run.metrics.completed_at();
  return run;
}

}  // namespace

GuessDoubleRun general_eid(const LatencyGraph& g, const PipelineOptions& opts,
                           const SimConfig& cfg) {
  return guess_and_double(g, cfg, [&](Engine<NodeState>& engine, Latency k,
                                      const std::vector<char>& terminated, GuessDoubleRun& run) {
    const EidPhase phase = run_eid_phase(engine, k, opts, &terminated);
    run.insufficient_radius = run.insufficient_radius || phase.insufficient_radius;
    return termination_check(engine, k, [&](const Carry& carry) {
      run_rr_phase(engine, phase.targets, phase.rr_k, phase.delta_out, carry, &terminated);
    }, &terminated);
  });
}

GuessDoubleRun path_discovery(const LatencyGraph& g, const SimConfig& cfg) {
  return guess_and_double(g, cfg, [&](Engine<NodeState>& engine, Latency k,
                                      const std::vector<char>& terminated, GuessDoubleRun&) {
    run_t_phase(engine, k, Carry{}, &terminated);
    return termination_check(engine, k, [&](const Carry& carry) {
      run_t_phase(engine, k, carry, &terminated);
    }, &terminated);
  });
}

namespace {

class DiscoverHook : public ProtocolHook<NodeState> {
 public:
  DiscoverHook(Engine<NodeState>& engine, std::uint32_t delta_guess,
               const std::vector<char>* inactive)
      : probes_(engine.graph().node_count()), next_(probes_.size(), 0) {
    const LatencyGraph& g = engine.graph();
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (inactive && (*inactive)[v]) continue;
      const auto adj = g.neighbors(v);
      for (std::size_t i = 0; i < adj.size() && probes_[v].size() < delta_guess; ++i) {
        if (!engine.knows_latency(v, i)) probes_[v].push_back(adj[i].node);
      }
    }
  }

  std::optional<NodeId> on_round(NodeView& view, NodeState&) override {
    const NodeId v = view.id();
    if (next_[v] >= probes_[v].size()) return std::nullopt;
    return probes_[v][next_[v]++];
  }
  // probes only reveal latencies; carrying rumors here would let a node hold a neighbor's
  // rumor without the exchange the termination flag relies on
  void on_deliver(NodeView&, NodeState&, NodeId, const NodeState&, bool) override {}
  bool is_done(NodeId, const NodeState&, std::uint64_t) const override { return false; }

 private:
  std::vector<std::vector<NodeId>> probes_;
  std::vector<std::size_t> next_;
};

}  // namespace

std::uint64_t run_discover_phase(Engine<NodeState>& engine, Latency d_guess,
                                 std::uint32_t delta_guess, const std::vector<char>* inactive) {
  DiscoverHook hook(engine, delta_guess, inactive);
  const std::uint64_t rounds =
      engine.run_rounds(hook, static_cast<std::uint64_t>(delta_guess) + d_guess);
  engine.abandon_pending();
  return rounds;
}

DiscoveryRun discover_latencies(const LatencyGraph& g, Latency d_guess,
                                std::uint32_t delta_guess, const SimConfig& cfg) {
  SimConfig unknown = cfg;
  unknown.latencies_known = false;
  Engine<NodeState> engine(g, unknown,
                           initial_states(g.node_count(), Dissemination::all_to_all));
  run_discover_phase(engine, d_guess, delta_guess);
  DiscoveryRun run;
  run.metrics = engine.metrics();
  run.known.resize(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto adj = g.neighbors(v);
    for (std::size_t i = 0; i < adj.size(); ++i) {
      if (engine.knows_latency(v, i)) run.known[v][adj[i].node] = adj[i].latency;
    }
  }
  return run;
}

UnifiedRun unified(const LatencyGraph& g, const PipelineOptions& opts, const SimConfig& cfg) {
  UnifiedRun run;
  run.push_pull = push_pull(g, Dissemination::all_to_all, 0, cfg);
  run.pipeline = general_eid(g, opts, cfg);
  run.push_pull_rounds = run.push_pull.completion_round;
  run.pipeline_rounds = run.pipeline.completion_round;
  if (run.push_pull_rounds && (!run.pipeline_rounds || *run.push_pull_rounds <= *run.pipeline_rounds)) {
    run.winner = "push-pull";
    run.best_rounds = run.push_pull_rounds;
  } else if (run.pipeline_rounds) {
    run.winner = "spanner";
    run.best_rounds = run.pipeline_rounds;
  } else {
    run.winner = "none";
  }
  return run;
}

}  // namespace latgossip
