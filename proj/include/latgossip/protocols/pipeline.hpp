#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "latgossip/protocols/spanner.hpp"
#include "latgossip/protocols/state.hpp"

namespace latgossip {

/// Each node cycles through `out_targets[v]` one exchange per round for K*delta_out + K
/// rounds, then in-flight exchanges drain.
class RoundRobinHook : public ProtocolHook<NodeState> {
 public:
  RoundRobinHook(const std::vector<std::vector<NodeId>>& out_targets, Carry carry,
                 const std::vector<char>* inactive = nullptr);

  std::optional<NodeId> on_round(NodeView& view, NodeState& state) override;
  void on_deliver(NodeView& view, NodeState& state, NodeId peer, const NodeState& snapshot,
                  bool as_initiator) override;
  bool is_done(NodeId, const NodeState&, std::uint64_t) const override { return false; }

 private:
  const std::vector<std::vector<NodeId>>& out_;
  Carry carry_;
  const std::vector<char>* inactive_;
  std::vector<std::size_t> next_;
};

std::uint64_t run_rr_phase(Engine<NodeState>& engine,
                           const std::vector<std::vector<NodeId>>& out_targets, Latency K,
                           std::size_t delta_out, const Carry& carry,
                           const std::vector<char>* inactive = nullptr);

/// Out-edges of latency <= K as target lists, plus their maximum count.
std::vector<std::vector<NodeId>> rr_targets(const OrientedSpanner& h, Latency K);

/// Standalone all-to-all round-robin broadcast over a prebuilt spanner.
ProtocolRun rr_broadcast(const LatencyGraph& g, const OrientedSpanner& h, Latency K,
                         const SimConfig& cfg);

struct PipelineOptions {
  SpannerParams spanner;
  /// RR parameter is ceil(c_rr * D_guess * ceil(log2 n_hat)).
  double c_rr = 1.0;
};

struct EidPhase {
  std::uint64_t rounds = 0;
  /// Out-edges each node derived from its own collected view.
  std::vector<std::vector<Neighbor>> local_out;
  std::vector<std::vector<NodeId>> targets;
  std::size_t delta_out = 0;
  Latency rr_k = 1;
  /// Some node's view did not cover the neighborhood its spanner decisions depend on.
  bool insufficient_radius = false;
};

/// Topology collection by repeated D_guess-DTG, local spanner construction, then RR.
EidPhase run_eid_phase(Engine<NodeState>& engine, Latency d_guess, const PipelineOptions& opts,
                       const std::vector<char>* inactive = nullptr);

/// Single EID attempt on a fresh all-to-all engine.
struct EidRun : ProtocolRun {
  EidPhase phase;
};
EidRun eid(const LatencyGraph& g, Latency d_guess, const PipelineOptions& opts,
           const SimConfig& cfg);

/// Replays a broadcast primitive with the given carry.
using Replay = std::function<void(const Carry&)>;

/// Flag pass, compare-only k-DTG, gather of rumor-set aggregates and failure broadcast.
/// Returns failed[v] for every node.
std::vector<char> termination_check(Engine<NodeState>& engine, Latency k, const Replay& replay,
                                    const std::vector<char>* inactive = nullptr);

struct GuessDoubleRun : ProtocolRun {
  std::vector<Latency> estimates;
  std::vector<std::optional<std::uint64_t>> termination_round;
  bool insufficient_radius = false;
};

/// Guess-and-double over EID with RR-based termination checks. With cfg.latencies_known
/// false, every iteration first runs discover_latencies(k, k).
GuessDoubleRun general_eid(const LatencyGraph& g, const PipelineOptions& opts,
                           const SimConfig& cfg);
/// Guess-and-double over T(k) with T(k)-based termination checks.
GuessDoubleRun path_discovery(const LatencyGraph& g, const SimConfig& cfg);

/// Each node probes up to delta_guess neighbors of unknown latency (id order, one per
/// round); the phase lasts exactly delta_guess + d_guess rounds and later probes are dropped.
std::uint64_t run_discover_phase(Engine<NodeState>& engine, Latency d_guess,
                                 std::uint32_t delta_guess,
                                 const std::vector<char>* inactive = nullptr);

struct DiscoveryRun {
  Metrics metrics;
  /// Latencies each node knows afterwards, by neighbor id.
  std::vector<std::map<NodeId, Latency>> known;
};
DiscoveryRun discover_latencies(const LatencyGraph& g, Latency d_guess,
                                std::uint32_t delta_guess, const SimConfig& cfg);

struct UnifiedRun {
  ProtocolRun push_pull;
  GuessDoubleRun pipeline;
  std::optional<std::uint64_t> push_pull_rounds;
  std::optional<std::uint64_t> pipeline_rounds;
  std::optional<std::uint64_t> best_rounds;
  std::string winner;  // "push-pull", "spanner" or "none"
};

/// Runs all-to-all push-pull and the spanner pipeline as independent simulations.
UnifiedRun unified(const LatencyGraph& g, const PipelineOptions& opts, const SimConfig& cfg);

}  // namespace latgossip
