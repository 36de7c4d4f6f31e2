#pragma once

#include <vector>

#include "latgossip/protocols/state.hpp"

namespace latgossip {

/// Deterministic tree gossip restricted to edges of latency <= ell (as far as the node knows
/// them). Each iteration links the smallest-id neighbor not yet in R and exchanges along the
/// chain u_i..u_1, u_1..u_i, u_1..u_i, u_i..u_1, one exchange per ell rounds.
class DtgHook : public ProtocolHook<NodeState> {
 public:
  /// `inactive[v] != 0` keeps v from initiating (it still answers).
  DtgHook(Engine<NodeState>& engine, Latency ell, Carry carry,
          const std::vector<char>* inactive = nullptr);

  std::optional<NodeId> on_round(NodeView& view, NodeState& state) override;
  void on_deliver(NodeView& view, NodeState& state, NodeId peer, const NodeState& snapshot,
                  bool as_initiator) override;
  bool is_done(NodeId v, const NodeState& state, std::uint64_t round) const override;

  /// Neighbors each node linked, in order.
  const std::vector<NodeId>& chain(NodeId v) const { return machines_[v].chain; }

 private:
  struct Machine {
    std::vector<NodeId> gamma;
    std::vector<NodeId> chain;
    std::vector<NodeId> schedule;
    std::size_t pos = 0;
    std::uint64_t next_slot = 0;
    bool finished = false;
  };

  std::optional<NodeId> unlinked(const Machine& m, const NodeState& state) const;

  Latency ell_;
  Carry carry_;
  std::vector<Machine> machines_;
};

/// Runs one ell-DTG invocation on a live engine; returns the rounds it took.
std::uint64_t run_dtg_phase(Engine<NodeState>& engine, Latency ell, const Carry& carry,
                            const std::vector<char>* inactive = nullptr);

/// Standalone all-to-all ell-DTG; states[v].dtg_ids holds v's coverage.
ProtocolRun l_dtg(const LatencyGraph& g, Latency ell, const SimConfig& cfg);

/// Number of nodes with at least one incident edge of latency <= ell.
std::size_t active_nodes(const LatencyGraph& g, Latency ell);
/// c * ell * log2(max(n', 2))^2.
double dtg_round_bound(const LatencyGraph& g, Latency ell, double c);

/// T(1) = [1]; T(k) = T(k/2) k T(k/2). k must be a power of two.
std::vector<Latency> t_sequence(Latency k);
std::uint64_t run_t_phase(Engine<NodeState>& engine, Latency k, const Carry& carry,
                          const std::vector<char>* inactive = nullptr);
ProtocolRun run_t_sequence(const LatencyGraph& g, Latency k, const SimConfig& cfg);
/// c * k * log2(max(n, 2))^2 * (log2 k + 1).
double t_round_bound(std::size_t n, Latency k, double c);

}  // namespace latgossip
