#pragma once

#include "latgossip/protocols/state.hpp"

namespace latgossip {

/// Every node initiates with a uniformly random neighbor every round until the
/// dissemination goal holds everywhere.
ProtocolRun push_pull(const LatencyGraph& g, Dissemination mode, NodeId source,
                      const SimConfig& cfg);

class PushPullHook : public ProtocolHook<NodeState> {
 public:
  explicit PushPullHook(NodeId source, Dissemination mode) : source_(source), mode_(mode) {}

  std::optional<NodeId> on_round(NodeView& view, NodeState& state) override;
  void on_deliver(NodeView& view, NodeState& state, NodeId peer, const NodeState& snapshot,
                  bool as_initiator) override;
  bool is_done(NodeId v, const NodeState& state, std::uint64_t round) const override;

 private:
  NodeId source_;
  Dissemination mode_;
};

}  // namespace latgossip
