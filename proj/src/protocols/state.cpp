#include "latgossip/protocols/state.hpp"

namespace latgossip {

void absorb(NodeState& self, const NodeState& peer, const Carry& carry) {
  if (carry.rumors) self.rumors |= peer.rumors;
  if (carry.compare && self.rumors != peer.rumors) self.flag = true;
  if (carry.topology) {
    self.edges |= peer.edges;
    self.complete |= peer.complete;
  }
  if (carry.aggregates) {
    self.agg_union |= peer.agg_union;
    self.agg_inter &= peer.agg_inter;
    self.flag_or = self.flag_or || peer.flag_or;
  }
  if (carry.failure) self.failed = self.failed || peer.failed;
}

std::vector<NodeState> initial_states(std::size_t n, Dissemination mode, NodeId source) {
  std::vector<NodeState> states(n);
  for (NodeId v = 0; v < n; ++v) {
    states[v].rumors.resize(n);
    if (mode == Dissemination::all_to_all || v == source) {
      states[v].rumors.set(mode == Dissemination::all_to_all ? v : source);
    }
  }
  return states;
}

bool holds_all(const NodeState& s) { return s.rumors.all(); }

}  // namespace latgossip
