#include "latgossip/protocols/push_pull.hpp"

#include <random>

namespace latgossip {

std::optional<NodeId> PushPullHook::on_round(NodeView& view, NodeState&) {
  if (view.degree() == 0) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, view.degree() - 1);
  return view.neighbor(pick(view.rng()));
}

void PushPullHook::on_deliver(NodeView&, NodeState& state, NodeId, const NodeState& snapshot,
                              bool) {
  state.rumors |= snapshot.rumors;
}

bool PushPullHook::is_done(NodeId, const NodeState& state, std::uint64_t) const {
  return mode_ == Dissemination::all_to_all ? holds_all(state) : state.rumors.test(source_);
}

ProtocolRun push_pull(const LatencyGraph& g, Dissemination mode, NodeId source,
                      const SimConfig& cfg) {
  if (source >= g.node_count()) throw GraphError("source outside the graph");
  Engine<NodeState> engine(g, cfg, initial_states(g.node_count(), mode, source));
  PushPullHook hook(source, mode);
  engine.set_completion(
      [&](NodeId v, const NodeState& s) { return hook.is_done(v, s, 0); });
  engine.run_phase(hook);
  ProtocolRun run{engine.metrics(), engine.states(), engine.metrics().completed_at()};
  return run;
}

}  // namespace latgossip
