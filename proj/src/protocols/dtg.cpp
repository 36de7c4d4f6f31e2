#include "latgossip/protocols/dtg.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace latgossip {

DtgHook::DtgHook(Engine<NodeState>& engine, Latency ell, Carry carry,
                 const std::vector<char>* inactive)
    : ell_(ell), carry_(carry) {
  if (ell < 1) throw std::invalid_argument("DTG latency bound must be >= 1");
  const LatencyGraph& g = engine.graph();
  const auto n = g.node_count();
  machines_.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    Machine& m = machines_[v];
    m.next_slot = engine.round() + 1;
    if (!inactive || !(*inactive)[v]) {
      const auto adj = g.neighbors(v);
      for (std::size_t i = 0; i < adj.size(); ++i) {
        if (engine.knows_latency(v, i) && adj[i].latency <= ell) m.gamma.push_back(adj[i].node);
      }
    }
    m.finished = m.gamma.empty();
    NodeState& s = engine.states()[v];
    s.dtg_ids.clear();
    s.dtg_ids.resize(n);
    s.dtg_ids.set(v);
  }
}

std::optional<NodeId> DtgHook::unlinked(const Machine& m, const NodeState& state) const {
  for (NodeId u : m.gamma) {
    if (!state.dtg_ids.test(u)) return u;
  }
  return std::nullopt;
}

std::optional<NodeId> DtgHook::on_round(NodeView& view, NodeState& state) {
  Machine& m = machines_[view.id()];
  if (m.finished || view.round() < m.next_slot) return std::nullopt;
  if (m.pos == m.schedule.size()) {
    const auto next = unlinked(m, state);
    if (!next) {
      m.finished = true;
      return std::nullopt;
    }
    m.chain.push_back(*next);
    m.schedule.clear();
    m.pos = 0;
    for (auto it = m.chain.rbegin(); it != m.chain.rend(); ++it) m.schedule.push_back(*it);
    for (int rep = 0; rep < 2; ++rep) {
      for (NodeId u : m.chain) m.schedule.push_back(u);
    }
    for (auto it = m.chain.rbegin(); it != m.chain.rend(); ++it) m.schedule.push_back(*it);
  }
  m.next_slot = view.round() + ell_;
  return m.schedule[m.pos++];
}

void DtgHook::on_deliver(NodeView&, NodeState& state, NodeId, const NodeState& snapshot, bool) {
  if (state.dtg_ids.size() == snapshot.dtg_ids.size()) state.dtg_ids |= snapshot.dtg_ids;
  absorb(state, snapshot, carry_);
}

bool DtgHook::is_done(NodeId v, const NodeState& state, std::uint64_t round) const {
  const Machine& m = machines_[v];
  if (m.finished) return true;
  return m.pos == m.schedule.size() && round >= m.next_slot && !unlinked(m, state);
}

std::uint64_t run_dtg_phase(Engine<NodeState>& engine, Latency ell, const Carry& carry,
                            const std::vector<char>* inactive) {
  DtgHook hook(engine, ell, carry, inactive);
  return engine.run_phase(hook);
}

ProtocolRun l_dtg(const LatencyGraph& g, Latency ell, const SimConfig& cfg) {
  Engine<NodeState> engine(g, cfg, initial_states(g.node_count(), Dissemination::all_to_all));
  run_dtg_phase(engine, ell, Carry{});
  // the invocation solves ell-local broadcast by the time it ends
  std::optional<std::uint64_t> done;
  if (!engine.metrics().hit_cap) done = engine.round();
  return {engine.metrics(), engine.states(), done};
}

std::size_t active_nodes(const LatencyGraph& g, Latency ell) {
  std::size_t count = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (const Neighbor& nb : g.neighbors(v)) {
      if (nb.latency <= ell) {
        ++count;
        break;
      }
    }
  }
  return count;
}

double dtg_round_bound(const LatencyGraph& g, Latency ell, double c) {
  const double lg = std::log2(static_cast<double>(std::max<std::size_t>(active_nodes(g, ell), 2)));
  return c * ell * lg * lg;
}

std::vector<Latency> t_sequence(Latency k) {
  if (k == 0 || !std::has_single_bit(k)) {
    throw std::invalid_argument("T(k) needs k to be a power of two, got " + std::to_string(k));
  }
  if (k == 1) return {1};
  auto half = t_sequence(k / 2);
  std::vector<Latency> out = half;
  out.push_back(k);
  out.insert(out.end(), half.begin(), half.end());
  return out;
}

std::uint64_t run_t_phase(Engine<NodeState>& engine, Latency k, const Carry& carry,
                          const std::vector<char>* inactive) {
  std::uint64_t total = 0;
  for (Latency ell : t_sequence(k)) total += run_dtg_phase(engine, ell, carry, inactive);
  return total;
}

ProtocolRun run_t_sequence(const LatencyGraph& g, Latency k, const SimConfig& cfg) {
  Engine<NodeState> engine(g, cfg, initial_states(g.node_count(), Dissemination::all_to_all));
  engine.set_completion([](NodeId, const NodeState& s) { return holds_all(s); });
  run_t_phase(engine, k, Carry{});
  return {engine.metrics(), engine.states(), engine.metrics().completed_at()};
}

double t_round_bound(std::size_t n, Latency k, double c) {
  const double lg = std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
  return c * k * lg * lg * (std::log2(static_cast<double>(k)) + 1.0);
}

}  // namespace latgossip
