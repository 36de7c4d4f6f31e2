#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "latgossip/graph.hpp"
#include "latgossip/rng.hpp"

namespace latgossip {

/// A protocol broke the communication model (non-neighbor initiation, hidden latency read, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class TraceLevel { off, metrics, full };

struct SimConfig {
  std::uint64_t seed = 1;
  std::uint64_t max_rounds = 1'000'000;
  TraceLevel trace_level = TraceLevel::metrics;
  /// When false a node only sees the latency of an edge after an exchange on it completes.
  bool latencies_known = true;
};

struct ExchangeEvent {
  NodeId initiator = 0;
  NodeId responder = 0;
  Latency latency = 1;
  std::uint64_t start_round = 0;
  std::uint64_t deliver_round = 0;
};

/// "round u v latency deliver_round"
void write_trace_line(std::ostream& out, const ExchangeEvent& e);

struct Metrics {
  std::uint64_t rounds_elapsed = 0;
  std::uint64_t exchanges_initiated = 0;
  std::uint64_t exchanges_abandoned = 0;
  std::map<int, std::uint64_t> activations_by_class;
  /// First round at which the node satisfied the run's completion predicate.
  std::vector<std::optional<std::uint64_t>> completion_round;
  bool hit_cap = false;
  std::vector<ExchangeEvent> trace;  // filled at TraceLevel::full

  std::optional<std::uint64_t> completed_at() const;
};

/// What a node may see about itself.
class NodeView {
 public:
  NodeView(NodeId id, std::uint64_t round, std::span<const NodeId> neighbor_ids,
           std::span<const Neighbor> adjacency, const std::vector<char>& known, Rng& rng)
      : id_(id), round_(round), ids_(neighbor_ids), adjacency_(adjacency), known_(known),
        rng_(rng) {}

  NodeId id() const { return id_; }
  std::uint64_t round() const { return round_; }
  std::size_t degree() const { return ids_.size(); }
  std::span<const NodeId> neighbors() const { return ids_; }
  NodeId neighbor(std::size_t i) const { return ids_[i]; }
  /// Adjacency index of `w`, if adjacent.
  std::optional<std::size_t> index_of(NodeId w) const;

  bool knows_latency(std::size_t i) const { return known_[i] != 0; }
  /// Throws ContractViolation when the latency has not been disclosed to this node.
  Latency latency(std::size_t i) const;

  Rng& rng() { return rng_; }

 private:
  NodeId id_;
  std::uint64_t round_;
  std::span<const NodeId> ids_;
  std::span<const Neighbor> adjacency_;
  const std::vector<char>& known_;
  Rng& rng_;
};

template <class Payload>
class ProtocolHook {
 public:
  virtual ~ProtocolHook() = default;
  /// At most one initiation per node per round.
  virtual std::optional<NodeId> on_round(NodeView& view, Payload& state) = 0;
  /// Called at both endpoints when an exchange completes; `peer_snapshot` is the
  /// counterpart's state as of the start round.
  virtual void on_deliver(NodeView& view, Payload& state, NodeId peer,
                          const Payload& peer_snapshot, bool as_initiator) = 0;
  virtual bool is_done(NodeId v, const Payload& state, std::uint64_t round) const = 0;
  virtual Payload snapshot(NodeId, const Payload& state) const { return state; }
};

/// Synchronous round simulator. One engine persists across protocol phases: the clock,
/// node states and learned latencies carry over from one run_phase call to the next.
template <class Payload>
class Engine {
 public:
  Engine(const LatencyGraph& g, SimConfig cfg, std::vector<Payload> initial)
      : g_(g), cfg_(cfg), state_(std::move(initial)) {
    if (cfg_.max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
    const auto n = g.node_count();
    if (state_.size() != n) throw std::invalid_argument("one initial state per node required");
    ids_.resize(n);
    known_.resize(n);
    rngs_.reserve(n);
    for (NodeId v = 0; v < n; ++v) {
      for (const Neighbor& nb : g.neighbors(v)) ids_[v].push_back(nb.node);
      known_[v].assign(g.degree(v), cfg_.latencies_known ? 1 : 0);
      rngs_.emplace_back(derive_seed(cfg_.seed, {v}));
    }
    metrics_.completion_round.assign(n, std::nullopt);
  }

  const LatencyGraph& graph() const { return g_; }
  const SimConfig& config() const { return cfg_; }
  std::uint64_t round() const { return round_; }
  const Metrics& metrics() const { return metrics_; }
  Metrics& metrics() { return metrics_; }
  std::vector<Payload>& states() { return state_; }
  const std::vector<Payload>& states() const { return state_; }
  std::size_t pending() const { return pending_count_; }
  bool knows_latency(NodeId v, std::size_t i) const { return known_[v][i] != 0; }

  /// Records completion_round[v] the first time the predicate holds after a delivery.
  void set_completion(std::function<bool(NodeId, const Payload&)> predicate) {
    completion_ = std::move(predicate);
    for (NodeId v = 0; v < state_.size(); ++v) check_completion(v);
  }
  void on_initiate(std::function<void(const ExchangeEvent&)> observer) {
    initiate_observer_ = std::move(observer);
  }
  void on_delivered(std::function<void(const ExchangeEvent&)> observer) {
    deliver_observer_ = std::move(observer);
  }

  NodeView view(NodeId v) {
    return NodeView(v, round_, ids_[v], g_.neighbors(v), known_[v], rngs_[v]);
  }

  /// Runs rounds until every node reports done or the global round cap is hit.
  /// Returns the number of rounds this phase consumed.
  std::uint64_t run_phase(ProtocolHook<Payload>& hook) {
    if (pending_count_ != 0) {
      throw ContractViolation("run_phase started with exchanges still in flight");
    }
    const std::uint64_t start = round_;
    while (!all_done(hook)) {
      if (round_ >= cfg_.max_rounds) {
        metrics_.hit_cap = true;
        break;
      }
      ++round_;
      deliver(hook);
      if (all_done(hook)) break;
      initiate(hook);
    }
    metrics_.rounds_elapsed = round_;
    return round_ - start;
  }

  /// Runs exactly `rounds` rounds (or up to the cap) regardless of is_done, initiating in
  /// each of them; exchanges still in flight at the end stay pending.
  std::uint64_t run_rounds(ProtocolHook<Payload>& hook, std::uint64_t rounds) {
    const std::uint64_t start = round_;
    for (std::uint64_t r = 0; r < rounds; ++r) {
      if (round_ >= cfg_.max_rounds) {
        metrics_.hit_cap = true;
        break;
      }
      ++round_;
      deliver(hook);
      initiate(hook);
    }
    metrics_.rounds_elapsed = round_;
    return round_ - start;
  }

  /// Runs rounds without new initiations until every pending exchange is delivered.
  std::uint64_t drain(ProtocolHook<Payload>& hook) {
    const std::uint64_t start = round_;
    while (pending_count_ != 0) {
      if (round_ >= cfg_.max_rounds) {
        metrics_.hit_cap = true;
        break;
      }
      ++round_;
      deliver(hook);
    }
    metrics_.rounds_elapsed = round_;
    return round_ - start;
  }

  /// Drops in-flight exchanges; nothing is delivered and no latency is learned from them.
  void abandon_pending() {
    metrics_.exchanges_abandoned += pending_count_;
    queue_.clear();
    pending_count_ = 0;
  }

 private:
  struct Pending {
    ExchangeEvent event;
    std::size_t initiator_index;  // responder in initiator's adjacency
    std::size_t responder_index;
    std::shared_ptr<const Payload> initiator_snapshot;
    std::shared_ptr<const Payload> responder_snapshot;
  };

  bool all_done(const ProtocolHook<Payload>& hook) const {
    for (NodeId v = 0; v < state_.size(); ++v) {
      if (!hook.is_done(v, state_[v], round_)) return false;
    }
    return true;
  }

  void check_completion(NodeId v) {
    if (completion_ && !metrics_.completion_round[v] && completion_(v, state_[v])) {
      metrics_.completion_round[v] = round_;
    }
  }

  void deliver(ProtocolHook<Payload>& hook) {
    auto it = queue_.find(round_);
    if (it == queue_.end()) return;
    std::vector<Pending> batch = std::move(it->second);
    queue_.erase(it);
    pending_count_ -= batch.size();
    for (Pending& p : batch) {
      const NodeId a = p.event.initiator;
      const NodeId b = p.event.responder;
      known_[a][p.initiator_index] = 1;
      known_[b][p.responder_index] = 1;
      {
        NodeView va = view(a);
        hook.on_deliver(va, state_[a], b, *p.responder_snapshot, true);
      }
      {
        NodeView vb = view(b);
        hook.on_deliver(vb, state_[b], a, *p.initiator_snapshot, false);
      }
      check_completion(a);
      check_completion(b);
      if (deliver_observer_) deliver_observer_(p.event);
    }
  }

  void initiate(ProtocolHook<Payload>& hook) {
    const auto n = static_cast<NodeId>(state_.size());
    std::vector<std::pair<NodeId, NodeId>> calls;
    for (NodeId v = 0; v < n; ++v) {
      NodeView nv = view(v);
      if (auto target = hook.on_round(nv, state_[v])) calls.emplace_back(v, *target);
    }
    if (calls.empty()) return;
    std::vector<std::shared_ptr<const Payload>> snaps(n);
    auto snap = [&](NodeId v) {
      if (!snaps[v]) snaps[v] = std::make_shared<const Payload>(hook.snapshot(v, state_[v]));
      return snaps[v];
    };
    for (auto [u, w] : calls) {
      const auto edge = g_.edge_id(u, w);
      if (!edge) {
        throw ContractViolation("node " + std::to_string(u) + " initiated toward non-neighbor " +
                                std::to_string(w));
      }
      const Latency lat = g_.edges()[*edge].latency;
      Pending p;
      p.event = {u, w, lat, round_, round_ + lat};
      p.initiator_index = *view(u).index_of(w);
      p.responder_index = *view(w).index_of(u);
      p.initiator_snapshot = snap(u);
      p.responder_snapshot = snap(w);
      ++metrics_.exchanges_initiated;
      ++metrics_.activations_by_class[latency_class(lat)];
      if (cfg_.trace_level == TraceLevel::full) metrics_.trace.push_back(p.event);
      if (initiate_observer_) initiate_observer_(p.event);
      queue_[p.event.deliver_round].push_back(std::move(p));
      ++pending_count_;
    }
  }

  const LatencyGraph& g_;
  SimConfig cfg_;
  std::vector<Payload> state_;
  std::vector<std::vector<NodeId>> ids_;
  std::vector<std::vector<char>> known_;
  std::vector<Rng> rngs_;
  std::uint64_t round_ = 0;
  std::map<std::uint64_t, std::vector<Pending>> queue_;
  std::size_t pending_count_ = 0;
  Metrics metrics_;
  std::function<bool(NodeId, const Payload&)> completion_;
  std::function<void(const ExchangeEvent&)> initiate_observer_;
  std::function<void(const ExchangeEvent&)> deliver_observer_;
};

}  // namespace latgossip
