#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "latgossip/engine.hpp"
#include "latgossip/generators.hpp"
#include "latgossip/predicate.hpp"
#include "latgossip/protocols/state.hpp"

namespace latgossip {

class GameError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// T_{r+1} = T_r minus every pair whose B-component was hit in round r.
std::vector<PairAB> apply_update(std::span<const PairAB> target, std::span<const PairAB> guesses);

/// Alice against the oracle on A x B with |A| = |B| = m.
class GuessingGame {
 public:
  /// Throws GameError for m == 0 or a RandomTarget p outside (0, 1].
  GuessingGame(std::uint32_t m, const TargetPredicate& predicate, std::uint64_t seed);

  std::uint32_t m() const { return m_; }
  const std::vector<PairAB>& target() const { return target_; }
  const std::vector<PairAB>& initial_target() const { return initial_; }
  /// Rounds played so far.
  std::uint64_t round() const { return round_; }
  bool halted() const { return target_.empty(); }

  struct Reply {
    std::vector<PairAB> revealed;
    bool halted = false;
  };
  /// Throws GameError on more than 2m distinct guesses, a pair outside A x B, or a halted game.
  Reply submit(std::span<const PairAB> guesses);

 private:
  std::uint32_t m_;
  std::vector<PairAB> initial_;
  std::vector<PairAB> target_;
  std::uint64_t round_ = 0;
};

enum class Strategy { random_per_endpoint, adaptive_exhaustive };

std::string to_string(Strategy s);
Strategy parse_strategy(const std::string& name);

/// (a, random b) for every a plus (random a, b) for every b, each round.
std::uint64_t play_random_per_endpoint(GuessingGame& game, Rng& rng,
                                       std::uint64_t max_rounds = 100'000'000);
/// Cycles over B-components not hit yet, giving each the next untried a, never repeating.
std::uint64_t play_adaptive_exhaustive(GuessingGame& game, std::uint64_t max_rounds = 100'000'000);

/// Draws a target with derive_seed(seed, 1) and plays with randomness derive_seed(seed, 2).
std::uint64_t play(std::uint32_t m, const TargetPredicate& predicate, Strategy strategy,
                   std::uint64_t seed);

/// Push-pull whose goal is local broadcast: every node holds the rumor of each neighbor.
class LocalBroadcastPushPull : public ProtocolHook<NodeState> {
 public:
  explicit LocalBroadcastPushPull(const LatencyGraph& g) : g_(g) {}
  std::optional<NodeId> on_round(NodeView& view, NodeState& state) override;
  void on_deliver(NodeView& view, NodeState& state, NodeId peer, const NodeState& snapshot,
                  bool as_initiator) override;
  bool is_done(NodeId v, const NodeState& state, std::uint64_t round) const override;

 private:
  const LatencyGraph& g_;
};

struct ReductionReport {
  std::optional<std::uint64_t> completion_round;
  std::optional<std::uint64_t> halt_round;
  /// A hi-latency cross exchange completed at or before completion.
  bool slow_delivery = false;
  std::uint64_t guesses = 0;
  /// (round, pair) of every lo-latency cross activation.
  std::vector<std::pair<std::uint64_t, PairAB>> fast_activations;
  /// (game round, pair) of every oracle reveal.
  std::vector<std::pair<std::uint64_t, PairAB>> revealed;

  /// Completion without a slow delivery happens only after the mirrored game halted.
  bool reduction_holds() const;
};

/// Runs `hook` on the gadget and submits the cross-edge activations of each round as that
/// round's guesses. Completion is the hook's is_done over all nodes.
ReductionReport gossip_as_guessing(const Gadget& gadget, ProtocolHook<NodeState>& hook,
                                   const SimConfig& cfg);

}  // namespace latgossip
