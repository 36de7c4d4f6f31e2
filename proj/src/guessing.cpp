#include "latgossip/guessing.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace latgossip {

std::vector<PairAB> apply_update(std::span<const PairAB> target, std::span<const PairAB> guesses) {
  std::set<std::uint32_t> hit_b;
  for (const PairAB& x : guesses) {
    if (std::binary_search(target.begin(), target.end(), x)) hit_b.insert(x.b);
  }
  std::vector<PairAB> next;
  for (const PairAB& t : target) {
    if (!hit_b.contains(t.b)) next.push_back(t);
  }
  return next;
}

GuessingGame::GuessingGame(std::uint32_t m, const TargetPredicate& predicate, std::uint64_t seed)
    : m_(m) {
  if (m == 0) throw GameError("m must be >= 1");
  if (const auto* r = std::get_if<RandomTarget>(&predicate); r && !(r->p > 0.0 && r->p <= 1.0)) {
    throw GameError("RandomP needs p in (0, 1], got " + std::to_string(r->p));
  }
  Rng rng(seed);
  try {
    initial_ = draw_target_set(m, predicate, rng);
  } catch (const std::exception& e) {
    throw GameError(e.what());
  }
  target_ = initial_;
}

GuessingGame::Reply GuessingGame::submit(std::span<const PairAB> guesses) {
  if (halted()) throw GameError("game already halted");
  std::vector<PairAB> x(guesses.begin(), guesses.end());
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  if (x.size() > 2 * static_cast<std::size_t>(m_)) {
    throw GameError(std::to_string(x.size()) + " guesses exceed the limit of 2m = " +
                    std::to_string(2 * m_));
  }
  for (const PairAB& p : x) {
    if (p.a >= m_ || p.b >= m_) {
      throw GameError("guess (" + std::to_string(p.a) + "," + std::to_string(p.b) +
                      ") lies outside A x B");
    }
  }
  Reply reply;
  std::set_intersection(x.begin(), x.end(), target_.begin(), target_.end(),
                        std::back_inserter(reply.revealed));
  target_ = apply_update(target_, x);
  ++round_;
  reply.halted = halted();
  return reply;
}

std::string to_string(Strategy s) {
  return s == Strategy::random_per_endpoint ? "random-per-endpoint" : "adaptive-exhaustive";
}

Strategy parse_strategy(const std::string& name) {
  if (name == "random-per-endpoint" || name == "random") return Strategy::random_per_endpoint;
  if (name == "adaptive-exhaustive" || name == "adaptive") return Strategy::adaptive_exhaustive;
  throw GameError("unknown strategy '" + name + "'");
}

std::uint64_t play_random_per_endpoint(GuessingGame& game, Rng& rng, std::uint64_t max_rounds) {
  const std::uint32_t m = game.m();
  std::uniform_int_distribution<std::uint32_t> pick(0, m - 1);
  std::vector<PairAB> x;
  while (!game.halted() && game.round() < max_rounds) {
    x.clear();
    for (std::uint32_t a = 0; a < m; ++a) x.push_back({a, pick(rng)});
    for (std::uint32_t b = 0; b < m; ++b) x.push_back({pick(rng), b});
    game.submit(x);
  }
  return game.round();
}

std::uint64_t play_adaptive_exhaustive(GuessingGame& game, std::uint64_t max_rounds) {
  const std::uint32_t m = game.m();
  std::vector<std::uint32_t> next_a(m, 0);  // untried a's for column b are next_a[b]..m-1
  std::vector<char> covered(m, 0);
  std::vector<PairAB> x;
  while (!game.halted() && game.round() < max_rounds) {
    x.clear();
    bool progress = true;
    while (x.size() < 2 * static_cast<std::size_t>(m) && progress) {
      progress = false;
      for (std::uint32_t b = 0; b < m && x.size() < 2 * static_cast<std::size_t>(m); ++b) {
        if (covered[b] || next_a[b] >= m) continue;
        x.push_back({next_a[b]++, b});
        progress = true;
      }
    }
    if (x.empty()) break;  // every pair tried; cannot happen while a target remains
    for (const PairAB& hit : game.submit(x).revealed) covered[hit.b] = 1;
  }
  return game.round();
}

std::uint64_t play(std::uint32_t m, const TargetPredicate& predicate, Strategy strategy,
                   std::uint64_t seed) {
  GuessingGame game(m, predicate, derive_seed(seed, {1}));
  if (strategy == Strategy::adaptive_exhaustive) return play_adaptive_exhaustive(game);
  Rng rng(derive_seed(seed, {2}));
  return play_random_per_endpoint(game, rng);
}

std::optional<NodeId> LocalBroadcastPushPull::on_round(NodeView& view, NodeState&) {
  if (view.degree() == 0) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, view.degree() - 1);
  return view.neighbor(pick(view.rng()));
}

void LocalBroadcastPushPull::on_deliver(NodeView&, NodeState& state, NodeId,
                                        const NodeState& snapshot, bool) {
  state.rumors |= snapshot.rumors;
}

bool LocalBroadcastPushPull::is_done(NodeId v, const NodeState& state, std::uint64_t) const {
  for (const Neighbor& nb : g_.neighbors(v)) {
    if (!state.rumors.test(nb.node)) return false;
  }
  return true;
}

bool ReductionReport::reduction_holds() const {
  if (!completion_round || slow_delivery) return true;
  return halt_round.has_value() && *halt_round < *completion_round;
}

ReductionReport gossip_as_guessing(const Gadget& gadget, ProtocolHook<NodeState>& hook,
                                   const SimConfig& cfg) {
  const LatencyGraph& g = gadget.graph;
  const auto n = g.node_count();
  Engine<NodeState> engine(g, cfg, initial_states(n, Dissemination::all_to_all));
  ReductionReport report;
  std::map<std::uint64_t, std::vector<PairAB>> guesses_by_round;
  std::vector<std::uint64_t> slow_deliveries;
  std::set<PairAB> target(gadget.target.begin(), gadget.target.end());

  engine.on_initiate([&](const ExchangeEvent& e) {
    if (!gadget.is_cross(e.initiator, e.responder)) return;
    const PairAB pair = gadget.pair_of(e.initiator, e.responder);
    guesses_by_round[e.start_round].push_back(pair);
    if (target.contains(pair)) report.fast_activations.emplace_back(e.start_round, pair);
  });
  engine.on_delivered([&](const ExchangeEvent& e) {
    if (gadget.is_cross(e.initiator, e.responder) &&
        !target.contains(gadget.pair_of(e.initiator, e.responder))) {
      slow_deliveries.push_back(e.deliver_round);
    }
  });
  engine.set_completion([&](NodeId v, const NodeState& s) { return hook.is_done(v, s, 0); });
  engine.run_phase(hook);
  report.completion_round = engine.metrics().completed_at();
  if (report.completion_round) {
    for (std::uint64_t r : slow_deliveries) {
      if (r <= *report.completion_round) report.slow_delivery = true;
    }
  }

  GuessingGame game(gadget.m, ExplicitTarget{gadget.target}, 0);
  if (game.halted()) report.halt_round = 0;
  for (std::uint64_t r = 1; r <= engine.round() && !game.halted(); ++r) {
    auto it = guesses_by_round.find(r);
    std::vector<PairAB> x;
    if (it != guesses_by_round.end()) x = it->second;
    report.guesses += x.size();
    const auto reply = game.submit(x);
    for (const PairAB& p : reply.revealed) report.revealed.emplace_back(r, p);
    if (reply.halted) report.halt_round = r;
  }
  return report;
}

}  // namespace latgossip
