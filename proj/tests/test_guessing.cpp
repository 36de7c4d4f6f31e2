#include <set>

#include "doctest.h"
#include "latgossip/guessing.hpp"
#include "latgossip/stats.hpp"

using namespace latgossip;

namespace {

GuessingGame explicit_game(std::uint32_t m, std::vector<PairAB> t) {
  return GuessingGame(m, ExplicitTarget{std::move(t)}, 0);
}

/// Set-comprehension form of the update: keep t unless some guessed target shares its b.
std::set<PairAB> oracle_update(const std::set<PairAB>& t, const std::set<PairAB>& x) {
  std::set<PairAB> out;
  for (const PairAB& keep : t) {
    bool removed = false;
    for (const PairAB& g : x) removed = removed || (t.count(g) && g.b == keep.b);
    if (!removed) out.insert(keep);
  }
  return out;
}

/// Never-initiating protocol.
class Silent : public ProtocolHook<NodeState> {
 public:
  std::optional<NodeId> on_round(NodeView&, NodeState&) override { return std::nullopt; }
  void on_deliver(NodeView&, NodeState&, NodeId, const NodeState&, bool) override {}
  bool is_done(NodeId, const NodeState&, std::uint64_t) const override { return false; }
};

}  // namespace

TEST_CASE("new game predicates") {
  CHECK(GuessingGame(4, SingletonTarget{}, 1).target().size() == 1);
  CHECK(GuessingGame(3, RandomTarget{1.0}, 1).target().size() == 9);
  auto empty = explicit_game(3, {});
  CHECK(empty.halted());
  CHECK(empty.round() == 0);
  CHECK_THROWS_AS(GuessingGame(3, RandomTarget{0.0}, 1), GameError);
  CHECK_THROWS_AS(GuessingGame(3, RandomTarget{1.5}, 1), GameError);
  CHECK_THROWS_AS(GuessingGame(0, SingletonTarget{}, 1), GameError);
}

TEST_CASE("submit examples") {
  auto one = explicit_game(2, {{0, 0}});
  std::vector<PairAB> g{{0, 0}};
  auto r = one.submit(g);
  CHECK(r.revealed == std::vector<PairAB>{{0, 0}});
  CHECK(r.halted);

  auto shared_b = explicit_game(2, {{0, 0}, {1, 0}});
  CHECK(shared_b.submit(g).halted);

  auto shared_a = explicit_game(2, {{0, 0}, {0, 1}});
  auto r3 = shared_a.submit(g);
  CHECK_FALSE(r3.halted);
  CHECK(shared_a.target() == std::vector<PairAB>{{0, 1}});

  // a miss on a live column removes nothing
  auto miss = explicit_game(2, {{0, 0}});
  std::vector<PairAB> wrong{{1, 0}};
  CHECK(miss.submit(wrong).revealed.empty());
  CHECK_FALSE(miss.halted());
}

TEST_CASE("submit rejects bad guesses") {
  auto game = explicit_game(2, {{0, 0}});
  std::vector<PairAB> too_many{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {0, 0}};
  CHECK_NOTHROW(explicit_game(2, {{1, 1}}).submit(too_many));  // duplicates collapse to 4
  auto g2 = GuessingGame(3, SingletonTarget{}, 4);
  std::vector<PairAB> seven{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}, {2, 0}};
  CHECK_THROWS_AS(g2.submit(seven), GameError);
  std::vector<PairAB> outside{{2, 0}};
  CHECK_THROWS_AS(game.submit(outside), GameError);
  std::vector<PairAB> hit{{0, 0}};
  game.submit(hit);
  CHECK_THROWS_AS(game.submit(hit), GameError);
}

TEST_CASE("update rule agrees with the set-comprehension oracle exhaustively") {
  for (std::uint32_t m = 1; m <= 3; ++m) {
    std::vector<PairAB> all;
    for (std::uint32_t a = 0; a < m; ++a)
      for (std::uint32_t b = 0; b < m; ++b) all.push_back({a, b});
    const std::uint32_t cells = m * m;
    for (std::uint32_t tm = 1; tm < (1u << cells); ++tm) {
      std::set<PairAB> t;
      for (std::uint32_t i = 0; i < cells; ++i)
        if ((tm >> i) & 1u) t.insert(all[i]);
      for (std::uint32_t xm = 0; xm < (1u << cells); ++xm) {
        std::set<PairAB> x;
        for (std::uint32_t i = 0; i < cells; ++i)
          if ((xm >> i) & 1u) x.insert(all[i]);
        if (x.size() > 2 * m) continue;
        auto game = explicit_game(m, {t.begin(), t.end()});
        std::vector<PairAB> xv(x.begin(), x.end());
        const auto reply = game.submit(xv);
        const auto expect = oracle_update(t, x);
        REQUIRE(std::set<PairAB>(game.target().begin(), game.target().end()) == expect);
        CHECK(reply.halted == expect.empty());
        CHECK(game.target().size() <= t.size());
      }
    }
  }
}

TEST_CASE("strategies") {
  Rng rng(1);
  auto single = explicit_game(1, {{0, 0}});
  CHECK(play_random_per_endpoint(single, rng) == 1);
  auto single2 = explicit_game(1, {{0, 0}});
  CHECK(play_adaptive_exhaustive(single2) == 1);

  // every possible singleton target on m = 8 is found within 4 rounds
  for (std::uint32_t a = 0; a < 8; ++a) {
    for (std::uint32_t b = 0; b < 8; ++b) {
      auto game = explicit_game(8, {{a, b}});
      CHECK(play_adaptive_exhaustive(game) <= 4);
    }
  }
  std::vector<PairAB> full;
  for (std::uint32_t a = 0; a < 5; ++a)
    for (std::uint32_t b = 0; b < 5; ++b) full.push_back({a, b});
  auto everything = explicit_game(5, full);
  CHECK(play_adaptive_exhaustive(everything) == 1);

  CHECK(play(16, SingletonTarget{}, Strategy::random_per_endpoint, 3) ==
        play(16, SingletonTarget{}, Strategy::random_per_endpoint, 3));
  CHECK(parse_strategy(to_string(Strategy::adaptive_exhaustive)) == Strategy::adaptive_exhaustive);
  CHECK_THROWS_AS(parse_strategy("greedy"), GameError);
}

TEST_CASE("gossip as guessing") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto gadget = gen_gadget({.m = 8, .lo = 1, .hi = 1000, .predicate = SingletonTarget{},
                              .symmetric = true},
                             seed);
    LocalBroadcastPushPull hook(gadget.graph);
    auto report = gossip_as_guessing(gadget, hook, {.seed = seed});
    REQUIRE(report.completion_round);
    CHECK(report.reduction_holds());
    REQUIRE(report.halt_round);
    CHECK(*report.halt_round < *report.completion_round);
    CHECK_FALSE(report.slow_delivery);
    // each reveal lines up with a fast activation of the same round
    for (const auto& [round, pair] : report.revealed) {
      bool found = false;
      for (const auto& [r, p] : report.fast_activations) found = found || (r == round && p == pair);
      CHECK(found);
    }
    CHECK(report.revealed.front().first == report.fast_activations.front().first);
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto gadget = gen_gadget({.m = 6, .lo = 1, .hi = 64, .predicate = RandomTarget{0.25}}, seed);
    LocalBroadcastPushPull hook(gadget.graph);
    CHECK(gossip_as_guessing(gadget, hook, {.seed = seed}).reduction_holds());
  }

  auto gadget = gen_gadget({.m = 4, .lo = 1, .hi = 50, .predicate = SingletonTarget{}}, 1);
  Silent silent;
  auto none = gossip_as_guessing(gadget, silent, {.max_rounds = 30});
  CHECK_FALSE(none.completion_round);
  CHECK(none.guesses == 0);
  CHECK_FALSE(none.halt_round);
}

TEST_CASE("stats helpers") {
  std::vector<double> x{1, 2, 3, 4};
  std::vector<double> y{3, 5, 7, 9};
  auto fit = linear_fit(x, y);
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(1.0));
  CHECK(fit.r2 == doctest::Approx(1.0));
  std::vector<double> y2{2, 4, 6, 8};
  CHECK(fit_through_origin(x, y2) == doctest::Approx(2.0));
  CHECK(worst_factor(x, y2, 1.0) == doctest::Approx(2.0));
  CHECK(median({5, 1, 3}) == 3);
  CHECK(median({4, 1, 3, 2}) == 2.5);
}
