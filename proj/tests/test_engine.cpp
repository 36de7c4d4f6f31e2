#include <sstream>

#include "doctest.h"
#include "latgossip/engine.hpp"
#include "latgossip/generators.hpp"

using namespace latgossip;

namespace {

struct Bag {
  std::vector<NodeId> seen;
  std::uint64_t value = 0;
};

/// Scripted initiations: plan[v] maps a round to the target.
class Scripted : public ProtocolHook<Bag> {
 public:
  std::map<NodeId, std::map<std::uint64_t, NodeId>> plan;
  std::function<bool(NodeId, const Bag&)> done = [](NodeId, const Bag&) { return false; };
  std::vector<std::tuple<NodeId, NodeId, std::uint64_t, std::uint64_t>> deliveries;

  std::optional<NodeId> on_round(NodeView& view, Bag&) override {
    auto it = plan.find(view.id());
    if (it == plan.end()) return std::nullopt;
    auto r = it->second.find(view.round());
    if (r == it->second.end()) return std::nullopt;
    return r->second;
  }
  void on_deliver(NodeView& view, Bag& state, NodeId peer, const Bag& snapshot, bool) override {
    state.seen.push_back(peer);
    state.value = std::max(state.value, snapshot.value);
    deliveries.emplace_back(view.id(), peer, view.round(), snapshot.value);
  }
  bool is_done(NodeId v, const Bag& s, std::uint64_t) const override { return done(v, s); }
};

LatencyGraph two_nodes(Latency l) {
  LatencyGraph g(2);
  g.add_edge(0, 1, l);
  return g;
}

}  // namespace

TEST_CASE("single exchange completes at start plus latency") {
  auto g = two_nodes(3);
  Engine<Bag> engine(g, {}, std::vector<Bag>(2));
  Scripted hook;
  hook.plan[0][1] = 1;
  hook.done = [](NodeId, const Bag& s) { return !s.seen.empty(); };
  engine.run_phase(hook);
  CHECK(engine.metrics().rounds_elapsed == 4);
  CHECK(engine.states()[0].seen == std::vector<NodeId>{1});
  CHECK(engine.states()[1].seen == std::vector<NodeId>{0});
  CHECK(engine.metrics().exchanges_initiated == 1);
  CHECK(engine.metrics().activations_by_class.at(2) == 1);
}

TEST_CASE("initiations are non-blocking") {
  LatencyGraph g(3);
  g.add_edge(0, 1, 5);
  g.add_edge(0, 2, 1);
  Engine<Bag> engine(g, {.trace_level = TraceLevel::full}, std::vector<Bag>(3));
  Scripted hook;
  hook.plan[0][1] = 1;
  hook.plan[0][2] = 2;
  hook.done = [](NodeId v, const Bag& s) { return v == 0 ? s.seen.size() == 2 : !s.seen.empty(); };
  engine.run_phase(hook);
  CHECK(engine.metrics().rounds_elapsed == 6);
  const auto& trace = engine.metrics().trace;
  REQUIRE(trace.size() == 2);
  CHECK(trace[0].deliver_round == 6);
  CHECK(trace[1].deliver_round == 3);
  CHECK(engine.states()[0].seen == std::vector<NodeId>{2, 1});
  std::ostringstream line;
  write_trace_line(line, trace[0]);
  CHECK(line.str() == "1 0 1 5 6\n");
}

TEST_CASE("silent protocol runs into the cap") {
  auto g = two_nodes(1);
  Engine<Bag> engine(g, {.max_rounds = 17}, std::vector<Bag>(2));
  Scripted hook;
  engine.run_phase(hook);
  CHECK(engine.metrics().rounds_elapsed == 17);
  CHECK(engine.metrics().hit_cap);
  CHECK(engine.metrics().exchanges_initiated == 0);
  CHECK(engine.metrics().activations_by_class.empty());
}

TEST_CASE("already done protocols take zero rounds") {
  auto g = two_nodes(1);
  Engine<Bag> engine(g, {}, std::vector<Bag>(2));
  Scripted hook;
  hook.done = [](NodeId, const Bag&) { return true; };
  CHECK(engine.run_phase(hook) == 0);
  CHECK(engine.metrics().rounds_elapsed == 0);
}

TEST_CASE("snapshots are taken at the start round") {
  // 1 -> 2 carries value 7 at round 1 over latency 1; 0 -> 1 started at round 1 over latency 4
  // must not see it.
  LatencyGraph g(3);
  g.add_edge(0, 1, 4);
  g.add_edge(1, 2, 1);
  std::vector<Bag> init(3);
  init[2].value = 7;
  Engine<Bag> engine(g, {}, init);
  Scripted hook;
  hook.plan[0][1] = 1;
  hook.plan[1][1] = 2;
  engine.run_rounds(hook, 6);
  CHECK(engine.states()[1].value == 7);
  CHECK(engine.states()[0].value == 0);
}

TEST_CASE("contract violations") {
  LatencyGraph g(3);
  g.add_edge(0, 1, 2);
  g.add_edge(1, 2, 2);
  Engine<Bag> engine(g, {}, std::vector<Bag>(3));
  Scripted hook;
  hook.plan[0][1] = 2;
  CHECK_THROWS_AS(engine.run_phase(hook), ContractViolation);

  class Peeker : public Scripted {
   public:
    std::optional<NodeId> on_round(NodeView& view, Bag&) override {
      if (view.degree() > 0) last = view.latency(0);
      return std::nullopt;
    }
    Latency last = 0;
  };
  Engine<Bag> hidden(g, {.max_rounds = 2, .latencies_known = false}, std::vector<Bag>(3));
  Peeker peek;
  CHECK_THROWS_AS(hidden.run_phase(peek), ContractViolation);
  Engine<Bag> open(g, {.max_rounds = 2}, std::vector<Bag>(3));
  Peeker fine;
  CHECK_NOTHROW(open.run_phase(fine));
  CHECK(fine.last == 2);
}

TEST_CASE("latencies become visible after an exchange completes") {
  LatencyGraph g(3);
  g.add_edge(0, 1, 3);
  g.add_edge(0, 2, 5);
  Engine<Bag> engine(g, {.latencies_known = false}, std::vector<Bag>(3));
  Scripted hook;
  hook.plan[0][1] = 1;
  engine.run_rounds(hook, 3);
  CHECK_FALSE(engine.knows_latency(0, 0));
  engine.run_rounds(hook, 1);
  CHECK(engine.knows_latency(0, 0));
  CHECK(engine.knows_latency(1, 0));
  CHECK_FALSE(engine.knows_latency(0, 1));
  CHECK(engine.view(0).latency(0) == 3);
}

TEST_CASE("abandoned exchanges are dropped") {
  auto g = two_nodes(10);
  Engine<Bag> engine(g, {.latencies_known = false}, std::vector<Bag>(2));
  Scripted hook;
  hook.plan[0][1] = 1;
  engine.run_rounds(hook, 4);
  CHECK(engine.pending() == 1);
  CHECK_THROWS_AS(engine.run_phase(hook), ContractViolation);
  engine.abandon_pending();
  CHECK(engine.metrics().exchanges_abandoned == 1);
  engine.run_rounds(hook, 20);
  CHECK_FALSE(engine.knows_latency(0, 0));
}

TEST_CASE("per-node randomness is deterministic") {
  auto g = gen_clique(6);
  auto draw = [&](std::uint64_t seed) {
    Engine<Bag> engine(g, {.seed = seed}, std::vector<Bag>(6));
    std::vector<std::uint64_t> out;
    for (NodeId v = 0; v < 6; ++v) out.push_back(engine.view(v).rng()());
    return out;
  };
  CHECK(draw(3) == draw(3));
  CHECK(draw(3) != draw(4));
}
