#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "latgossip/engine.hpp"
#include "latgossip/graph.hpp"

namespace latgossip {

using Bitset = boost::dynamic_bitset<>;

/// Everything a node carries in an exchange.
struct NodeState {
  Bitset rumors;
  /// Ids gathered during the current DTG invocation; reset at every invocation.
  Bitset dtg_ids;
  /// Topology knowledge: edge ids and nodes whose working adjacency is fully known.
  Bitset edges;
  Bitset complete;
  /// Termination check.
  bool flag = false;
  bool failed = false;
  Bitset agg_union;
  Bitset agg_inter;
  bool flag_or = false;
};

/// Which parts of the counterpart's snapshot an exchange folds in.
struct Carry {
  bool rumors = true;
  bool topology = false;
  bool aggregates = false;
  bool failure = false;
  /// Compare rumor sets and raise the flag on mismatch without merging.
  bool compare = false;
};

void absorb(NodeState& self, const NodeState& peer, const Carry& carry);

enum class Dissemination { one_to_all, all_to_all };

/// One-to-all seeds only `source`; all-to-all seeds every node with its own rumor.
std::vector<NodeState> initial_states(std::size_t n, Dissemination mode, NodeId source = 0);

bool holds_all(const NodeState& s);

struct ProtocolRun {
  Metrics metrics;
  std::vector<NodeState> states;
  /// Round at which every node held every rumor it had to collect.
  std::optional<std::uint64_t> completion_round;
};

}  // namespace latgossip
