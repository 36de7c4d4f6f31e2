#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "latgossip/graph.hpp"
#include "latgossip/rational.hpp"

namespace latgossip {

enum class Execution { serial, parallel };

/// Exact routines enumerate all 2^{n-1}-1 cuts and refuse graphs above `cap` nodes.
struct ExactOptions {
  std::size_t cap = 20;
  Execution execution = Execution::parallel;
};

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::size_t n, std::size_t cap);
};

/// |E_ell(C)| / min(Vol(U), Vol(V \ U)).
Rational phi_ell_cut(const LatencyGraph& g, const Cut& cut, Latency ell);
/// (1/S) * sum_i |k_i(C)| / 2^i.
Rational avg_cut_conductance(const LatencyGraph& g, const Cut& cut);

struct CutOptimum {
  Rational value;
  Cut witness;
};

struct CriticalConductance {
  Rational phi_star;
  Latency ell_star = 1;
  Cut witness;
};

CutOptimum phi_ell_exact(const LatencyGraph& g, Latency ell, const ExactOptions& opts = {});
/// Maximizes phi_ell / ell over realized edge latencies; ties go to the smaller ell.
CriticalConductance critical_conductance(const LatencyGraph& g, const ExactOptions& opts = {});
CutOptimum avg_conductance(const LatencyGraph& g, const ExactOptions& opts = {});
int count_nonempty_classes(const LatencyGraph& g);

/// G_ell: E_ell edges with multiplicity 1 plus a self-loop of multiplicity
/// |E_u| - |E_{u,ell}| at every node u.
struct MultiplicityGraph {
  std::size_t n = 0;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<std::uint64_t> self_loops;

  std::uint64_t volume(NodeId v) const;
};

MultiplicityGraph edge_induced_graph(const LatencyGraph& g, Latency ell);
/// Classical conductance of a multigraph, self-loops counted in the volume. Serial brute force.
Rational multigraph_conductance(const MultiplicityGraph& mg, std::size_t cap = 20);

struct RelationCheck {
  Rational phi_star;
  Latency ell_star = 1;
  Rational phi_avg;
  int classes = 0;
  Rational lower;  // phi_star / (2 ell_star)
  Rational upper;  // classes * phi_star / ell_star
  bool lower_strict = false;
  bool upper_strict = false;
  bool boundary_hit = false;  // an inequality holds only with equality

  bool holds() const { return lower_strict && upper_strict; }
};

RelationCheck check_relation(const LatencyGraph& g, const ExactOptions& opts = {});

struct ConductanceReport {
  bool approximate = false;
  std::map<Latency, Rational> phi_ell;
  std::map<Latency, Cut> phi_ell_witness;
  Rational phi_star;
  Latency ell_star = 1;
  Rational phi_avg;
  Cut avg_witness;
  int classes = 0;
  std::optional<RelationCheck> relation;  // exact reports only
};

ConductanceReport analyze_exact(const LatencyGraph& g, const ExactOptions& opts = {});

/// Upper bounds from random subsets refined by single-node local search, plus all singletons.
ConductanceReport estimate_conductance(const LatencyGraph& g, std::uint64_t seed,
                                       std::size_t samples = 32);

namespace detail {

/// Best cut found for one objective: value num/den, node set encoded as a bitmask
/// over nodes 0..n-2 (node n-1 always sits outside).
struct ScanBest {
  std::int64_t num = 1;
  std::int64_t den = 0;  // den == 0 marks "nothing seen yet"
  std::uint64_t mask = 0;
};

struct ScanResult {
  std::vector<Latency> latencies;     // distinct latencies, ascending
  std::vector<ScanBest> per_latency;  // min phi_ell for each entry of `latencies`
  ScanBest avg;
  std::uint64_t first_valid_mask = 0;  // smallest mask whose cut has positive min volume
};

/// Single pass over every cut computing all phi_ell minima and the phi_avg minimum.
/// Ties resolve to the smallest mask for both execution modes.
ScanResult scan_cuts(const LatencyGraph& g, Execution execution);

}  // namespace detail

}  // namespace latgossip
