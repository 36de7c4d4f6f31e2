#include "latgossip/conductance.hpp"

#include <algorithm>
#include <set>

namespace latgossip {

CapExceeded::CapExceeded(std::size_t n, std::size_t cap)
    : std::runtime_error("graph has " + std::to_string(n) + " nodes, above the exact cap of " +
                         std::to_string(cap) +
                         "; use the sampled estimator (estimate_conductance / analyze --approx)") {}

namespace {

void require_cap(const LatencyGraph& g, const ExactOptions& opts) {
  if (g.node_count() > opts.cap) throw CapExceeded(g.node_count(), opts.cap);
}

Cut cut_from_mask(const LatencyGraph& g, std::uint64_t mask) {
  std::vector<bool> in_side(g.node_count(), false);
  for (std::size_t v = 0; v + 1 < g.node_count(); ++v) in_side[v] = (mask >> v) & 1U;
  return make_cut(g, in_side);
}

Rational to_rational(const detail::ScanBest& b) { return Rational(b.num, b.den); }

}  // namespace

Rational phi_ell_cut(const LatencyGraph& g, const Cut& cut, Latency ell) {
  if (cut.in_side.size() != g.node_count()) throw GraphError("cut does not match graph");
  const std::uint64_t S = cut.min_volume();
  if (S == 0) throw GraphError("cut side has zero volume");
  std::int64_t crossing = 0;
  for (const Edge& e : g.edges()) {
    if (e.latency <= ell && cut.in_side[e.u] != cut.in_side[e.v]) ++crossing;
  }
  return Rational(crossing, static_cast<std::int64_t>(S));
}

Rational avg_cut_conductance(const LatencyGraph& g, const Cut& cut) {
  if (cut.in_side.size() != g.node_count()) throw GraphError("cut does not match graph");
  const std::uint64_t S = cut.min_volume();
  if (S == 0) throw GraphError("cut side has zero volume");
  Rational sum(0);
  for (const auto& [cls, count] : cut.class_counts) {
    sum += Rational(static_cast<std::int64_t>(count), std::int64_t{1} << cls);
  }
  return sum / static_cast<std::int64_t>(S);
}

CutOptimum phi_ell_exact(const LatencyGraph& g, Latency ell, const ExactOptions& opts) {
  require_cap(g, opts);
  const auto scan = detail::scan_cuts(g, opts.execution);
  auto it = std::upper_bound(scan.latencies.begin(), scan.latencies.end(), ell);
  if (it == scan.latencies.begin()) {
    return {Rational(0), cut_from_mask(g, scan.first_valid_mask)};
  }
  const auto& best = scan.per_latency[static_cast<std::size_t>(it - scan.latencies.begin()) - 1];
  return {to_rational(best), cut_from_mask(g, best.mask)};
}

namespace {

CriticalConductance pick_critical(const std::vector<Latency>& lats,
                                  const std::vector<Rational>& values) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < lats.size(); ++j) {
    if (values[j] / static_cast<std::int64_t>(lats[j]) >
        values[best] / static_cast<std::int64_t>(lats[best])) {
      best = j;
    }
  }
  CriticalConductance out;
  out.phi_star = values[best];
  out.ell_star = lats[best];
  return out;
}

}  // namespace

CriticalConductance critical_conductance(const LatencyGraph& g, const ExactOptions& opts) {
  require_cap(g, opts);
  const auto scan = detail::scan_cuts(g, opts.execution);
  std::vector<Rational> values;
  for (const auto& b : scan.per_latency) values.push_back(to_rational(b));
  auto out = pick_critical(scan.latencies, values);
  const auto idx = static_cast<std::size_t>(
      std::find(scan.latencies.begin(), scan.latencies.end(), out.ell_star) -
      scan.latencies.begin());
  out.witness = cut_from_mask(g, scan.per_latency[idx].mask);
  return out;
}

CutOptimum avg_conductance(const LatencyGraph& g, const ExactOptions& opts) {
  require_cap(g, opts);
  const auto scan = detail::scan_cuts(g, opts.execution);
  return {to_rational(scan.avg), cut_from_mask(g, scan.avg.mask)};
}

int count_nonempty_classes(const LatencyGraph& g) {
  std::set<int> classes;
  for (const Edge& e : g.edges()) classes.insert(latency_class(e.latency));
  return static_cast<int>(classes.size());
}

std::uint64_t MultiplicityGraph::volume(NodeId v) const {
  std::uint64_t vol = self_loops.at(v);
  for (const auto& [a, b] : edges) vol += (a == v) + (b == v);
  return vol;
}

MultiplicityGraph edge_induced_graph(const LatencyGraph& g, Latency ell) {
  MultiplicityGraph mg;
  mg.n = g.node_count();
  mg.self_loops.assign(mg.n, 0);
  for (const Edge& e : g.edges()) {
    if (e.latency <= ell) {
      mg.edges.emplace_back(e.u, e.v);
    } else {
      ++mg.self_loops[e.u];
      ++mg.self_loops[e.v];
    }
  }
  return mg;
}

Rational multigraph_conductance(const MultiplicityGraph& mg, std::size_t cap) {
  if (mg.n > cap) throw CapExceeded(mg.n, cap);
  if (mg.n < 2) throw GraphError("conductance needs at least two nodes");
  std::vector<std::uint64_t> vol(mg.n);
  std::uint64_t total = 0;
  for (NodeId v = 0; v < mg.n; ++v) total += vol[v] = mg.volume(v);

  std::optional<Rational> best;
  const std::uint64_t full = (std::uint64_t{1} << mg.n) - 1;
  for (std::uint64_t subset = 1; subset < full; ++subset) {
    std::uint64_t inside = 0;
    for (NodeId v = 0; v < mg.n; ++v) {
      if ((subset >> v) & 1U) inside += vol[v];
    }
    const std::uint64_t S = std::min(inside, total - inside);
    if (S == 0) continue;
    std::int64_t crossing = 0;
    for (const auto& [a, b] : mg.edges) crossing += ((subset >> a) & 1U) != ((subset >> b) & 1U);
    const Rational value(crossing, static_cast<std::int64_t>(S));
    if (!best || value < *best) best = value;
  }
  if (!best) throw GraphError("conductance undefined: no cut has positive volume");
  return *best;
}

namespace {

RelationCheck relation_from(const Rational& phi_star, Latency ell_star, const Rational& phi_avg,
                            int classes) {
  RelationCheck r;
  r.phi_star = phi_star;
  r.ell_star = ell_star;
  r.phi_avg = phi_avg;
  r.classes = classes;
  const auto ls = static_cast<std::int64_t>(ell_star);
  r.lower = phi_star / (2 * ls);
  r.upper = phi_star * static_cast<std::int64_t>(classes) / ls;
  r.lower_strict = r.lower < phi_avg;
  r.upper_strict = phi_avg < r.upper;
  r.boundary_hit = r.lower == phi_avg || r.upper == phi_avg;
  return r;
}

}  // namespace

RelationCheck check_relation(const LatencyGraph& g, const ExactOptions& opts) {
  auto report = analyze_exact(g, opts);
  return *report.relation;
}

ConductanceReport analyze_exact(const LatencyGraph& g, const ExactOptions& opts) {
  require_cap(g, opts);
  const auto scan = detail::scan_cuts(g, opts.execution);
  ConductanceReport report;
  std::vector<Rational> values;
  for (std::size_t j = 0; j < scan.latencies.size(); ++j) {
    values.push_back(to_rational(scan.per_latency[j]));
    report.phi_ell[scan.latencies[j]] = values.back();
    report.phi_ell_witness[scan.latencies[j]] = cut_from_mask(g, scan.per_latency[j].mask);
  }
  const auto crit = pick_critical(scan.latencies, values);
  report.phi_star = crit.phi_star;
  report.ell_star = crit.ell_star;
  report.phi_avg = to_rational(scan.avg);
  report.avg_witness = cut_from_mask(g, scan.avg.mask);
  report.classes = count_nonempty_classes(g);
  report.relation = relation_from(report.phi_star, report.ell_star, report.phi_avg, report.classes);
  return report;
}

}  // namespace latgossip
