#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "latgossip/experiments.hpp"
#include "latgossip/generators.hpp"
#include "latgossip/guessing.hpp"
#include "latgossip/protocols/dtg.hpp"
#include "latgossip/protocols/push_pull.hpp"
#include "latgossip/protocols/spanner.hpp"
#include "latgossip/shortest_paths.hpp"
#include "latgossip/stats.hpp"

namespace latgossip {

namespace {

using namespace acceptance;

std::uint64_t uniform(std::uint64_t seed, std::uint64_t lo, std::uint64_t hi) {
  return lo + derive_seed(seed, {0}) % (hi - lo + 1);
}

std::vector<std::pair<std::string, std::string>> base_config(const VerifyConfig& cfg, int id) {
  return {{"criterion", std::to_string(id)}, {"seed", std::to_string(cfg.seed)}};
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
  return out;
}

LatencyGraph two_node(Latency l) {
  LatencyGraph g(2);
  g.add_edge(0, 1, l);
  return g;
}

LatencyGraph triangle_114() {
  LatencyGraph g(3);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 1);
  g.add_edge(0, 2, 4);
  return g;
}

}  // namespace

CriterionResult check_conductance_equivalence(const VerifyConfig& cfg, Artifacts& out) {
  struct Row {
    std::size_t n = 0, m = 0;
    std::vector<std::tuple<Latency, Rational, Rational>> values;
  };
  std::vector<Row> rows(kConductanceInstances);
  parallel_for(rows.size(), cfg.jobs, [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(cfg.seed, {1, i});
    const auto n = static_cast<std::uint32_t>(uniform(seed, 2, kConductanceMaxN));
    const double p = 0.2 + 0.7 * hash_unit(seed, {1});
    auto g = gen_random_connected(n, p, 1, 64, seed);
    Row& r = rows[i];
    r.n = n;
    r.m = g.edge_count();
    for (Latency ell : g.distinct_latencies()) {
      const auto direct = phi_ell_exact(g, ell, {.execution = Execution::serial}).value;
      const auto multi = multigraph_conductance(edge_induced_graph(g, ell));
      r.values.emplace_back(ell, direct, multi);
    }
  });
  Csv csv(base_config(cfg, 1),
          {"instance", "n", "edges", "ell", "phi_cut", "phi_multigraph", "equal"});
  std::size_t checks = 0, mismatches = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& [ell, a, b] : rows[i].values) {
      ++checks;
      if (a != b) ++mismatches;
      csv.row(i, rows[i].n, rows[i].m, ell, to_string(a), to_string(b), a == b);
    }
  }
  out.add("c1_conductance_equivalence.csv", csv.str());
  std::ostringstream d;
  d << checks << " (instance, ell) pairs, " << mismatches << " mismatches";
  return {1, "conductance equivalence", mismatches == 0 && checks > 0, d.str()};
}

CriterionResult check_relation_sandwich(const VerifyConfig& cfg, Artifacts& out) {
  std::vector<std::pair<std::size_t, RelationCheck>> rows(kRelationInstances);
  parallel_for(rows.size(), cfg.jobs, [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(cfg.seed, {2, i});
    const auto n = static_cast<std::uint32_t>(uniform(seed, 3, 12));
    auto g = gen_random_connected(n, 0.4, 1, 64, seed);
    rows[i] = {n, check_relation(g, {.execution = Execution::serial})};
  });
  Csv csv(base_config(cfg, 2), {"instance", "n", "phi_star", "ell_star", "phi_avg", "L", "lower",
                                "upper", "holds", "boundary_hit"});
  int failures = 0;
  auto emit = [&](const std::string& name, std::size_t n, const RelationCheck& c) {
    if (!c.holds()) ++failures;
    csv.row(name, n, to_string(c.phi_star), c.ell_star, to_string(c.phi_avg), c.classes,
            to_string(c.lower), to_string(c.upper), c.holds(), c.boundary_hit);
  };
  for (std::size_t i = 0; i < rows.size(); ++i) emit(std::to_string(i), rows[i].first, rows[i].second);

  // worked examples with their exact bounds
  const auto two = check_relation(two_node(5));
  const auto tri = check_relation(triangle_114());
  emit("two-node-5", 2, two);
  emit("triangle-1-1-4", 3, tri);
  const bool examples = two.lower == Rational(1, 10) && two.phi_avg == Rational(1, 8) &&
                        two.upper == Rational(1, 5) && tri.lower == Rational(1, 4) &&
                        tri.phi_avg == Rational(3, 8) && tri.upper == Rational(1);
  out.add("c2_relation.csv", csv.str());
  std::ostringstream d;
  d << rows.size() << " random instances + 2 examples, " << failures << " strict violations"
    << (examples ? "" : ", example values differ");
  return {2, "conductance sandwich", failures == 0 && examples, d.str()};
}

CriterionResult check_ring_analytics(const VerifyConfig& cfg, Artifacts& out) {
  Csv csv(base_config(cfg, 3),
          {"s", "k", "ell", "nodes", "regular", "phi_halving", "expected", "equal"});
  int failures = 0, cases = 0;
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> shapes{{3, 6}, {4, 8}, {5, 10}};
  for (const auto& [s, k] : shapes) {
    for (Latency ell : {1u, 4u, 16u, 64u}) {
      auto ring = gen_ring_of_gadgets(s, k, ell, derive_seed(cfg.seed, {3, s, ell}));
      const auto& g = ring.graph;
      bool regular = g.node_count() == std::size_t{s} * k;
      for (NodeId v = 0; v < g.node_count(); ++v) regular = regular && g.degree(v) == 3 * s - 1;
      const auto cut = make_cut(g, ring.halving_side());
      const auto phi = phi_ell_cut(g, cut, ell);
      const std::int64_t half = std::int64_t{k} * s / 2;
      const Rational expected(2 * std::int64_t{s} * s, half * (3 * std::int64_t{s} - 1));
      const bool ok = regular && phi == expected;
      ++cases;
      if (!ok) ++failures;
      csv.row(s, k, ell, g.node_count(), regular, to_string(phi), to_string(expected), phi == expected);
    }
  }
  out.add("c3_ring_analytics.csv", csv.str());
  std::ostringstream d;
  d << cases << " rings, " << failures << " failures";
  return {3, "ring gadget analytics", failures == 0, d.str()};
}

CriterionResult check_game_scaling(const VerifyConfig& cfg, Artifacts& out) {
  const std::vector<std::uint32_t> ms{16, 32, 64, 128};
  const std::vector<double> ps{1.0 / 2, 1.0 / 4, 1.0 / 8, 1.0 / 16};
  const std::uint32_t pm = 64;
  const std::vector<Strategy> strategies{Strategy::random_per_endpoint,
                                         Strategy::adaptive_exhaustive};
  struct Job {
    bool singleton;
    Strategy strategy;
    std::uint32_t m;
    double p;
    std::size_t point;
    int trial;
  };
  std::vector<Job> jobs;
  for (std::size_t si = 0; si < strategies.size(); ++si) {
    for (std::size_t mi = 0; mi < ms.size(); ++mi)
      for (int t = 0; t < kGameTrials; ++t) jobs.push_back({true, strategies[si], ms[mi], 0, mi, t});
    for (std::size_t pi = 0; pi < ps.size(); ++pi)
      for (int t = 0; t < kGameTrials; ++t) jobs.push_back({false, strategies[si], pm, ps[pi], pi, t});
  }
  std::vector<std::uint64_t> rounds(jobs.size());
  parallel_for(jobs.size(), cfg.jobs, [&](std::size_t i) {
    const Job& j = jobs[i];
    const std::uint64_t seed =
        derive_seed(cfg.seed, {4, j.singleton, static_cast<std::uint64_t>(j.strategy), j.point,
                               static_cast<std::uint64_t>(j.trial)});
    const TargetPredicate pred =
        j.singleton ? TargetPredicate{SingletonTarget{}} : TargetPredicate{RandomTarget{j.p}};
    rounds[i] = play(j.m, pred, j.strategy, seed);
  });

  auto cfgv = base_config(cfg, 4);
  cfgv.emplace_back("trials", std::to_string(kGameTrials));
  Csv csv(cfgv, {"predicate", "strategy", "m", "p", "trial", "rounds"});
  // mean rounds per (singleton, strategy, point)
  std::map<std::tuple<bool, Strategy, std::size_t>, std::vector<double>> samples;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Job& j = jobs[i];
    csv.row(j.singleton ? "singleton" : "random", to_string(j.strategy), j.m,
            j.singleton ? 0.0 : j.p, j.trial, rounds[i]);
    samples[{j.singleton, j.strategy, j.point}].push_back(static_cast<double>(rounds[i]));
  }

  Csv fits(cfgv, {"check", "strategy", "statistic", "value", "threshold", "pass"});
  bool pass = true;
  std::vector<std::string> notes;
  for (Strategy s : strategies) {
    std::vector<double> x, y;
    for (std::size_t mi = 0; mi < ms.size(); ++mi) {
      x.push_back(ms[mi]);
      y.push_back(mean(samples[{true, s, mi}]));
    }
    const auto fit = linear_fit(x, y);
    const bool ok = fit.r2 >= kGameR2;
    pass = pass && ok;
    fits.row("singleton-linear", to_string(s), "r2", fit.r2, kGameR2, ok);
    fits.row("singleton-linear", to_string(s), "slope", fit.slope, 0.0, true);
    notes.push_back(to_string(s) + " singleton r2=" + format_double(fit.r2));

    std::vector<double> px, py;
    for (std::size_t pi = 0; pi < ps.size(); ++pi) {
      px.push_back(s == Strategy::random_per_endpoint ? std::log2(double(pm)) / ps[pi]
                                                      : 1.0 / ps[pi]);
      py.push_back(mean(samples[{false, s, pi}]));
    }
    const double c = fit_through_origin(px, py);
    const double worst = worst_factor(px, py, c);
    const bool pok = worst <= kGameFactor;
    pass = pass && pok;
    fits.row(s == Strategy::random_per_endpoint ? "random-log-m-over-p" : "random-one-over-p",
             to_string(s), "worst_factor", worst, kGameFactor, pok);
    fits.row(s == Strategy::random_per_endpoint ? "random-log-m-over-p" : "random-one-over-p",
             to_string(s), "c", c, 0.0, true);
    notes.push_back(to_string(s) + " randomP factor=" + format_double(worst));
  }
  out.add("c4_game_rounds.csv", csv.str());
  out.add("c4_game_fits.csv", fits.str());
  return {4, "guessing game scaling", pass, join(notes)};
}

CriterionResult check_push_pull_bound(const VerifyConfig& cfg, Artifacts& out) {
  const std::vector<double> phis{1.0 / 2, 1.0 / 4, 1.0 / 8};
  struct Trial {
    std::optional<std::uint64_t> rounds;
    Rational phi_star;
    Latency ell_star = 1;
  };
  const std::size_t seeds = kGadgetSeeds;
  std::vector<Trial> trials(phis.size() * seeds);
  parallel_for(trials.size(), cfg.jobs, [&](std::size_t i) {
    const std::size_t pi = i / seeds;
    const std::uint64_t seed = derive_seed(cfg.seed, {5, pi, i % seeds});
    auto gadget = gen_gadget(
        {.m = kGadgetM, .lo = 1, .hi = kGadgetHi, .predicate = RandomTarget{phis[pi]}}, seed);
    const auto report = estimate_conductance(gadget.graph, seed, 8);
    auto run = push_pull(gadget.graph, Dissemination::one_to_all, 0,
                         {.seed = seed, .max_rounds = 100'000});
    trials[i] = {run.completion_round, report.phi_star, report.ell_star};
  });

  auto cfgv = base_config(cfg, 5);
  cfgv.emplace_back("m", std::to_string(kGadgetM));
  cfgv.emplace_back("hi", std::to_string(kGadgetHi));
  cfgv.emplace_back("C", format_double(kPushPullC));
  Csv csv(cfgv, {"phi", "trial", "rounds", "phi_star_est", "ell_star_est"});
  Csv summary(cfgv, {"phi", "median_rounds", "median_ell_over_phi", "bound", "ratio", "pass"});
  const double log_n = std::log2(2.0 * kGadgetM);
  bool pass = true;
  std::vector<std::string> notes;
  for (std::size_t pi = 0; pi < phis.size(); ++pi) {
    std::vector<double> rounds, ratio;
    bool all_done = true;
    for (std::size_t t = 0; t < seeds; ++t) {
      const auto& tr = trials[pi * seeds + t];
      all_done = all_done && tr.rounds.has_value();
      rounds.push_back(tr.rounds ? double(*tr.rounds) : double(1'000'000));
      ratio.push_back(double(tr.ell_star) / to_double(tr.phi_star));
      csv.row(phis[pi], t, tr.rounds ? std::to_string(*tr.rounds) : std::string(),
              to_string(tr.phi_star), tr.ell_star);
    }
    const double med = median(rounds);
    const double shape = median(ratio);
    const double bound = kPushPullC * shape * log_n;
    const bool ok = all_done && med <= bound;
    pass = pass && ok;
    summary.row(phis[pi], med, shape, bound, med / (shape * log_n), ok);
    notes.push_back("phi=" + format_double(phis[pi]) + " median=" + format_double(med) +
                    " bound=" + format_double(bound));
  }
  out.add("c5_push_pull_trials.csv", csv.str());
  out.add("c5_push_pull_summary.csv", summary.str());
  return {5, "push-pull upper bound shape", pass, join(notes)};
}

CriterionResult check_spanner_properties(const VerifyConfig& cfg, Artifacts& out) {
  struct Variant {
    std::string name;
    Latency max_latency;
    std::uint32_t k;  // 0 = default
  };
  const std::vector<Variant> variants{{"unit", 1, 0},     {"unit", 1, 2},     {"unit", 1, 3},
                                      {"weighted", 16, 0}, {"weighted", 16, 2}, {"weighted", 16, 3}};
  struct Row {
    std::uint32_t k = 0;
    std::size_t edges = 0, spanner_edges = 0, out_degree = 0;
    double stretch = 0, degree_bound = 0;
    bool stretch_ok = false, degree_ok = false;
  };
  const std::size_t seeds = kSpannerSeeds;
  std::vector<Row> rows(variants.size() * seeds);
  parallel_for(rows.size(), cfg.jobs, [&](std::size_t i) {
    const Variant& v = variants[i / seeds];
    const std::size_t s = i % seeds;
    // the graph depends only on (flavour, seed) so k variants share instances
    const std::uint64_t gseed = derive_seed(cfg.seed, {6, v.max_latency, s});
    auto g = gen_random_connected(kSpannerN, 0.1, 1, v.max_latency, gseed);
    const auto params = resolve({.k = v.k, .seed = derive_seed(gseed, {v.k})}, g.node_count());
    const auto h = build_spanner(g, params);
    const auto dg = all_pairs_distances(g);
    const auto dh = all_pairs_distances(h.as_graph());
    Row& r = rows[i];
    r.k = params.k;
    r.edges = g.edge_count();
    r.spanner_edges = h.edge_count();
    r.out_degree = h.max_out_degree();
    r.stretch_ok = true;
    for (NodeId a = 0; a < g.node_count(); ++a) {
      for (NodeId b = a + 1; b < g.node_count(); ++b) {
        if (dg[a][b] == kUnreachable) continue;
        if (dh[a][b] == kUnreachable || dh[a][b] > (2ull * params.k - 1) * dg[a][b]) r.stretch_ok = false;
        if (dh[a][b] != kUnreachable)
          r.stretch = std::max(r.stretch, double(dh[a][b]) / double(dg[a][b]));
      }
    }
    r.degree_bound = kSpannerC * std::pow(double(params.n_hat), 1.0 / params.k) *
                     std::log2(double(g.node_count()));
    r.degree_ok = double(r.out_degree) <= r.degree_bound;
  });
  auto cfgv = base_config(cfg, 6);
  cfgv.emplace_back("n", std::to_string(kSpannerN));
  cfgv.emplace_back("C", format_double(kSpannerC));
  Csv csv(cfgv, {"variant", "k", "seed_index", "edges", "spanner_edges", "stretch",
                 "stretch_ok", "max_out_degree", "degree_bound", "degree_ok"});
  bool pass = true;
  std::vector<std::string> notes;
  for (std::size_t vi = 0; vi < variants.size(); ++vi) {
    int failures = 0;
    for (std::size_t s = 0; s < seeds; ++s) {
      const Row& r = rows[vi * seeds + s];
      if (!r.stretch_ok || !r.degree_ok) ++failures;
      csv.row(variants[vi].name, r.k, s, r.edges, r.spanner_edges, r.stretch, r.stretch_ok,
              r.out_degree, r.degree_bound, r.degree_ok);
    }
    pass = pass && failures <= kSpannerMaxFailures;
    notes.push_back(variants[vi].name + " k=" + std::to_string(rows[vi * seeds].k) + ": " +
                    std::to_string(failures) + " failing seeds");
  }
  out.add("c6_spanner.csv", csv.str());
  return {6, "spanner properties", pass, join(notes)};
}

CriterionResult check_dtg_postconditions(const VerifyConfig& cfg, Artifacts& out) {
  struct Row {
    std::size_t n = 0;
    Latency ell = 1, k = 1;
    std::uint64_t dtg_rounds = 0, t_rounds = 0;
    double dtg_bound = 0, t_bound = 0;
    std::size_t dtg_violations = 0, t_violations = 0;
  };
  std::vector<Row> rows(kDtgGraphs);
  parallel_for(rows.size(), cfg.jobs, [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(cfg.seed, {7, i});
    const auto n = static_cast<std::uint32_t>(uniform(seed, 4, kDtgMaxN));
    const double p = std::min(1.0, 2.5 * std::log(double(n)) / n);
    auto g = gen_random_connected(n, p, 1, 16, seed);
    Row& r = rows[i];
    r.n = n;
    r.ell = static_cast<Latency>(uniform(derive_seed(seed, {1}), 1, 16));
    r.k = Latency{1} << uniform(derive_seed(seed, {2}), 0, 5);

    auto dtg = l_dtg(g, r.ell, {.seed = seed});
    for (const Edge& e : g.edges()) {
      if (e.latency > r.ell) continue;
      const auto& s = dtg.states;
      if (!s[e.u].rumors.test(e.v) || !s[e.v].rumors.test(e.u)) ++r.dtg_violations;
    }
    r.dtg_rounds = dtg.metrics.rounds_elapsed;
    r.dtg_bound = dtg_round_bound(g, r.ell, kDtgC);

    auto t = run_t_sequence(g, r.k, {.seed = seed});
    const auto d = all_pairs_distances(g);
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v)
        if (d[u][v] <= r.k && (!t.states[u].rumors.test(v) || !t.states[v].rumors.test(u)))
          ++r.t_violations;
    r.t_rounds = t.metrics.rounds_elapsed;
    r.t_bound = t_round_bound(n, r.k, kTkC);
  });
  auto cfgv = base_config(cfg, 7);
  cfgv.emplace_back("c_dtg", format_double(kDtgC));
  cfgv.emplace_back("c_tk", format_double(kTkC));
  Csv csv(cfgv, {"graph", "n", "ell", "dtg_rounds", "dtg_bound", "dtg_violations", "k",
                 "t_rounds", "t_bound", "t_violations"});
  std::size_t violations = 0, over = 0;
  double worst_dtg = 0, worst_t = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    violations += r.dtg_violations + r.t_violations;
    if (double(r.dtg_rounds) > r.dtg_bound || double(r.t_rounds) > r.t_bound) ++over;
    if (r.dtg_bound > 0) worst_dtg = std::max(worst_dtg, r.dtg_rounds / (r.dtg_bound / kDtgC));
    worst_t = std::max(worst_t, r.t_rounds / (r.t_bound / kTkC));
    csv.row(i, r.n, r.ell, r.dtg_rounds, r.dtg_bound, r.dtg_violations, r.k, r.t_rounds,
            r.t_bound, r.t_violations);
  }
  out.add("c7_dtg_tk.csv", csv.str());
  std::ostringstream d;
  d << violations << " coverage violations, " << over << " bound overruns, worst constants dtg="
    << format_double(worst_dtg) << " tk=" << format_double(worst_t);
  return {7, "DTG and T(k) postconditions", violations == 0 && over == 0, d.str()};
}

CriterionResult check_termination(const VerifyConfig& cfg, Artifacts& out) {
  struct Row {
    std::string protocol;
    bool known = true;
    std::size_t n = 0;
    std::size_t terminated = 0, missing = 0;
    bool same_round = false;
    std::optional<std::uint64_t> round;
    Latency final_estimate = 0;
  };
  std::vector<Row> rows(kTerminationRuns);
  parallel_for(rows.size(), cfg.jobs, [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(cfg.seed, {8, i});
    const auto n = static_cast<std::uint32_t>(uniform(seed, 2, 14));
    auto g = gen_random_connected(n, 0.35, 1, 12, seed);
    Row& r = rows[i];
    r.protocol = i % 2 ? "path-discovery" : "general-eid";
    r.known = (i / 2) % 4 != 3;  // a quarter of the runs start with hidden latencies
    r.n = n;
    SimConfig sc{.seed = seed, .latencies_known = r.known};
    const GuessDoubleRun run = i % 2 ? path_discovery(g, sc)
                                     : general_eid(g, {.spanner = {.seed = seed}}, sc);
    r.same_round = true;
    for (NodeId v = 0; v < n; ++v) {
      const auto& t = run.termination_round[v];
      if (!t) {
        r.same_round = false;
        continue;
      }
      ++r.terminated;
      if (!holds_all(run.states[v])) ++r.missing;
      if (!r.round) r.round = t;
      if (*r.round != *t) r.same_round = false;
    }
    r.final_estimate = run.estimates.empty() ? 0 : run.estimates.back();
  });
  Csv csv(base_config(cfg, 8), {"run", "protocol", "latencies_known", "n", "terminated",
                                "missing_rumor", "same_round", "termination_round",
                                "final_estimate"});
  std::size_t violations = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    violations += r.missing + (r.same_round ? 0 : 1);
    csv.row(i, r.protocol, r.known, r.n, r.terminated, r.missing, r.same_round,
            r.round ? std::to_string(*r.round) : std::string(), r.final_estimate);
  }
  out.add("c8_termination.csv", csv.str());
  return {8, "termination lemma", violations == 0,
          std::to_string(rows.size()) + " runs, " + std::to_string(violations) + " violations"};
}

CriterionResult check_tradeoff(const VerifyConfig& cfg, Artifacts& out) {
  const std::vector<Latency> ells{1, 4, 16, 64};
  const std::size_t seeds = kRingSeeds;
  std::vector<SimulateResult> runs(ells.size() * seeds);
  parallel_for(runs.size(), cfg.jobs, [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(cfg.seed, {9, i % seeds});
    auto ring = gen_ring_of_gadgets(kRingS, kRingK, ells[i / seeds], seed);
    SimulateOptions opts;
    opts.protocol = "unified";
    opts.pipeline.spanner.seed = seed;
    runs[i] = simulate(ring.graph, opts, {.seed = seed});
  });
  auto cfgv = base_config(cfg, 9);
  cfgv.emplace_back("s", std::to_string(kRingS));
  cfgv.emplace_back("k", std::to_string(kRingK));
  Csv csv(cfgv, {"ell", "trial", "push_pull_rounds", "spanner_rounds", "winner"});
  // majority winner per ell: push-pull = 0, spanner = 1
  std::vector<int> winner;
  std::vector<std::string> notes;
  for (std::size_t li = 0; li < ells.size(); ++li) {
    int spanner = 0;
    double pp_sum = 0, sp_sum = 0;
    for (std::size_t t = 0; t < seeds; ++t) {
      const auto& r = runs[li * seeds + t];
      const auto& j = r.json;
      auto rounds = [](const Json& x) {
        return x.is_null() ? std::string() : std::to_string(x.get<std::uint64_t>());
      };
      csv.row(ells[li], t, rounds(j["push_pull"]["completion_round"]),
              rounds(j["spanner"]["completion_round"]), r.winner);
      if (r.winner == "spanner") ++spanner;
      pp_sum += j["push_pull"]["completion_round"].is_null()
                    ? 0.0
                    : j["push_pull"]["completion_round"].get<double>();
      sp_sum += j["spanner"]["completion_round"].is_null()
                    ? 0.0
                    : j["spanner"]["completion_round"].get<double>();
    }
    winner.push_back(2 * spanner > static_cast<int>(seeds) ? 1 : 0);
    notes.push_back("ell=" + std::to_string(ells[li]) + ":" + (winner.back() ? "spanner" : "push-pull") +
                    " (spanner/push-pull=" + format_double(std::round(100 * sp_sum / pp_sum) / 100) + ")");
  }
  out.add("c9_tradeoff.csv", csv.str());
  // push-pull first, spanner last, and a single monotone switch in between
  const bool monotone = std::is_sorted(winner.begin(), winner.end());
  const bool flips = winner.front() == 0 && winner.back() == 1;
  return {9, "trade-off crossover", monotone && flips, join(notes)};
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      check_conductance_equivalence, check_relation_sandwich, check_ring_analytics,
      check_game_scaling,            check_push_pull_bound,   check_spanner_properties,
      check_dtg_postconditions,      check_termination,       check_tradeoff};
  return all;
}

bool VerifyReport::all_pass() const {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
}

VerifyReport run_verify(const VerifyConfig& cfg, const std::vector<int>& only) {
  VerifyReport report;
  const auto& all = criteria();
  for (std::size_t i = 0; i < all.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = all[i](cfg, report.artifacts);
    } catch (const std::exception& e) {
      r = {id, "criterion " + std::to_string(id), false, std::string("error: ") + e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double limit = id == 1 ? 300.0 : id == 4 ? 600.0 : 0.0;
    if (limit > 0 && r.seconds > limit) {
      r.pass = false;
      r.detail += "; exceeded the " + format_double(limit) + "s budget";
    }
    report.results.push_back(r);
  }
  Json summary;
  summary["config"] = {{"seed", cfg.seed}};
  Json list = Json::array();
  for (const auto& r : report.results)
    list.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  summary["criteria"] = list;
  report.artifacts.add("summary.json", summary.dump(2) + "\n");
  return report;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream s;
  s << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << " (" << r.name << "): " << r.detail
    << " [" << format_double(std::round(r.seconds * 10) / 10) << "s]";
  return s.str();
}

}  // namespace latgossip
