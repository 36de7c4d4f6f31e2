#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "latgossip/conductance.hpp"
#include "latgossip/experiments.hpp"
#include "latgossip/generators.hpp"
#include "latgossip/graph_io.hpp"
#include "latgossip/guessing.hpp"

using namespace latgossip;
namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Outputs written by this invocation; removed again if the command fails.
std::vector<fs::path> g_written;

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  g_written.push_back(tmp);
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
  g_written.push_back(target);
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, bool required) {
  if (seed) return *seed;
  if (const char* env = std::getenv("GOSSIP_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("GOSSIP_SEED is not an unsigned integer: ") + env);
  }
  if (required) throw UsageError("a seed is required: pass --seed or set GOSSIP_SEED");
  return 0;
}

TargetPredicate parse_predicate(const std::string& name, double p) {
  if (name == "singleton") return SingletonTarget{};
  if (name == "random") return RandomTarget{p};
  throw UsageError("unknown predicate '" + name + "' (singleton|random)");
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string family;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::uint32_t n = 4, d = 3, s = 4, k = 8, m = 8, size = 4, leaves = 4;
  Latency latency = 1, ell = 1, lo = 1, hi = 64, lat_lo = 1, lat_hi = 16, bridge = 1;
  double p = 0.5;
  std::string predicate = "singleton";
  bool symmetric = false;
  std::vector<Latency> latencies;
};

void add_generate(CLI::App& app, GenerateArgs& a) {
  auto* c = app.add_subcommand("generate", "Write a graph from one of the generator families");
  c->add_option("family", a.family,
                "clique | path | star | random-regular | two-cliques-bridge | random | gadget | ring")
      ->required();
  c->add_option("--seed", a.seed, "seed for randomized families (falls back to GOSSIP_SEED)");
  c->add_option("--out,-o", a.out, "output edge-list file (default stdout)");
  c->add_option("--n", a.n, "node count (clique, random-regular, random)");
  c->add_option("--d", a.d, "degree (random-regular)");
  c->add_option("--latency", a.latency, "uniform latency (clique, star, random-regular, two-cliques-bridge)");
  c->add_option("--latencies", a.latencies, "edge latencies along the path")->delimiter(',');
  c->add_option("--leaves", a.leaves, "leaf count (star)");
  c->add_option("--size", a.size, "clique size (two-cliques-bridge)");
  c->add_option("--bridge", a.bridge, "bridge latency (two-cliques-bridge)");
  c->add_option("--p", a.p, "edge probability (random) or target density (gadget)");
  c->add_option("--lat-lo", a.lat_lo, "smallest latency (random)");
  c->add_option("--lat-hi", a.lat_hi, "largest latency (random)");
  c->add_option("--m", a.m, "side size (gadget)");
  c->add_option("--lo", a.lo, "fast cross latency (gadget)");
  c->add_option("--hi", a.hi, "slow cross latency (gadget)");
  c->add_option("--predicate", a.predicate, "singleton | random (gadget)");
  c->add_flag("--symmetric", a.symmetric, "add the clique on the right side (gadget)");
  c->add_option("--s", a.s, "layer size (ring)");
  c->add_option("--k", a.k, "layer count (ring)");
  c->add_option("--ell", a.ell, "join latency (ring)");
}

void run_generate(const GenerateArgs& a) {
  LatencyGraph g;
  std::vector<std::pair<std::string, std::string>> cfg{{"family", a.family}};
  auto need_seed = [&] {
    const auto seed = resolve_seed(a.seed, true);
    cfg.emplace_back("seed", std::to_string(seed));
    return seed;
  };
  if (a.family == "clique") {
    g = gen_clique(a.n, a.latency);
    cfg.insert(cfg.end(), {{"n", std::to_string(a.n)}, {"latency", std::to_string(a.latency)}});
  } else if (a.family == "path") {
    if (a.latencies.empty()) throw UsageError("path needs --latencies");
    g = gen_path(a.latencies);
  } else if (a.family == "star") {
    g = gen_star(a.leaves, a.latency);
    cfg.insert(cfg.end(), {{"leaves", std::to_string(a.leaves)}, {"latency", std::to_string(a.latency)}});
  } else if (a.family == "random-regular") {
    const auto seed = need_seed();
    g = gen_random_regular(a.n, a.d, a.latency, seed);
    cfg.insert(cfg.end(), {{"n", std::to_string(a.n)}, {"d", std::to_string(a.d)},
                           {"latency", std::to_string(a.latency)}});
  } else if (a.family == "two-cliques-bridge") {
    g = gen_two_cliques_bridge(a.size, a.bridge, a.latency);
    cfg.insert(cfg.end(), {{"size", std::to_string(a.size)}, {"bridge", std::to_string(a.bridge)}});
  } else if (a.family == "random") {
    const auto seed = need_seed();
    g = gen_random_connected(a.n, a.p, a.lat_lo, a.lat_hi, seed);
    cfg.insert(cfg.end(), {{"n", std::to_string(a.n)}, {"p", format_double(a.p)},
                           {"lat_lo", std::to_string(a.lat_lo)}, {"lat_hi", std::to_string(a.lat_hi)}});
  } else if (a.family == "gadget") {
    const auto seed = need_seed();
    g = gen_gadget({.m = a.m, .lo = a.lo, .hi = a.hi,
                    .predicate = parse_predicate(a.predicate, a.p), .symmetric = a.symmetric},
                   seed)
            .graph;
    cfg.insert(cfg.end(), {{"m", std::to_string(a.m)}, {"lo", std::to_string(a.lo)},
                           {"hi", std::to_string(a.hi)}, {"predicate", a.predicate},
                           {"p", format_double(a.p)}, {"symmetric", a.symmetric ? "1" : "0"}});
  } else if (a.family == "ring") {
    const auto seed = need_seed();
    g = gen_ring_of_gadgets(a.s, a.k, a.ell, seed).graph;
    cfg.insert(cfg.end(), {{"s", std::to_string(a.s)}, {"k", std::to_string(a.k)},
                           {"ell", std::to_string(a.ell)}});
  } else {
    throw UsageError("unknown family '" + a.family + "'");
  }
  std::ostringstream text;
  for (const auto& [key, value] : cfg) text << "# " << key << "=" << value << "\n";
  write_graph(g, text);
  emit(a.out, text.str());
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string graph;
  std::string out;
  bool approx = false;
  std::size_t samples = 32;
  std::size_t cap = 20;
  std::optional<std::uint64_t> seed;
};

void add_analyze(CLI::App& app, AnalyzeArgs& a) {
  auto* c = app.add_subcommand("analyze", "Conductance report for a graph file (JSON)");
  c->add_option("--graph,-g", a.graph, "edge-list file")->required();
  c->add_option("--out,-o", a.out, "JSON output (default stdout)");
  c->add_flag("--approx", a.approx, "use the sampled estimator instead of exact enumeration");
  c->add_option("--samples", a.samples, "random starts per objective for --approx");
  c->add_option("--cap", a.cap, "largest node count for exact enumeration");
  c->add_option("--seed", a.seed, "seed for --approx (falls back to GOSSIP_SEED)");
}

void run_analyze(const AnalyzeArgs& a) {
  const auto g = load_graph(a.graph);
  Json j;
  j["config"] = {{"graph", a.graph}, {"approx", a.approx}, {"cap", a.cap}};
  ConductanceReport report;
  if (a.approx) {
    const auto seed = resolve_seed(a.seed, true);
    j["config"]["seed"] = seed;
    j["config"]["samples"] = a.samples;
    report = estimate_conductance(g, seed, a.samples);
  } else {
    report = analyze_exact(g, {.cap = a.cap});
  }
  j["n"] = g.node_count();
  j["edges"] = g.edge_count();
  const Json body = report_to_json(report);
  for (const auto& [key, value] : body.items()) j[key] = value;
  emit(a.out, j.dump(2) + "\n");
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string graph;
  std::string protocol = "push-pull";
  std::string scenario = "known";
  std::string mode = "all-to-all";
  std::optional<std::uint64_t> seed;
  NodeId source = 0;
  Latency ell = 0;
  Latency d_guess = 0;
  std::uint64_t n_hat = 0;
  std::uint32_t k = 0;
  double c_rr = 1.0;
  std::uint64_t max_rounds = 1'000'000;
  std::string out;
  std::string trace;
};

void add_simulate(CLI::App& app, SimulateArgs& a) {
  auto* c = app.add_subcommand("simulate", "Run one protocol on a graph file (JSON metrics)");
  c->add_option("--graph,-g", a.graph, "edge-list file")->required();
  c->add_option("--protocol", a.protocol,
                "push-pull | ldtg | eid | general-eid | path-discovery | unified");
  c->add_option("--scenario", a.scenario, "known | unknown edge latencies");
  c->add_option("--mode", a.mode, "all-to-all | one-to-all (push-pull)");
  c->add_option("--source", a.source, "source node for one-to-all");
  c->add_option("--seed", a.seed, "seed (falls back to GOSSIP_SEED)");
  c->add_option("--ell", a.ell, "latency bound for ldtg (default: max latency)");
  c->add_option("--d-guess", a.d_guess, "diameter guess for eid (default: weighted diameter)");
  c->add_option("--n-hat", a.n_hat, "spanner size bound (default n^2)");
  c->add_option("--k", a.k, "spanner parameter (default ceil(log2 n_hat))");
  c->add_option("--c-rr", a.c_rr, "round-robin constant");
  c->add_option("--max-rounds", a.max_rounds, "round cap");
  c->add_option("--out,-o", a.out, "JSON output (default stdout)");
  c->add_option("--trace", a.trace, "write one line per exchange to this file");
}

void run_simulate(const SimulateArgs& a) {
  const auto g = load_graph(a.graph);
  const auto seed = resolve_seed(a.seed, true);
  if (a.scenario != "known" && a.scenario != "unknown")
    throw UsageError("scenario must be known or unknown");
  if (a.mode != "all-to-all" && a.mode != "one-to-all")
    throw UsageError("mode must be all-to-all or one-to-all");
  SimulateOptions opts;
  opts.protocol = a.protocol;
  opts.mode = a.mode == "all-to-all" ? Dissemination::all_to_all : Dissemination::one_to_all;
  opts.source = a.source;
  opts.ell = a.ell;
  opts.d_guess = a.d_guess;
  opts.pipeline = {.spanner = {.n_hat = a.n_hat, .k = a.k, .seed = seed}, .c_rr = a.c_rr};
  SimConfig cfg{.seed = seed,
                .max_rounds = a.max_rounds,
                .trace_level = a.trace.empty() ? TraceLevel::metrics : TraceLevel::full,
                .latencies_known = a.scenario == "known"};
  auto result = simulate(g, opts, cfg);
  Json j;
  j["config"] = {{"graph", a.graph}, {"protocol", a.protocol}, {"scenario", a.scenario},
                 {"mode", a.mode},   {"source", a.source},     {"seed", seed},
                 {"max_rounds", a.max_rounds}};
  j["n"] = g.node_count();
  j["result"] = result.json;
  if (!a.trace.empty()) {
    std::ostringstream t;
    t << "# protocol=" << a.protocol << "\n# seed=" << seed << "\n";
    for (const auto& e : result.trace) write_trace_line(t, e);
    emit(a.trace, t.str());
  }
  emit(a.out, j.dump(2) + "\n");
}

// ---------------------------------------------------------------- game

struct GameArgs {
  std::string predicate = "singleton";
  std::string strategy = "random-per-endpoint";
  std::vector<std::uint32_t> ms{16};
  std::vector<double> ps{0.5};
  int trials = 1;
  int jobs = 0;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void add_game(CLI::App& app, GameArgs& a) {
  auto* c = app.add_subcommand("game", "Guessing game sweep (CSV m,p,trial,rounds)");
  c->add_option("--predicate", a.predicate, "singleton | random");
  c->add_option("--strategy", a.strategy, "random-per-endpoint | adaptive-exhaustive");
  c->add_option("--m-sweep", a.ms, "side sizes")->delimiter(',');
  c->add_option("--p-sweep", a.ps, "target densities (random predicate)")->delimiter(',');
  c->add_option("--trials", a.trials, "trials per point");
  c->add_option("--jobs", a.jobs, "worker threads (0 = all)");
  c->add_option("--seed", a.seed, "seed (falls back to GOSSIP_SEED)");
  c->add_option("--out,-o", a.out, "CSV output (default stdout)");
}

void run_game(const GameArgs& a) {
  const auto seed = resolve_seed(a.seed, true);
  const auto strategy = parse_strategy(a.strategy);
  if (a.trials < 1) throw UsageError("trials must be >= 1");
  if (a.ms.empty()) throw UsageError("m sweep is empty");
  const bool random = a.predicate == "random";
  if (!random && a.predicate != "singleton") throw UsageError("unknown predicate '" + a.predicate + "'");
  const std::vector<double> ps = random ? a.ps : std::vector<double>{0.0};
  if (ps.empty()) throw UsageError("p sweep is empty");

  struct Point {
    std::uint32_t m;
    double p;
    std::size_t mi, pi;
    int trial;
  };
  std::vector<Point> points;
  for (std::size_t mi = 0; mi < a.ms.size(); ++mi)
    for (std::size_t pi = 0; pi < ps.size(); ++pi)
      for (int t = 0; t < a.trials; ++t) points.push_back({a.ms[mi], ps[pi], mi, pi, t});
  std::vector<std::uint64_t> rounds(points.size());
  parallel_for(points.size(), a.jobs, [&](std::size_t i) {
    const auto& pt = points[i];
    const TargetPredicate pred =
        random ? TargetPredicate{RandomTarget{pt.p}} : TargetPredicate{SingletonTarget{}};
    rounds[i] = play(pt.m, pred, strategy,
                     derive_seed(seed, {pt.mi, pt.pi, static_cast<std::uint64_t>(pt.trial)}));
  });
  std::string ms, pl;
  for (auto m : a.ms) ms += (ms.empty() ? "" : ";") + std::to_string(m);
  for (auto p : ps) pl += (pl.empty() ? "" : ";") + format_double(p);
  Csv csv({{"predicate", a.predicate},
           {"strategy", to_string(strategy)},
           {"m_sweep", ms},
           {"p_sweep", pl},
           {"trials", std::to_string(a.trials)},
           {"seed", std::to_string(seed)}},
          {"m", "p", "trial", "rounds"});
  for (std::size_t i = 0; i < points.size(); ++i)
    csv.row(points[i].m, points[i].p, points[i].trial, rounds[i]);
  emit(a.out, csv.str());
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  SweepSpec spec;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void add_sweep(CLI::App& app, SweepArgs& a) {
  auto* c = app.add_subcommand("sweep", "Protocol sweep over a graph family (CSV)");
  c->add_option("--family", a.spec.family, "gadget | ring | random | path");
  c->add_option("--protocol", a.spec.protocol,
                "push-pull | ldtg | eid | general-eid | path-discovery | unified");
  c->add_option("--param", a.spec.param, "swept parameter: p | m | hi | s | k | ell | max-latency");
  c->add_option("--values", a.spec.values, "values of the swept parameter")
      ->delimiter(',')
      ->required();
  c->add_option("--trials", a.spec.trials, "trials per value");
  c->add_option("--jobs", a.spec.jobs, "worker threads (0 = all)");
  c->add_option("--m", a.spec.m, "gadget side size, or node count for random/path");
  c->add_option("--hi", a.spec.hi, "gadget slow latency");
  c->add_option("--p", a.spec.p, "gadget target density or random edge probability");
  c->add_option("--s", a.spec.s, "ring layer size");
  c->add_option("--k", a.spec.k, "ring layer count");
  c->add_option("--ell", a.spec.ell, "ring join latency or path edge latency");
  c->add_option("--max-latency", a.spec.max_latency, "random latencies are U[1, this]");
  c->add_option("--seed", a.seed, "seed (falls back to GOSSIP_SEED)");
  c->add_option("--out,-o", a.out, "CSV output (default stdout)");
}

void run_sweep_cmd(SweepArgs& a) {
  a.spec.seed = resolve_seed(a.seed, true);
  emit(a.out, run_sweep(a.spec));
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::optional<std::uint64_t> seed;
  int jobs = 0;
  std::string out = "verify_artifacts";
  std::vector<int> only;
};

void add_verify(CLI::App& app, VerifyArgs& a) {
  auto* c = app.add_subcommand("verify", "Run the acceptance suite and write its artifacts");
  c->add_option("--seed", a.seed, "seed (falls back to GOSSIP_SEED)");
  c->add_option("--jobs", a.jobs, "worker threads (0 = all)");
  c->add_option("--out,-o", a.out, "artifact directory");
  c->add_option("--only", a.only, "criterion ids to run (default all)")->delimiter(',');
}

int run_verify_cmd(const VerifyArgs& a) {
  const VerifyConfig cfg{.seed = resolve_seed(a.seed, true), .jobs = a.jobs};
  const auto report = run_verify(cfg, a.only);
  for (const auto& r : report.results) std::cout << format_result(r) << "\n";
  for (const auto& [name, content] : report.artifacts.files)
    emit((fs::path(a.out) / name).string(), content);
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Latency-aware gossip simulator and conductance toolkit"};
  app.require_subcommand(1);
  GenerateArgs gen;
  AnalyzeArgs ana;
  SimulateArgs sim;
  GameArgs game;
  SweepArgs sweep;
  VerifyArgs ver;
  add_generate(app, gen);
  add_analyze(app, ana);
  add_simulate(app, sim);
  add_game(app, game);
  add_sweep(app, sweep);
  add_verify(app, ver);
  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("generate")) run_generate(gen);
    else if (app.got_subcommand("analyze")) run_analyze(ana);
    else if (app.got_subcommand("simulate")) run_simulate(sim);
    else if (app.got_subcommand("game")) run_game(game);
    else if (app.got_subcommand("sweep")) run_sweep_cmd(sweep);
    else if (app.got_subcommand("verify")) return run_verify_cmd(ver);
    return 0;
  } catch (const std::exception& e) {
    std::error_code ec;
    for (const auto& p : g_written) fs::remove(p, ec);
    std::cerr << "error: " << e.what() << "\n";
    if (dynamic_cast<const UsageError*>(&e)) return 2;
    if (dynamic_cast<const ContractViolation*>(&e)) return 4;
    return 3;
  }
}
