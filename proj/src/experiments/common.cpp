#include <omp.h>

#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "latgossip/experiments.hpp"
#include "latgossip/generators.hpp"
#include "latgossip/protocols/dtg.hpp"
#include "latgossip/protocols/push_pull.hpp"
#include "latgossip/shortest_paths.hpp"

namespace latgossip {

void Artifacts::write_to(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  for (const auto& [name, content] : files) {
    const auto target = dir / name;
    auto tmp = target;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + tmp.string());
      out << content;
      if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
  }
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

Csv::Csv(const std::vector<std::pair<std::string, std::string>>& config,
         const std::vector<std::string>& header) {
  for (const auto& [k, v] : config) text_ += "# " + k + "=" + v + "\n";
  append(header);
}

std::string Csv::cell(double x) { return format_double(x); }

void Csv::append(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) text_ += ',';
    text_ += cells[i];
  }
  text_ += '\n';
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body) {
  std::exception_ptr error;
  std::size_t error_index = count;
  std::mutex mu;
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::size_t i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard lock(mu);
      // keep the lowest failing index so the reported error does not depend on scheduling
      if (i < error_index) {
        error_index = i;
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

Json cut_to_json(const Cut& cut) {
  Json side = Json::array();
  for (NodeId v : cut.side_nodes()) side.push_back(v);
  return side;
}

Json report_to_json(const ConductanceReport& r) {
  Json j;
  j["approximate"] = r.approximate;
  Json phi = Json::object();
  Json wit = Json::object();
  for (const auto& [ell, value] : r.phi_ell) phi[std::to_string(ell)] = to_string(value);
  for (const auto& [ell, cut] : r.phi_ell_witness) wit[std::to_string(ell)] = cut_to_json(cut);
  j["phi_ell"] = phi;
  j["phi_star"] = to_string(r.phi_star);
  j["ell_star"] = r.ell_star;
  j["phi_avg"] = to_string(r.phi_avg);
  j["L"] = r.classes;
  j["witnesses"] = {{"phi_ell", wit}, {"phi_avg", cut_to_json(r.avg_witness)}};
  if (r.relation) {
    const auto& c = *r.relation;
    j["relation"] = {{"lower", to_string(c.lower)},
                     {"phi_avg", to_string(c.phi_avg)},
                     {"upper", to_string(c.upper)},
                     {"lower_strict", c.lower_strict},
                     {"upper_strict", c.upper_strict},
                     {"boundary_hit", c.boundary_hit},
                     {"holds", c.holds()}};
  }
  return j;
}

Json metrics_to_json(const Metrics& m) {
  Json j;
  j["rounds_elapsed"] = m.rounds_elapsed;
  j["exchanges_initiated"] = m.exchanges_initiated;
  j["exchanges_abandoned"] = m.exchanges_abandoned;
  Json by_class = Json::object();
  for (const auto& [c, count] : m.activations_by_class) by_class[std::to_string(c)] = count;
  j["activations_by_class"] = by_class;
  j["hit_cap"] = m.hit_cap;
  const auto done = m.completed_at();
  j["completion_round"] = done ? Json(*done) : Json(nullptr);
  return j;
}

namespace {

Json optional_json(const std::optional<std::uint64_t>& x) { return x ? Json(*x) : Json(nullptr); }

Json guess_double_json(const GuessDoubleRun& run) {
  Json j;
  j["estimates"] = run.estimates;
  Json term = Json::array();
  for (const auto& t : run.termination_round) term.push_back(optional_json(t));
  j["termination_round"] = term;
  j["insufficient_radius"] = run.insufficient_radius;
  return j;
}

}  // namespace

SimulateResult simulate(const LatencyGraph& g, const SimulateOptions& opts, const SimConfig& cfg) {
  SimulateResult out;
  Json j;
  j["protocol"] = opts.protocol;
  auto finish = [&](const ProtocolRun& run) {
    out.completion_round = run.completion_round;
    out.rounds_elapsed = run.metrics.rounds_elapsed;
    out.trace = run.metrics.trace;
    j["completion_round"] = optional_json(run.completion_round);
    j["metrics"] = metrics_to_json(run.metrics);
  };
  if (opts.protocol == "push-pull") {
    if (opts.source >= g.node_count()) throw std::invalid_argument("source out of range");
    j["mode"] = opts.mode == Dissemination::all_to_all ? "all-to-all" : "one-to-all";
    finish(push_pull(g, opts.mode, opts.source, cfg));
  } else if (opts.protocol == "ldtg") {
    const Latency ell = opts.ell ? opts.ell : g.max_latency();
    j["ell"] = ell;
    finish(l_dtg(g, ell, cfg));
  } else if (opts.protocol == "eid") {
    const Latency dg = opts.d_guess ? opts.d_guess
                                    : static_cast<Latency>(std::max<std::uint64_t>(
                                          weighted_diameter(g), 1));
    auto run = eid(g, dg, opts.pipeline, cfg);
    j["d_guess"] = dg;
    j["rr_k"] = run.phase.rr_k;
    j["delta_out"] = run.phase.delta_out;
    j["insufficient_radius"] = run.phase.insufficient_radius;
    finish(run);
  } else if (opts.protocol == "general-eid") {
    auto run = general_eid(g, opts.pipeline, cfg);
    j["guess_and_double"] = guess_double_json(run);
    finish(run);
  } else if (opts.protocol == "path-discovery") {
    auto run = path_discovery(g, cfg);
    j["guess_and_double"] = guess_double_json(run);
    finish(run);
  } else if (opts.protocol == "unified") {
    auto run = unified(g, opts.pipeline, cfg);
    out.completion_round = run.best_rounds;
    out.rounds_elapsed = run.best_rounds.value_or(
        std::max(run.push_pull.metrics.rounds_elapsed, run.pipeline.metrics.rounds_elapsed));
    out.winner = run.winner;
    j["winner"] = run.winner;
    j["completion_round"] = optional_json(run.best_rounds);
    j["push_pull"] = {{"completion_round", optional_json(run.push_pull_rounds)},
                      {"metrics", metrics_to_json(run.push_pull.metrics)}};
    j["spanner"] = {{"completion_round", optional_json(run.pipeline_rounds)},
                    {"metrics", metrics_to_json(run.pipeline.metrics)},
                    {"guess_and_double", guess_double_json(run.pipeline)}};
  } else {
    throw std::invalid_argument("unknown protocol '" + opts.protocol + "'");
  }
  out.json = std::move(j);
  return out;
}

namespace {

void set_param(SweepSpec& s, const std::string& name, double value) {
  auto as_u32 = [&](double v) {
    if (v < 0 || v != static_cast<double>(static_cast<std::uint32_t>(v)))
      throw std::invalid_argument("sweep value " + format_double(v) + " is not a valid " + name);
    return static_cast<std::uint32_t>(v);
  };
  if (name == "p") s.p = value;
  else if (name == "m" || name == "n") s.m = as_u32(value);
  else if (name == "hi") s.hi = as_u32(value);
  else if (name == "s") s.s = as_u32(value);
  else if (name == "k") s.k = as_u32(value);
  else if (name == "ell") s.ell = as_u32(value);
  else if (name == "max-latency") s.max_latency = as_u32(value);
  else throw std::invalid_argument("unknown sweep parameter '" + name + "'");
}

LatencyGraph sweep_graph(const SweepSpec& s, std::uint64_t seed) {
  if (s.family == "gadget")
    return gen_gadget({.m = s.m, .lo = 1, .hi = s.hi, .predicate = RandomTarget{s.p}}, seed).graph;
  if (s.family == "ring") return gen_ring_of_gadgets(s.s, s.k, s.ell, seed).graph;
  if (s.family == "random") return gen_random_connected(s.m, s.p, 1, s.max_latency, seed);
  if (s.family == "path") {
    if (s.m < 1) throw std::invalid_argument("path needs m >= 1");
    std::vector<Latency> lats(s.m - 1, s.ell);
    return gen_path(lats);
  }
  throw std::invalid_argument("unknown family '" + s.family + "'");
}

}  // namespace

std::string run_sweep(const SweepSpec& spec) {
  if (spec.values.empty()) throw std::invalid_argument("sweep needs at least one value");
  if (spec.trials < 1) throw std::invalid_argument("trials must be >= 1");
  const std::size_t trials = static_cast<std::size_t>(spec.trials);
  const std::size_t total = spec.values.size() * trials;

  struct Row {
    std::uint64_t seed = 0;
    std::size_t n = 0;
    SimulateResult result;
  };
  std::vector<Row> rows(total);
  parallel_for(total, spec.jobs, [&](std::size_t i) {
    const std::size_t vi = i / trials;
    const std::size_t t = i % trials;
    SweepSpec point = spec;
    set_param(point, spec.param, spec.values[vi]);
    const std::uint64_t seed = derive_seed(spec.seed, {vi, t});
    try {
      auto g = sweep_graph(point, seed);
      SimulateOptions opts;
      opts.protocol = spec.protocol;
      opts.pipeline.spanner.seed = seed;
      rows[i] = {seed, g.node_count(), simulate(g, opts, {.seed = seed})};
    } catch (const std::exception& e) {
      throw std::runtime_error(spec.param + "=" + format_double(spec.values[vi]) + " trial " +
                               std::to_string(t) + ": " + e.what());
    }
  });

  Csv csv({{"family", spec.family},
           {"protocol", spec.protocol},
           {"param", spec.param},
           {"trials", std::to_string(spec.trials)},
           {"seed", std::to_string(spec.seed)},
           {"m", std::to_string(spec.m)},
           {"hi", std::to_string(spec.hi)},
           {"p", format_double(spec.p)},
           {"s", std::to_string(spec.s)},
           {"k", std::to_string(spec.k)},
           {"ell", std::to_string(spec.ell)},
           {"max_latency", std::to_string(spec.max_latency)}},
          {"family", "param", "value", "protocol", "trial", "seed", "n", "rounds", "completed",
           "winner"});
  for (std::size_t i = 0; i < total; ++i) {
    const auto& r = rows[i];
    const bool done = r.result.completion_round.has_value();
    csv.row(spec.family, spec.param, spec.values[i / trials], spec.protocol, i % trials, r.seed,
            r.n, done ? std::to_string(*r.result.completion_round) : std::string(), done,
            r.result.winner);
  }
  return csv.str();
}

}  // namespace latgossip
