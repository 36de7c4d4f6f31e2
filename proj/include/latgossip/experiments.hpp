#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "latgossip/conductance.hpp"
#include "latgossip/graph.hpp"
#include "latgossip/protocols/pipeline.hpp"

namespace latgossip {

/// Pinned acceptance tolerances and sample sizes.
namespace acceptance {
inline constexpr int kConductanceInstances = 500;
inline constexpr std::uint32_t kConductanceMaxN = 10;
inline constexpr int kRelationInstances = 500;
inline constexpr double kGameR2 = 0.9;
inline constexpr double kGameFactor = 4.0;
inline constexpr int kGameTrials = 200;
inline constexpr std::uint32_t kGadgetM = 64;
inline constexpr Latency kGadgetHi = 4096;
inline constexpr int kGadgetSeeds = 100;
inline constexpr double kPushPullC = 2.0;
inline constexpr int kSpannerSeeds = 50;
inline constexpr std::uint32_t kSpannerN = 64;
inline constexpr double kSpannerC = 4.0;
inline constexpr int kSpannerMaxFailures = 1;
inline constexpr int kDtgGraphs = 100;
inline constexpr std::uint32_t kDtgMaxN = 48;
inline constexpr double kDtgC = 8.0;
inline constexpr double kTkC = 8.0;
inline constexpr int kTerminationRuns = 200;
inline constexpr std::uint32_t kRingS = 4;
inline constexpr std::uint32_t kRingK = 8;
inline constexpr int kRingSeeds = 3;
}  // namespace acceptance

using Json = nlohmann::ordered_json;

/// Named text artifacts produced by an experiment, in a deterministic order.
struct Artifacts {
  std::map<std::string, std::string> files;

  void add(const std::string& name, std::string content) { files[name] = std::move(content); }
  /// Writes every file through a temporary name and a rename.
  void write_to(const std::filesystem::path& dir) const;
};

/// CSV writer that embeds its configuration as leading "# key=value" lines.
class Csv {
 public:
  Csv(const std::vector<std::pair<std::string, std::string>>& config,
      const std::vector<std::string>& header);
  template <class... T>
  void row(const T&... cells) {
    std::vector<std::string> out{cell(cells)...};
    append(out);
  }
  const std::string& str() const { return text_; }

  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  static std::string cell(double x);
  static std::string cell(bool b) { return b ? "1" : "0"; }
  template <class I>
    requires std::is_integral_v<I>
  static std::string cell(I i) { return std::to_string(i); }

 private:
  void append(const std::vector<std::string>& cells);
  std::string text_;
};

/// Fixed-precision rendering used by every artifact.
std::string format_double(double x);

/// Runs body(i) for i in [0, count) on up to `jobs` threads (0 = OpenMP default).
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body);

struct VerifyConfig {
  std::uint64_t seed = 1;
  int jobs = 0;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;  // wall time, kept out of artifacts
};

using Criterion = CriterionResult (*)(const VerifyConfig&, Artifacts&);

CriterionResult check_conductance_equivalence(const VerifyConfig& cfg, Artifacts& out);
CriterionResult check_relation_sandwich(const VerifyConfig& cfg, Artifacts& out);
CriterionResult check_ring_analytics(const VerifyConfig& cfg, Artifacts& out);
CriterionResult check_game_scaling(const VerifyConfig& cfg, Artifacts& out);
CriterionResult check_push_pull_bound(const VerifyConfig& cfg, Artifacts& out);
CriterionResult check_spanner_properties(const VerifyConfig& cfg, Artifacts& out);
CriterionResult check_dtg_postconditions(const VerifyConfig& cfg, Artifacts& out);
CriterionResult check_termination(const VerifyConfig& cfg, Artifacts& out);
CriterionResult check_tradeoff(const VerifyConfig& cfg, Artifacts& out);

/// Criteria 1..9 in order.
const std::vector<Criterion>& criteria();

struct VerifyReport {
  std::vector<CriterionResult> results;
  Artifacts artifacts;
  bool all_pass() const;
};

/// Runs the selected criteria (empty = all) and collects their artifacts plus a summary JSON.
VerifyReport run_verify(const VerifyConfig& cfg, const std::vector<int>& only = {});

/// "PASS  3 ring analytics: ..." style line.
std::string format_result(const CriterionResult& r);

Json cut_to_json(const Cut& cut);
Json report_to_json(const ConductanceReport& report);
Json metrics_to_json(const Metrics& metrics);

/// Protocol dispatch shared by simulate and sweep.
struct SimulateOptions {
  std::string protocol = "push-pull";
  Dissemination mode = Dissemination::all_to_all;
  NodeId source = 0;
  Latency ell = 0;      // ldtg; 0 = max latency
  Latency d_guess = 0;  // eid; 0 = weighted diameter
  PipelineOptions pipeline;
};

struct SimulateResult {
  std::optional<std::uint64_t> completion_round;
  std::uint64_t rounds_elapsed = 0;
  std::string winner;  // unified only
  Json json;
  std::vector<ExchangeEvent> trace;
};

SimulateResult simulate(const LatencyGraph& g, const SimulateOptions& opts, const SimConfig& cfg);

/// Sweep over a graph family and one numeric parameter.
struct SweepSpec {
  std::string family = "gadget";  // gadget | ring | random | path
  std::string protocol = "push-pull";
  std::vector<double> values;
  int trials = 1;
  std::uint64_t seed = 1;
  int jobs = 0;
  // family parameters; the swept one is overwritten by each value
  std::uint32_t m = 64;         // gadget side; random/path node count
  Latency hi = 4096;            // gadget slow latency
  double p = 0.5;               // gadget target density; random edge probability
  std::uint32_t s = 4;          // ring
  std::uint32_t k = 8;          // ring
  Latency ell = 1;              // ring join latency
  Latency max_latency = 16;     // random latencies U[1, max_latency]
  std::string param = "p";      // name of the swept field
};

/// One row per (value, trial) in sweep order.
std::string run_sweep(const SweepSpec& spec);

}  // namespace latgossip
