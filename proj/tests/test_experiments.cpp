#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "latgossip/experiments.hpp"
#include "latgossip/generators.hpp"

using namespace latgossip;

TEST_CASE("csv embeds its config") {
  Csv csv({{"seed", "3"}}, {"a", "b"});
  csv.row(1, 0.5);
  csv.row(std::string("x"), true);
  CHECK(csv.str() == "# seed=3\na,b\n1,0.5\nx,1\n");
}

TEST_CASE("parallel_for reports the lowest failing index") {
  std::vector<int> hit(50, 0);
  parallel_for(hit.size(), 0, [&](std::size_t i) { hit[i] = 1; });
  CHECK(std::count(hit.begin(), hit.end(), 1) == 50);
  try {
    parallel_for(20, 0, [](std::size_t i) {
      if (i >= 7) throw std::runtime_error(std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "7");
  }
}

TEST_CASE("simulate dispatch") {
  LatencyGraph g(2);
  g.add_edge(0, 1, 5);
  auto pp = simulate(g, {.protocol = "push-pull"}, {.seed = 1});
  CHECK(pp.completion_round == 6);
  CHECK(pp.json["metrics"]["rounds_elapsed"] == 6);
  for (const char* p : {"ldtg", "eid", "general-eid", "path-discovery", "unified"}) {
    auto r = simulate(g, {.protocol = p}, {.seed = 1});
    CHECK_MESSAGE(r.completion_round.has_value(), p);
  }
  CHECK_THROWS_AS(simulate(g, {.protocol = "flood"}, {}), std::invalid_argument);
}

TEST_CASE("report json carries the relation check") {
  auto j = report_to_json(analyze_exact(gen_clique(4)));
  CHECK(j["phi_star"] == "2/3");
  CHECK(j["ell_star"] == 1);
  CHECK(j["relation"]["boundary_hit"] == true);
}

TEST_CASE("sweep rows are deterministic and ordered") {
  SweepSpec spec{.family = "gadget", .protocol = "push-pull", .values = {0.5, 0.25}, .trials = 3,
                 .seed = 9, .m = 8, .hi = 64, .param = "p"};
  const auto a = run_sweep(spec);
  spec.jobs = 1;
  CHECK(a == run_sweep(spec));
  std::istringstream in(a);
  std::string line;
  int data = 0;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') ++data;
  CHECK(data == 1 + 6);
  spec.param = "bogus";
  CHECK_THROWS(run_sweep(spec));
  spec.param = "p";
  spec.values.clear();
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
}

TEST_CASE("ring analytics criterion passes") {
  Artifacts out;
  auto r = check_ring_analytics({.seed = 1}, out);
  CHECK(r.pass);
  CHECK(out.files.count("c3_ring_analytics.csv") == 1);
}
