#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "latgossip/graph_io.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kDir = CLI_SCRATCH;

int run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + GOSSIP_BIN + " " + args + " >" + (kDir / "stdout").string() +
                          " 2>" + (kDir / "stderr").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Scratch {
  Scratch() {
    fs::remove_all(kDir);
    fs::create_directories(kDir);
  }
};

}  // namespace

TEST_CASE_FIXTURE(Scratch, "generate families") {
  const auto ring = (kDir / "ring.txt").string();
  REQUIRE(run("generate ring --s 4 --k 8 --ell 16 --seed 3 -o " + ring) == 0);
  const auto g = latgossip::load_graph(ring);
  CHECK(g.node_count() == 32);
  // 8 layer cliques of 6 edges and 8 joins of 16 edges
  CHECK(g.edge_count() == 8 * 6 + 8 * 16);
  CHECK(read(ring).rfind("# family=ring\n", 0) == 0);

  REQUIRE(run("generate gadget --m 8 --lo 1 --hi 64 --predicate singleton --seed 1 -o " +
              (kDir / "gadget.txt").string()) == 0);
  CHECK(latgossip::load_graph(kDir / "gadget.txt").node_count() == 16);
  REQUIRE(run("generate clique --n 4 -o " + (kDir / "k4.txt").string()) == 0);
  CHECK(latgossip::load_graph(kDir / "k4.txt").edge_count() == 6);

  // randomized families need a seed, GOSSIP_SEED works as a fallback
  CHECK(run("generate random --n 6 -o " + (kDir / "r.txt").string()) == 2);
  CHECK_FALSE(fs::exists(kDir / "r.txt"));
  CHECK(run("generate random --n 6 -o " + (kDir / "r.txt").string(), "GOSSIP_SEED=5") == 0);
  CHECK(run("generate random --n 6 --seed 5 -o " + (kDir / "r2.txt").string()) == 0);
  CHECK(read(kDir / "r.txt") == read(kDir / "r2.txt"));
}

TEST_CASE_FIXTURE(Scratch, "analyze reports") {
  REQUIRE(run("generate clique --n 4 -o " + (kDir / "k4.txt").string()) == 0);
  REQUIRE(run("analyze -g " + (kDir / "k4.txt").string() + " -o " + (kDir / "k4.json").string()) == 0);
  auto j = nlohmann::json::parse(read(kDir / "k4.json"));
  CHECK(j["phi_star"] == "2/3");
  CHECK(j["ell_star"] == 1);
  CHECK(j["config"]["approx"] == false);

  std::ofstream(kDir / "two.txt") << "n 2\n0 1 5\n";
  REQUIRE(run("analyze -g " + (kDir / "two.txt").string() + " -o " + (kDir / "two.json").string()) == 0);
  j = nlohmann::json::parse(read(kDir / "two.json"));
  CHECK(j["relation"]["lower"] == "1/10");
  CHECK(j["relation"]["phi_avg"] == "1/8");
  CHECK(j["relation"]["upper"] == "1/5");
  CHECK(j["relation"]["holds"] == true);

  // above the exact cap without --approx: error and no output left behind
  REQUIRE(run("generate clique --n 22 -o " + (kDir / "k22.txt").string()) == 0);
  CHECK(run("analyze -g " + (kDir / "k22.txt").string() + " -o " + (kDir / "k22.json").string()) != 0);
  CHECK_FALSE(fs::exists(kDir / "k22.json"));
  CHECK(run("analyze --approx --seed 1 -g " + (kDir / "k22.txt").string() + " -o " +
            (kDir / "k22.json").string()) == 0);
  CHECK(nlohmann::json::parse(read(kDir / "k22.json"))["approximate"] == true);
}

TEST_CASE_FIXTURE(Scratch, "simulate, game and sweep are reproducible") {
  std::ofstream(kDir / "two.txt") << "n 2\n0 1 3\n";
  const auto two = (kDir / "two.txt").string();
  REQUIRE(run("simulate -g " + two + " --protocol push-pull --seed 4 -o " +
              (kDir / "a.json").string() + " --trace " + (kDir / "trace.txt").string()) == 0);
  auto j = nlohmann::json::parse(read(kDir / "a.json"));
  CHECK(j["result"]["completion_round"] == 4);
  CHECK(j["config"]["seed"] == 4);
  CHECK(read(kDir / "trace.txt").find("1 0 1 3 4\n") != std::string::npos);
  CHECK(run("simulate -g " + two + " --protocol flood --seed 4 -o " + (kDir / "b.json").string()) != 0);
  CHECK_FALSE(fs::exists(kDir / "b.json"));
  CHECK(run("simulate -g " + (kDir / "missing.txt").string() + " --seed 1") != 0);

  const std::string game = "game --predicate random --strategy adaptive --m-sweep 8,16 --p-sweep 0.5 "
                           "--trials 3 --seed 2 -o ";
  REQUIRE(run(game + (kDir / "g1.csv").string()) == 0);
  REQUIRE(run(game + (kDir / "g2.csv").string() + " --jobs 1") == 0);
  CHECK(read(kDir / "g1.csv") == read(kDir / "g2.csv"));
  CHECK(read(kDir / "g1.csv").find("m,p,trial,rounds\n") != std::string::npos);

  const std::string sweep = "sweep --family ring --protocol unified --param ell --values 1,16 "
                            "--s 3 --k 6 --trials 2 --seed 7 -o ";
  REQUIRE(run(sweep + (kDir / "s1.csv").string()) == 0);
  REQUIRE(run(sweep + (kDir / "s2.csv").string()) == 0);
  CHECK(read(kDir / "s1.csv") == read(kDir / "s2.csv"));
  CHECK(run("sweep --family ring --param ell --values 1.5 --seed 1 -o " + (kDir / "bad.csv").string()) != 0);
  CHECK_FALSE(fs::exists(kDir / "bad.csv"));
}

TEST_CASE_FIXTURE(Scratch, "verify subset writes artifacts") {
  CHECK(run("verify --seed 1 --only 3 -o " + (kDir / "v").string()) == 0);
  CHECK(fs::exists(kDir / "v" / "c3_ring_analytics.csv"));
  CHECK(read(kDir / "v" / "summary.json").find("\"pass\": true") != std::string::npos);
}
