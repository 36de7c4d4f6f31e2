// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

#include "CLI11.hpp"
#include "latgossip/experiments.hpp"

using namespace latgossip;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Byte comparison of two artifact directories written from separate runs.
bool same_tree(const std::filesystem::path& a, const std::filesystem::path& b, std::string& why) {
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(a)) {
    const auto other = b / entry.path().filename();
    if (!std::filesystem::exists(other)) {
      why = entry.path().filename().string() + " missing from the second run";
      return false;
    }
    if (slurp(entry.path()) != slurp(other)) {
      why = entry.path().filename().string() + " differs";
      return false;
    }
    ++files;
  }
  const auto count = std::distance(std::filesystem::directory_iterator(b), {});
  if (static_cast<std::size_t>(count) != files) {
    why = "file sets differ";
    return false;
  }
  why = std::to_string(files) + " artifacts byte-identical";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance suite"};
  VerifyConfig cfg;
  std::string out = "acceptance_artifacts";
  app.add_option("--seed", cfg.seed, "master seed");
  app.add_option("--jobs", cfg.jobs, "worker threads (0 = all)");
  app.add_option("--out", out, "artifact directory");
  CLI11_PARSE(app, argc, argv);

  const std::filesystem::path root(out);
  std::filesystem::remove_all(root);

  const auto first = run_verify(cfg);
  for (const auto& r : first.results) std::cout << format_result(r) << std::endl;
  first.artifacts.write_to(root / "run1");

  const auto second = run_verify(cfg);
  second.artifacts.write_to(root / "run2");
  std::string why;
  const bool same = same_tree(root / "run1", root / "run2", why) &&
                    first.artifacts.files == second.artifacts.files;
  CriterionResult det{10, "determinism", same, why};
  std::cout << format_result(det) << std::endl;

  int failed = same ? 0 : 1;
  for (const auto& r : first.results) failed += r.pass ? 0 : 1;
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed")
            << std::endl;
  return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}
