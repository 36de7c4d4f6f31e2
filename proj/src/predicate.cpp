#include "latgossip/predicate.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace latgossip {

std::vector<PairAB> draw_target_set(std::uint32_t m, const TargetPredicate& predicate, Rng& rng) {
  std::vector<PairAB> out;
  if (const auto* random = std::get_if<RandomTarget>(&predicate)) {
    std::bernoulli_distribution coin(std::clamp(random->p, 0.0, 1.0));
    for (std::uint32_t a = 0; a < m; ++a) {
      for (std::uint32_t b = 0; b < m; ++b) {
        if (coin(rng)) out.push_back({a, b});
      }
    }
  } else if (std::holds_alternative<SingletonTarget>(predicate)) {
    if (m == 0) return out;
    std::uniform_int_distribution<std::uint32_t> pick(0, m - 1);
    const std::uint32_t a = pick(rng);
    const std::uint32_t b = pick(rng);
    out.push_back({a, b});
  } else {
    out = std::get<ExplicitTarget>(predicate).pairs;
    for (const PairAB& pr : out) {
      if (pr.a >= m || pr.b >= m) throw std::invalid_argument("explicit target pair outside A x B");
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return out;
}

std::string describe(const TargetPredicate& predicate) {
  if (std::holds_alternative<SingletonTarget>(predicate)) return "singleton";
  if (const auto* random = std::get_if<RandomTarget>(&predicate)) {
    std::ostringstream os;
    os << "random(" << random->p << ")";
    return os.str();
  }
  return "explicit(" + std::to_string(std::get<ExplicitTarget>(predicate).pairs.size()) + ")";
}

}  // namespace latgossip
