#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "latgossip/rng.hpp"

namespace latgossip {

/// An element of A x B, both sides indexed 0..m-1.
struct PairAB {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  auto operator<=>(const PairAB&) const = default;
};

struct SingletonTarget {};
struct RandomTarget {
  double p = 0.5;
};
struct ExplicitTarget {
  std::vector<PairAB> pairs;
};

using TargetPredicate = std::variant<SingletonTarget, RandomTarget, ExplicitTarget>;

/// Realizes the predicate on an m x m universe; the result is sorted and unique.
std::vector<PairAB> draw_target_set(std::uint32_t m, const TargetPredicate& predicate, Rng& rng);

std::string describe(const TargetPredicate& predicate);

}  // namespace latgossip
