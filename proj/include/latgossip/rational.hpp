#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace latgossip {

using Rational = boost::rational<std::int64_t>;

/// "p/q", or "p" when q == 1.
std::string to_string(const Rational& r);
double to_double(const Rational& r);

/// Exact comparison of a/b and c/d (b, d > 0) without overflow.
inline bool fraction_less(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return static_cast<__int128>(a) * d < static_cast<__int128>(c) * b;
}

}  // namespace latgossip
