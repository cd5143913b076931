#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace resavg {

using Rational = boost::rational<std::int64_t>;

// Under C++20 the mixed comparison rational == int picks up a reversed
// candidate and recurses forever with Boost 1.74. Compare against Rational
// or use these.
inline bool is_zero(const Rational& r) { return r.numerator() == 0; }

// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on malformed input
// or a zero denominator.
Rational parse_rational(std::string_view text);

// Always "p/q" with q > 0, e.g. "9/4", "0/1".
std::string to_string(const Rational& r);

inline double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}

}  // namespace resavg
