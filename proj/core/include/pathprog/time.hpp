#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace pathprog {

/// Exact time quantity. Volumes are integral, but bounds, budgets and
/// simulated timestamps are rationals (e.g. a 13.5 unit budget).
using Time = boost::rational<std::int64_t>;

/// Integral worst-case execution time of a subtask.
using Wcet = std::int64_t;

double to_double(const Time& t);

/// Decimal rendering with a fixed number of fractional digits, rounded half
/// away from zero ("12.6667" for 38/3 with 4 digits).
std::string format_fixed(const Time& t, int digits = 4);

/// "27/2" or "14".
std::string to_string(const Time& t);

/// Accepts "14", "-3", "27/2" and decimal literals such as "13.5" or "1.25".
/// Throws pathprog::Error(ErrorCode::ParseError) on malformed input.
Time parse_time(std::string_view text);

inline Time ceil_time(const Time& t) {
  auto q = t.numerator() / t.denominator();
  if (q * t.denominator() < t.numerator()) ++q;
  return Time(q);
}

inline Time floor_time(const Time& t) {
  auto q = t.numerator() / t.denominator();
  if (q * t.denominator() > t.numerator()) --q;
  return Time(q);
}

}  // namespace pathprog
