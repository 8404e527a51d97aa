#include "pathprog/time.hpp"

#include <charconv>
#include <cstdlib>

#include "pathprog/error.hpp"

namespace pathprog {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CyclicGraph: return "CyclicGraph";
    case ErrorCode::DanglingEdge: return "DanglingEdge";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::NegativeWcet: return "NegativeWcet";
    case ErrorCode::InvalidTask: return "InvalidTask";
    case ErrorCode::PathExplosion: return "PathExplosion";
    case ErrorCode::CollectionTooLarge: return "CollectionTooLarge";
    case ErrorCode::SupplyBudgetMismatch: return "SupplyBudgetMismatch";
    case ErrorCode::EmptyDeadlineInterval: return "EmptyDeadlineInterval";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

double to_double(const Time& t) {
  return static_cast<double>(t.numerator()) / static_cast<double>(t.denominator());
}

namespace {
__extension__ using Wide = __int128;
}  // namespace

std::string format_fixed(const Time& t, int digits) {
  std::int64_t scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const bool negative = t < 0;
  const Time mag = negative ? -t : t;
  // round half away from zero
  Wide scaled = static_cast<Wide>(mag.numerator()) * scale * 2 + mag.denominator();
  scaled /= static_cast<Wide>(mag.denominator()) * 2;
  const auto whole = static_cast<std::int64_t>(scaled / scale);
  const auto frac = static_cast<std::int64_t>(scaled % scale);
  std::string out = negative && scaled != 0 ? "-" : "";
  out += std::to_string(whole);
  if (digits > 0) {
    std::string f = std::to_string(frac);
    out += '.';
    out += std::string(static_cast<std::size_t>(digits) - f.size(), '0');
    out += f;
  }
  return out;
}

std::string to_string(const Time& t) {
  if (t.denominator() == 1) return std::to_string(t.numerator());
  return std::to_string(t.numerator()) + "/" + std::to_string(t.denominator());
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty number in '" + std::string(whole) + "'");
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError, "malformed number '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Time parse_time(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto den = parse_int(text.substr(slash + 1), text);
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    return Time(parse_int(text.substr(0, slash), text), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = false;
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
      negative = int_part.front() == '-';
      int_part.remove_prefix(1);
    }
    if (frac_part.size() > 15) throw Error(ErrorCode::ParseError, "too many decimals in '" + std::string(text) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    const std::int64_t whole = int_part.empty() ? 0 : parse_int(int_part, text);
    const std::int64_t frac = frac_part.empty() ? 0 : parse_int(frac_part, text);
    if (whole < 0 || frac < 0) throw Error(ErrorCode::ParseError, "malformed decimal '" + std::string(text) + "'");
    Time value(whole * scale + frac, scale);
    return negative ? -value : value;
  }
  return Time(parse_int(text, text));
}

}  // namespace pathprog
