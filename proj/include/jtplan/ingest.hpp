#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "jtplan/core.hpp"
#include "jtplan/predictor.hpp"

namespace jtplan {

class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class empty_input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class InputFormat { auto_detect, lines, json };

struct CasesInput {
  CaseSet cases;
  std::size_t duplicates_dropped = 0;
};

namespace detail {

inline std::int64_t parse_i64_token(std::string_view token, std::size_t line) {
  std::int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw parse_error(line, "unparseable token '" + std::string(token) + "'");
  return value;
}

// Whitespace-separated signed decimals, line numbers tracked for errors.
inline std::vector<std::int64_t> parse_decimal_lines(std::string_view text) {
  std::vector<std::int64_t> values;
  std::size_t line = 1;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    if (c == '\n') {
      ++line;
      ++pos;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == ',') {
      ++pos;
      continue;
    }
    std::size_t end = pos;
    while (end < text.size() && text[end] != ' ' && text[end] != '\t' &&
           text[end] != '\r' && text[end] != '\n' && text[end] != ',')
      ++end;
    values.push_back(parse_i64_token(text.substr(pos, end - pos), line));
    pos = end;
  }
  return values;
}

inline std::size_t line_of_byte(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k)
    if (text[k] == '\n')
      ++line;
  return line;
}

inline std::vector<std::int64_t> parse_json_int_array(std::string_view text,
                                                      const char* key) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(line_of_byte(text, e.byte), e.what());
  }
  if (!doc.is_object() || !doc.contains(key) || !doc[key].is_array())
    throw parse_error(1, std::string("expected a JSON object with a '") + key +
                             "' array");
  std::vector<std::int64_t> values;
  values.reserve(doc[key].size());
  for (const auto& item : doc[key]) {
    if (!item.is_number_integer())
      throw parse_error(1, std::string("non-integer entry in '") + key + "'");
    values.push_back(item.get<std::int64_t>());
  }
  return values;
}

inline bool looks_like_json(std::string_view text) {
  for (const char c : text) {
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n')
      continue;
    return c == '{';
  }
  return false;
}

}  // namespace detail

// Parse case values from text, then sort and deduplicate. The number of
// duplicates dropped is reported so callers can surface it.
inline CasesInput parse_cases(std::string_view text,
                              InputFormat format = InputFormat::auto_detect) {
  if (format == InputFormat::auto_detect)
    format = detail::looks_like_json(text) ? InputFormat::json
                                           : InputFormat::lines;
  std::vector<std::int64_t> values =
      format == InputFormat::json ? detail::parse_json_int_array(text, "cases")
                                  : detail::parse_decimal_lines(text);
  if (values.empty())
    throw empty_input_error("no case values in input");
  std::sort(values.begin(), values.end());
  const auto last = std::unique(values.begin(), values.end());
  const std::size_t dropped =
      static_cast<std::size_t>(values.end() - last);
  values.erase(last, values.end());
  return {CaseSet(std::move(values)), dropped};
}

inline CasesInput parse_cases(std::istream& in,
                              InputFormat format = InputFormat::auto_detect) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_cases(buffer.str(), format);
}

inline std::string serialize_cases_lines(const CaseSet& cases) {
  std::string out;
  for (const std::int64_t v : cases.values()) {
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

// Trace files share the format: decimals one per line, or {"selectors":[...]}.
// Order and repeats are preserved.
inline Trace parse_trace(std::string_view text,
                         InputFormat format = InputFormat::auto_detect) {
  if (format == InputFormat::auto_detect)
    format = detail::looks_like_json(text) ? InputFormat::json
                                           : InputFormat::lines;
  Trace trace;
  trace.selectors = format == InputFormat::json
                        ? detail::parse_json_int_array(text, "selectors")
                        : detail::parse_decimal_lines(text);
  if (trace.selectors.empty())
    throw empty_input_error("no selectors in trace input");
  return trace;
}

inline Trace parse_trace(std::istream& in,
                         InputFormat format = InputFormat::auto_detect) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_trace(buffer.str(), format);
}

// Synthetic case-set shapes:
//   dense_opcode   — the consecutive run [lo, lo+n-1], an opcode-style set.
//   sparse_uniform — n distinct values drawn uniformly from [lo, hi].
//   grouped        — group_count consecutive runs of group_span values each,
//                    separated by gaps wide enough that no two groups can
//                    share a dense table; mimics interpreter dispatch sets.
struct GeneratorSpec {
  enum class Kind { dense_opcode, sparse_uniform, grouped };

  Kind kind = Kind::sparse_uniform;
  std::size_t n = 1;
  std::int64_t lo = 0;
  std::int64_t hi = std::int64_t{1} << 40;
  std::size_t group_count = 0;
  std::size_t group_span = 0;
  std::uint64_t seed = 0;
};

namespace detail {

// Fixed-point bounded draw; avoids the implementation-defined stdlib
// distributions so generated data is identical everywhere.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(rng()) * bound) >> 64);
}

inline double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline unsigned __int128 range_width(std::int64_t lo, std::int64_t hi) {
  return static_cast<unsigned __int128>(static_cast<std::uint64_t>(hi) -
                                        static_cast<std::uint64_t>(lo)) +
         1;
}

}  // namespace detail

inline CaseSet generate_cases(const GeneratorSpec& spec) {
  if (spec.n == 0)
    throw std::invalid_argument("generator: n must be >= 1");
  if (spec.lo > spec.hi)
    throw std::invalid_argument("generator: empty value range");
  const unsigned __int128 width = detail::range_width(spec.lo, spec.hi);
  if (width < spec.n)
    throw std::invalid_argument(
        "generator: range too narrow for n distinct values");

  std::mt19937_64 rng(spec.seed);
  std::vector<std::int64_t> values;
  values.reserve(spec.n);

  switch (spec.kind) {
    case GeneratorSpec::Kind::dense_opcode: {
      for (std::size_t k = 0; k < spec.n; ++k)
        values.push_back(spec.lo + static_cast<std::int64_t>(k));
      break;
    }
    case GeneratorSpec::Kind::sparse_uniform: {
      if (width > (static_cast<unsigned __int128>(1) << 63))
        throw std::invalid_argument(
            "generator: sparse_uniform range wider than 2^63 is not supported");
      // Floyd's sampling: n distinct offsets without materializing the range.
      const std::uint64_t w = static_cast<std::uint64_t>(width);
      std::set<std::uint64_t> offsets;
      for (std::uint64_t j = w - spec.n; j < w; ++j) {
        const std::uint64_t t = detail::bounded(rng, j + 1);
        if (!offsets.insert(t).second)
          offsets.insert(j);
      }
      for (const std::uint64_t offset : offsets)
        values.push_back(static_cast<std::int64_t>(
            static_cast<std::uint64_t>(spec.lo) + offset));
      break;
    }
    case GeneratorSpec::Kind::grouped: {
      if (spec.group_count == 0 || spec.group_span == 0)
        throw std::invalid_argument(
            "generator: grouped needs group_count and group_span >= 1");
      if (spec.n != spec.group_count * spec.group_span)
        throw std::invalid_argument(
            "generator: grouped needs n == group_count * group_span");
      // Gaps of at least 2n+2 keep any cross-group cluster below density 1/2.
      const std::uint64_t gap_min = 2 * static_cast<std::uint64_t>(spec.n) + 2;
      const unsigned __int128 worst =
          static_cast<unsigned __int128>(spec.n) +
          static_cast<unsigned __int128>(spec.group_count - 1) * (2 * gap_min);
      if (width < worst)
        throw std::invalid_argument(
            "generator: range too narrow for the grouped layout");
      std::uint64_t cursor = static_cast<std::uint64_t>(spec.lo);
      for (std::size_t g = 0; g < spec.group_count; ++g) {
        for (std::size_t k = 0; k < spec.group_span; ++k)
          values.push_back(static_cast<std::int64_t>(cursor + k));
        cursor += spec.group_span;
        if (g + 1 < spec.group_count)
          cursor += gap_min + detail::bounded(rng, gap_min);
      }
      break;
    }
  }
  return CaseSet(std::move(values));
}

enum class TraceDistribution { uniform, zipf, cyclic };

// Selectors drawn from the case values. zipf ranks values ascending (rank 1 =
// smallest value) and samples by inverse CDF with weight 1/rank^s.
inline Trace generate_trace(const CaseSet& cases, TraceDistribution dist,
                            std::size_t length, std::uint64_t seed,
                            double zipf_s = 1.0) {
  if (length == 0)
    throw std::invalid_argument("trace generator: length must be >= 1");
  const std::size_t n = cases.size();
  std::mt19937_64 rng(seed);
  Trace trace;
  trace.selectors.reserve(length);

  switch (dist) {
    case TraceDistribution::uniform: {
      for (std::size_t k = 0; k < length; ++k)
        trace.selectors.push_back(cases[detail::bounded(rng, n)]);
      break;
    }
    case TraceDistribution::cyclic: {
      for (std::size_t k = 0; k < length; ++k)
        trace.selectors.push_back(cases[k % n]);
      break;
    }
    case TraceDistribution::zipf: {
      if (!(zipf_s > 0.0))
        throw std::invalid_argument("trace generator: zipf s must be > 0");
      std::vector<double> cumulative(n);
      double total = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        total += 1.0 / std::pow(static_cast<double>(r + 1), zipf_s);
        cumulative[r] = total;
      }
      for (std::size_t k = 0; k < length; ++k) {
        const double u = detail::unit_double(rng) * total;
        const auto it =
            std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const std::size_t idx = std::min(
            static_cast<std::size_t>(it - cumulative.begin()), n - 1);
        trace.selectors.push_back(cases[idx]);
      }
      break;
    }
  }
  return trace;
}

}  // namespace jtplan
