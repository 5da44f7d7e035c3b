#pragma once

#include <charconv>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace jtplan {

// Exact non-negative rational. Densities and thresholds are compared by
// cross-multiplication in 128-bit arithmetic, never through floating point, so
// behavior at exact threshold boundaries is reproducible.
struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  constexpr Fraction() = default;
  constexpr Fraction(std::uint64_t n, std::uint64_t d) : num(n), den(d) {}

  Fraction reduced() const {
    if (den == 0)
      throw std::invalid_argument("fraction: zero denominator");
    const std::uint64_t g = std::gcd(num, den);
    return Fraction{num / g, den / g};
  }

  double to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  std::string to_string() const {
    const Fraction r = reduced();
    if (r.den == 1)
      return std::to_string(r.num);
    return std::to_string(r.num) + "/" + std::to_string(r.den);
  }

  friend bool operator==(const Fraction& a, const Fraction& b) {
    return static_cast<unsigned __int128>(a.num) * b.den ==
           static_cast<unsigned __int128>(b.num) * a.den;
  }
  friend bool operator<(const Fraction& a, const Fraction& b) {
    return static_cast<unsigned __int128>(a.num) * b.den <
           static_cast<unsigned __int128>(b.num) * a.den;
  }
  friend bool operator<=(const Fraction& a, const Fraction& b) {
    return !(b < a);
  }
};

namespace detail {

inline std::uint64_t parse_u64(std::string_view s, const char* what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument(std::string(what) + ": bad integer '" +
                                std::string(s) + "'");
  return v;
}

}  // namespace detail

// Accepts "2/5", "1", "0.4" and ".4". Decimal forms become num/10^digits and
// are reduced, so "0.4" and "2/5" compare equal.
inline Fraction parse_fraction(std::string_view text) {
  if (text.empty())
    throw std::invalid_argument("fraction: empty string");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::uint64_t num = detail::parse_u64(text.substr(0, slash), "fraction");
    const std::uint64_t den = detail::parse_u64(text.substr(slash + 1), "fraction");
    if (den == 0)
      throw std::invalid_argument("fraction: zero denominator");
    return Fraction{num, den}.reduced();
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 18)
      throw std::invalid_argument("fraction: bad decimal '" + std::string(text) + "'");
    std::uint64_t den = 1;
    for (std::size_t k = 0; k < frac.size(); ++k)
      den *= 10;
    const std::uint64_t w = whole.empty() ? 0 : detail::parse_u64(whole, "fraction");
    const std::uint64_t f = detail::parse_u64(frac, "fraction");
    return Fraction{w * den + f, den}.reduced();
  }
  return Fraction{detail::parse_u64(text, "fraction"), 1};
}

}  // namespace jtplan
