#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>

namespace ctxreason {

enum class Unit { none, currency };

// Attribute values carry at most two decimal places, so they are stored as an
// exact count of hundredths. Comparisons never touch floating point.
class Number {
 public:
  constexpr Number() = default;

  static constexpr Number from_hundredths(std::int64_t h) { return Number(h); }
  static Number from_double(double v) { return Number(std::llround(v * 100.0)); }
  static constexpr Number whole(std::int64_t units) { return Number(units * 100); }

  constexpr std::int64_t hundredths() const { return h_; }
  double to_double() const { return static_cast<double>(h_) / 100.0; }
  constexpr bool is_whole() const { return h_ % 100 == 0; }

  // Value rounded to `decimals` places; true when no rounding is needed.
  constexpr bool representable(int decimals) const {
    return decimals >= 2 || h_ % (decimals == 1 ? 10 : 100) == 0;
  }

  // Fixed notation with exactly `decimals` places: 2.00, 4.5, 3.
  std::string format(int decimals) const {
    const std::int64_t a = h_ < 0 ? -h_ : h_;
    std::string out = h_ < 0 ? "-" : "";
    out += std::to_string(a / 100);
    if (decimals > 0) {
      const std::int64_t cents = a % 100;
      char frac[3] = {static_cast<char>('0' + cents / 10), static_cast<char>('0' + cents % 10), 0};
      out += '.';
      out.append(frac, static_cast<std::size_t>(decimals > 2 ? 2 : decimals));
    }
    return out;
  }

  // How a value is written in a user query: whole amounts drop the decimals
  // ("$5"), everything else uses the attribute's precision ("$3.50", "4.5").
  std::string canonical(int decimals) const { return format(is_whole() ? 0 : decimals); }

  constexpr auto operator<=>(const Number&) const = default;

 private:
  constexpr explicit Number(std::int64_t h) : h_(h) {}
  std::int64_t h_ = 0;
};

// Parses unsigned decimal text ("3", "3.5", "3.55"). At most two decimals.
inline std::optional<Number> parse_decimal(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::int64_t units = 0;
  std::size_t i = 0;
  bool any_digit = false;
  for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) {
    if (units > 100'000'000'000LL) return std::nullopt;
    units = units * 10 + (s[i] - '0');
    any_digit = true;
  }
  if (!any_digit) return std::nullopt;
  std::int64_t cents = 0;
  if (i < s.size()) {
    if (s[i] != '.') return std::nullopt;
    ++i;
    const std::size_t digits = s.size() - i;
    if (digits == 0 || digits > 2) return std::nullopt;
    for (std::size_t d = 0; d < digits; ++d) {
      const char c = s[i + d];
      if (c < '0' || c > '9') return std::nullopt;
      cents = cents * 10 + (c - '0');
    }
    if (digits == 1) cents *= 10;
  }
  return Number::from_hundredths(units * 100 + cents);
}

// A numeral as it appears in a query: the value plus its digit spelling.
// Constraints echo the spelling, so "$2" and "$2.00" stay distinguishable.
struct NumberLiteral {
  Number value;
  std::string text;

  bool operator==(const NumberLiteral&) const = default;
};

inline NumberLiteral make_literal(Number value, int decimals) {
  return {value, value.canonical(decimals)};
}

inline std::optional<NumberLiteral> parse_literal(std::string_view digits) {
  auto v = parse_decimal(digits);
  if (!v) return std::nullopt;
  return NumberLiteral{*v, std::string(digits)};
}

}  // namespace ctxreason
