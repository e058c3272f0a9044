#pragma once

// Written <-> spoken conversion of numerals, as produced by a speech
// recognizer: "$3.50" <-> "three dollars fifty", 4.5 <-> "four point five".

#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctxreason/errors.hpp"
#include "ctxreason/number.hpp"

namespace ctxreason {

namespace detail {

inline constexpr std::array<std::string_view, 20> kOnes = {
    "zero",    "one",     "two",       "three",    "four",     "five",    "six",
    "seven",   "eight",   "nine",      "ten",      "eleven",   "twelve",  "thirteen",
    "fourteen", "fifteen", "sixteen",  "seventeen", "eighteen", "nineteen"};

inline constexpr std::array<std::string_view, 10> kTens = {
    "", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety"};

struct Scale {
  std::string_view word;
  std::uint64_t value;
};
inline constexpr std::array<Scale, 3> kScales = {
    {{"billion", 1'000'000'000ULL}, {"million", 1'000'000ULL}, {"thousand", 1'000ULL}}};

inline void append_word(std::string& out, std::string_view w) {
  if (!out.empty()) out += ' ';
  out += w;
}

inline void below_thousand(std::uint64_t n, std::string& out) {
  if (n >= 100) {
    append_word(out, kOnes[n / 100]);
    append_word(out, "hundred");
    n %= 100;
  }
  if (n >= 20) {
    append_word(out, kTens[n / 10]);
    if (n % 10) append_word(out, kOnes[n % 10]);
  } else if (n > 0) {
    append_word(out, kOnes[n]);
  }
}

inline std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> words;
  std::string cur;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) words.push_back(std::move(cur)), cur.clear();
    } else {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  return words;
}

inline std::string join_words(const std::vector<std::string>& words, std::size_t first,
                              std::size_t last) {
  std::string out;
  for (std::size_t i = first; i < last; ++i) append_word(out, words[i]);
  return out;
}

inline std::optional<int> ones_value(std::string_view w) {
  for (std::size_t i = 0; i < kOnes.size(); ++i)
    if (kOnes[i] == w) return static_cast<int>(i);
  return std::nullopt;
}

}  // namespace detail

// English words for a non-negative integer, without "and" or hyphens:
// 105 -> "one hundred five", 25 -> "twenty five".
inline std::string integer_to_words(std::uint64_t n) {
  if (n == 0) return "zero";
  std::string out;
  for (const auto& s : detail::kScales) {
    if (n >= s.value) {
      detail::below_thousand(n / s.value, out);
      detail::append_word(out, s.word);
      n %= s.value;
    }
  }
  detail::below_thousand(n, out);
  return out;
}

// Inverse of integer_to_words; accepts only its exact output.
inline std::optional<std::uint64_t> words_to_integer(const std::vector<std::string>& words,
                                                     std::size_t first, std::size_t last) {
  if (first >= last) return std::nullopt;
  std::uint64_t total = 0;
  std::uint64_t current = 0;
  for (std::size_t i = first; i < last; ++i) {
    const std::string& w = words[i];
    if (auto v = detail::ones_value(w)) {
      current += static_cast<std::uint64_t>(*v);
      continue;
    }
    bool matched = false;
    for (std::size_t t = 2; t < detail::kTens.size(); ++t) {
      if (detail::kTens[t] == w) {
        current += t * 10;
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (w == "hundred") {
      current *= 100;
      continue;
    }
    for (const auto& s : detail::kScales) {
      if (s.word == w) {
        total += current * s.value;
        current = 0;
        matched = true;
        break;
      }
    }
    if (!matched) return std::nullopt;
  }
  const std::uint64_t value = total + current;
  if (integer_to_words(value) != detail::join_words(words, first, last)) return std::nullopt;
  return value;
}

inline std::optional<std::uint64_t> words_to_integer(std::string_view text) {
  const auto words = detail::split_words(text);
  return words_to_integer(words, 0, words.size());
}

// Currency: "<dollars> dollars <cents>", zero cents elided, amounts under a
// dollar read as "<cents> cents". Otherwise "<int> point <digit> <digit>".
// `decimals` is the attribute precision used to spell fractional digits.
inline std::string number_to_spoken(Number value, Unit unit, int decimals = 2) {
  if (value.hundredths() < 0) throw ValidationError("cannot speak negative value " + value.format(2));
  const auto units = static_cast<std::uint64_t>(value.hundredths() / 100);
  const auto cents = static_cast<std::uint64_t>(value.hundredths() % 100);
  if (unit == Unit::currency) {
    if (units == 0 && cents > 0)
      return integer_to_words(cents) + (cents == 1 ? " cent" : " cents");
    std::string out = integer_to_words(units) + (units == 1 ? " dollar" : " dollars");
    if (cents > 0) out += " " + integer_to_words(cents);
    return out;
  }
  std::string out = integer_to_words(units);
  if (value.is_whole()) return out;
  const std::string text = value.canonical(decimals);
  out += " point";
  for (char c : text.substr(text.find('.') + 1)) {
    out += ' ';
    out += detail::kOnes[static_cast<std::size_t>(c - '0')];
  }
  return out;
}

// Inverse of number_to_spoken. The literal's text is the digit spelling a
// writer would have used: "three dollars fifty" -> 3.50 "3.50", "two dollars" -> "2".
inline NumberLiteral spoken_to_number(std::string_view text) {
  const auto words = detail::split_words(text);
  auto fail = [&](const std::string& why) -> NumberLiteral {
    throw ParseError("cannot read spoken number '" + std::string(text) + "': " + why, 0);
  };
  if (words.empty()) return fail("empty");

  std::size_t dollar_at = words.size();
  for (std::size_t i = 0; i < words.size(); ++i)
    if (words[i] == "dollar" || words[i] == "dollars") dollar_at = i;

  auto currency_literal = [](std::uint64_t units, std::uint64_t cents) {
    const auto n = Number::from_hundredths(static_cast<std::int64_t>(units * 100 + cents));
    return NumberLiteral{n, n.canonical(2)};
  };

  if (dollar_at < words.size()) {
    auto units = words_to_integer(words, 0, dollar_at);
    if (!units) return fail("bad dollar amount");
    std::uint64_t cents = 0;
    if (dollar_at + 1 < words.size()) {
      auto c = words_to_integer(words, dollar_at + 1, words.size());
      if (!c || *c == 0 || *c > 99) return fail("bad cents amount");
      cents = *c;
    }
    return currency_literal(*units, cents);
  }
  if (words.back() == "cent" || words.back() == "cents") {
    auto c = words_to_integer(words, 0, words.size() - 1);
    if (!c || *c == 0 || *c > 99) return fail("bad cents amount");
    return currency_literal(0, *c);
  }

  std::size_t point_at = words.size();
  for (std::size_t i = 0; i < words.size(); ++i)
    if (words[i] == "point") point_at = i;
  auto units = words_to_integer(words, 0, point_at);
  if (!units) return fail("bad integer part");
  std::string digits = std::to_string(*units);
  if (point_at < words.size()) {
    const std::size_t n = words.size() - point_at - 1;
    if (n == 0 || n > 2) return fail("expected one or two digits after 'point'");
    digits += '.';
    for (std::size_t i = point_at + 1; i < words.size(); ++i) {
      auto d = detail::ones_value(words[i]);
      if (!d || *d > 9) return fail("'" + words[i] + "' is not a digit");
      digits += static_cast<char>('0' + *d);
    }
  }
  auto lit = parse_literal(digits);
  if (!lit) return fail("out of range");
  return *lit;
}

}  // namespace ctxreason
