#pragma once

// The canonical answer grammar (see data/output_grammar.ebnf):
//
//   output      := "NoAnswer" | "inform true" | "inform false"
//                | "inform " names | "select " names | constraints
//   names       := name (" and " name)*
//   constraints := constraint (" and " constraint)*
//   constraint  := relation " " attribute " " value
//   relation    := "include" | "exclude" | "equal" | "less-than" | "more-than"

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ctxreason/errors.hpp"

namespace ctxreason {

enum class Relation { include, exclude, equal, less_than, more_than };

inline std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::include: return "include";
    case Relation::exclude: return "exclude";
    case Relation::equal: return "equal";
    case Relation::less_than: return "less-than";
    case Relation::more_than: return "more-than";
  }
  return "?";
}

inline std::optional<Relation> parse_relation(std::string_view s) {
  for (auto r : {Relation::include, Relation::exclude, Relation::equal, Relation::less_than, Relation::more_than})
    if (to_string(r) == s) return r;
  return std::nullopt;
}

struct Constraint {
  Relation relation;
  std::string attribute;
  std::string value;  // digit-form numeral or category token

  bool operator==(const Constraint&) const = default;
};

struct NoAnswer {
  bool operator==(const NoAnswer&) const = default;
};
struct InformTF {
  bool value;
  bool operator==(const InformTF&) const = default;
};
struct InformItems {
  std::vector<std::string> names;
  bool operator==(const InformItems&) const = default;
};
struct SelectItems {
  std::vector<std::string> names;
  bool operator==(const SelectItems&) const = default;
};
struct Constraints {
  std::vector<Constraint> list;
  bool operator==(const Constraints&) const = default;
};

using GoldOutput = std::variant<NoAnswer, InformTF, InformItems, SelectItems, Constraints>;

inline std::string_view answer_kind(const GoldOutput& g) {
  switch (g.index()) {
    case 0: return "noanswer";
    case 1: return "inform_tf";
    case 2: return "inform";
    case 3: return "select";
    default: return "constraints";
  }
}

namespace detail {

inline std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += " and ";
    out += names[i];
  }
  return out;
}

// Item names start with an uppercase letter or digit and are single-spaced words.
inline std::optional<std::size_t> bad_name_offset(std::string_view name) {
  if (name.empty() || !(std::isupper(static_cast<unsigned char>(name[0])) || std::isdigit(static_cast<unsigned char>(name[0]))))
    return 0;
  for (std::size_t i = 0; i < name.size(); ++i) {
    if (name[i] == ' ' && (i + 1 == name.size() || name[i + 1] == ' ')) return i;
    if (name[i] == '\n' || name[i] == '\t') return i;
  }
  return std::nullopt;
}

}  // namespace detail

inline std::string emit_output(const GoldOutput& g) {
  struct Visitor {
    std::string operator()(const NoAnswer&) const { return "NoAnswer"; }
    std::string operator()(const InformTF& t) const { return t.value ? "inform true" : "inform false"; }
    std::string operator()(const InformItems& i) const { return "inform " + detail::join_names(i.names); }
    std::string operator()(const SelectItems& s) const { return "select " + detail::join_names(s.names); }
    std::string operator()(const Constraints& c) const {
      std::string out;
      for (std::size_t i = 0; i < c.list.size(); ++i) {
        if (i) out += " and ";
        out += std::string(to_string(c.list[i].relation)) + " " + c.list[i].attribute + " " + c.list[i].value;
      }
      return out;
    }
  };
  return std::visit(Visitor{}, g);
}

inline GoldOutput parse_output(std::string_view s) {
  if (s == "NoAnswer") return NoAnswer{};
  if (s == "inform true") return InformTF{true};
  if (s == "inform false") return InformTF{false};

  auto parse_names = [&](std::size_t start) {
    std::vector<std::string> names;
    std::size_t pos = start;
    while (true) {
      const auto sep = s.find(" and ", pos);
      const auto end = sep == std::string_view::npos ? s.size() : sep;
      const auto name = s.substr(pos, end - pos);
      if (auto bad = detail::bad_name_offset(name)) throw ParseError("malformed item name", pos + *bad);
      if (std::find(names.begin(), names.end(), name) != names.end()) throw ParseError("duplicate item name", pos);
      names.emplace_back(name);
      if (sep == std::string_view::npos) break;
      pos = sep + 5;
    }
    return names;
  };
  if (s.starts_with("inform ")) return InformItems{parse_names(7)};
  if (s.starts_with("select ")) return SelectItems{parse_names(7)};

  // Constraints: split on single spaces, keeping offsets.
  struct Token {
    std::string_view text;
    std::size_t pos;
  };
  std::vector<Token> tokens;
  for (std::size_t pos = 0; pos <= s.size();) {
    const auto sp = s.find(' ', pos);
    const auto end = sp == std::string_view::npos ? s.size() : sp;
    if (end == pos) throw ParseError("empty token", pos);
    tokens.push_back({s.substr(pos, end - pos), pos});
    if (sp == std::string_view::npos) break;
    pos = sp + 1;
  }
  Constraints out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    auto rel = parse_relation(tokens[i].text);
    if (!rel) throw ParseError("expected NoAnswer, inform, select or a relation", tokens[i].pos);
    if (i + 2 >= tokens.size()) throw ParseError("constraint needs an attribute and a value", tokens[i].pos);
    Constraint c{*rel, std::string(tokens[i + 1].text), ""};
    std::size_t j = i + 2;
    const std::size_t value_start = tokens[j].pos;
    std::size_t value_end = value_start;
    for (; j < tokens.size(); ++j) {
      if (tokens[j].text == "and") {
        if (j + 1 < tokens.size() && parse_relation(tokens[j + 1].text)) break;
        throw ParseError("'and' must be followed by another constraint", tokens[j].pos);
      }
      value_end = tokens[j].pos + tokens[j].text.size();
    }
    c.value = std::string(s.substr(value_start, value_end - value_start));
    out.list.push_back(std::move(c));
    if (j < tokens.size()) {
      ++j;  // "and"
    }
    i = j;
  }
  return out;
}

}  // namespace ctxreason
