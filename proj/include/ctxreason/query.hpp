#pragma once

// Machine-readable meaning of a user query: an action plus one or two
// predicates over item attributes.

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ctxreason/errors.hpp"
#include "ctxreason/number.hpp"
#include "ctxreason/ontology.hpp"

namespace ctxreason {

enum class Op { less_than, more_than, equal, include, exclude, min, max };

inline std::string_view to_string(Op op) {
  switch (op) {
    case Op::less_than: return "LESS_THAN";
    case Op::more_than: return "MORE_THAN";
    case Op::equal: return "EQUAL";
    case Op::include: return "INCLUDE";
    case Op::exclude: return "EXCLUDE";
    case Op::min: return "MIN";
    case Op::max: return "MAX";
  }
  return "?";
}

inline bool is_superlative(Op op) { return op == Op::min || op == Op::max; }
inline bool is_comparison(Op op) { return op == Op::less_than || op == Op::more_than; }
inline bool is_numeric_op(Op op) { return op != Op::include && op != Op::exclude; }
inline Direction direction_of(Op op) {
  return op == Op::less_than || op == Op::min ? Direction::lower : Direction::higher;
}

// "the second one" (0-based ordinal) or an item name.
struct ItemRef {
  std::variant<std::size_t, std::string> target;

  static ItemRef ordinal(std::size_t index) { return {index}; }
  static ItemRef named(std::string name) { return {std::move(name)}; }

  const std::size_t* ordinal_index() const { return std::get_if<std::size_t>(&target); }
  const std::string* name() const { return std::get_if<std::string>(&target); }

  bool operator==(const ItemRef&) const = default;
};

struct Category {
  std::string token;
  bool operator==(const Category&) const = default;
};

// Threshold relative to everything shown so far ("cheaper", "more popular").
struct ContextRelative {
  bool operator==(const ContextRelative&) const = default;
};

using Operand = std::variant<std::monostate, NumberLiteral, Category, ContextRelative, ItemRef>;

struct Predicate {
  std::string attribute;
  Op op = Op::min;
  Operand operand;

  bool context_relative() const { return std::holds_alternative<ContextRelative>(operand); }
  const NumberLiteral* literal() const { return std::get_if<NumberLiteral>(&operand); }
  const Category* category() const { return std::get_if<Category>(&operand); }
  const ItemRef* item_ref() const { return std::get_if<ItemRef>(&operand); }

  bool operator==(const Predicate&) const = default;
};

enum class Action { inform_open, inform_tf, select, no_reason };

inline std::string_view to_string(Action a) {
  switch (a) {
    case Action::inform_open: return "inform_open";
    case Action::inform_tf: return "inform_tf";
    case Action::select: return "select";
    case Action::no_reason: return "no_reason";
  }
  return "?";
}

inline std::optional<Action> parse_action(std::string_view s) {
  for (auto a : {Action::inform_open, Action::inform_tf, Action::select, Action::no_reason})
    if (to_string(a) == s) return a;
  return std::nullopt;
}

inline constexpr std::size_t kMaxPredicates = 2;

struct QuerySemantics {
  Action action = Action::no_reason;
  std::optional<ItemRef> subject;  // inform_tf only
  std::vector<Predicate> predicates;
  bool spoken = false;  // numerals were (or are to be) written as words

  bool operator==(const QuerySemantics&) const = default;

  bool has_superlative() const {
    return std::any_of(predicates.begin(), predicates.end(), [](const Predicate& p) { return is_superlative(p.op); });
  }

  bool has_numeral() const {
    return std::any_of(predicates.begin(), predicates.end(), [](const Predicate& p) { return p.literal() != nullptr; });
  }

  // Distinct attributes in mention order.
  std::vector<std::string> attributes() const {
    std::vector<std::string> out;
    for (const auto& p : predicates)
      if (std::find(out.begin(), out.end(), p.attribute) == out.end()) out.push_back(p.attribute);
    return out;
  }
};

inline QuerySemantics no_reason_query() { return {}; }

inline std::string describe(const ItemRef& r) {
  if (const auto* i = r.ordinal_index()) return "#" + std::to_string(*i + 1);
  return "'" + *r.name() + "'";
}

inline std::string describe(const Predicate& p) {
  std::string out = std::string(to_string(p.op)) + " " + p.attribute;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NumberLiteral>) out += " " + v.text;
        else if constexpr (std::is_same_v<T, Category>) out += " '" + v.token + "'";
        else if constexpr (std::is_same_v<T, ContextRelative>) out += " <context>";
        else if constexpr (std::is_same_v<T, ItemRef>) out += " vs " + describe(v);
      },
      p.operand);
  return out;
}

inline std::string describe(const QuerySemantics& q) {
  std::string out = std::string(to_string(q.action));
  if (q.subject) out += " subject=" + describe(*q.subject);
  out += " {";
  for (std::size_t i = 0; i < q.predicates.size(); ++i) out += (i ? ", " : "") + describe(q.predicates[i]);
  out += "}";
  if (q.spoken) out += " spoken";
  return out;
}

// Checks the structural invariants of a predicate against the ontology.
inline void validate_predicate(const Ontology& o, const Predicate& p) {
  const AttributeSpec& a = o.attribute(p.attribute);
  const std::string what = describe(p);
  if (is_superlative(p.op)) {
    if (!a.numeric() || !std::holds_alternative<std::monostate>(p.operand))
      throw ValidationError("superlative needs a numeric attribute and no operand: " + what);
  } else if (p.op == Op::include || p.op == Op::exclude) {
    if (!a.categorical() || !p.category()) throw ValidationError("inclusion needs a categorical token: " + what);
  } else {
    if (!a.numeric()) throw ValidationError("comparison needs a numeric attribute: " + what);
    if (std::holds_alternative<std::monostate>(p.operand) || p.category())
      throw ValidationError("comparison needs a numeric, relative or item operand: " + what);
    if (p.op == Op::equal && p.context_relative())
      throw ValidationError("equality cannot be context-relative: " + what);
  }
}

inline void validate_query(const Ontology& o, const QuerySemantics& q) {
  if (q.action == Action::no_reason) {
    if (!q.predicates.empty() || q.subject) throw ValidationError("no_reason queries carry no predicates");
    return;
  }
  if (q.predicates.empty() || q.predicates.size() > kMaxPredicates)
    throw ValidationError("queries carry one or two predicates");
  if (q.attributes().size() != q.predicates.size())
    throw ValidationError("conjoined predicates must use distinct attributes");
  for (const auto& p : q.predicates) validate_predicate(o, p);
  const auto superlatives =
      std::count_if(q.predicates.begin(), q.predicates.end(), [](const Predicate& p) { return is_superlative(p.op); });
  if (superlatives > 1) throw ValidationError("at most one superlative per query");
  if (q.action == Action::inform_tf) {
    if (!q.subject || q.predicates.size() != 1) throw ValidationError("true/false queries need a subject and one predicate");
  } else if (q.subject) {
    throw ValidationError("only true/false queries carry a subject");
  }
}

}  // namespace ctxreason
