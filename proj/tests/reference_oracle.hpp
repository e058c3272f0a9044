#pragma once

// Brute-force evaluator kept apart from the library oracle. It flattens the
// context into a value table and answers by enumerating items and pairwise
// comparisons, then spells the answer directly as an output string.

#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctxreason/context.hpp"
#include "ctxreason/query.hpp"

namespace reference {

struct Cell {
  std::optional<std::int64_t> cents;  // numeric value in hundredths
  std::optional<std::string> token;
};

struct Row {
  std::string name;
  std::map<std::string, Cell> cells;
};

struct Table {
  std::vector<Row> rows;
  std::map<std::string, int> decimals;  // numeric attribute -> precision
};

inline Table tabulate(const ctxreason::Ontology& o, const ctxreason::ReasoningContext& ctx) {
  Table t;
  for (const auto& a : o.attributes)
    if (a.numeric()) t.decimals[a.name] = a.range.decimals;
  for (const auto& item : ctx.items) {
    Row r{item.name, {}};
    for (const auto& [attr, v] : item.values) {
      Cell c;
      if (const auto* n = std::get_if<ctxreason::Number>(&v)) c.cents = n->hundredths();
      else c.token = std::get<std::string>(v);
      r.cells[attr] = c;
    }
    t.rows.push_back(std::move(r));
  }
  return t;
}

inline std::string spell(std::int64_t cents, int decimals) {
  char buf[48];
  if (decimals == 0) std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(cents / 100));
  else if (decimals == 1) std::snprintf(buf, sizeof buf, "%lld.%lld", static_cast<long long>(cents / 100), static_cast<long long>(cents % 100 / 10));
  else std::snprintf(buf, sizeof buf, "%lld.%02lld", static_cast<long long>(cents / 100), static_cast<long long>(cents % 100));
  return buf;
}

struct Failure {
  std::string why;
};

inline std::size_t row_of(const Table& t, const ctxreason::ItemRef& r) {
  if (const auto* i = r.ordinal_index()) {
    if (*i >= t.rows.size()) throw Failure{"ordinal out of range"};
    return *i;
  }
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    if (t.rows[i].name == *r.name()) return i;
  throw Failure{"unknown name"};
}

inline const Cell* cell(const Table& t, std::size_t row, const std::string& attr) {
  auto it = t.rows[row].cells.find(attr);
  return it == t.rows[row].cells.end() ? nullptr : &it->second;
}

// Numeric bound a comparison refers to; "relative" bounds come from every row.
inline std::int64_t bound(const Table& t, const ctxreason::Predicate& p) {
  using ctxreason::Op;
  if (const auto* l = p.literal()) return l->value.hundredths();
  if (const auto* r = p.item_ref()) {
    const Cell* c = cell(t, row_of(t, *r), p.attribute);
    if (!c || !c->cents) throw Failure{"reference lacks attribute"};
    return *c->cents;
  }
  std::optional<std::int64_t> best;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const Cell* c = cell(t, i, p.attribute);
    if (!c || !c->cents) continue;
    const bool lower = p.op == Op::less_than || p.op == Op::min;
    if (!best || (lower ? *c->cents < *best : *c->cents > *best)) best = *c->cents;
  }
  if (!best) throw Failure{"nothing carries attribute"};
  return *best;
}

inline bool holds(const Table& t, std::size_t row, const ctxreason::Predicate& p) {
  using ctxreason::Op;
  const Cell* c = cell(t, row, p.attribute);
  if (!c) return false;
  switch (p.op) {
    case Op::include: return c->token && *c->token == p.category()->token;
    case Op::exclude: return c->token && *c->token != p.category()->token;
    case Op::less_than: return c->cents && *c->cents < bound(t, p);
    case Op::more_than: return c->cents && *c->cents > bound(t, p);
    case Op::equal: return c->cents && *c->cents == bound(t, p);
    default: throw Failure{"superlative used as filter"};
  }
}

// Row is an extreme if no other candidate row beats it.
inline bool is_extreme(const Table& t, std::size_t row, const std::string& attr, bool lower,
                       const std::vector<bool>& candidate) {
  const Cell* mine = cell(t, row, attr);
  if (!candidate[row] || !mine || !mine->cents) return false;
  for (std::size_t j = 0; j < t.rows.size(); ++j) {
    if (!candidate[j]) continue;
    const Cell* other = cell(t, j, attr);
    if (!other || !other->cents) continue;
    if (lower ? *other->cents < *mine->cents : *other->cents > *mine->cents) return false;
  }
  return true;
}

inline std::string relation(ctxreason::Op op) {
  using ctxreason::Op;
  switch (op) {
    case Op::less_than:
    case Op::min: return "less-than";
    case Op::more_than:
    case Op::max: return "more-than";
    case Op::equal: return "equal";
    case Op::include: return "include";
    case Op::exclude: return "exclude";
  }
  return "";
}

inline std::string constraints(const Table& t, const std::vector<ctxreason::Predicate>& preds) {
  std::string out;
  for (const auto& p : preds) {
    if (!out.empty()) out += " and ";
    out += relation(p.op) + " " + p.attribute + " ";
    if (const auto* c = p.category()) out += c->token;
    else if (const auto* l = p.literal()) out += l->text;
    else out += spell(bound(t, p), t.decimals.at(p.attribute));
  }
  return out;
}

inline std::string names(const Table& t, const std::vector<bool>& chosen, const std::string& head) {
  std::string out = head;
  bool first = true;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (!chosen[i]) continue;
    out += (first ? " " : " and ") + t.rows[i].name;
    first = false;
  }
  return out;
}

// Returns the canonical output string, or throws Failure when the query has
// no defined answer for this context.
inline std::string answer(const ctxreason::Ontology& o, const ctxreason::ReasoningContext& ctx,
                          const ctxreason::QuerySemantics& q) {
  using ctxreason::Action;
  using ctxreason::Op;
  const Table t = tabulate(o, ctx);
  if (q.action == Action::no_reason) return "NoAnswer";

  if (q.action == Action::inform_tf) {
    const auto& p = q.predicates.at(0);
    const std::size_t s = row_of(t, *q.subject);
    const Cell* c = cell(t, s, p.attribute);
    if (!c) throw Failure{"subject lacks attribute"};
    bool v;
    if (p.op == Op::min || p.op == Op::max) {
      v = is_extreme(t, s, p.attribute, p.op == Op::min, std::vector<bool>(t.rows.size(), true));
    } else if (p.context_relative()) {
      v = true;
      bool any = false;
      for (std::size_t j = 0; j < t.rows.size(); ++j) {
        const Cell* o2 = cell(t, j, p.attribute);
        if (j == s || !o2 || !o2->cents) continue;
        any = true;
        if (p.op == Op::less_than ? !(*c->cents < *o2->cents) : !(*c->cents > *o2->cents)) v = false;
      }
      if (!any) throw Failure{"nothing to compare"};
    } else {
      if (const auto* r = p.item_ref(); r && row_of(t, *r) == s) throw Failure{"self comparison"};
      v = holds(t, s, p);
    }
    return v ? "inform true" : "inform false";
  }

  const std::string head = q.action == Action::select ? "select" : "inform";
  std::vector<ctxreason::Predicate> filters;
  const ctxreason::Predicate* sup = nullptr;
  for (const auto& p : q.predicates) {
    if (p.op == Op::min || p.op == Op::max) sup = &p;
    else filters.push_back(p);
  }
  std::vector<bool> pass(t.rows.size(), true);
  bool any = false;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    for (const auto& p : filters) pass[i] = pass[i] && holds(t, i, p);
    any = any || pass[i];
  }
  if (!sup) return any ? names(t, pass, head) : constraints(t, q.predicates);
  if (!any) return constraints(t, q.predicates);
  std::vector<bool> best(t.rows.size(), false);
  bool found = false;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    best[i] = is_extreme(t, i, sup->attribute, sup->op == Op::min, pass);
    found = found || best[i];
  }
  if (!found) throw Failure{"no survivor carries the attribute"};
  return names(t, best, head);
}

}  // namespace reference
