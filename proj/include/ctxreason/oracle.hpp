#pragma once

// Symbolic reasoner: answers from the context when it can, extracts search
// constraints when it cannot, and says NoAnswer when no reasoning is asked for.
// Only raw attribute values are consulted; clue statements are redundant.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ctxreason/context.hpp"
#include "ctxreason/errors.hpp"
#include "ctxreason/ontology.hpp"
#include "ctxreason/output.hpp"
#include "ctxreason/query.hpp"
#include "ctxreason/templates.hpp"

namespace ctxreason {

inline const Item& resolve_ref(const ReasoningContext& ctx, const ItemRef& r) {
  if (const auto* i = r.ordinal_index()) {
    if (*i >= ctx.items.size())
      throw OracleError("ordinal " + std::to_string(*i + 1) + " is out of range for a context of " +
                        std::to_string(ctx.items.size()) + " items");
    return ctx.items[*i];
  }
  const std::string wanted = lowercase(*r.name());
  for (const auto& item : ctx.items)
    if (lowercase(item.name) == wanted) return item;
  throw OracleError("no item named '" + *r.name() + "' in the context");
}

namespace detail {

inline std::vector<const Item*> carriers(const ReasoningContext& ctx, const std::string& attr) {
  std::vector<const Item*> out;
  for (const auto& item : ctx.items)
    if (item.has(attr)) out.push_back(&item);
  return out;
}

inline Number extreme(const std::vector<const Item*>& items, const std::string& attr, Direction d) {
  Number best = *items.front()->number(attr);
  for (const auto* i : items) {
    const Number v = *i->number(attr);
    if (d == Direction::lower ? v < best : v > best) best = v;
  }
  return best;
}

// The number a comparison is measured against.
inline Number threshold(const ReasoningContext& ctx, const Predicate& p) {
  if (const auto* lit = p.literal()) return lit->value;
  if (const auto* ref = p.item_ref()) {
    const Item& other = resolve_ref(ctx, *ref);
    auto v = other.number(p.attribute);
    if (!v) throw OracleError(other.name + " has no " + p.attribute + " to compare against");
    return *v;
  }
  if (p.context_relative()) {
    const auto cs = carriers(ctx, p.attribute);
    if (cs.empty()) throw OracleError("no item in the context has " + p.attribute);
    // Cheaper than everything shown so far: below the minimum, above the maximum.
    return extreme(cs, p.attribute, direction_of(p.op));
  }
  throw OracleError("predicate has no comparable operand: " + describe(p));
}

inline bool satisfies(const ReasoningContext& ctx, const Item& item, const Predicate& p) {
  if (!item.has(p.attribute)) return false;
  switch (p.op) {
    case Op::include: return *item.category(p.attribute) == p.category()->token;
    case Op::exclude: return *item.category(p.attribute) != p.category()->token;
    case Op::less_than: return *item.number(p.attribute) < threshold(ctx, p);
    case Op::more_than: return *item.number(p.attribute) > threshold(ctx, p);
    case Op::equal: return *item.number(p.attribute) == threshold(ctx, p);
    case Op::min:
    case Op::max: break;
  }
  throw OracleError("superlatives are not filters: " + describe(p));
}

}  // namespace detail

// Items satisfying every predicate, in ordinal order.
inline std::vector<std::string> filter_items(const ReasoningContext& ctx, const std::vector<Predicate>& predicates) {
  std::vector<std::string> out;
  for (const auto& item : ctx.items)
    if (std::all_of(predicates.begin(), predicates.end(),
                    [&](const Predicate& p) { return detail::satisfies(ctx, item, p); }))
      out.push_back(item.name);
  return out;
}

// Argmin/argmax over the items passing the pre-filter. Sampled contexts have
// distinct values, so this is a single item; hand-written ties return all.
inline std::vector<std::string> resolve_superlative(const ReasoningContext& ctx, const std::string& attribute,
                                                    Direction d, const std::vector<Predicate>& prefilter) {
  const auto survivors = filter_items(ctx, prefilter);
  std::vector<const Item*> pool;
  for (const auto& item : ctx.items)
    if (item.has(attribute) && std::find(survivors.begin(), survivors.end(), item.name) != survivors.end())
      pool.push_back(&item);
  if (pool.empty()) throw OracleError("no remaining item has " + attribute);
  const Number best = detail::extreme(pool, attribute, d);
  std::vector<std::string> out;
  for (const auto* i : pool)
    if (*i->number(attribute) == best) out.push_back(i->name);
  return out;
}

inline bool eval_true_false(const ReasoningContext& ctx, const ItemRef& subject, const Predicate& p) {
  const Item& s = resolve_ref(ctx, subject);
  if (!s.has(p.attribute)) throw OracleError(s.name + " has no " + p.attribute);
  if (is_superlative(p.op)) {
    const auto best = resolve_superlative(ctx, p.attribute, direction_of(p.op), {});
    return std::find(best.begin(), best.end(), s.name) != best.end();
  }
  if (p.context_relative()) {
    // "Is the second one more popular?": better than every other item.
    std::vector<const Item*> others;
    for (const auto* c : detail::carriers(ctx, p.attribute))
      if (c != &s) others.push_back(c);
    if (others.empty()) throw OracleError("nothing else in the context has " + p.attribute);
    const Number bound = detail::extreme(others, p.attribute, direction_of(p.op));
    const Number v = *s.number(p.attribute);
    return p.op == Op::less_than ? v < bound : v > bound;
  }
  if (const auto* ref = p.item_ref(); ref && &resolve_ref(ctx, *ref) == &s)
    throw OracleError("cannot compare " + s.name + " with itself");
  return detail::satisfies(ctx, s, p);
}

namespace detail {

inline Relation relation_for(Op op) {
  switch (op) {
    case Op::less_than:
    case Op::min: return Relation::less_than;
    case Op::more_than:
    case Op::max: return Relation::more_than;
    case Op::equal: return Relation::equal;
    case Op::include: return Relation::include;
    case Op::exclude: return Relation::exclude;
  }
  return Relation::equal;
}

}  // namespace detail

// Query mention order is preserved. Explicit numerals keep the query's digit
// spelling; values taken from the context use the attribute's precision.
// Superlatives become the comparative that beats every shown item.
inline std::vector<Constraint> extract_constraints(const Ontology& o, const ReasoningContext& ctx,
                                                   const std::vector<Predicate>& predicates) {
  std::vector<Constraint> out;
  for (const auto& p : predicates) {
    const AttributeSpec& a = o.attribute(p.attribute);
    Constraint c{detail::relation_for(p.op), p.attribute, ""};
    if (const auto* cat = p.category()) {
      c.value = cat->token;
    } else if (const auto* lit = p.literal()) {
      c.value = lit->text;
    } else if (is_superlative(p.op)) {
      c.value = a.format(detail::threshold(ctx, {p.attribute, p.op == Op::min ? Op::less_than : Op::more_than,
                                                 ContextRelative{}}));
    } else {
      c.value = a.format(detail::threshold(ctx, p));
    }
    out.push_back(std::move(c));
  }
  return out;
}

struct GoldTrace {
  std::string rule;
  std::vector<std::string> notes;
};

struct TracedGold {
  GoldOutput output;
  GoldTrace trace;
};

namespace detail {

inline GoldOutput items_output(Action action, std::vector<std::string> names) {
  if (action == Action::select) return SelectItems{std::move(names)};
  return InformItems{std::move(names)};
}

inline std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i];
  return out.empty() ? "(none)" : out;
}

}  // namespace detail

inline TracedGold derive_gold_traced(const Ontology& o, const ReasoningContext& ctx, const QuerySemantics& q) {
  validate_query(o, q);
  GoldTrace t;
  if (q.action == Action::no_reason) {
    t.rule = "no reasoning required";
    return {NoAnswer{}, t};
  }
  if (q.action == Action::inform_tf) {
    const Item& s = resolve_ref(ctx, *q.subject);
    const bool v = eval_true_false(ctx, *q.subject, q.predicates.front());
    t.rule = "true/false question answered from the context";
    t.notes.push_back("subject: " + s.name);
    t.notes.push_back("predicate: " + describe(q.predicates.front()) + " -> " + (v ? "true" : "false"));
    return {InformTF{v}, t};
  }

  const auto sup = std::find_if(q.predicates.begin(), q.predicates.end(), [](const Predicate& p) {
    return is_superlative(p.op);
  });
  if (sup != q.predicates.end()) {
    std::vector<Predicate> prefilter;
    for (const auto& p : q.predicates)
      if (&p != &*sup) prefilter.push_back(p);
    const auto survivors = filter_items(ctx, prefilter);
    t.notes.push_back("pre-filter survivors: " + detail::join(survivors));
    if (survivors.empty()) {
      t.rule = "superlative with nothing left after filtering: extract constraints";
      return {Constraints{extract_constraints(o, ctx, q.predicates)}, t};
    }
    auto best = resolve_superlative(ctx, sup->attribute, direction_of(sup->op), prefilter);
    t.rule = "superlative resolved in the context";
    t.notes.push_back(std::string(sup->op == Op::min ? "argmin " : "argmax ") + sup->attribute + ": " +
                      detail::join(best));
    return {detail::items_output(q.action, std::move(best)), t};
  }

  auto matched = filter_items(ctx, q.predicates);
  t.notes.push_back("matching items: " + detail::join(matched));
  if (!matched.empty()) {
    t.rule = "filter answered from the context";
    return {detail::items_output(q.action, std::move(matched)), t};
  }
  t.rule = "no item in the context qualifies: extract constraints";
  return {Constraints{extract_constraints(o, ctx, q.predicates)}, t};
}

inline GoldOutput derive_gold(const Ontology& o, const ReasoningContext& ctx, const QuerySemantics& q) {
  return derive_gold_traced(o, ctx, q).output;
}

}  // namespace ctxreason
