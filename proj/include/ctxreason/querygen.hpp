#pragma once

// Surface realization and parsing of queries over the template inventory,
// plus enumeration of the queries a context can support.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctxreason/catalog.hpp"
#include "ctxreason/context.hpp"
#include "ctxreason/errors.hpp"
#include "ctxreason/ontology.hpp"
#include "ctxreason/oracle.hpp"
#include "ctxreason/query.hpp"
#include "ctxreason/rng.hpp"
#include "ctxreason/spoken.hpp"
#include "ctxreason/templates.hpp"

namespace ctxreason {

// ---------------------------------------------------------------------------
// Realization

inline std::string realize_number(const AttributeSpec& a, const NumberLiteral& lit, bool spoken) {
  if (spoken) return number_to_spoken(lit.value, a.unit, a.range.decimals);
  return a.unit == Unit::currency ? "$" + lit.text : lit.text;
}

inline std::string realize_ref(const TemplateInventory& inv, const ItemRef& r) {
  if (const auto* i = r.ordinal_index()) {
    if (*i >= inv.ordinals.size()) throw ValidationError("no ordinal word for position " + std::to_string(*i + 1));
    return "the " + inv.ordinals[*i] + " one";
  }
  return *r.name();
}

namespace detail {

inline std::vector<std::string> directed(const std::vector<DirectedPhrase>& ps, Direction d) {
  std::vector<std::string> out;
  for (const auto& p : ps)
    if (p.direction == d) out.push_back(p.text);
  return out;
}

inline std::string fill_value(std::string_view pattern, std::string_view value) {
  std::string out(pattern);
  const auto at = out.find("{value}");
  return out.replace(at, 7, value);
}

inline std::string pick_text(const std::vector<std::string>& v, Rng& rng, std::string_view what) {
  if (v.empty()) throw ValidationError("ontology has no phrase for " + std::string(what));
  return v[rng.uniform(v.size())];
}

// Adjective frame: "the cheapest", "cheaper than $5", "vegan", "not mango flavored".
inline bool adj_renderable(const AttributeSpec& a, const Predicate& p) {
  const auto& lx = a.lexicon;
  switch (p.op) {
    case Op::min:
    case Op::max: return !directed(lx.superlative, direction_of(p.op)).empty();
    case Op::less_than:
    case Op::more_than: return !directed(lx.comparative, direction_of(p.op)).empty();
    case Op::equal: return !lx.equality.empty() && p.literal();
    case Op::include: return !lx.inclusion.empty();
    case Op::exclude: return !lx.exclusion.empty();
  }
  return false;
}

// Verb frame: "cost less than $5", "have a rating of 4.5".
inline bool verb_renderable(const AttributeSpec& a, const Predicate& p, bool allow_ref) {
  if (!(p.literal() || (allow_ref && p.item_ref() && p.op != Op::equal))) return false;
  if (is_comparison(p.op)) return !directed(a.lexicon.verb_comparative, direction_of(p.op)).empty();
  if (p.op == Op::equal) return !a.lexicon.verb_equality.empty();
  return false;
}

}  // namespace detail

inline std::string realize_fragment(const Ontology& o, const TemplateInventory& inv, const Predicate& p, bool spoken,
                                    Rng& rng) {
  const AttributeSpec& a = o.attribute(p.attribute);
  const auto& lx = a.lexicon;
  const Direction d = direction_of(p.op);
  switch (p.op) {
    case Op::min:
    case Op::max: {
      const auto sup = detail::pick_text(detail::directed(lx.superlative, d), rng, "superlative " + a.name);
      return rng.chance(0.5) ? "the " + sup : "the " + sup + " one";
    }
    case Op::less_than:
    case Op::more_than: {
      const auto cmp = detail::pick_text(detail::directed(lx.comparative, d), rng, "comparative " + a.name);
      if (p.context_relative()) return cmp;
      if (const auto* lit = p.literal()) return cmp + " than " + realize_number(a, *lit, spoken);
      return cmp + " than " + realize_ref(inv, *p.item_ref());
    }
    case Op::equal: {
      const auto eq = detail::pick_text(lx.equality, rng, "equality " + a.name);
      return eq + " " + realize_number(a, *p.literal(), spoken);
    }
    case Op::include: return detail::fill_value(detail::pick_text(lx.inclusion, rng, "inclusion " + a.name), p.category()->token);
    case Op::exclude: return detail::fill_value(detail::pick_text(lx.exclusion, rng, "exclusion " + a.name), p.category()->token);
  }
  return {};
}

inline std::string realize_verb_fragment(const Ontology& o, const TemplateInventory& inv, const Predicate& p,
                                         bool spoken, Rng& rng) {
  const AttributeSpec& a = o.attribute(p.attribute);
  std::string head;
  if (p.op == Op::equal)
    head = detail::pick_text(a.lexicon.verb_equality, rng, "verb equality " + a.name);
  else
    head = detail::pick_text(detail::directed(a.lexicon.verb_comparative, direction_of(p.op)), rng,
                             "verb comparative " + a.name);
  if (const auto* lit = p.literal()) return head + " " + realize_number(a, *lit, spoken);
  return head + " " + realize_ref(inv, *p.item_ref());
}

// The negated wish names what is unwanted: "mango", "vegan", "mango flavored".
inline std::string realize_negated(const Ontology& o, const Predicate& p, Rng& rng) {
  const AttributeSpec& a = o.attribute(p.attribute);
  const std::size_t choice = rng.uniform(a.lexicon.inclusion.size() + 1);
  if (choice == a.lexicon.inclusion.size()) return p.category()->token;
  return detail::fill_value(a.lexicon.inclusion[choice], p.category()->token);
}

inline bool family_accepts(const Ontology& o, const TemplateFamily& f, const QuerySemantics& q) {
  if (q.action != f.action || q.predicates.empty()) return false;
  auto all_adj = [&] {
    return std::all_of(q.predicates.begin(), q.predicates.end(),
                       [&](const Predicate& p) { return detail::adj_renderable(o.attribute(p.attribute), p); });
  };
  const bool single = q.predicates.size() == 1;
  const Predicate& p0 = q.predicates.front();
  switch (f.accepts) {
    case Accepts::any: return !q.subject && all_adj();
    case Accepts::filter: return !q.subject && !q.has_superlative() && all_adj();
    case Accepts::superlative: return !q.subject && q.has_superlative() && all_adj();
    case Accepts::negation:
      return !q.subject && single && p0.op == Op::exclude;
    case Accepts::verb: return !q.subject && single && detail::verb_renderable(o.attribute(p0.attribute), p0, false);
    case Accepts::subject: return q.subject.has_value() && single && all_adj();
    case Accepts::subject_verb:
      return q.subject.has_value() && single && detail::verb_renderable(o.attribute(p0.attribute), p0, true);
  }
  return false;
}

inline std::string realize_surface(const QuerySemantics& q, const Ontology& o, const TemplateInventory& inv, Rng& rng) {
  if (q.action == Action::no_reason) return inv.no_reason[rng.uniform(inv.no_reason.size())];
  std::vector<const TemplateFamily*> fams;
  for (const auto& f : inv.families)
    if (family_accepts(o, f, q)) fams.push_back(&f);
  if (fams.empty()) throw ValidationError("no template can express " + describe(q));
  const TemplateFamily& fam = *fams[rng.uniform(fams.size())];
  const Variation& var = fam.variations[rng.uniform(fam.variations.size())];
  const bool spoken = q.spoken && q.has_numeral();

  std::string out;
  for (const auto& seg : var.segments) {
    if (!seg.slot) {
      out += seg.text;
    } else if (seg.text == "subject") {
      out += realize_ref(inv, *q.subject);
    } else if (seg.text == "neg") {
      out += realize_negated(o, q.predicates.front(), rng);
    } else if (seg.text == "vpred") {
      out += realize_verb_fragment(o, inv, q.predicates.front(), spoken, rng);
    } else {
      for (std::size_t i = 0; i < q.predicates.size(); ++i) {
        if (i > 0) {
          const bool contrast = q.predicates[i].op == Op::exclude && rng.chance(0.5);
          out += contrast ? inv.contrast : inv.conjunction;
        }
        out += realize_fragment(o, inv, q.predicates[i], spoken, rng);
      }
    }
  }
  // Restore the punctuation dropped by normalization.
  const auto& raw = var.text;
  const auto last_word = raw.find_last_not_of(".?! \t");
  if (last_word != std::string::npos) {
    for (char c : raw.substr(last_word + 1))
      if (c == '.' || c == '?' || c == '!') out += c;
  }
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

inline std::string realize_surface(const QuerySemantics& q, const Ontology& o, Rng& rng) {
  return realize_surface(q, o, default_templates(), rng);
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

struct ParsedNumber {
  NumberLiteral literal;
  bool spoken = false;
};

inline std::optional<ParsedNumber> parse_number(const AttributeSpec& a, std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && digits.front() == '$') {
    if (a.unit != Unit::currency) return std::nullopt;
    digits.remove_prefix(1);
  }
  if (!digits.empty() && std::isdigit(static_cast<unsigned char>(digits.front()))) {
    auto lit = parse_literal(digits);
    if (!lit) return std::nullopt;
    return ParsedNumber{*lit, false};
  }
  if (digits.size() != text.size()) return std::nullopt;
  try {
    return ParsedNumber{spoken_to_number(text), true};
  } catch (const ParseError&) {
    return std::nullopt;
  }
}

inline bool is_name_like(std::string_view s) {
  if (s.empty() || !(std::isupper(static_cast<unsigned char>(s[0])) || std::isdigit(static_cast<unsigned char>(s[0]))))
    return false;
  const std::string lower = lowercase(s);
  if (lower.find(" and ") != std::string::npos || lower.find(" but ") != std::string::npos) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == ' ') {
      if (i + 1 == s.size() || s[i + 1] == ' ') return false;
    } else if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '\'' || c == '&')) {
      return false;
    }
  }
  return true;
}

// Middle part of `lower` when it matches `pattern` around "{value}" and is a known token.
inline std::optional<std::string> match_value(std::string_view pattern, std::string_view lower,
                                              const std::vector<std::string>& tokens) {
  const auto at = pattern.find("{value}");
  const auto prefix = pattern.substr(0, at);
  const auto suffix = pattern.substr(at + 7);
  if (lower.size() <= prefix.size() + suffix.size()) return std::nullopt;
  if (!lower.starts_with(prefix) || !lower.ends_with(suffix)) return std::nullopt;
  std::string value(lower.substr(prefix.size(), lower.size() - prefix.size() - suffix.size()));
  if (std::find(tokens.begin(), tokens.end(), value) == tokens.end()) return std::nullopt;
  return value;
}

struct ParsedPredicate {
  Predicate predicate;
  bool spoken = false;
};

}  // namespace detail

inline std::optional<ItemRef> parse_item_ref(const TemplateInventory& inv, std::string_view text) {
  const std::string lower = lowercase(text);
  for (std::size_t i = 0; i < inv.ordinals.size(); ++i)
    if (lower == "the " + lowercase(inv.ordinals[i]) + " one") return ItemRef::ordinal(i);
  if (detail::is_name_like(text)) return ItemRef::named(std::string(text));
  return std::nullopt;
}

namespace detail {

// Number or item reference after "than".
inline std::optional<ParsedPredicate> comparison_operand(const TemplateInventory& inv, const AttributeSpec& a, Op op,
                                                         std::string_view rest) {
  if (auto n = parse_number(a, rest)) return ParsedPredicate{{a.name, op, n->literal}, n->spoken};
  if (auto r = parse_item_ref(inv, rest)) return ParsedPredicate{{a.name, op, *r}, false};
  return std::nullopt;
}

inline std::optional<ParsedPredicate> parse_fragment(const Ontology& o, const TemplateInventory& inv,
                                                     std::string_view text) {
  const std::string lower = lowercase(text);
  for (const auto& a : o.attributes) {
    const auto& lx = a.lexicon;
    if (a.numeric()) {
      for (const auto& p : lx.superlative)
        if (lower == "the " + p.text || lower == "the " + p.text + " one")
          return ParsedPredicate{{a.name, p.direction == Direction::lower ? Op::min : Op::max, std::monostate{}}, false};
      for (const auto& p : lx.comparative) {
        const Op op = p.direction == Direction::lower ? Op::less_than : Op::more_than;
        if (lower == p.text) return ParsedPredicate{{a.name, op, ContextRelative{}}, false};
        const std::string head = p.text + " than ";
        if (lower.starts_with(head))
          if (auto r = comparison_operand(inv, a, op, text.substr(head.size()))) return r;
      }
      for (const auto& e : lx.equality) {
        const std::string head = e + " ";
        if (lower.starts_with(head))
          if (auto n = parse_number(a, text.substr(head.size())))
            return ParsedPredicate{{a.name, Op::equal, n->literal}, n->spoken};
      }
    } else {
      for (const auto& pat : lx.inclusion)
        if (auto v = match_value(pat, lower, a.values)) return ParsedPredicate{{a.name, Op::include, Category{*v}}, false};
      for (const auto& pat : lx.exclusion)
        if (auto v = match_value(pat, lower, a.values)) return ParsedPredicate{{a.name, Op::exclude, Category{*v}}, false};
    }
  }
  return std::nullopt;
}

inline std::optional<ParsedPredicate> parse_verb_fragment(const Ontology& o, const TemplateInventory& inv,
                                                          std::string_view text) {
  const std::string lower = lowercase(text);
  for (const auto& a : o.attributes) {
    if (!a.numeric()) continue;
    for (const auto& p : a.lexicon.verb_comparative) {
      const std::string head = p.text + " ";
      if (lower.starts_with(head))
        if (auto r = comparison_operand(inv, a, p.direction == Direction::lower ? Op::less_than : Op::more_than,
                                        text.substr(head.size())))
          return r;
    }
    for (const auto& e : a.lexicon.verb_equality) {
      const std::string head = e + " ";
      if (lower.starts_with(head))
        if (auto n = parse_number(a, text.substr(head.size())))
          return ParsedPredicate{{a.name, Op::equal, n->literal}, n->spoken};
    }
  }
  return std::nullopt;
}

inline std::optional<ParsedPredicate> parse_negated(const Ontology& o, std::string_view text) {
  const std::string lower = lowercase(text);
  for (const auto& a : o.attributes) {
    if (!a.categorical()) continue;
    if (std::find(a.values.begin(), a.values.end(), lower) != a.values.end())
      return ParsedPredicate{{a.name, Op::exclude, Category{lower}}, false};
    for (const auto& pat : a.lexicon.inclusion)
      if (auto v = match_value(pat, lower, a.values)) return ParsedPredicate{{a.name, Op::exclude, Category{*v}}, false};
  }
  return std::nullopt;
}

struct ParsedPreds {
  std::vector<Predicate> predicates;
  bool spoken = false;
};

// One fragment, or two joined by the conjunction or contrast word.
inline std::optional<ParsedPreds> parse_preds(const Ontology& o, const TemplateInventory& inv, std::string_view text) {
  if (auto p = parse_fragment(o, inv, text)) return ParsedPreds{{p->predicate}, p->spoken};
  const std::string lower = lowercase(text);
  for (const auto* joiner : {&inv.conjunction, &inv.contrast}) {
    const std::string j = lowercase(*joiner);
    for (auto at = lower.find(j); at != std::string::npos; at = lower.find(j, at + 1)) {
      auto left = parse_fragment(o, inv, text.substr(0, at));
      if (!left) continue;
      auto right = parse_fragment(o, inv, text.substr(at + j.size()));
      if (!right) continue;
      return ParsedPreds{{left->predicate, right->predicate}, left->spoken || right->spoken};
    }
  }
  return std::nullopt;
}

struct SlotValue {
  std::string name;
  std::optional<ItemRef> ref;
  std::vector<Predicate> predicates;
  bool spoken = false;
};

inline std::optional<SlotValue> parse_slot(const Ontology& o, const TemplateInventory& inv, const std::string& slot,
                                           std::string_view text) {
  if (text.empty() || text.front() == ' ' || text.back() == ' ') return std::nullopt;
  if (slot == "subject") {
    if (auto r = parse_item_ref(inv, text)) return SlotValue{slot, *r, {}, false};
  } else if (slot == "preds") {
    if (auto p = parse_preds(o, inv, text)) return SlotValue{slot, std::nullopt, p->predicates, p->spoken};
  } else if (slot == "vpred") {
    if (auto p = parse_verb_fragment(o, inv, text)) return SlotValue{slot, std::nullopt, {p->predicate}, p->spoken};
  } else if (slot == "neg") {
    if (auto p = parse_negated(o, text)) return SlotValue{slot, std::nullopt, {p->predicate}, false};
  }
  return std::nullopt;
}

inline bool iequals_at(std::string_view input, std::size_t pos, std::string_view literal) {
  if (input.size() - pos < literal.size()) return false;
  for (std::size_t i = 0; i < literal.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(input[pos + i])) != std::tolower(static_cast<unsigned char>(literal[i])))
      return false;
  return true;
}

// Backtracking matcher: literal segments must match case-insensitively, slot
// segments try the shortest span first. `done` decides whether a complete
// binding is acceptable.
inline bool match_segments(const Ontology& o, const TemplateInventory& inv, const std::vector<Segment>& segs,
                           std::size_t si, std::string_view input, std::size_t pos, std::vector<SlotValue>& bound,
                           const std::function<bool(const std::vector<SlotValue>&)>& done) {
  if (si == segs.size()) return pos == input.size() && done(bound);
  const Segment& seg = segs[si];
  if (!seg.slot) {
    if (!iequals_at(input, pos, seg.text)) return false;
    return match_segments(o, inv, segs, si + 1, input, pos + seg.text.size(), bound, done);
  }
  const bool last = si + 1 == segs.size();
  for (std::size_t end = last ? input.size() : pos + 1; end <= input.size(); ++end) {
    if (!last && !iequals_at(input, end, segs[si + 1].text)) continue;
    auto value = parse_slot(o, inv, seg.text, input.substr(pos, end - pos));
    if (!value) continue;
    bound.push_back(std::move(*value));
    if (match_segments(o, inv, segs, si + 1, input, end, bound, done)) return true;
    bound.pop_back();
  }
  return false;
}

inline bool valid_query(const Ontology& o, const QuerySemantics& q) {
  try {
    validate_query(o, q);
    return true;
  } catch (const ValidationError&) {
    return false;
  }
}

}  // namespace detail

struct ParseResult {
  QuerySemantics semantics;
  std::string family;  // template family id, "no_reason" or "" when nothing matched
};

inline ParseResult parse_query_detailed(std::string_view surface, const Ontology& o, const TemplateInventory& inv) {
  const std::string input = normalize_utterance(surface);
  const std::string lower = lowercase(input);
  for (const auto& u : inv.no_reason)
    if (lowercase(normalize_utterance(u)) == lower) return {no_reason_query(), "no_reason"};

  for (const auto& fam : inv.families) {
    for (const auto& var : fam.variations) {
      QuerySemantics found;
      std::vector<detail::SlotValue> bound;
      auto done = [&](const std::vector<detail::SlotValue>& slots) {
        QuerySemantics q;
        q.action = fam.action;
        for (const auto& s : slots) {
          if (s.name == "subject") q.subject = s.ref;
          else q.predicates = s.predicates;
          q.spoken = q.spoken || s.spoken;
        }
        if (!detail::valid_query(o, q) || !family_accepts(o, fam, q)) return false;
        found = std::move(q);
        return true;
      };
      if (detail::match_segments(o, inv, var.segments, 0, input, 0, bound, done)) return {found, fam.id};
    }
  }
  return {no_reason_query(), ""};
}

// Unrecognized input falls back to NO_REASON.
inline QuerySemantics parse_query(std::string_view surface, const Ontology& o, const TemplateInventory& inv) {
  return parse_query_detailed(surface, o, inv).semantics;
}

inline QuerySemantics parse_query(std::string_view surface, const Ontology& o) {
  return parse_query(surface, o, default_templates());
}

// ---------------------------------------------------------------------------
// Enumeration

struct QuerySettings {
  std::size_t max_predicates = 2;
  // Category tokens to draw from (per attribute); the ontology's list otherwise.
  const std::map<std::string, std::vector<std::string>>* category_pools = nullptr;
  double name_ref_probability = 0.5;  // item references by name rather than ordinal
};

namespace detail {

inline ItemRef make_ref(const ReasoningContext& ctx, const TemplateInventory& inv, std::size_t index,
                        const QuerySettings& s, Rng& rng) {
  if (index < inv.ordinals.size() && !rng.chance(s.name_ref_probability)) return ItemRef::ordinal(index);
  return ItemRef::named(ctx.items[index].name);
}

// Whole amounts half of the time ("$5"), otherwise any value on the grid.
inline NumberLiteral sample_threshold(const AttributeSpec& a, Rng& rng) {
  const std::int64_t lo = (a.range.min.hundredths() + 99) / 100;
  const std::int64_t hi = a.range.max.hundredths() / 100;
  if (lo <= hi && rng.chance(0.5)) return make_literal(Number::whole(rng.between(lo, hi)), a.range.decimals);
  const auto i = rng.between(0, a.grid_size() - 1);
  return make_literal(a.grid_value(i), a.range.decimals);
}

inline const std::vector<std::string>& token_pool(const AttributeSpec& a, const QuerySettings& s) {
  if (s.category_pools)
    if (auto it = s.category_pools->find(a.name); it != s.category_pools->end() && !it->second.empty()) return it->second;
  return a.values;
}

}  // namespace detail

// Single predicates a context supports. Explicit operands are drawn from
// `rng`; context-dependent ones (superlatives, relative comparisons, item
// references) appear only when some item carries the attribute.
inline std::vector<Predicate> candidate_predicates(const Ontology& o, const ReasoningContext& ctx,
                                                   const TemplateInventory& inv, const QuerySettings& s, Rng& rng) {
  std::vector<Predicate> out;
  for (const auto& a : o.attributes) {
    std::vector<std::size_t> carriers;
    for (std::size_t i = 0; i < ctx.items.size(); ++i)
      if (ctx.items[i].has(a.name)) carriers.push_back(i);
    if (a.numeric()) {
      if (!carriers.empty()) {
        out.push_back({a.name, Op::min, std::monostate{}});
        out.push_back({a.name, Op::max, std::monostate{}});
        out.push_back({a.name, Op::less_than, ContextRelative{}});
        out.push_back({a.name, Op::more_than, ContextRelative{}});
      }
      for (auto i : carriers) {
        out.push_back({a.name, Op::less_than, detail::make_ref(ctx, inv, i, s, rng)});
        out.push_back({a.name, Op::more_than, detail::make_ref(ctx, inv, i, s, rng)});
      }
      out.push_back({a.name, Op::less_than, detail::sample_threshold(a, rng)});
      out.push_back({a.name, Op::more_than, detail::sample_threshold(a, rng)});
      if (!carriers.empty() && rng.chance(0.5)) {
        const Item& pick = ctx.items[carriers[rng.uniform(carriers.size())]];
        out.push_back({a.name, Op::equal, make_literal(*pick.number(a.name), a.range.decimals)});
      } else {
        out.push_back({a.name, Op::equal, detail::sample_threshold(a, rng)});
      }
    } else {
      std::vector<std::string> tokens;
      if (!carriers.empty()) tokens.push_back(*ctx.items[carriers[rng.uniform(carriers.size())]].category(a.name));
      const auto& pool = detail::token_pool(a, s);
      const auto& extra = pool[rng.uniform(pool.size())];
      if (std::find(tokens.begin(), tokens.end(), extra) == tokens.end()) tokens.push_back(extra);
      for (const auto& t : tokens) {
        out.push_back({a.name, Op::include, Category{t}});
        out.push_back({a.name, Op::exclude, Category{t}});
      }
    }
  }
  return out;
}

// A query is applicable when some template can say it and the oracle can
// answer it for this context.
inline bool is_applicable(const Ontology& o, const ReasoningContext& ctx, const TemplateInventory& inv,
                          const QuerySemantics& q) {
  if (q.action != Action::no_reason &&
      std::none_of(inv.families.begin(), inv.families.end(),
                   [&](const TemplateFamily& f) { return family_accepts(o, f, q); }))
    return false;
  try {
    derive_gold(o, ctx, q);
    return true;
  } catch (const OracleError&) {
    return false;
  } catch (const ValidationError&) {
    return false;
  }
}

// True/false questions: every subject carrying the attribute against every
// candidate predicate on it. Relative comparisons and self-references are left out.
inline std::vector<QuerySemantics> true_false_queries(const Ontology& o, const ReasoningContext& ctx,
                                                      const TemplateInventory& inv, const std::vector<Predicate>& cands,
                                                      const QuerySettings& s, Rng& rng) {
  std::vector<QuerySemantics> out;
  for (std::size_t si = 0; si < ctx.items.size(); ++si) {
    const Item& subject = ctx.items[si];
    for (const auto& p : cands) {
      if (!subject.has(p.attribute) || p.context_relative()) continue;
      if (const auto* r = p.item_ref(); r && &resolve_ref(ctx, *r) == &subject) continue;
      QuerySemantics q{Action::inform_tf, detail::make_ref(ctx, inv, si, s, rng), {p}, false};
      if (is_applicable(o, ctx, inv, q)) out.push_back(std::move(q));
    }
  }
  return out;
}

inline std::vector<QuerySemantics> enumerate_applicable_queries(const ReasoningContext& ctx, const Ontology& o,
                                                                const TemplateInventory& inv, const QuerySettings& s,
                                                                Rng& rng) {
  const auto cands = candidate_predicates(o, ctx, inv, s, rng);
  std::vector<QuerySemantics> out{no_reason_query()};
  for (auto action : {Action::inform_open, Action::select}) {
    for (std::size_t i = 0; i < cands.size(); ++i) {
      QuerySemantics q{action, std::nullopt, {cands[i]}, false};
      if (is_applicable(o, ctx, inv, q)) out.push_back(std::move(q));
      if (s.max_predicates < 2) continue;
      for (std::size_t j = i + 1; j < cands.size(); ++j) {
        if (cands[i].attribute == cands[j].attribute) continue;
        if (is_superlative(cands[i].op) && is_superlative(cands[j].op)) continue;
        QuerySemantics pair{action, std::nullopt, {cands[i], cands[j]}, false};
        if (is_applicable(o, ctx, inv, pair)) out.push_back(std::move(pair));
      }
    }
  }
  auto tf = true_false_queries(o, ctx, inv, cands, s, rng);
  out.insert(out.end(), std::make_move_iterator(tf.begin()), std::make_move_iterator(tf.end()));
  return out;
}

inline std::vector<QuerySemantics> enumerate_applicable_queries(const ReasoningContext& ctx, const Ontology& o,
                                                                const QuerySettings& s, Rng& rng) {
  return enumerate_applicable_queries(ctx, o, default_templates(), s, rng);
}

// What a sampled query should produce: an answer from the context, or
// constraints to hand to search.
struct QueryTarget {
  std::size_t num_attributes = 1;
  bool extract = false;
};

// One random query shaped like `target`, or nothing if this draw missed.
inline std::optional<QuerySemantics> sample_query(const Ontology& o, const ReasoningContext& ctx,
                                                  const TemplateInventory& inv, const QuerySettings& s,
                                                  const QueryTarget& target, Rng& rng) {
  const auto cands = candidate_predicates(o, ctx, inv, s, rng);
  if (cands.empty()) return std::nullopt;
  const bool tf_possible = !target.extract && target.num_attributes == 1 && !ctx.items.empty();
  const std::size_t choice = rng.uniform(tf_possible ? 3 : 2);
  QuerySemantics q;
  if (choice == 2) {
    const std::size_t si = rng.uniform(ctx.items.size());
    auto tf = std::vector<Predicate>{};
    for (const auto& p : cands) {
      if (!ctx.items[si].has(p.attribute) || p.context_relative()) continue;
      if (const auto* r = p.item_ref(); r && &resolve_ref(ctx, *r) == &ctx.items[si]) continue;
      tf.push_back(p);
    }
    if (tf.empty()) return std::nullopt;
    q = {Action::inform_tf, detail::make_ref(ctx, inv, si, s, rng), {tf[rng.uniform(tf.size())]}, false};
  } else {
    q.action = choice == 0 ? Action::inform_open : Action::select;
    q.predicates.push_back(cands[rng.uniform(cands.size())]);
    if (target.num_attributes == 2) {
      std::vector<const Predicate*> partners;
      for (const auto& p : cands)
        if (p.attribute != q.predicates[0].attribute && !(is_superlative(p.op) && is_superlative(q.predicates[0].op)))
          partners.push_back(&p);
      if (partners.empty()) return std::nullopt;
      q.predicates.push_back(*partners[rng.uniform(partners.size())]);
    }
  }
  if (!is_applicable(o, ctx, inv, q)) return std::nullopt;
  const bool extracted = std::holds_alternative<Constraints>(derive_gold(o, ctx, q));
  if (extracted != target.extract) return std::nullopt;
  return q;
}

}  // namespace ctxreason
