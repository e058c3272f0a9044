#pragma once

// Pseudo-language rendering of sampled items, comparative/superlative clues,
// and assembly of the shuffled reasoning context. Also reads a rendered
// context back into items.

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctxreason/catalog.hpp"
#include "ctxreason/errors.hpp"
#include "ctxreason/ontology.hpp"
#include "ctxreason/rng.hpp"

namespace ctxreason {

enum class StatementKind { is_a, has_attribute, comparative_clue, superlative_clue };

// Case I: no clues. Case II: neighbour comparisons. Case III: II plus extremes.
enum class ContextCase { I = 1, II = 2, III = 3 };

inline std::string_view to_string(ContextCase c) {
  switch (c) {
    case ContextCase::I: return "I";
    case ContextCase::II: return "II";
    case ContextCase::III: return "III";
  }
  return "?";
}

struct Statement {
  StatementKind kind;
  std::string subject;
  std::string attribute;  // has_attribute, clues
  std::string value;      // is_a: item type; has_attribute / superlative: formatted value
  std::string object;     // comparative: the other item
  std::string predicate;  // clues: lexicon phrase
  Direction direction = Direction::lower;  // clues
  std::string text;

  bool operator==(const Statement&) const = default;
};

inline std::string indefinite_article(std::string_view noun) {
  if (noun.empty()) return "a";
  const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(noun[0])));
  return std::string_view("aeiou").find(c) != std::string_view::npos ? "an" : "a";
}

inline std::string render(const Statement& s) {
  switch (s.kind) {
    case StatementKind::is_a:
      return s.subject + " is " + indefinite_article(s.value) + " " + s.value + ".";
    case StatementKind::has_attribute:
      return s.subject + " has attribute " + s.attribute + " with value " + s.value + ".";
    case StatementKind::comparative_clue:
      return s.subject + " is " + s.predicate + " than " + s.object + ".";
    case StatementKind::superlative_clue:
      return s.subject + " is the " + s.predicate + " with value " + s.value + ".";
  }
  return {};
}

inline Statement make_statement(Statement s) {
  s.text = render(s);
  return s;
}

inline std::string format_value(const AttributeSpec& a, const AttributeValue& v) {
  if (const auto* n = std::get_if<Number>(&v)) return a.format(*n);
  return std::get<std::string>(v);
}

struct ReasoningContext {
  ContextCase case_tag = ContextCase::I;
  std::vector<Item> items;  // ordinal order: position i is "the (i+1)-th one"
  std::vector<Statement> statements;
  std::string full_text;

  std::vector<std::string> ordinal_map() const {
    std::vector<std::string> names;
    for (const auto& i : items) names.push_back(i.name);
    return names;
  }

  std::size_t clue_count() const {
    return static_cast<std::size_t>(std::count_if(statements.begin(), statements.end(), [](const Statement& s) {
      return s.kind == StatementKind::comparative_clue || s.kind == StatementKind::superlative_clue;
    }));
  }
};

// One IsA per item, then one HasAttribute per present attribute in ontology order.
inline std::vector<Statement> render_statements(const Ontology& o, const std::vector<Item>& items) {
  std::vector<Statement> out;
  for (const auto& item : items) {
    out.push_back(make_statement({StatementKind::is_a, item.name, "", item.type, "", "", Direction::lower, ""}));
    for (const auto& a : o.attributes) {
      auto it = item.values.find(a.name);
      if (it == item.values.end()) continue;
      out.push_back(make_statement(
          {StatementKind::has_attribute, item.name, a.name, format_value(a, it->second), "", "", Direction::lower, ""}));
    }
  }
  return out;
}

namespace detail {

inline std::vector<const Item*> carriers_sorted(const std::vector<Item>& items, const std::string& attr) {
  std::vector<const Item*> out;
  for (const auto& i : items)
    if (i.number(attr)) out.push_back(&i);
  std::stable_sort(out.begin(), out.end(), [&](const Item* a, const Item* b) { return *a->number(attr) < *b->number(attr); });
  return out;
}

inline const std::string& pick_phrase(const std::vector<DirectedPhrase>& phrases, Direction d, Rng& rng) {
  std::vector<const std::string*> options;
  for (const auto& p : phrases)
    if (p.direction == d) options.push_back(&p.text);
  if (options.empty()) throw ValidationError("lexicon has no phrase for direction " + std::string(to_string(d)));
  return *options[rng.uniform(options.size())];
}

}  // namespace detail

// One clue per adjacent pair in value order; each clue's direction is a coin
// flip ("A is pricier than B" or "B is cheaper than A").
inline std::vector<Statement> make_comparative_clues(const Ontology& o, const std::vector<Item>& items,
                                                     std::string_view attribute, Rng& rng) {
  const AttributeSpec& a = o.attribute(attribute);
  if (!a.numeric()) throw ValidationError("comparative clues need a numeric attribute, got '" + a.name + "'");
  const auto sorted = detail::carriers_sorted(items, a.name);
  if (sorted.size() < 2)
    throw ValidationError("comparative clues on '" + a.name + "' need at least two items carrying it");
  std::vector<Statement> out;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const Item* lo = sorted[i];
    const Item* hi = sorted[i + 1];
    const bool from_high = rng.chance(0.5);
    const Direction d = from_high ? Direction::higher : Direction::lower;
    const std::string& phrase = detail::pick_phrase(a.lexicon.comparative, d, rng);
    out.push_back(make_statement({StatementKind::comparative_clue, from_high ? hi->name : lo->name, a.name, "",
                                  from_high ? lo->name : hi->name, phrase, d, ""}));
  }
  return out;
}

// Minimum and maximum clues; a single carrier is both.
inline std::vector<Statement> make_superlative_clues(const Ontology& o, const std::vector<Item>& items,
                                                     std::string_view attribute, Rng& rng) {
  const AttributeSpec& a = o.attribute(attribute);
  if (!a.numeric()) throw ValidationError("superlative clues need a numeric attribute, got '" + a.name + "'");
  const auto sorted = detail::carriers_sorted(items, a.name);
  if (sorted.empty()) throw ValidationError("no item carries '" + a.name + "'");
  std::vector<Statement> out;
  for (auto d : {Direction::lower, Direction::higher}) {
    const Item* item = d == Direction::lower ? sorted.front() : sorted.back();
    const std::string& phrase = detail::pick_phrase(a.lexicon.superlative, d, rng);
    out.push_back(make_statement(
        {StatementKind::superlative_clue, item->name, a.name, a.format(*item->number(a.name)), "", phrase, d, ""}));
  }
  return out;
}

inline std::string join_statements(const std::vector<Statement>& statements) {
  std::string out;
  for (const auto& s : statements) {
    if (!out.empty()) out += ' ';
    out += s.text;
  }
  return out;
}

// Orders items by the position of their IsA statement.
inline void apply_ordinals(ReasoningContext& ctx) {
  std::vector<Item> ordered;
  ordered.reserve(ctx.items.size());
  for (const auto& s : ctx.statements) {
    if (s.kind != StatementKind::is_a) continue;
    auto it = std::find_if(ctx.items.begin(), ctx.items.end(), [&](const Item& i) { return i.name == s.subject; });
    if (it != ctx.items.end()) ordered.push_back(*it);
  }
  ctx.items = std::move(ordered);
}

inline ReasoningContext assemble_context(const Ontology& o, std::vector<Item> items, ContextCase c, Rng& rng) {
  ReasoningContext ctx;
  ctx.case_tag = c;
  ctx.statements = render_statements(o, items);
  if (c != ContextCase::I) {
    for (const auto& a : o.attributes) {
      if (!a.numeric()) continue;
      const auto n = std::count_if(items.begin(), items.end(), [&](const Item& i) { return i.has(a.name); });
      if (n >= 2) {
        auto clues = make_comparative_clues(o, items, a.name, rng);
        ctx.statements.insert(ctx.statements.end(), clues.begin(), clues.end());
      }
      if (c == ContextCase::III && n >= 1) {
        auto clues = make_superlative_clues(o, items, a.name, rng);
        ctx.statements.insert(ctx.statements.end(), clues.begin(), clues.end());
      }
    }
  }
  rng.shuffle(ctx.statements.begin(), ctx.statements.end());
  ctx.items = std::move(items);
  apply_ordinals(ctx);
  ctx.full_text = join_statements(ctx.statements);
  return ctx;
}

namespace detail {

inline bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

inline std::optional<Statement> read_clue(const Ontology& o, std::string_view body) {
  for (const auto& a : o.attributes) {
    if (!a.numeric()) continue;
    for (const auto& p : a.lexicon.superlative) {
      const std::string mid = " is the " + p.text + " with value ";
      const auto at = body.find(mid);
      if (at == std::string_view::npos || at == 0) continue;
      return make_statement({StatementKind::superlative_clue, std::string(body.substr(0, at)), a.name,
                             std::string(body.substr(at + mid.size())), "", p.text, p.direction, ""});
    }
    for (const auto& p : a.lexicon.comparative) {
      const std::string mid = " is " + p.text + " than ";
      const auto at = body.find(mid);
      if (at == std::string_view::npos || at == 0) continue;
      return make_statement({StatementKind::comparative_clue, std::string(body.substr(0, at)), a.name, "",
                             std::string(body.substr(at + mid.size())), p.text, p.direction, ""});
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Reads a space-joined context back into statements and items. Clue
// statements are kept but never consulted for item values.
inline ReasoningContext parse_context(const Ontology& o, std::string_view text) {
  ReasoningContext ctx;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos >= text.size()) break;
    std::size_t end = text.find(". ", pos);
    if (end == std::string_view::npos) {
      if (text.back() != '.') throw ParseError("context statement must end with '.'", text.size());
      end = text.size() - 1;
    }
    const std::string_view body = text.substr(pos, end - pos);
    std::optional<Statement> st;

    if (const auto at = body.find(" has attribute "); at != std::string_view::npos) {
      const auto rest = body.substr(at + 15);
      const auto wv = rest.find(" with value ");
      if (wv == std::string_view::npos) throw ParseError("malformed HasAttribute statement", pos);
      st = make_statement({StatementKind::has_attribute, std::string(body.substr(0, at)), std::string(rest.substr(0, wv)),
                           std::string(rest.substr(wv + 12)), "", "", Direction::lower, ""});
    } else {
      for (const auto& type : o.item_types) {
        for (const std::string article : {"a", "an"}) {
          const std::string suffix = " is " + article + " " + type;
          if (detail::ends_with(body, suffix) && body.size() > suffix.size()) {
            st = make_statement({StatementKind::is_a, std::string(body.substr(0, body.size() - suffix.size())), "",
                                 type, "", "", Direction::lower, ""});
            break;
          }
        }
        if (st) break;
      }
      if (!st) st = detail::read_clue(o, body);
    }
    if (!st) throw ParseError("unrecognised context statement '" + std::string(body) + "'", pos);
    ctx.statements.push_back(std::move(*st));
    pos = end + 1;
  }

  for (const auto& s : ctx.statements) {
    if (s.kind != StatementKind::is_a) continue;
    if (std::any_of(ctx.items.begin(), ctx.items.end(), [&](const Item& i) { return i.name == s.subject; }))
      throw ParseError("item '" + s.subject + "' introduced twice", 0);
    ctx.items.push_back({s.subject, s.value, {}});
  }
  bool comparative = false, superlative = false;
  for (const auto& s : ctx.statements) {
    if (s.kind == StatementKind::comparative_clue) comparative = true;
    if (s.kind == StatementKind::superlative_clue) superlative = true;
    if (s.kind != StatementKind::has_attribute) continue;
    auto it = std::find_if(ctx.items.begin(), ctx.items.end(), [&](const Item& i) { return i.name == s.subject; });
    if (it == ctx.items.end()) throw ParseError("attribute given for unknown item '" + s.subject + "'", 0);
    const AttributeSpec* a = o.find(s.attribute);
    if (!a) throw ParseError("unknown attribute '" + s.attribute + "'", 0);
    if (a->numeric()) {
      auto n = parse_decimal(s.value);
      if (!n) throw ParseError("bad numeric value '" + s.value + "'", 0);
      it->values[a->name] = *n;
    } else {
      it->values[a->name] = s.value;
    }
  }
  ctx.case_tag = superlative ? ContextCase::III : comparative ? ContextCase::II : ContextCase::I;
  ctx.full_text = join_statements(ctx.statements);
  return ctx;
}

// A context built directly from items (ordinal order = given order), Case I.
inline ReasoningContext context_from_items(const Ontology& o, std::vector<Item> items) {
  ReasoningContext ctx;
  ctx.items = std::move(items);
  ctx.statements = render_statements(o, ctx.items);
  ctx.full_text = join_statements(ctx.statements);
  return ctx;
}

}  // namespace ctxreason
