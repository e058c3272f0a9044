#pragma once

// Attribute schema, value spaces and surface lexicons that all generation
// draws from. Loaded from a JSON document (see docs/formats.md).

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ctxreason/embedded_data.hpp"
#include "ctxreason/errors.hpp"
#include "ctxreason/number.hpp"

namespace ctxreason {

inline constexpr int kOntologySchemaVersion = 1;

enum class AttributeKind { numeric, categorical };
enum class Direction { lower, higher };

enum class PhraseKind {
  comparative,       // "cheaper"
  superlative,       // "cheapest"
  equality,          // "priced at"
  verb_comparative,  // "cost less than"
  verb_equality,     // "cost"
  inclusion,         // "{value} flavored"
  exclusion,         // "not {value}"
};

inline std::string_view to_string(Direction d) { return d == Direction::lower ? "lower" : "higher"; }
inline Direction opposite(Direction d) { return d == Direction::lower ? Direction::higher : Direction::lower; }

inline std::string_view to_string(PhraseKind k) {
  switch (k) {
    case PhraseKind::comparative: return "comparative";
    case PhraseKind::superlative: return "superlative";
    case PhraseKind::equality: return "equality";
    case PhraseKind::verb_comparative: return "verb_comparative";
    case PhraseKind::verb_equality: return "verb_equality";
    case PhraseKind::inclusion: return "inclusion";
    case PhraseKind::exclusion: return "exclusion";
  }
  return "?";
}

struct DirectedPhrase {
  std::string text;
  Direction direction;

  bool operator==(const DirectedPhrase&) const = default;
};

struct Lexicon {
  std::vector<DirectedPhrase> comparative;
  std::vector<DirectedPhrase> superlative;
  std::vector<DirectedPhrase> verb_comparative;
  std::vector<std::string> equality;
  std::vector<std::string> verb_equality;
  std::vector<std::string> inclusion;  // patterns containing "{value}"
  std::vector<std::string> exclusion;
};

struct NumericRange {
  Number min;
  Number max;
  int decimals = 2;
  bool bounded = false;
};

struct AttributeSpec {
  std::string name;
  AttributeKind kind = AttributeKind::numeric;
  NumericRange range;                   // numeric only
  Unit unit = Unit::none;               // numeric only
  std::vector<std::string> values;      // categorical only
  std::optional<bool> disjoint_splits;  // categorical only; unset = decided by pool size
  Lexicon lexicon;

  bool numeric() const { return kind == AttributeKind::numeric; }
  bool categorical() const { return kind == AttributeKind::categorical; }

  // Pools of at least 30 tokens are partitioned across train/dev/test.
  bool splits_disjointly() const { return disjoint_splits.value_or(values.size() >= 30); }

  std::int64_t step_hundredths() const { return range.decimals >= 2 ? 1 : range.decimals == 1 ? 10 : 100; }

  // Number of values on the generation grid [min, max].
  std::int64_t grid_size() const {
    return (range.max.hundredths() - range.min.hundredths()) / step_hundredths() + 1;
  }

  Number grid_value(std::int64_t i) const {
    return Number::from_hundredths(range.min.hundredths() + i * step_hundredths());
  }

  std::string format(Number v) const { return v.format(range.decimals); }
};

// Item names are "<Type> <Word>", Word built from `syllables_per_word`
// syllables. Syllables share one length so distinct indices give distinct words.
struct NameScheme {
  std::vector<std::string> syllables;
  int syllables_per_word = 3;

  std::uint64_t words() const {
    std::uint64_t n = 1;
    for (int i = 0; i < syllables_per_word; ++i) n *= syllables.size();
    return n;
  }

  std::string word(std::uint64_t index) const {
    std::string w;
    for (int i = 0; i < syllables_per_word; ++i) {
      w += syllables[index % syllables.size()];
      index /= syllables.size();
    }
    if (!w.empty()) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
    return w;
  }
};

inline std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

struct Ontology {
  int schema_version = kOntologySchemaVersion;
  std::vector<std::string> item_types;
  std::vector<AttributeSpec> attributes;
  double presence_probability = 0.9;
  NameScheme names;

  const AttributeSpec* find(std::string_view name) const {
    for (const auto& a : attributes)
      if (a.name == name) return &a;
    return nullptr;
  }

  const AttributeSpec& attribute(std::string_view name) const {
    if (const auto* a = find(name)) return *a;
    throw ValidationError("unknown attribute '" + std::string(name) + "'");
  }

  std::uint64_t name_capacity() const { return item_types.size() * names.words(); }

  // Name-pool index -> (item type, item name).
  std::pair<std::string, std::string> item_identity(std::uint64_t index) const {
    const std::uint64_t per_type = names.words();
    const std::string& type = item_types[index / per_type];
    return {type, capitalize(type) + " " + names.word(index % per_type)};
  }
};

enum class Severity { warning, error };

struct Diagnostic {
  Severity severity;
  std::string path;
  std::string message;
};

inline bool has_errors(const std::vector<Diagnostic>& ds) {
  return std::any_of(ds.begin(), ds.end(), [](const Diagnostic& d) { return d.severity == Severity::error; });
}

namespace detail {

inline bool is_identifier(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) ||
           c == '_' || c == '-';
  });
}

// Words that the query and output grammars use as separators.
inline bool has_reserved_separator(std::string_view s) {
  const std::string padded = " " + std::string(s) + " ";
  return padded.find(" and ") != std::string::npos || padded.find(" but ") != std::string::npos;
}

inline std::size_t count_occurrences(std::string_view s, std::string_view needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string_view::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace detail

inline std::vector<Diagnostic> validate_ontology(const Ontology& o) {
  std::vector<Diagnostic> out;
  auto error = [&](std::string path, std::string msg) { out.push_back({Severity::error, std::move(path), std::move(msg)}); };
  auto warn = [&](std::string path, std::string msg) { out.push_back({Severity::warning, std::move(path), std::move(msg)}); };

  if (o.schema_version != kOntologySchemaVersion)
    error("schema_version", "unsupported schema version " + std::to_string(o.schema_version));

  if (o.item_types.empty()) error("item_types", "at least one item type is required");
  {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < o.item_types.size(); ++i) {
      const auto path = "item_types[" + std::to_string(i) + "]";
      if (!detail::is_identifier(o.item_types[i])) error(path, "'" + o.item_types[i] + "' is not an identifier");
      if (!seen.insert(o.item_types[i]).second) error(path, "duplicate item type '" + o.item_types[i] + "'");
    }
  }
  if (!(o.presence_probability > 0.0 && o.presence_probability <= 1.0))
    error("attribute_presence_probability", "must lie in (0, 1]");

  if (o.names.syllables.empty()) error("item_names.syllables", "at least one syllable is required");
  if (o.names.syllables_per_word < 1 || o.names.syllables_per_word > 6)
    error("item_names.syllables_per_word", "must lie in [1, 6]");
  {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < o.names.syllables.size(); ++i) {
      const auto& s = o.names.syllables[i];
      const auto path = "item_names.syllables[" + std::to_string(i) + "]";
      if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::islower(static_cast<unsigned char>(c)); }))
        error(path, "syllables must be lowercase letters");
      else if (s.size() != o.names.syllables.front().size())
        error(path, "all syllables must have the same length");
      if (!seen.insert(s).second) error(path, "duplicate syllable '" + s + "'");
    }
  }

  if (o.attributes.empty()) error("attributes", "at least one attribute is required");

  std::set<std::string> names;
  std::map<std::string, std::string> phrase_owner;  // phrase -> attribute
  std::map<std::string, std::string> token_owner;
  std::size_t numeric = 0, categorical = 0;

  for (std::size_t ai = 0; ai < o.attributes.size(); ++ai) {
    const auto& a = o.attributes[ai];
    const auto base = "attributes[" + std::to_string(ai) + "]";
    if (!detail::is_identifier(a.name)) error(base + ".name", "'" + a.name + "' is not an identifier");
    if (!names.insert(a.name).second) error(base + ".name", "duplicate attribute name '" + a.name + "'");

    auto claim_phrase = [&](const std::string& phrase, const std::string& path) {
      auto [it, fresh] = phrase_owner.emplace(phrase, a.name);
      if (!fresh && it->second != a.name)
        error(path, "phrase '" + phrase + "' is also used by attribute '" + it->second + "'");
    };

    // Each phrase must map to exactly one direction.
    auto check_directed = [&](const std::vector<DirectedPhrase>& phrases, const std::string& path, bool required) {
      std::map<std::string, Direction> dir;
      bool has[2] = {false, false};
      for (std::size_t i = 0; i < phrases.size(); ++i) {
        const auto& p = phrases[i];
        const auto ppath = path + "." + std::string(to_string(p.direction)) + "[" + std::to_string(i) + "]";
        has[static_cast<int>(p.direction)] = true;
        if (p.text.empty() || detail::has_reserved_separator(p.text)) {
          error(ppath, "phrase must be non-empty and must not contain 'and'/'but'");
          continue;
        }
        auto [it, fresh] = dir.emplace(p.text, p.direction);
        if (!fresh) {
          error(ppath, it->second == p.direction ? "duplicate phrase '" + p.text + "'"
                                                 : "phrase '" + p.text + "' is mapped to both directions");
          continue;
        }
        claim_phrase(p.text, ppath);
      }
      if (required && (!has[0] || !has[1]))
        error(path, "every direction needs at least one phrase (inverse relations need both)");
      else if (!required && (has[0] != has[1]))
        warn(path, "only one direction has phrases");
    };
    auto check_plain = [&](const std::vector<std::string>& phrases, const std::string& path) {
      std::set<std::string> seen;
      for (std::size_t i = 0; i < phrases.size(); ++i) {
        const auto ppath = path + "[" + std::to_string(i) + "]";
        if (phrases[i].empty() || detail::has_reserved_separator(phrases[i])) {
          error(ppath, "phrase must be non-empty and must not contain 'and'/'but'");
          continue;
        }
        if (!seen.insert(phrases[i]).second) error(ppath, "duplicate phrase '" + phrases[i] + "'");
        else claim_phrase(phrases[i], ppath);
      }
    };
    auto check_patterns = [&](const std::vector<std::string>& patterns, const std::string& path) {
      if (patterns.empty()) error(path, "at least one pattern is required");
      std::set<std::string> seen;
      for (std::size_t i = 0; i < patterns.size(); ++i) {
        const auto ppath = path + "[" + std::to_string(i) + "]";
        if (detail::count_occurrences(patterns[i], "{value}") != 1)
          error(ppath, "pattern must contain '{value}' exactly once");
        else if (!seen.insert(patterns[i]).second)
          error(ppath, "duplicate pattern");
      }
    };

    if (a.numeric()) {
      ++numeric;
      if (!(a.range.min < a.range.max)) error(base + ".range", "min must be below max");
      if (a.range.min.hundredths() < 0) error(base + ".range.min", "negative values are not supported");
      if (a.range.decimals < 0 || a.range.decimals > 2) error(base + ".decimals", "must be 0, 1 or 2");
      else {
        if (!a.range.min.representable(a.range.decimals)) error(base + ".range.min", "more decimals than allowed");
        if (!a.range.max.representable(a.range.decimals)) error(base + ".range.max", "more decimals than allowed");
      }
      if (!a.values.empty()) error(base + ".values", "numeric attributes have no value catalog");
      check_directed(a.lexicon.comparative, base + ".lexicon.comparative", true);
      check_directed(a.lexicon.superlative, base + ".lexicon.superlative", true);
      check_directed(a.lexicon.verb_comparative, base + ".lexicon.verb_comparative", false);
      check_plain(a.lexicon.equality, base + ".lexicon.equality");
      check_plain(a.lexicon.verb_equality, base + ".lexicon.verb_equality");
      if (!a.lexicon.inclusion.empty() || !a.lexicon.exclusion.empty())
        error(base + ".lexicon", "inclusion/exclusion patterns apply to categorical attributes only");
    } else {
      ++categorical;
      if (a.values.empty()) error(base + ".values", "value catalog must not be empty");
      std::set<std::string> seen;
      for (std::size_t i = 0; i < a.values.size(); ++i) {
        const auto& v = a.values[i];
        const auto vpath = base + ".values[" + std::to_string(i) + "]";
        if (!seen.insert(v).second) {
          error(vpath, "duplicate token '" + v + "'");
          continue;
        }
        if (v.empty() || detail::has_reserved_separator(v) ||
            std::any_of(v.begin(), v.end(), [](char c) { return std::isupper(static_cast<unsigned char>(c)) || c == '.'; }))
          error(vpath, "token '" + v + "' must be lowercase, non-empty, without '.', 'and' or 'but'");
        auto [it, fresh] = token_owner.emplace(v, a.name);
        if (!fresh && it->second != a.name)
          warn(vpath, "token '" + v + "' also belongs to '" + it->second + "'; queries may be ambiguous");
      }
      if (!a.lexicon.comparative.empty() || !a.lexicon.superlative.empty() || !a.lexicon.verb_comparative.empty() ||
          !a.lexicon.equality.empty() || !a.lexicon.verb_equality.empty())
        error(base + ".lexicon", "comparative/superlative phrases apply to numeric attributes only");
      check_patterns(a.lexicon.inclusion, base + ".lexicon.inclusion");
      check_patterns(a.lexicon.exclusion, base + ".lexicon.exclusion");
    }
  }

  if (numeric == 0) warn("attributes", "no numeric attribute: T/F comparative queries unavailable");
  if (categorical == 0) warn("attributes", "no categorical attribute: inclusion/exclusion queries unavailable");
  return out;
}

namespace detail {

using nlohmann::json;

inline void reject_unknown_keys(const json& j, const std::string& path, std::initializer_list<std::string_view> keys) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(keys.begin(), keys.end(), it.key()) == keys.end())
      throw ConfigError(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
  }
}

inline const json& require(const json& j, const std::string& key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(path.empty() ? key : path + "." + key, "missing required field");
  return *it;
}

inline void expect(bool ok, const std::string& path, const std::string& what) {
  if (!ok) throw ConfigError(path, "expected " + what);
}

inline std::vector<std::string> string_list(const json& j, const std::string& path) {
  expect(j.is_array(), path, "an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    expect(j[i].is_string(), path + "[" + std::to_string(i) + "]", "a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

inline std::vector<DirectedPhrase> directed_list(const json& j, const std::string& path) {
  expect(j.is_object(), path, "an object with 'lower'/'higher' lists");
  reject_unknown_keys(j, path, {"lower", "higher"});
  std::vector<DirectedPhrase> out;
  for (auto d : {Direction::lower, Direction::higher}) {
    const std::string key(to_string(d));
    if (!j.contains(key)) continue;
    for (auto& s : string_list(j[key], path + "." + key)) out.push_back({std::move(s), d});
  }
  return out;
}

inline Number number_field(const json& j, const std::string& path) {
  expect(j.is_number(), path, "a number");
  const double v = j.get<double>();
  const Number n = Number::from_double(v);
  if (std::fabs(n.to_double() - v) > 1e-9) throw ConfigError(path, "more than two decimals");
  return n;
}

inline AttributeSpec attribute_from_json(const json& j, const std::string& path) {
  expect(j.is_object(), path, "an object");
  AttributeSpec a;
  const auto& name = require(j, "name", path);
  expect(name.is_string(), path + ".name", "a string");
  a.name = name.get<std::string>();
  const auto& kind = require(j, "kind", path);
  expect(kind.is_string(), path + ".kind", "a string");
  const auto k = kind.get<std::string>();
  if (k == "numeric") {
    a.kind = AttributeKind::numeric;
    reject_unknown_keys(j, path, {"name", "kind", "range", "decimals", "bounded", "unit", "lexicon"});
    const auto& range = require(j, "range", path);
    expect(range.is_object(), path + ".range", "an object");
    reject_unknown_keys(range, path + ".range", {"min", "max"});
    a.range.min = number_field(require(range, "min", path + ".range"), path + ".range.min");
    a.range.max = number_field(require(range, "max", path + ".range"), path + ".range.max");
    if (j.contains("decimals")) {
      expect(j["decimals"].is_number_integer(), path + ".decimals", "an integer");
      a.range.decimals = j["decimals"].get<int>();
    }
    if (j.contains("bounded")) {
      expect(j["bounded"].is_boolean(), path + ".bounded", "a boolean");
      a.range.bounded = j["bounded"].get<bool>();
    }
    if (j.contains("unit")) {
      expect(j["unit"].is_string(), path + ".unit", "a string");
      const auto u = j["unit"].get<std::string>();
      if (u == "currency") a.unit = Unit::currency;
      else if (u == "none") a.unit = Unit::none;
      else throw ConfigError(path + ".unit", "unknown unit '" + u + "' (currency, none)");
    }
    const auto& lex = require(j, "lexicon", path);
    const auto lpath = path + ".lexicon";
    expect(lex.is_object(), lpath, "an object");
    reject_unknown_keys(lex, lpath, {"comparative", "superlative", "equality", "verb_comparative", "verb_equality"});
    a.lexicon.comparative = directed_list(require(lex, "comparative", lpath), lpath + ".comparative");
    a.lexicon.superlative = directed_list(require(lex, "superlative", lpath), lpath + ".superlative");
    if (lex.contains("verb_comparative"))
      a.lexicon.verb_comparative = directed_list(lex["verb_comparative"], lpath + ".verb_comparative");
    if (lex.contains("equality")) a.lexicon.equality = string_list(lex["equality"], lpath + ".equality");
    if (lex.contains("verb_equality")) a.lexicon.verb_equality = string_list(lex["verb_equality"], lpath + ".verb_equality");
  } else if (k == "categorical") {
    a.kind = AttributeKind::categorical;
    reject_unknown_keys(j, path, {"name", "kind", "values", "values_compose", "disjoint_splits", "lexicon"});
    if (j.contains("values") == j.contains("values_compose"))
      throw ConfigError(path + ".values", "exactly one of 'values' or 'values_compose' is required");
    if (j.contains("values")) {
      a.values = string_list(j["values"], path + ".values");
    } else {
      const auto cpath = path + ".values_compose";
      const auto& c = j["values_compose"];
      expect(c.is_object(), cpath, "an object");
      reject_unknown_keys(c, cpath, {"modifiers", "bases"});
      const auto mods = string_list(require(c, "modifiers", cpath), cpath + ".modifiers");
      const auto bases = string_list(require(c, "bases", cpath), cpath + ".bases");
      for (const auto& m : mods)
        for (const auto& b : bases) a.values.push_back(m + " " + b);
    }
    if (j.contains("disjoint_splits")) {
      expect(j["disjoint_splits"].is_boolean(), path + ".disjoint_splits", "a boolean");
      a.disjoint_splits = j["disjoint_splits"].get<bool>();
    }
    const auto& lex = require(j, "lexicon", path);
    const auto lpath = path + ".lexicon";
    expect(lex.is_object(), lpath, "an object");
    reject_unknown_keys(lex, lpath, {"inclusion", "exclusion"});
    a.lexicon.inclusion = string_list(require(lex, "inclusion", lpath), lpath + ".inclusion");
    a.lexicon.exclusion = string_list(require(lex, "exclusion", lpath), lpath + ".exclusion");
  } else {
    throw ConfigError(path + ".kind", "unknown attribute kind '" + k + "' (numeric, categorical)");
  }
  return a;
}

}  // namespace detail

// Structural parse only; see load_ontology for validation.
inline Ontology ontology_from_json(const nlohmann::json& j) {
  using detail::expect;
  expect(j.is_object(), "$", "a JSON object at top level");
  detail::reject_unknown_keys(j, "", {"schema_version", "item_types", "attribute_presence_probability", "item_names", "attributes"});
  Ontology o;
  const auto& version = detail::require(j, "schema_version", "");
  expect(version.is_number_integer(), "schema_version", "an integer");
  o.schema_version = version.get<int>();
  if (o.schema_version != kOntologySchemaVersion)
    throw ConfigError("schema_version", "unsupported schema version " + std::to_string(o.schema_version));
  o.item_types = detail::string_list(detail::require(j, "item_types", ""), "item_types");
  if (j.contains("attribute_presence_probability")) {
    expect(j["attribute_presence_probability"].is_number(), "attribute_presence_probability", "a number");
    o.presence_probability = j["attribute_presence_probability"].get<double>();
  }
  const auto& names = detail::require(j, "item_names", "");
  expect(names.is_object(), "item_names", "an object");
  detail::reject_unknown_keys(names, "item_names", {"syllables", "syllables_per_word"});
  o.names.syllables = detail::string_list(detail::require(names, "syllables", "item_names"), "item_names.syllables");
  if (names.contains("syllables_per_word")) {
    expect(names["syllables_per_word"].is_number_integer(), "item_names.syllables_per_word", "an integer");
    o.names.syllables_per_word = names["syllables_per_word"].get<int>();
  }
  const auto& attrs = detail::require(j, "attributes", "");
  expect(attrs.is_array(), "attributes", "an array");
  for (std::size_t i = 0; i < attrs.size(); ++i)
    o.attributes.push_back(detail::attribute_from_json(attrs[i], "attributes[" + std::to_string(i) + "]"));
  return o;
}

// Parses and validates. Throws ConfigError naming the first offending field;
// warnings are left for validate_ontology to report.
inline Ontology load_ontology(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("$", std::string("malformed document: ") + e.what());
  }
  Ontology o = ontology_from_json(j);
  for (const auto& d : validate_ontology(o))
    if (d.severity == Severity::error) throw ConfigError(d.path, d.message);
  return o;
}

inline Ontology load_ontology_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open ontology config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return load_ontology(ss.str());
}

inline const Ontology& default_ontology() {
  static const Ontology o = load_ontology(embedded::default_ontology);
  return o;
}

inline nlohmann::ordered_json ontology_to_json(const Ontology& o) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema_version"] = o.schema_version;
  j["item_types"] = o.item_types;
  j["attribute_presence_probability"] = o.presence_probability;
  j["item_names"] = {{"syllables", o.names.syllables}, {"syllables_per_word", o.names.syllables_per_word}};
  auto directed = [](const std::vector<DirectedPhrase>& ps) {
    ordered_json d = ordered_json::object();
    for (auto dir : {Direction::lower, Direction::higher}) {
      std::vector<std::string> list;
      for (const auto& p : ps)
        if (p.direction == dir) list.push_back(p.text);
      if (!list.empty()) d[std::string(to_string(dir))] = list;
    }
    return d;
  };
  ordered_json attrs = ordered_json::array();
  for (const auto& a : o.attributes) {
    ordered_json ja;
    ja["name"] = a.name;
    if (a.numeric()) {
      ja["kind"] = "numeric";
      ja["range"] = {{"min", a.range.min.to_double()}, {"max", a.range.max.to_double()}};
      ja["decimals"] = a.range.decimals;
      ja["bounded"] = a.range.bounded;
      ja["unit"] = a.unit == Unit::currency ? "currency" : "none";
      ordered_json lex;
      lex["comparative"] = directed(a.lexicon.comparative);
      lex["superlative"] = directed(a.lexicon.superlative);
      if (!a.lexicon.equality.empty()) lex["equality"] = a.lexicon.equality;
      if (!a.lexicon.verb_comparative.empty()) lex["verb_comparative"] = directed(a.lexicon.verb_comparative);
      if (!a.lexicon.verb_equality.empty()) lex["verb_equality"] = a.lexicon.verb_equality;
      ja["lexicon"] = lex;
    } else {
      ja["kind"] = "categorical";
      ja["values"] = a.values;
      if (a.disjoint_splits) ja["disjoint_splits"] = *a.disjoint_splits;
      ja["lexicon"] = {{"inclusion", a.lexicon.inclusion}, {"exclusion", a.lexicon.exclusion}};
    }
    attrs.push_back(std::move(ja));
  }
  j["attributes"] = attrs;
  return j;
}

// Phrase variants for one attribute, in lexicon order. `direction` is required
// for the directed kinds and ignored otherwise.
inline std::vector<std::string> surface_forms(const Ontology& o, std::string_view attribute, PhraseKind kind,
                                              std::optional<Direction> direction = std::nullopt) {
  const AttributeSpec& a = o.attribute(attribute);
  const bool numeric_kind = kind != PhraseKind::inclusion && kind != PhraseKind::exclusion;
  if (numeric_kind != a.numeric())
    throw ValidationError(std::string(to_string(kind)) + " phrases are undefined for " +
                          (a.numeric() ? "numeric" : "categorical") + " attribute '" + a.name + "'");
  auto directed = [&](const std::vector<DirectedPhrase>& ps) {
    if (!direction) throw ValidationError(std::string(to_string(kind)) + " phrases need a direction");
    std::vector<std::string> out;
    for (const auto& p : ps)
      if (p.direction == *direction) out.push_back(p.text);
    return out;
  };
  std::vector<std::string> out;
  switch (kind) {
    case PhraseKind::comparative: out = directed(a.lexicon.comparative); break;
    case PhraseKind::superlative: out = directed(a.lexicon.superlative); break;
    case PhraseKind::verb_comparative: out = directed(a.lexicon.verb_comparative); break;
    case PhraseKind::equality: out = a.lexicon.equality; break;
    case PhraseKind::verb_equality: out = a.lexicon.verb_equality; break;
    case PhraseKind::inclusion: out = a.lexicon.inclusion; break;
    case PhraseKind::exclusion: out = a.lexicon.exclusion; break;
  }
  return out;
}

}  // namespace ctxreason
