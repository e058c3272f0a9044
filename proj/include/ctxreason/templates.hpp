#pragma once

// Query template inventory: families of surface variations with slots.
// Slots: {preds} adjective frame, {neg} negated wish, {vpred} verb frame,
// {subject} the item a yes/no question is about.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ctxreason/embedded_data.hpp"
#include "ctxreason/errors.hpp"
#include "ctxreason/query.hpp"

namespace ctxreason {

inline constexpr int kTemplatesSchemaVersion = 1;

enum class Accepts { any, filter, negation, verb, superlative, subject, subject_verb };

inline std::string_view to_string(Accepts a) {
  switch (a) {
    case Accepts::any: return "any";
    case Accepts::filter: return "filter";
    case Accepts::negation: return "negation";
    case Accepts::verb: return "verb";
    case Accepts::superlative: return "superlative";
    case Accepts::subject: return "subject";
    case Accepts::subject_verb: return "subject_verb";
  }
  return "?";
}

inline std::optional<Accepts> parse_accepts(std::string_view s) {
  for (auto a : {Accepts::any, Accepts::filter, Accepts::negation, Accepts::verb, Accepts::superlative, Accepts::subject,
                 Accepts::subject_verb})
    if (to_string(a) == s) return a;
  return std::nullopt;
}

struct Segment {
  bool slot = false;
  std::string text;  // literal text, or the slot name
};

struct Variation {
  std::string text;
  std::vector<Segment> segments;
};

struct TemplateFamily {
  std::string id;
  Action action = Action::inform_open;
  Accepts accepts = Accepts::any;
  std::vector<Variation> variations;
};

struct TemplateInventory {
  int schema_version = kTemplatesSchemaVersion;
  std::string conjunction = " and ";
  std::string contrast = " but ";
  std::vector<std::string> ordinals;
  std::vector<TemplateFamily> families;
  std::vector<std::string> no_reason;
};

// Whitespace collapsed, trimmed, trailing sentence punctuation dropped.
inline std::string normalize_utterance(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  while (!out.empty() && (out.back() == '.' || out.back() == '?' || out.back() == '!' || out.back() == ' '))
    out.pop_back();
  return out;
}

inline std::string lowercase(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline std::vector<std::string_view> required_slots(Accepts a) {
  switch (a) {
    case Accepts::negation: return {"neg"};
    case Accepts::verb: return {"vpred"};
    case Accepts::subject: return {"subject", "preds"};
    case Accepts::subject_verb: return {"subject", "vpred"};
    default: return {"preds"};
  }
}

// Splits a variation into literal and slot segments. The matcher works on
// normalized input, so literals are normalized the same way.
inline std::vector<Segment> compile_variation(std::string_view text, const std::string& path) {
  static constexpr std::string_view kSlots[] = {"preds", "neg", "vpred", "subject"};
  const std::string norm = normalize_utterance(text);
  std::vector<Segment> segs;
  std::size_t pos = 0;
  while (pos < norm.size()) {
    const auto open = norm.find('{', pos);
    if (open == std::string::npos) {
      segs.push_back({false, norm.substr(pos)});
      break;
    }
    if (open > pos) segs.push_back({false, norm.substr(pos, open - pos)});
    const auto close = norm.find('}', open);
    if (close == std::string::npos) throw ConfigError(path, "unbalanced '{'");
    const std::string name = norm.substr(open + 1, close - open - 1);
    if (std::find(std::begin(kSlots), std::end(kSlots), name) == std::end(kSlots))
      throw ConfigError(path, "unknown slot {" + name + "}");
    if (!segs.empty() && segs.back().slot) throw ConfigError(path, "slots must be separated by literal text");
    segs.push_back({true, name});
    pos = close + 1;
  }
  if (norm.find('}') != std::string::npos && std::none_of(segs.begin(), segs.end(), [](const Segment& s) { return s.slot; }))
    throw ConfigError(path, "unbalanced '}'");
  return segs;
}

inline void validate_inventory(const TemplateInventory& inv) {
  if (inv.schema_version != kTemplatesSchemaVersion)
    throw ConfigError("schema_version", "unsupported version " + std::to_string(inv.schema_version));
  for (const auto* j : {&inv.conjunction, &inv.contrast})
    if (j->size() < 3 || j->front() != ' ' || j->back() != ' ')
      throw ConfigError("joiners", "joiners must be words surrounded by single spaces");
  if (inv.ordinals.empty()) throw ConfigError("ordinals", "at least one ordinal word is required");
  if (inv.no_reason.empty()) throw ConfigError("no_reason", "the no-reason utterance pool is empty");
  if (inv.families.empty()) throw ConfigError("families", "no template families");
  for (std::size_t f = 0; f < inv.families.size(); ++f) {
    const auto& fam = inv.families[f];
    const std::string path = "families[" + std::to_string(f) + "]";
    if (fam.action == Action::no_reason) throw ConfigError(path + ".action", "no_reason utterances belong in no_reason");
    const bool tf = fam.accepts == Accepts::subject || fam.accepts == Accepts::subject_verb;
    if (tf != (fam.action == Action::inform_tf))
      throw ConfigError(path + ".accepts", "subject templates and inform_tf go together");
    if ((fam.accepts == Accepts::superlative) && fam.action != Action::select && fam.action != Action::inform_open)
      throw ConfigError(path + ".accepts", "superlative templates need an inform_open or select action");
    if (fam.variations.empty()) throw ConfigError(path + ".variations", "no variations");
    for (std::size_t v = 0; v < fam.variations.size(); ++v) {
      const auto& var = fam.variations[v];
      std::vector<std::string> slots;
      for (const auto& s : var.segments)
        if (s.slot) slots.push_back(s.text);
      auto want = required_slots(fam.accepts);
      std::vector<std::string> expected(want.begin(), want.end());
      std::sort(slots.begin(), slots.end());
      std::sort(expected.begin(), expected.end());
      if (slots != expected)
        throw ConfigError(path + ".variations[" + std::to_string(v) + "]",
                          "'" + std::string(to_string(fam.accepts)) + "' templates need exactly the slots for that form");
    }
  }
}

inline TemplateInventory inventory_from_json(const nlohmann::json& j) {
  auto expect = [](bool ok, const std::string& path, const std::string& what) {
    if (!ok) throw ConfigError(path, "expected " + what);
  };
  auto strings = [&](const nlohmann::json& a, const std::string& path) {
    expect(a.is_array(), path, "an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
      expect(a[i].is_string(), path + "[" + std::to_string(i) + "]", "a string");
      out.push_back(a[i].get<std::string>());
    }
    return out;
  };
  auto unknown = [](const nlohmann::json& o, const std::string& path, std::initializer_list<std::string_view> keys) {
    for (auto it = o.begin(); it != o.end(); ++it)
      if (std::find(keys.begin(), keys.end(), it.key()) == keys.end())
        throw ConfigError(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
  };
  expect(j.is_object(), "$", "an object");
  unknown(j, "", {"schema_version", "joiners", "ordinals", "families", "no_reason"});
  TemplateInventory inv;
  if (j.contains("schema_version")) {
    expect(j["schema_version"].is_number_integer(), "schema_version", "an integer");
    inv.schema_version = j["schema_version"].get<int>();
  }
  if (j.contains("joiners")) {
    const auto& jn = j["joiners"];
    expect(jn.is_object(), "joiners", "an object");
    unknown(jn, "joiners", {"conjunction", "contrast"});
    if (jn.contains("conjunction")) inv.conjunction = jn["conjunction"].get<std::string>();
    if (jn.contains("contrast")) inv.contrast = jn["contrast"].get<std::string>();
  }
  if (!j.contains("ordinals")) throw ConfigError("ordinals", "missing required field");
  inv.ordinals = strings(j["ordinals"], "ordinals");
  if (!j.contains("families")) throw ConfigError("families", "missing required field");
  const auto& fams = j["families"];
  expect(fams.is_array(), "families", "an array");
  for (std::size_t f = 0; f < fams.size(); ++f) {
    const std::string path = "families[" + std::to_string(f) + "]";
    const auto& jf = fams[f];
    expect(jf.is_object(), path, "an object");
    unknown(jf, path, {"id", "action", "accepts", "variations"});
    for (const char* k : {"id", "action", "accepts", "variations"})
      if (!jf.contains(k)) throw ConfigError(path + "." + k, "missing required field");
    TemplateFamily fam;
    fam.id = jf["id"].get<std::string>();
    auto action = parse_action(jf["action"].get<std::string>());
    if (!action) throw ConfigError(path + ".action", "unknown action");
    fam.action = *action;
    auto accepts = parse_accepts(jf["accepts"].get<std::string>());
    if (!accepts) throw ConfigError(path + ".accepts", "unknown form");
    fam.accepts = *accepts;
    const auto vars = strings(jf["variations"], path + ".variations");
    for (std::size_t v = 0; v < vars.size(); ++v)
      fam.variations.push_back({vars[v], compile_variation(vars[v], path + ".variations[" + std::to_string(v) + "]")});
    inv.families.push_back(std::move(fam));
  }
  if (!j.contains("no_reason")) throw ConfigError("no_reason", "missing required field");
  inv.no_reason = strings(j["no_reason"], "no_reason");
  validate_inventory(inv);
  return inv;
}

inline TemplateInventory load_templates(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("$", std::string("malformed document: ") + e.what());
  } catch (const nlohmann::json::type_error& e) {
    throw ConfigError("$", e.what());
  }
  try {
    return inventory_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("$", e.what());
  }
}

inline TemplateInventory load_templates_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open template inventory " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return load_templates(ss.str());
}

inline const TemplateInventory& default_templates() {
  static const TemplateInventory inv = load_templates(embedded::default_templates);
  return inv;
}

}  // namespace ctxreason
