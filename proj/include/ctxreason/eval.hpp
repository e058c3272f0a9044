#pragma once

// Exact-match scoring of prediction files, sliced by answer kind, k and
// attribute count, and an oracle self-check that re-derives gold from stored inputs.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ctxreason/dataset.hpp"
#include "ctxreason/parallel.hpp"

namespace ctxreason {

inline constexpr std::string_view kNormalizationVersion = "em-norm-v1";

// Lowercase, whitespace runs collapsed to one space, ends trimmed.
inline std::string normalize(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

struct Prediction {
  std::string id;
  std::string text;
};

inline std::vector<Prediction> read_predictions(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read predictions " + path.string());
  std::vector<Prediction> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      out.push_back({j.at("id").get<std::string>(), j.at("prediction").get<std::string>()});
    } catch (const std::exception& e) {
      throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

inline void write_predictions(const std::vector<Prediction>& preds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& p : preds) {
    nlohmann::ordered_json j;
    j["id"] = p.id;
    j["prediction"] = p.text;
    out << j.dump() << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

struct EvalSliceKey {
  std::string answer_kind;
  std::size_t k = 0;
  std::size_t num_attributes = 0;
  bool spoken = false;

  auto operator<=>(const EvalSliceKey&) const = default;
};

struct Tally {
  std::size_t correct = 0;
  std::size_t total = 0;

  double em() const { return total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0; }
};

struct Mismatch {
  std::string id;
  std::string gold;
  std::string prediction;
};

struct EvalReport {
  std::string normalization{kNormalizationVersion};
  Tally overall;
  std::map<EvalSliceKey, Tally> slices;
  std::map<std::string, Tally> test_sets;
  std::vector<Mismatch> mismatches;  // first N, in dataset order

  double em() const { return overall.em(); }
};

namespace detail {

inline std::string id_list(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < 10; ++i) out += (i ? ", " : "") + ids[i];
  if (ids.size() > 10) out += ", ... (" + std::to_string(ids.size()) + " total)";
  return out;
}

}  // namespace detail

// Scores `predictions` against the examples. Every example id needs exactly
// one prediction; missing, duplicate or unknown ids are rejected.
inline EvalReport score_exact_match(const std::vector<Example>& examples, const std::vector<Prediction>& predictions,
                                    std::size_t max_mismatches = 20) {
  std::map<std::string, const Prediction*> by_id;
  std::vector<std::string> duplicates;
  for (const auto& p : predictions)
    if (!by_id.emplace(p.id, &p).second) duplicates.push_back(p.id);
  if (!duplicates.empty()) throw ValidationError("duplicate prediction ids: " + detail::id_list(duplicates));

  std::set<std::string> gold_ids;
  std::vector<std::string> missing;
  for (const auto& ex : examples) {
    if (!gold_ids.insert(ex.id).second) throw ValidationError("duplicate dataset id: " + ex.id);
    if (!by_id.count(ex.id)) missing.push_back(ex.id);
  }
  if (!missing.empty()) throw ValidationError("missing predictions for ids: " + detail::id_list(missing));
  std::vector<std::string> unknown;
  for (const auto& [id, p] : by_id)
    if (!gold_ids.count(id)) unknown.push_back(id);
  if (!unknown.empty()) throw ValidationError("predictions for unknown ids: " + detail::id_list(unknown));

  EvalReport r;
  for (const auto& ex : examples) {
    const std::string& pred = by_id.at(ex.id)->text;
    const bool ok = normalize(pred) == normalize(ex.output);
    auto add = [&](Tally& t) {
      ++t.total;
      if (ok) ++t.correct;
    };
    add(r.overall);
    add(r.slices[{ex.meta.answer_kind, ex.meta.k, ex.meta.num_attributes, ex.meta.spoken}]);
    add(r.test_sets[ex.meta.test_set]);
    if (!ok && r.mismatches.size() < max_mismatches) r.mismatches.push_back({ex.id, ex.output, pred});
  }
  return r;
}

inline EvalReport score_exact_match(const std::filesystem::path& dataset, const std::filesystem::path& predictions,
                                    std::size_t max_mismatches = 20) {
  return score_exact_match(read_dataset(dataset), read_predictions(predictions), max_mismatches);
}

// What the oracle answers for a stored input.
inline std::string oracle_prediction(const Ontology& o, const TemplateInventory& inv, const Example& ex) {
  ReasoningContext ctx;
  try {
    ctx = parse_context(o, ex.context());
  } catch (const ParseError& e) {
    throw ValidationError("example " + ex.id + ": unparseable context: " + e.what());
  }
  const QuerySemantics q = parse_query(ex.query(), o, inv);
  const GoldOutput gold = derive_gold(o, ctx, q);
  if (ex.meta.format == TaskFormat::tf) {
    const auto* tf = std::get_if<InformTF>(&gold);
    if (!tf) return emit_output(gold);
    return tf->value ? "true" : "false";
  }
  return emit_output(gold);
}

inline std::vector<Prediction> oracle_predictions(const Ontology& o, const TemplateInventory& inv,
                                                  const std::vector<Example>& examples, unsigned workers = 1) {
  std::vector<Prediction> preds(examples.size());
  parallel_for(examples.size(), workers, [&](std::size_t i) {
    std::string text;
    try {
      text = oracle_prediction(o, inv, examples[i]);
    } catch (const OracleError& e) {
      text = std::string("<oracle error: ") + e.what() + ">";
    }
    preds[i] = {examples[i].id, std::move(text)};
  });
  return preds;
}

inline EvalReport oracle_selfcheck(const Ontology& o, const TemplateInventory& inv,
                                   const std::vector<Example>& examples, unsigned workers = 1,
                                   std::size_t max_mismatches = 20) {
  return score_exact_match(examples, oracle_predictions(o, inv, examples, workers), max_mismatches);
}

inline EvalReport oracle_selfcheck(const Ontology& o, const TemplateInventory& inv, const std::filesystem::path& dataset,
                                   unsigned workers = 1, std::size_t max_mismatches = 20) {
  return oracle_selfcheck(o, inv, read_dataset(dataset), workers, max_mismatches);
}

inline nlohmann::ordered_json report_to_json(const EvalReport& r) {
  auto tally = [](const Tally& t) {
    return nlohmann::ordered_json{{"correct", t.correct}, {"total", t.total}, {"em", t.em()}};
  };
  nlohmann::ordered_json j;
  j["normalization"] = r.normalization;
  j["overall"] = tally(r.overall);
  nlohmann::ordered_json slices = nlohmann::ordered_json::array();
  for (const auto& [key, t] : r.slices) {
    auto s = tally(t);
    s["answer_kind"] = key.answer_kind;
    s["k"] = key.k;
    s["num_attributes"] = key.num_attributes;
    s["spoken"] = key.spoken;
    slices.push_back(std::move(s));
  }
  j["slices"] = slices;
  nlohmann::ordered_json sets = nlohmann::ordered_json::object();
  for (const auto& [name, t] : r.test_sets) sets[name] = tally(t);
  j["test_sets"] = sets;
  nlohmann::ordered_json mm = nlohmann::ordered_json::array();
  for (const auto& m : r.mismatches) mm.push_back({{"id", m.id}, {"gold", m.gold}, {"prediction", m.prediction}});
  j["mismatches"] = mm;
  return j;
}

// Human-readable report: overall EM, then a table over (attributes, k) with
// columns for answers from the context and for extracted constraints.
inline std::string report_to_text(const EvalReport& r) {
  std::ostringstream os;
  auto pct = [](const Tally& t) {
    char buf[32];
    if (t.total == 0) return std::string("-");
    std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * t.em());
    return std::string(buf);
  };
  os << "normalization: " << r.normalization << "\n";
  os << "exact match: " << pct(r.overall) << " (" << r.overall.correct << "/" << r.overall.total << ")\n";
  std::map<std::pair<std::size_t, std::size_t>, std::array<Tally, 3>> rows;
  for (const auto& [key, t] : r.slices) {
    const auto col = answer_column(key.answer_kind);
    const std::size_t c = col == "inform_select" ? 0 : col == "extract" ? 1 : 2;
    auto& cell = rows[{key.num_attributes, key.k}][c];
    cell.correct += t.correct;
    cell.total += t.total;
  }
  os << "attrs  k  inform/select        extract             noanswer\n";
  for (const auto& [row, cells] : rows) {
    char line[160];
    auto cell = [&](const Tally& t) { return pct(t) + " (" + std::to_string(t.total) + ")"; };
    std::snprintf(line, sizeof line, "%5zu %2zu  %-19s %-19s %-19s\n", row.first, row.second, cell(cells[0]).c_str(),
                  cell(cells[1]).c_str(), cell(cells[2]).c_str());
    os << line;
  }
  Tally spoken, written;
  for (const auto& [key, t] : r.slices) {
    auto& dst = key.spoken ? spoken : written;
    dst.correct += t.correct;
    dst.total += t.total;
  }
  os << "spoken numerals: " << pct(spoken) << " (" << spoken.total << "), other: " << pct(written) << " ("
     << written.total << ")\n";
  if (!r.mismatches.empty()) {
    os << "first mismatches:\n";
    for (const auto& m : r.mismatches)
      os << "  " << m.id << "\n    gold: " << m.gold << "\n    pred: " << m.prediction << "\n";
  }
  return os.str();
}

}  // namespace ctxreason
