#pragma once

// End-to-end generation of train/dev/test splits in the true/false and the
// sequence-prediction formats, JSONL serialization and the run manifest.

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ctxreason/catalog.hpp"
#include "ctxreason/context.hpp"
#include "ctxreason/hash.hpp"
#include "ctxreason/oracle.hpp"
#include "ctxreason/output.hpp"
#include "ctxreason/parallel.hpp"
#include "ctxreason/querygen.hpp"

namespace ctxreason {

inline constexpr int kDatasetSchemaVersion = 1;
inline constexpr std::string_view kInputLayout = "query\\ncontext";

enum class TaskFormat { tf, seq2seq };

inline std::string_view to_string(TaskFormat f) { return f == TaskFormat::tf ? "tf" : "seq2seq"; }

inline std::optional<TaskFormat> parse_format(std::string_view s) {
  if (s == "tf") return TaskFormat::tf;
  if (s == "seq2seq") return TaskFormat::seq2seq;
  return std::nullopt;
}

// Training contexts use one case or, for IV, a random case per example.
enum class CasePolicy { I, II, III, IV };

inline std::string_view to_string(CasePolicy c) {
  switch (c) {
    case CasePolicy::I: return "I";
    case CasePolicy::II: return "II";
    case CasePolicy::III: return "III";
    case CasePolicy::IV: return "IV";
  }
  return "?";
}

inline std::optional<CasePolicy> parse_case_policy(std::string_view s) {
  for (auto c : {CasePolicy::I, CasePolicy::II, CasePolicy::III, CasePolicy::IV})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

inline std::optional<ContextCase> parse_context_case(std::string_view s) {
  for (auto c : {ContextCase::I, ContextCase::II, ContextCase::III})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

struct GenConfig {
  TaskFormat format = TaskFormat::seq2seq;
  SplitSizes sizes{1000, 100, 500};
  std::size_t k_max = 5;
  std::optional<std::size_t> fixed_k;  // unset: k uniform in [0, k_max] ([1, k_max] for tf)
  CasePolicy train_case = CasePolicy::IV;
  ContextCase eval_case = ContextCase::I;
  double spoken_fraction = 0.33;       // train, among queries containing a numeral
  double eval_spoken_fraction = 0.4;   // dev and test
  std::size_t max_attributes = 2;
  double no_reason_fraction = 0.1;
  std::uint64_t seed = 0;
  SplitSizes catalog_sizes{2000, 500, 1000};
  // seq2seq test split: one test set per (number of attributes, k) row.
  bool per_row_test_sets = true;
  double name_ref_probability = 0.5;

  bool operator==(const GenConfig&) const = default;
};

inline void validate_config(const GenConfig& c) {
  auto fraction = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(name, "must be within [0, 1]");
  };
  fraction(c.spoken_fraction, "spoken_fraction");
  fraction(c.eval_spoken_fraction, "eval_spoken_fraction");
  fraction(c.no_reason_fraction, "no_reason_fraction");
  fraction(c.name_ref_probability, "name_ref_probability");
  if (c.max_attributes < 1 || c.max_attributes > kMaxPredicates) throw ConfigError("max_attributes", "must be 1 or 2");
  if (c.k_max > 10) throw ConfigError("k_max", "must be at most 10");
  if (c.fixed_k && *c.fixed_k > c.k_max) throw ConfigError("k", "fixed k exceeds k_max");
  if (c.format == TaskFormat::tf && c.fixed_k && *c.fixed_k == 0)
    throw ConfigError("k", "true/false questions need at least one item");
  if (c.format == TaskFormat::tf && c.k_max == 0) throw ConfigError("k_max", "true/false questions need at least one item");
}

inline nlohmann::ordered_json config_to_json(const GenConfig& c) {
  nlohmann::ordered_json j;
  j["format"] = to_string(c.format);
  j["sizes"] = {c.sizes.train, c.sizes.dev, c.sizes.test};
  j["k_max"] = c.k_max;
  j["k"] = c.fixed_k ? nlohmann::ordered_json(*c.fixed_k) : nlohmann::ordered_json(nullptr);
  j["train_case"] = to_string(c.train_case);
  j["eval_case"] = to_string(c.eval_case);
  j["spoken_fraction"] = c.spoken_fraction;
  j["eval_spoken_fraction"] = c.eval_spoken_fraction;
  j["max_attributes"] = c.max_attributes;
  j["no_reason_fraction"] = c.no_reason_fraction;
  j["seed"] = c.seed;
  j["catalog_sizes"] = {c.catalog_sizes.train, c.catalog_sizes.dev, c.catalog_sizes.test};
  j["per_row_test_sets"] = c.per_row_test_sets;
  j["name_ref_probability"] = c.name_ref_probability;
  return j;
}

// Fields not present keep their current value in `base`.
inline GenConfig config_from_json(const nlohmann::json& j, GenConfig base = {}) {
  if (!j.is_object()) throw ConfigError("$", "expected an object");
  auto sizes = [](const nlohmann::json& v, const char* name) {
    if (!v.is_array() || v.size() != 3) throw ConfigError(name, "expected [train, dev, test]");
    for (const auto& x : v)
      if (!x.is_number_unsigned()) throw ConfigError(name, "sizes must be non-negative integers");
    return SplitSizes{v[0].get<std::size_t>(), v[1].get<std::size_t>(), v[2].get<std::size_t>()};
  };
  auto number = [](const nlohmann::json& v, const char* name) {
    if (!v.is_number()) throw ConfigError(name, "expected a number");
    return v.get<double>();
  };
  auto count = [](const nlohmann::json& v, const char* name) {
    if (!v.is_number_unsigned()) throw ConfigError(name, "expected a non-negative integer");
    return v.get<std::size_t>();
  };
  auto text = [](const nlohmann::json& v, const char* name) {
    if (!v.is_string()) throw ConfigError(name, "expected a string");
    return v.get<std::string>();
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const auto& v = it.value();
    if (key == "format") {
      auto f = parse_format(text(v, "format"));
      if (!f) throw ConfigError("format", "expected 'tf' or 'seq2seq'");
      base.format = *f;
    } else if (key == "sizes") {
      base.sizes = sizes(v, "sizes");
    } else if (key == "k_max") {
      base.k_max = count(v, "k_max");
    } else if (key == "k") {
      base.fixed_k = v.is_null() ? std::nullopt : std::optional<std::size_t>(count(v, "k"));
    } else if (key == "train_case") {
      auto c = parse_case_policy(text(v, "train_case"));
      if (!c) throw ConfigError("train_case", "expected I, II, III or IV");
      base.train_case = *c;
    } else if (key == "eval_case") {
      auto c = parse_context_case(text(v, "eval_case"));
      if (!c) throw ConfigError("eval_case", "expected I, II or III");
      base.eval_case = *c;
    } else if (key == "spoken_fraction") {
      base.spoken_fraction = number(v, "spoken_fraction");
    } else if (key == "eval_spoken_fraction") {
      base.eval_spoken_fraction = number(v, "eval_spoken_fraction");
    } else if (key == "max_attributes") {
      base.max_attributes = count(v, "max_attributes");
    } else if (key == "no_reason_fraction") {
      base.no_reason_fraction = number(v, "no_reason_fraction");
    } else if (key == "seed") {
      if (!v.is_number_unsigned()) throw ConfigError("seed", "expected a non-negative integer");
      base.seed = v.get<std::uint64_t>();
    } else if (key == "catalog_sizes") {
      base.catalog_sizes = sizes(v, "catalog_sizes");
    } else if (key == "per_row_test_sets") {
      if (!v.is_boolean()) throw ConfigError(key, "expected true or false");
      base.per_row_test_sets = v.get<bool>();
    } else if (key == "name_ref_probability") {
      base.name_ref_probability = number(v, "name_ref_probability");
    } else {
      throw ConfigError(key, "unknown field");
    }
  }
  validate_config(base);
  return base;
}

inline std::string config_hash(const GenConfig& c) { return sha256_hex(config_to_json(c).dump()); }

struct ExampleMeta {
  TaskFormat format = TaskFormat::seq2seq;
  std::string case_tag;  // "I", "II", "III"
  std::size_t k = 0;
  std::size_t num_attributes = 0;
  std::string action;       // query action
  std::string answer_kind;  // inform_tf, inform, select, constraints, noanswer
  bool spoken = false;
  std::vector<std::string> attributes;
  Split split = Split::train;
  std::string test_set = "main";

  bool operator==(const ExampleMeta&) const = default;
};

struct Example {
  std::string id;
  std::string input;
  std::string output;
  ExampleMeta meta;

  bool operator==(const Example&) const = default;

  std::string_view query() const { return std::string_view(input).substr(0, input.find('\n')); }
  std::string_view context() const {
    const auto nl = input.find('\n');
    return nl == std::string::npos ? std::string_view{} : std::string_view(input).substr(nl + 1);
  }
};

// Report column: answered from the context, extracted, or no reasoning.
inline std::string_view answer_column(std::string_view answer_kind) {
  if (answer_kind == "constraints") return "extract";
  if (answer_kind == "noanswer") return "noanswer";
  return "inform_select";
}

inline std::string make_input(std::string_view query, std::string_view context) {
  std::string s(query);
  s += '\n';
  s += context;
  return s;
}

namespace detail {

inline std::string padded(std::size_t n, int width = 7) {
  std::string s = std::to_string(n);
  return s.size() >= static_cast<std::size_t>(width) ? s : std::string(static_cast<std::size_t>(width) - s.size(), '0') + s;
}

inline ContextCase pick_case(const GenConfig& cfg, Split split, Rng& rng) {
  if (split != Split::train) return cfg.eval_case;
  switch (cfg.train_case) {
    case CasePolicy::I: return ContextCase::I;
    case CasePolicy::II: return ContextCase::II;
    case CasePolicy::III: return ContextCase::III;
    case CasePolicy::IV: break;
  }
  return static_cast<ContextCase>(1 + rng.uniform(3));
}

inline double spoken_rate(const GenConfig& cfg, Split split) {
  return split == Split::train ? cfg.spoken_fraction : cfg.eval_spoken_fraction;
}

inline std::size_t usable_attributes(const Ontology& o, const GenConfig& cfg) {
  return std::min<std::size_t>(cfg.max_attributes, o.attributes.size());
}

// What one seq2seq example should look like before it is drawn.
struct Plan {
  std::string id;
  std::string test_set = "main";
  std::size_t k = 0;
  std::size_t num_attributes = 1;
  bool extract = false;
  bool no_reason = false;
  std::uint64_t seed = 0;
};

inline std::vector<Plan> seq2seq_plans(const Ontology& o, const GenConfig& cfg, Split split) {
  std::vector<Plan> plans;
  const std::string name(to_string(split));
  const std::size_t attrs = usable_attributes(o, cfg);
  const std::size_t n = cfg.sizes[split];
  if (split == Split::test && cfg.per_row_test_sets) {
    for (std::size_t a = 1; a <= attrs; ++a) {
      for (std::size_t k = 0; k <= cfg.k_max; ++k) {
        if (cfg.fixed_k && k != *cfg.fixed_k) continue;
        const std::string set = "a" + std::to_string(a) + "-k" + std::to_string(k);
        for (std::size_t i = 0; i < n; ++i) {
          Plan p;
          p.id = name + "-" + set + "-" + padded(i);
          p.test_set = set;
          p.k = k;
          p.num_attributes = a;
          p.extract = k == 0 || i % 2 == 1;
          p.seed = derive_seed(cfg.seed, "seq2seq/" + name + "/" + set, i);
          plans.push_back(std::move(p));
        }
      }
    }
    const auto nr = static_cast<std::size_t>(std::llround(cfg.no_reason_fraction * static_cast<double>(n)));
    for (std::size_t i = 0; i < nr; ++i) {
      Rng rng(derive_seed(cfg.seed, "plan/" + name + "/noreason", i));
      Plan p;
      p.id = name + "-noreason-" + padded(i);
      p.test_set = "noreason";
      p.no_reason = true;
      p.k = cfg.fixed_k.value_or(rng.uniform(cfg.k_max + 1));
      p.seed = derive_seed(cfg.seed, "seq2seq/" + name + "/noreason", i);
      plans.push_back(std::move(p));
    }
    return plans;
  }
  plans.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(derive_seed(cfg.seed, "plan/" + name, i));
    Plan p;
    p.id = name + "-" + padded(i);
    p.no_reason = rng.chance(cfg.no_reason_fraction);
    p.k = cfg.fixed_k.value_or(rng.uniform(cfg.k_max + 1));
    p.num_attributes = 1 + rng.uniform(attrs);
    p.extract = p.k == 0 || rng.chance(0.5);
    p.seed = derive_seed(cfg.seed, "seq2seq/" + name, i);
    plans.push_back(std::move(p));
  }
  return plans;
}

inline Example finish_example(const Ontology& o, const TemplateInventory& inv, const GenConfig& cfg, Split split,
                              const ReasoningContext& ctx, QuerySemantics q, std::string id, std::string test_set,
                              Rng& rng) {
  q.spoken = q.has_numeral() && rng.chance(spoken_rate(cfg, split));
  const GoldOutput gold = derive_gold(o, ctx, q);
  Example ex;
  ex.id = std::move(id);
  ex.input = make_input(realize_surface(q, o, inv, rng), ctx.full_text);
  ex.meta.format = cfg.format;
  ex.meta.case_tag = std::string(to_string(ctx.case_tag));
  ex.meta.k = ctx.items.size();
  ex.meta.num_attributes = q.attributes().size();
  ex.meta.action = std::string(to_string(q.action));
  ex.meta.answer_kind = std::string(answer_kind(gold));
  ex.meta.spoken = q.spoken;
  ex.meta.attributes = q.attributes();
  ex.meta.split = split;
  ex.meta.test_set = std::move(test_set);
  if (cfg.format == TaskFormat::tf)
    ex.output = std::get<InformTF>(gold).value ? "true" : "false";
  else
    ex.output = emit_output(gold);
  return ex;
}

inline constexpr int kContextDraws = 32;
inline constexpr int kQueryDraws = 24;

inline Example draw_seq2seq_example(const Ontology& o, const TemplateInventory& inv, const Catalog& catalog,
                                    const GenConfig& cfg, Split split, const Plan& plan) {
  Rng rng(plan.seed);
  QuerySettings settings;
  settings.category_pools = &catalog.pools;
  settings.name_ref_probability = cfg.name_ref_probability;
  for (int attempt = 0; attempt < kContextDraws; ++attempt) {
    auto items = sample_context_items(catalog, plan.k, rng);
    const ReasoningContext ctx = assemble_context(o, std::move(items), pick_case(cfg, split, rng), rng);
    if (plan.no_reason)
      return finish_example(o, inv, cfg, split, ctx, no_reason_query(), plan.id, plan.test_set, rng);
    const QueryTarget target{plan.num_attributes, plan.extract};
    for (int t = 0; t < kQueryDraws; ++t)
      if (auto q = sample_query(o, ctx, inv, settings, target, rng))
        return finish_example(o, inv, cfg, split, ctx, std::move(*q), plan.id, plan.test_set, rng);
  }
  throw QuotaError("cannot draw a " + std::string(plan.extract ? "constraint" : "context-answered") + " query with " +
                   std::to_string(plan.num_attributes) + " attribute(s) for k=" + std::to_string(plan.k) +
                   " (example " + plan.id + ")");
}

// All numeric true/false questions of one context, balanced to equal true and
// false counts.
inline std::vector<Example> tf_context_examples(const Ontology& o, const TemplateInventory& inv,
                                                const Catalog& catalog, const GenConfig& cfg, Split split,
                                                std::size_t context_index) {
  const std::string name(to_string(split));
  Rng rng(derive_seed(cfg.seed, "tf/" + name, context_index));
  const std::size_t k = cfg.fixed_k.value_or(1 + rng.uniform(cfg.k_max));
  auto items = sample_context_items(catalog, k, rng);
  const ReasoningContext ctx = assemble_context(o, std::move(items), pick_case(cfg, split, rng), rng);
  QuerySettings settings;
  settings.category_pools = &catalog.pools;
  settings.name_ref_probability = cfg.name_ref_probability;
  auto cands = candidate_predicates(o, ctx, inv, settings, rng);
  std::erase_if(cands, [&](const Predicate& p) { return !o.attribute(p.attribute).numeric(); });
  std::array<std::vector<QuerySemantics>, 2> by_label;
  for (auto& q : true_false_queries(o, ctx, inv, cands, settings, rng)) {
    const bool v = std::get<InformTF>(derive_gold(o, ctx, q)).value;
    by_label[v ? 1 : 0].push_back(std::move(q));
  }
  const std::size_t m = std::min(by_label[0].size(), by_label[1].size());
  std::vector<QuerySemantics> chosen;
  for (auto& group : by_label) {
    rng.shuffle(group.begin(), group.end());
    chosen.insert(chosen.end(), group.begin(), group.begin() + static_cast<std::ptrdiff_t>(m));
  }
  rng.shuffle(chosen.begin(), chosen.end());
  std::vector<Example> out;
  for (std::size_t i = 0; i < chosen.size(); ++i)
    out.push_back(finish_example(o, inv, cfg, split, ctx, std::move(chosen[i]),
                                 name + "-c" + padded(context_index) + "-q" + padded(i, 3), "main", rng));
  return out;
}

}  // namespace detail

inline std::vector<Example> generate_split(const Ontology& o, const TemplateInventory& inv, const Catalog& catalog,
                                           const GenConfig& cfg, Split split, unsigned workers = 1) {
  validate_config(cfg);
  std::vector<Example> out;
  if (cfg.format == TaskFormat::seq2seq) {
    const auto plans = detail::seq2seq_plans(o, cfg, split);
    out.resize(plans.size());
    parallel_for(plans.size(), workers,
                 [&](std::size_t i) { out[i] = detail::draw_seq2seq_example(o, inv, catalog, cfg, split, plans[i]); });
    return out;
  }
  // tf: contexts in fixed-size batches so the cut-off point is independent of workers.
  const std::size_t want = cfg.sizes[split];
  constexpr std::size_t kBatch = 512;
  std::size_t next_context = 0;
  std::size_t empty_contexts = 0;
  while (out.size() < want) {
    std::vector<std::vector<Example>> batch(kBatch);
    parallel_for(kBatch, workers, [&](std::size_t i) {
      batch[i] = detail::tf_context_examples(o, inv, catalog, cfg, split, next_context + i);
    });
    next_context += kBatch;
    for (auto& group : batch) {
      if (group.empty()) ++empty_contexts;
      for (auto& ex : group) {
        if (out.size() == want) break;
        out.push_back(std::move(ex));
      }
      if (out.size() == want) break;
    }
    if (out.empty() && empty_contexts >= kBatch)
      throw QuotaError("contexts yield no balanced true/false questions; check numeric attributes and k");
  }
  return out;
}

struct GeneratedDataset {
  GenConfig config;
  std::array<Catalog, 3> catalogs;
  std::array<std::vector<Example>, 3> splits;
};

inline GeneratedDataset generate_dataset(const Ontology& o, const TemplateInventory& inv, const GenConfig& cfg,
                                         unsigned workers = 1) {
  validate_config(cfg);
  GeneratedDataset d;
  d.config = cfg;
  d.catalogs = build_split_catalogs(o, cfg.catalog_sizes, cfg.seed);
  for (auto s : kSplits)
    d.splits[static_cast<std::size_t>(s)] = generate_split(o, inv, d.catalogs[static_cast<std::size_t>(s)], cfg, s, workers);
  return d;
}

// ---------------------------------------------------------------------------
// Serialization

inline nlohmann::ordered_json example_to_json(const Example& ex) {
  nlohmann::ordered_json meta;
  meta["format"] = to_string(ex.meta.format);
  meta["case"] = ex.meta.case_tag;
  meta["k"] = ex.meta.k;
  meta["num_attributes"] = ex.meta.num_attributes;
  meta["action"] = ex.meta.action;
  meta["answer_kind"] = ex.meta.answer_kind;
  meta["spoken"] = ex.meta.spoken;
  meta["attributes"] = ex.meta.attributes;
  meta["split"] = to_string(ex.meta.split);
  meta["test_set"] = ex.meta.test_set;
  nlohmann::ordered_json j;
  j["schema_version"] = kDatasetSchemaVersion;
  j["id"] = ex.id;
  j["input"] = ex.input;
  j["output"] = ex.output;
  j["metadata"] = std::move(meta);
  return j;
}

inline Example example_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("record is not an object");
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer())
    throw ValidationError("missing schema_version");
  if (j["schema_version"].get<int>() != kDatasetSchemaVersion)
    throw ValidationError("unsupported dataset schema version " + std::to_string(j["schema_version"].get<int>()) +
                          " (expected " + std::to_string(kDatasetSchemaVersion) + ")");
  Example ex;
  ex.id = j.at("id").get<std::string>();
  ex.input = j.at("input").get<std::string>();
  ex.output = j.at("output").get<std::string>();
  const auto& m = j.at("metadata");
  auto f = parse_format(m.at("format").get<std::string>());
  if (!f) throw ValidationError("unknown format");
  ex.meta.format = *f;
  ex.meta.case_tag = m.at("case").get<std::string>();
  ex.meta.k = m.at("k").get<std::size_t>();
  ex.meta.num_attributes = m.at("num_attributes").get<std::size_t>();
  ex.meta.action = m.at("action").get<std::string>();
  ex.meta.answer_kind = m.at("answer_kind").get<std::string>();
  ex.meta.spoken = m.at("spoken").get<bool>();
  ex.meta.attributes = m.at("attributes").get<std::vector<std::string>>();
  auto split = parse_split(m.at("split").get<std::string>());
  if (!split) throw ValidationError("unknown split");
  ex.meta.split = *split;
  ex.meta.test_set = m.at("test_set").get<std::string>();
  if (ex.input.find('\n') == std::string::npos) throw ValidationError("input lacks the query/context separator");
  if (ex.meta.format == TaskFormat::tf) {
    if (ex.output != "true" && ex.output != "false") throw ValidationError("tf output must be 'true' or 'false'");
  } else {
    parse_output(ex.output);
  }
  return ex;
}

inline void write_examples(const std::vector<Example>& examples, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& ex : examples) out << example_to_json(ex).dump() << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

inline std::vector<Example> read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read dataset " + path.string());
  std::vector<Example> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(example_from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

struct ManifestFile {
  std::string split;
  std::string path;
  std::size_t count = 0;
  std::string sha256;
};

struct Manifest {
  nlohmann::ordered_json json;
  std::vector<ManifestFile> files;
};

inline std::string ontology_hash(const Ontology& o) { return sha256_hex(ontology_to_json(o).dump()); }

// Writes <dir>/{train,dev,test}.jsonl, the split catalogs and manifest.json.
inline Manifest write_dataset(const Ontology& o, const TemplateInventory& inv, const GeneratedDataset& d,
                              const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  Manifest m;
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  nlohmann::ordered_json catalogs = nlohmann::ordered_json::array();
  for (auto s : kSplits) {
    const auto i = static_cast<std::size_t>(s);
    const std::string name(to_string(s));
    const auto data_path = dir / (name + ".jsonl");
    write_examples(d.splits[i], data_path);
    ManifestFile f{name, name + ".jsonl", d.splits[i].size(), sha256_file(data_path)};
    files.push_back({{"split", f.split}, {"path", f.path}, {"count", f.count}, {"sha256", f.sha256}});
    m.files.push_back(f);
    const auto cat_path = dir / ("catalog-" + name + ".jsonl");
    write_catalog(o, d.catalogs[i], cat_path);
    catalogs.push_back({{"split", name},
                        {"path", "catalog-" + name + ".jsonl"},
                        {"items", d.catalogs[i].items.size()},
                        {"names_sha256", d.catalogs[i].fingerprint},
                        {"sha256", sha256_file(cat_path)}});
  }
  nlohmann::ordered_json templates_doc = nlohmann::ordered_json::array();
  for (const auto& f : inv.families) {
    nlohmann::ordered_json vars = nlohmann::ordered_json::array();
    for (const auto& v : f.variations) vars.push_back(v.text);
    templates_doc.push_back({{"id", f.id}, {"variations", vars}});
  }
  templates_doc.push_back({{"no_reason", inv.no_reason}});
  auto& j = m.json;
  j["schema_version"] = kDatasetSchemaVersion;
  j["input_layout"] = kInputLayout;
  j["seed"] = d.config.seed;
  j["config"] = config_to_json(d.config);
  j["config_hash"] = config_hash(d.config);
  j["ontology_hash"] = ontology_hash(o);
  j["templates_hash"] = sha256_hex(templates_doc.dump());
  j["files"] = files;
  j["catalogs"] = catalogs;
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  if (!out) throw IoError("cannot write " + (dir / "manifest.json").string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + (dir / "manifest.json").string());
  return m;
}

// ---------------------------------------------------------------------------
// Statistics

struct SliceKey {
  std::string column;  // inform_select, extract, noanswer
  std::size_t k = 0;
  std::size_t num_attributes = 0;

  auto operator<=>(const SliceKey&) const = default;
};

struct StatsReport {
  std::size_t total = 0;
  std::map<SliceKey, std::size_t> slices;
  std::map<std::string, std::size_t> answer_kinds;
  std::map<std::string, std::size_t> test_sets;
  std::size_t tf_total = 0;
  std::size_t tf_true = 0;
  std::size_t spoken = 0;
  std::size_t duplicate_inputs = 0;

  double tf_true_rate() const { return tf_total ? static_cast<double>(tf_true) / static_cast<double>(tf_total) : 0.0; }
};

inline StatsReport compute_stats(const std::vector<Example>& examples) {
  StatsReport r;
  std::set<std::string> seen;
  for (const auto& ex : examples) {
    ++r.total;
    ++r.slices[{std::string(answer_column(ex.meta.answer_kind)), ex.meta.k, ex.meta.num_attributes}];
    ++r.answer_kinds[ex.meta.answer_kind];
    ++r.test_sets[ex.meta.test_set];
    if (ex.meta.spoken) ++r.spoken;
    if (ex.meta.format == TaskFormat::tf) {
      ++r.tf_total;
      if (ex.output == "true") ++r.tf_true;
    }
    if (!seen.insert(ex.input).second) ++r.duplicate_inputs;
  }
  return r;
}

inline StatsReport compute_stats(const std::filesystem::path& path) { return compute_stats(read_dataset(path)); }

inline nlohmann::ordered_json stats_to_json(const StatsReport& r) {
  nlohmann::ordered_json j;
  j["total"] = r.total;
  nlohmann::ordered_json slices = nlohmann::ordered_json::array();
  for (const auto& [key, n] : r.slices)
    slices.push_back({{"column", key.column}, {"k", key.k}, {"num_attributes", key.num_attributes}, {"count", n}});
  j["slices"] = slices;
  j["answer_kinds"] = r.answer_kinds;
  j["test_sets"] = r.test_sets;
  j["tf_total"] = r.tf_total;
  j["tf_true_rate"] = r.tf_true_rate();
  j["spoken"] = r.spoken;
  j["duplicate_inputs"] = r.duplicate_inputs;
  return j;
}

inline std::string stats_to_text(const StatsReport& r) {
  std::ostringstream os;
  os << "examples: " << r.total << "\n";
  if (r.tf_total) os << "tf true rate: " << r.tf_true_rate() << " (" << r.tf_true << "/" << r.tf_total << ")\n";
  os << "spoken queries: " << r.spoken << "\n";
  os << "duplicate inputs: " << r.duplicate_inputs << "\n";
  os << "answer kinds:";
  for (const auto& [kind, n] : r.answer_kinds) os << " " << kind << "=" << n;
  os << "\n";
  if (r.slices.empty()) return os.str();
  os << "attrs  k  inform_select  extract  noanswer\n";
  std::map<std::pair<std::size_t, std::size_t>, std::map<std::string, std::size_t>> rows;
  for (const auto& [key, n] : r.slices) rows[{key.num_attributes, key.k}][key.column] += n;
  for (const auto& [row, cols] : rows) {
    auto get = [&](const char* c) {
      auto it = cols.find(c);
      return it == cols.end() ? std::size_t{0} : it->second;
    };
    char line[96];
    std::snprintf(line, sizeof line, "%5zu %2zu %14zu %8zu %9zu\n", row.first, row.second, get("inform_select"),
                  get("extract"), get("noanswer"));
    os << line;
  }
  return os.str();
}

}  // namespace ctxreason
