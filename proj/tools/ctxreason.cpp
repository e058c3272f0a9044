// ctxreason command-line front end. Every subcommand is a thin wrapper over
// the library; exit codes: 0 ok, 1 runtime failure, 2 usage or validation error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ctxreason.hpp"

namespace {

using namespace ctxreason;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string config;     // ontology config, "default" for the shipped one
  std::string templates;  // template inventory, "default" for the shipped one
};

Ontology load_config(const Common& c) {
  std::string path = c.config;
  if (path.empty())
    if (const char* env = std::getenv("CTXREASON_CONFIG")) path = env;
  if (path.empty() || path == "default") return default_ontology();
  Ontology o = load_ontology_file(path);
  for (const auto& d : validate_ontology(o))
    if (d.severity == Severity::warning) std::cerr << "warning: " << d.path << ": " << d.message << "\n";
  return o;
}

TemplateInventory load_inventory(const Common& c) {
  if (c.templates.empty() || c.templates == "default") return default_templates();
  return load_templates_file(c.templates);
}

SplitSizes parse_sizes(const std::string& s, const char* flag) {
  std::vector<std::size_t> v;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      const long long n = std::stoll(part, &used);
      if (used != part.size() || n < 0) throw std::invalid_argument(part);
      v.push_back(static_cast<std::size_t>(n));
    } catch (const std::exception&) {
      throw ConfigError(flag, "expected three non-negative integers train,dev,test");
    }
  }
  if (v.size() != 3) throw ConfigError(flag, "expected three non-negative integers train,dev,test");
  return {v[0], v[1], v[2]};
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "Ontology config file or 'default' (env CTXREASON_CONFIG)");
  cmd->add_option("--templates", c.templates, "Template inventory file or 'default'");
}

void print_json_or_text(const nlohmann::ordered_json& j, const std::string& text, bool json) {
  if (json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generator, reasoning oracle and exact-match scorer for dialogue reasoning episodes"};
  app.require_subcommand(1);
  Common common;

  // generate
  auto* gen = app.add_subcommand("generate", "Generate train/dev/test splits and a manifest");
  add_common(gen, common);
  std::string gen_config_path, out_dir, sizes_flag, catalog_flag, format_flag, case_flag, eval_case_flag;
  std::uint64_t seed = 0;
  std::size_t k_max = 5, max_attrs = 2;
  int fixed_k = -1;
  double spoken = -1, eval_spoken = -1, no_reason = -1;
  unsigned workers = 1;
  bool single_test_set = false;
  gen->add_option("--gen-config", gen_config_path, "Generation settings (JSON); flags override it");
  gen->add_option("--out", out_dir, "Output directory")->required();
  gen->add_option("--seed", seed, "Seed for every random choice");
  gen->add_option("--sizes", sizes_flag, "Examples per split: train,dev,test");
  gen->add_option("--catalog-sizes", catalog_flag, "Catalog items per split: train,dev,test");
  gen->add_option("--format", format_flag, "tf or seq2seq")->check(CLI::IsMember({"tf", "seq2seq"}));
  gen->add_option("--k-max", k_max, "Largest number of items in a context");
  gen->add_option("--k", fixed_k, "Use exactly this many items per context");
  gen->add_option("--case", case_flag, "Training clue case: I, II, III or IV (random mix)")
      ->check(CLI::IsMember({"I", "II", "III", "IV"}));
  gen->add_option("--eval-case", eval_case_flag, "Clue case for dev/test")->check(CLI::IsMember({"I", "II", "III"}));
  gen->add_option("--spoken-fraction", spoken, "Share of train queries with spoken numerals");
  gen->add_option("--eval-spoken-fraction", eval_spoken, "Share of dev/test queries with spoken numerals");
  gen->add_option("--max-attributes", max_attrs, "Attributes per query (1 or 2)");
  gen->add_option("--no-reason-fraction", no_reason, "Share of queries needing no reasoning");
  gen->add_flag("--single-test-set", single_test_set, "One mixed test set instead of one per (attributes, k) row");
  gen->add_option("--workers", workers, "Worker threads (output does not depend on it)");

  // stats
  auto* stats = app.add_subcommand("stats", "Summarize a dataset file");
  std::string stats_path;
  bool stats_json = false;
  stats->add_option("dataset", stats_path, "Dataset JSONL file")->required();
  stats->add_flag("--json", stats_json, "Machine-readable output");

  // score
  auto* score = app.add_subcommand("score", "Exact-match accuracy of a prediction file");
  std::string score_dataset, score_preds, score_json_out;
  bool score_json = false;
  std::size_t max_mismatches = 20;
  score->add_option("--dataset", score_dataset, "Dataset JSONL file")->required();
  score->add_option("--predictions", score_preds, "Predictions JSONL file {id, prediction}")->required();
  score->add_option("--report", score_json_out, "Also write the JSON report here");
  score->add_option("--mismatches", max_mismatches, "How many mismatches to list");
  score->add_flag("--json", score_json, "Print the JSON report instead of the table");
  score->add_option("--workers", workers, "Worker threads");

  // answer
  auto* answer = app.add_subcommand("answer", "Answer one query against a context");
  add_common(answer, common);
  std::string query, context_file;
  std::vector<std::string> item_specs;
  bool no_trace = false;
  answer->add_option("--query", query, "User query")->required();
  answer->add_option("--context-file", context_file, "File holding context statements");
  answer->add_option("--item", item_specs, "Item as Name|type|attr=value|... (repeatable)");
  answer->add_flag("--no-trace", no_trace, "Print only the answer");

  // selfcheck
  auto* check = app.add_subcommand("selfcheck", "Re-derive gold answers from stored inputs");
  add_common(check, common);
  std::string check_path;
  bool check_json = false;
  check->add_option("dataset", check_path, "Dataset JSONL file")->required();
  check->add_option("--workers", workers, "Worker threads");
  check->add_option("--mismatches", max_mismatches, "How many mismatches to list");
  check->add_flag("--json", check_json, "Print the JSON report instead of the table");

  // repl
  auto* repl = app.add_subcommand("repl", "Interactive playground");
  add_common(repl, common);
  std::uint64_t repl_seed = 0;
  repl->add_option("--seed", repl_seed, "Seed for sampled contexts");

  // check-config
  auto* validate = app.add_subcommand("check-config", "Validate an ontology config and list warnings");
  std::string validate_path;
  validate->add_option("path", validate_path, "Ontology config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) {
      const Ontology o = load_config(common);
      const TemplateInventory inv = load_inventory(common);
      GenConfig cfg;
      if (!gen_config_path.empty()) {
        std::ifstream in(gen_config_path);
        if (!in) throw IoError("cannot open " + gen_config_path);
        nlohmann::json j;
        try {
          j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
          throw ConfigError(gen_config_path, e.what());
        }
        cfg = config_from_json(j);
      }
      if (gen->count("--seed")) cfg.seed = seed;
      if (!sizes_flag.empty()) cfg.sizes = parse_sizes(sizes_flag, "--sizes");
      if (!catalog_flag.empty()) cfg.catalog_sizes = parse_sizes(catalog_flag, "--catalog-sizes");
      if (!format_flag.empty()) cfg.format = *parse_format(format_flag);
      if (gen->count("--k-max")) cfg.k_max = k_max;
      if (gen->count("--k")) {
        if (fixed_k < 0) throw ConfigError("--k", "must be non-negative");
        cfg.fixed_k = static_cast<std::size_t>(fixed_k);
      }
      if (!case_flag.empty()) cfg.train_case = *parse_case_policy(case_flag);
      if (!eval_case_flag.empty()) cfg.eval_case = *parse_context_case(eval_case_flag);
      if (gen->count("--spoken-fraction")) cfg.spoken_fraction = spoken;
      if (gen->count("--eval-spoken-fraction")) cfg.eval_spoken_fraction = eval_spoken;
      if (gen->count("--max-attributes")) cfg.max_attributes = max_attrs;
      if (gen->count("--no-reason-fraction")) cfg.no_reason_fraction = no_reason;
      if (single_test_set) cfg.per_row_test_sets = false;
      validate_config(cfg);
      const auto data = generate_dataset(o, inv, cfg, resolve_workers(workers));
      const auto manifest = write_dataset(o, inv, data, out_dir);
      for (const auto& f : manifest.files) {
        std::cout << "== " << f.split << ": " << f.path << " (" << f.count << " examples, sha256 " << f.sha256
                  << ")\n";
        std::cout << stats_to_text(compute_stats(data.splits[static_cast<std::size_t>(*parse_split(f.split))]));
      }
      std::cout << "manifest: " << (std::filesystem::path(out_dir) / "manifest.json").string() << "\n";
      return kExitOk;
    }
    if (*stats) {
      const auto r = compute_stats(std::filesystem::path(stats_path));
      print_json_or_text(stats_to_json(r), stats_to_text(r), stats_json);
      return kExitOk;
    }
    if (*score) {
      const auto r = score_exact_match(read_dataset(score_dataset), read_predictions(score_preds), max_mismatches);
      if (!score_json_out.empty()) {
        std::ofstream out(score_json_out);
        if (!out) throw IoError("cannot write " + score_json_out);
        out << report_to_json(r).dump(2) << "\n";
      }
      print_json_or_text(report_to_json(r), report_to_text(r), score_json);
      return kExitOk;
    }
    if (*answer) {
      const Ontology o = load_config(common);
      const TemplateInventory inv = load_inventory(common);
      ReasoningContext ctx;
      if (!context_file.empty()) {
        std::ifstream in(context_file);
        if (!in) throw IoError("cannot open context file " + context_file);
        std::stringstream ss;
        ss << in.rdbuf();
        std::string text = ss.str();
        for (auto& c : text)
          if (c == '\n' || c == '\r') c = ' ';
        text = normalize_utterance(text);
        if (!text.empty() && text.back() != '.') text += '.';
        try {
          ctx = parse_context(o, text);
        } catch (const ParseError& e) {
          throw ValidationError("malformed context file " + context_file + ": " + e.what());
        }
        if (!item_specs.empty()) throw ValidationError("use either --context-file or --item, not both");
      } else {
        std::vector<Item> items;
        for (const auto& spec : item_specs) items.push_back(parse_item_spec(o, spec));
        ctx = context_from_items(o, std::move(items));
      }
      const auto parsed = parse_query_detailed(query, o, inv);
      const auto gold = derive_gold_traced(o, ctx, parsed.semantics);
      std::cout << emit_output(gold.output) << "\n";
      if (!no_trace) {
        std::cout << "  template: " << (parsed.family.empty() ? "(none matched)" : parsed.family) << "\n";
        std::cout << "  semantics: " << describe(parsed.semantics) << "\n";
        std::cout << "  rule: " << gold.trace.rule << "\n";
        for (const auto& n : gold.trace.notes) std::cout << "  " << n << "\n";
      }
      return kExitOk;
    }
    if (*check) {
      const Ontology o = load_config(common);
      const TemplateInventory inv = load_inventory(common);
      const auto r = oracle_selfcheck(o, inv, read_dataset(check_path), resolve_workers(workers), max_mismatches);
      print_json_or_text(report_to_json(r), report_to_text(r), check_json);
      return r.overall.correct == r.overall.total ? kExitOk : kExitRuntime;
    }
    if (*repl) {
      const Ontology o = load_config(common);
      const TemplateInventory inv = load_inventory(common);
      Session session(o, inv, repl_seed);
      std::cout << "Type a query, or :help for commands.\n";
      std::string line;
      while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
        auto reply = session.handle(line);
        if (reply.quit) break;
        if (!reply.text.empty()) std::cout << reply.text << "\n";
      }
      return kExitOk;
    }
    if (*validate) {
      std::ifstream in(validate_path);
      if (!in) throw IoError("cannot open " + validate_path);
      std::stringstream ss;
      ss << in.rdbuf();
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(ss.str());
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError("$", e.what());
      }
      const auto diags = validate_ontology(ontology_from_json(j));
      for (const auto& d : diags)
        std::cout << (d.severity == Severity::error ? "error: " : "warning: ") << d.path << ": " << d.message << "\n";
      if (has_errors(diags)) return kExitUsage;
      std::cout << "ok\n";
      return kExitOk;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
