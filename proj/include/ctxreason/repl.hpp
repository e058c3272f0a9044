#pragma once

// Interactive playground state: a current context and a query loop. The CLI
// only feeds lines in and prints what comes back.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ctxreason/catalog.hpp"
#include "ctxreason/context.hpp"
#include "ctxreason/oracle.hpp"
#include "ctxreason/querygen.hpp"

namespace ctxreason {

class Session {
 public:
  Session(const Ontology& o, const TemplateInventory& inv, std::uint64_t seed, SplitSizes catalog_sizes = {400, 50, 50})
      : o_(o), inv_(inv), seed_(seed), catalog_sizes_(catalog_sizes), ctx_(context_from_items(o, {})) {}

  struct Reply {
    std::string text;
    bool quit = false;
  };

  Reply handle(std::string_view raw) {
    const std::string line = normalize_ws(raw);
    if (line.empty()) return {};
    if (line.front() != ':') return {answer(line)};
    std::istringstream in(line.substr(1));
    std::string cmd;
    in >> cmd;
    std::string rest;
    std::getline(in, rest);
    rest = normalize_ws(rest);
    try {
      if (cmd == "quit" || cmd == "q" || cmd == "exit") return {"", true};
      if (cmd == "help") return {help()};
      if (cmd == "new") return {sample(rest)};
      if (cmd == "show") return {show()};
      if (cmd == "trace") {
        trace_ = !trace_;
        return {std::string("trace ") + (trace_ ? "on" : "off")};
      }
      if (cmd == "clear") {
        ctx_ = context_from_items(o_, {});
        return {"context cleared"};
      }
      if (cmd == "item") {
        auto items = ctx_.items;
        items.push_back(parse_item_spec(o_, rest));
        ctx_ = context_from_items(o_, std::move(items));
        return {show()};
      }
    } catch (const Error& e) {
      return {std::string("error: ") + e.what()};
    }
    return {"unknown command :" + cmd + " (try :help)"};
  }

  const ReasoningContext& context() const { return ctx_; }
  bool trace() const { return trace_; }

  static std::string help() {
    return ":new k=N [case=I|II|III]  sample a context of N items\n"
           ":item Name|type|attr=value|...  add an item by hand\n"
           ":show   print the context\n"
           ":clear  start from an empty context\n"
           ":trace  toggle explanations\n"
           ":quit   leave\n"
           "anything else is answered as a query";
  }

 private:
  static std::string normalize_ws(std::string_view s) {
    std::string out;
    bool space = false;
    for (char c : s) {
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        space = !out.empty();
        continue;
      }
      if (space) out += ' ';
      space = false;
      out += c;
    }
    return out;
  }

  std::string show() const {
    if (ctx_.statements.empty()) return "(empty context)";
    std::string out;
    for (const auto& s : ctx_.statements) out += s.text + "\n";
    for (std::size_t i = 0; i < ctx_.items.size(); ++i) {
      const std::string ord = i < inv_.ordinals.size() ? inv_.ordinals[i] : std::to_string(i + 1);
      out += "  " + ord + ": " + ctx_.items[i].name + "\n";
    }
    out.pop_back();
    return out;
  }

  std::string sample(const std::string& args) {
    std::size_t k = 3;
    ContextCase c = ContextCase::I;
    std::istringstream in(args);
    std::string tok;
    while (in >> tok) {
      if (tok.rfind("k=", 0) == 0) {
        try {
          k = std::stoul(tok.substr(2));
        } catch (const std::exception&) {
          throw ValidationError("bad k in '" + tok + "'");
        }
        if (k > inv_.ordinals.size()) throw ValidationError("k must be at most " + std::to_string(inv_.ordinals.size()));
      } else if (tok == "case=I") {
        c = ContextCase::I;
      } else if (tok == "case=II") {
        c = ContextCase::II;
      } else if (tok == "case=III") {
        c = ContextCase::III;
      } else {
        throw ValidationError("unknown argument '" + tok + "'");
      }
    }
    if (!catalog_) catalog_ = build_split_catalogs(o_, catalog_sizes_, seed_)[0];
    Rng rng(derive_seed(seed_, "repl", draws_++));
    ctx_ = assemble_context(o_, sample_context_items(*catalog_, k, rng), c, rng);
    return show();
  }

  std::string answer(const std::string& query) {
    const auto parsed = parse_query_detailed(query, o_, inv_);
    try {
      const auto gold = derive_gold_traced(o_, ctx_, parsed.semantics);
      std::string out = emit_output(gold.output);
      if (trace_) {
        out += "\n  template: " + (parsed.family.empty() ? std::string("(none matched)") : parsed.family);
        out += "\n  semantics: " + describe(parsed.semantics);
        out += "\n  rule: " + gold.trace.rule;
        for (const auto& n : gold.trace.notes) out += "\n  " + n;
      }
      return out;
    } catch (const Error& e) {
      return std::string("error: ") + e.what();
    }
  }

  const Ontology& o_;
  const TemplateInventory& inv_;
  std::uint64_t seed_;
  SplitSizes catalog_sizes_;
  std::optional<Catalog> catalog_;
  ReasoningContext ctx_;
  bool trace_ = false;
  std::uint64_t draws_ = 0;
};

}  // namespace ctxreason
