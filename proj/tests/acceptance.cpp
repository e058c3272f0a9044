// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <set>
#include <string>

#include "ctxreason.hpp"
#include "reference_oracle.hpp"

using namespace ctxreason;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
  std::printf("%s %d: %s\n", ok ? "PASS" : "FAIL", n, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const Ontology& onto() { return default_ontology(); }
const TemplateInventory& inv() { return default_templates(); }

// Tolerances and sizes.
constexpr std::size_t kOracleCases = 10000;
constexpr double kOracleSeconds = 60.0;
constexpr double kGenerationSeconds = 300.0;
constexpr std::size_t kMinCell = 5000;
constexpr std::size_t kClueContexts = 10000;
constexpr double kTrueRateLo = 0.45, kTrueRateHi = 0.55;

GenConfig seq2seq_config() {
  GenConfig c;
  c.format = TaskFormat::seq2seq;
  c.sizes = {100000, 5000, 20000};
  c.seed = 2024;
  return c;
}

GenConfig tf_config() {
  GenConfig c;
  c.format = TaskFormat::tf;
  c.sizes = {120000, 5000, 25000};
  c.seed = 2024;
  return c;
}

void criterion1() {
  const auto cats = build_split_catalogs(onto(), {2000, 1, 1}, 99);
  Rng rng(1);
  std::size_t cases = 0, agree = 0, contexts = 0;
  std::string first_bad;
  const auto t0 = Clock::now();
  while (cases < kOracleCases) {
    const std::size_t k = rng.uniform(6);
    const auto c = static_cast<ContextCase>(1 + rng.uniform(3));
    const auto ctx = assemble_context(onto(), sample_context_items(cats[0], k, rng), c, rng);
    ++contexts;
    auto qs = enumerate_applicable_queries(ctx, onto(), inv(), {}, rng);
    rng.shuffle(qs.begin(), qs.end());
    qs.resize(std::min<std::size_t>(qs.size(), 10));
    for (const auto& q : qs) {
      std::string mine, theirs;
      try {
        mine = emit_output(derive_gold(onto(), ctx, q));
      } catch (const Error& e) {
        mine = "<error>";
      }
      try {
        theirs = reference::answer(onto(), ctx, q);
      } catch (const reference::Failure&) {
        theirs = "<error>";
      }
      ++cases;
      if (mine == theirs) ++agree;
      else if (first_bad.empty()) first_bad = describe(q) + ": " + mine + " vs " + theirs;
    }
  }
  const double secs = seconds_since(t0);
  report(1, agree == cases && secs < kOracleSeconds,
         fmt("oracle vs brute force: %zu/%zu agree over %zu contexts in %.1fs (limit %.0fs)%s%s", agree, cases, contexts,
             secs, kOracleSeconds, first_bad.empty() ? "" : "; first mismatch: ", first_bad.c_str()));
}

void criterion2(const GeneratedDataset& d) {
  std::size_t total = 0, ok = 0;
  std::string first_bad;
  for (const auto& split : d.splits) {
    for (const auto& ex : split) {
      ++total;
      bool good = false;
      try {
        const auto ctx = parse_context(onto(), ex.context());
        const auto gold = derive_gold(onto(), ctx, parse_query(ex.query(), onto(), inv()));
        good = parse_output(emit_output(gold)) == gold && parse_output(ex.output) == gold;
      } catch (const Error&) {
      }
      if (good) ++ok;
      else if (first_bad.empty()) first_bad = ex.id;
    }
  }
  report(2, ok == total,
         fmt("output grammar round trip on %zu/%zu seq2seq examples%s%s", ok, total, first_bad.empty() ? "" : "; first failure ",
             first_bad.c_str()));
}

void criterion3(const GeneratedDataset& s2s, double s2s_secs, const GeneratedDataset& tf, double tf_secs,
                bool deterministic) {
  const auto stats = compute_stats(s2s.splits[2]);
  std::size_t cells = 0, small = 0, smallest = SIZE_MAX;
  for (std::size_t a = 1; a <= 2; ++a)
    for (std::size_t k = 0; k <= 5; ++k)
      for (const char* col : {"inform_select", "extract"}) {
        if (k == 0 && std::string(col) == "inform_select") continue;
        auto it = stats.slices.find({col, k, a});
        const std::size_t n = it == stats.slices.end() ? 0 : it->second;
        ++cells;
        smallest = std::min(smallest, n);
        if (n < kMinCell) ++small;
      }
  const bool sizes_ok = s2s.splits[0].size() == 100000 && s2s.splits[1].size() == 5000 && tf.splits[0].size() == 120000 &&
                        tf.splits[1].size() == 5000 && tf.splits[2].size() == 25000;
  const bool ok = sizes_ok && small == 0 && s2s_secs + tf_secs < kGenerationSeconds && deterministic;
  report(3, ok,
         fmt("full-size generation: seq2seq %zu/%zu/%zu in %.1fs, tf %zu/%zu/%zu in %.1fs (limit %.0fs); "
             "%zu test cells, smallest %zu (min %zu); repeat run identical: %s",
             s2s.splits[0].size(), s2s.splits[1].size(), s2s.splits[2].size(), s2s_secs, tf.splits[0].size(),
             tf.splits[1].size(), tf.splits[2].size(), tf_secs, kGenerationSeconds, cells, smallest, kMinCell,
             deterministic ? "yes" : "no"));
}

void criterion4(const GeneratedDataset& s2s, const GeneratedDataset& tf) {
  std::size_t overlap = 0;
  for (const auto* d : {&s2s, &tf}) {
    std::set<std::string> seen;
    std::size_t total = 0;
    for (const auto& c : d->catalogs) {
      total += c.items.size();
      for (const auto& i : c.items) seen.insert(i.name);
    }
    overlap += total - seen.size();
  }
  report(4, overlap == 0, fmt("catalog item-name overlap across train/dev/test: %zu", overlap));
}

void criterion5() {
  const auto cats = build_split_catalogs(onto(), {3000, 1, 1}, 5);
  Rng rng(5);
  std::size_t contradictions = 0, count_errors = 0, clues = 0;
  for (std::size_t n = 0; n < kClueContexts; ++n) {
    const auto c = n % 2 ? ContextCase::III : ContextCase::II;
    const auto ctx = assemble_context(onto(), sample_context_items(cats[0], 1 + rng.uniform(5), rng), c, rng);
    auto value = [&](const std::string& name, const std::string& attr) {
      for (const auto& i : ctx.items)
        if (i.name == name) return i.number(attr);
      return std::optional<Number>{};
    };
    for (const auto& a : onto().attributes) {
      if (!a.numeric()) continue;
      std::size_t carriers = 0, comparatives = 0;
      for (const auto& i : ctx.items) carriers += i.has(a.name);
      for (const auto& s : ctx.statements) {
        if (s.attribute != a.name) continue;
        if (s.kind == StatementKind::comparative_clue) {
          ++comparatives, ++clues;
          const auto x = value(s.subject, a.name), y = value(s.object, a.name);
          if (!x || !y || !(s.direction == Direction::lower ? *x < *y : *x > *y)) ++contradictions;
        } else if (s.kind == StatementKind::superlative_clue) {
          ++clues;
          const auto v = value(s.subject, a.name);
          bool sound = v && a.format(*v) == s.value;
          for (const auto& i : ctx.items)
            if (auto w = i.number(a.name); v && w && (s.direction == Direction::lower ? *w < *v : *w > *v)) sound = false;
          if (!sound) ++contradictions;
        }
      }
      if (comparatives != (carriers >= 2 ? carriers - 1 : 0)) ++count_errors;
    }
  }
  report(5, contradictions == 0 && count_errors == 0,
         fmt("%zu Case II/III contexts, %zu clues: %zu contradict values, %zu attributes with a comparative count other "
             "than n-1",
             kClueContexts, clues, contradictions, count_errors));
}

void criterion6() {
  std::size_t checked = 0, failed = 0;
  auto grid = [&](const AttributeSpec& a) {
    for (std::int64_t i = 0; i < a.grid_size(); ++i) {
      const Number v = a.grid_value(i);
      ++checked;
      try {
        if (spoken_to_number(number_to_spoken(v, a.unit, a.range.decimals)).value != v) ++failed;
      } catch (const Error&) {
        ++failed;
      }
    }
  };
  grid(onto().attribute("price"));
  grid(onto().attribute("rating"));
  const std::string s = number_to_spoken(*parse_decimal("3.50"), Unit::currency);
  report(6, failed == 0 && s == "three dollars fifty" && checked == 19975 + 41,
         fmt("spoken round trip over price and rating grids: %zu values, %zu failures; $3.50 -> \"%s\"", checked,
             failed, s.c_str()));
}

void criterion7(const GeneratedDataset& tf) {
  bool ok = true;
  std::string rates;
  for (auto s : kSplits) {
    const auto st = compute_stats(tf.splits[static_cast<std::size_t>(s)]);
    const double r = st.tf_true_rate();
    ok = ok && st.tf_total > 0 && r >= kTrueRateLo && r <= kTrueRateHi;
    rates += fmt("%s%s %.4f", rates.empty() ? "" : ", ", std::string(to_string(s)).c_str(), r);
  }
  report(7, ok, fmt("tf true-rate %s (allowed [%.2f, %.2f])", rates.c_str(), kTrueRateLo, kTrueRateHi));
}

void criterion8(const GeneratedDataset& s2s, const GeneratedDataset& tf) {
  bool ok = true;
  std::string detail;
  for (const auto* d : {&s2s, &tf}) {
    const auto& xs = d->splits[2];
    const auto preds = oracle_predictions(onto(), inv(), xs, 1);
    const auto clean = score_exact_match(xs, preds);
    auto corrupted = preds;
    // exactly one in ten: the test split sizes are multiples of ten
    for (std::size_t i = 0; i < corrupted.size(); i += 10) corrupted[i].text = "<corrupted>";
    const auto dirty = score_exact_match(xs, corrupted);
    const bool exact_one = clean.overall.correct == clean.overall.total;
    const bool exact_nine = xs.size() % 10 == 0 && dirty.overall.correct * 10 == dirty.overall.total * 9;
    ok = ok && exact_one && exact_nine;
    detail += fmt("%s%s: selfcheck %zu/%zu (EM %.3f), 10%% corrupted %zu/%zu (EM %.3f)", detail.empty() ? "" : "; ",
                  std::string(to_string(d->config.format)).c_str(), clean.overall.correct, clean.overall.total,
                  clean.em(), dirty.overall.correct, dirty.overall.total, dirty.em());
  }
  report(8, ok, detail);
}

std::string dataset_digest(const std::filesystem::path& dir) {
  Sha256 h;
  for (const char* f : {"train.jsonl", "dev.jsonl", "test.jsonl", "catalog-train.jsonl", "catalog-dev.jsonl",
                        "catalog-test.jsonl", "manifest.json"})
    h.update(f).update(sha256_file(dir / f));
  return h.hex();
}

}  // namespace

int main() {
  try {
    const auto work = std::filesystem::temp_directory_path() / "ctxreason-acceptance";
    std::filesystem::remove_all(work);

    criterion1();

    auto t0 = Clock::now();
    const auto s2s = generate_dataset(onto(), inv(), seq2seq_config(), 1);
    const double s2s_secs = seconds_since(t0);
    t0 = Clock::now();
    const auto tf = generate_dataset(onto(), inv(), tf_config(), 1);
    const double tf_secs = seconds_since(t0);

    // Second runs with two workers, for determinism.
    write_dataset(onto(), inv(), s2s, work / "seq2seq-w1");
    write_dataset(onto(), inv(), tf, work / "tf-w1");
    {
      const auto again = generate_dataset(onto(), inv(), seq2seq_config(), 2);
      write_dataset(onto(), inv(), again, work / "seq2seq-w2");
    }
    {
      const auto again = generate_dataset(onto(), inv(), tf_config(), 2);
      write_dataset(onto(), inv(), again, work / "tf-w2");
    }
    const auto h_s1 = dataset_digest(work / "seq2seq-w1"), h_s2 = dataset_digest(work / "seq2seq-w2");
    const auto h_t1 = dataset_digest(work / "tf-w1"), h_t2 = dataset_digest(work / "tf-w2");
    const bool deterministic = h_s1 == h_s2 && h_t1 == h_t2;

    criterion2(s2s);
    criterion3(s2s, s2s_secs, tf, tf_secs, deterministic);
    criterion4(s2s, tf);
    criterion5();
    criterion6();
    criterion7(tf);
    criterion8(s2s, tf);
    report(9, deterministic,
           fmt("byte-identical files for workers=1 vs workers=2: seq2seq %.12s.. vs %.12s.., tf %.12s.. vs %.12s..",
               h_s1.c_str(), h_s2.c_str(), h_t1.c_str(), h_t2.c_str()));
    std::filesystem::remove_all(work);
  } catch (const std::exception& e) {
    std::printf("FAIL: acceptance run aborted: %s\n", e.what());
    return 1;
  }
  return failures == 0 ? 0 : 1;
}
