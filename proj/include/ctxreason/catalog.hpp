#pragma once

// Knowledge-base items, split-disjoint catalogs, and same-type sampling of
// the items that seed a reasoning context.

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "json.hpp"

#include "ctxreason/errors.hpp"
#include "ctxreason/hash.hpp"
#include "ctxreason/number.hpp"
#include "ctxreason/ontology.hpp"
#include "ctxreason/rng.hpp"

namespace ctxreason {

enum class Split { train, dev, test };

inline constexpr std::array<Split, 3> kSplits = {Split::train, Split::dev, Split::test};

inline std::string_view to_string(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::dev: return "dev";
    case Split::test: return "test";
  }
  return "?";
}

inline std::optional<Split> parse_split(std::string_view s) {
  for (auto sp : kSplits)
    if (to_string(sp) == s) return sp;
  return std::nullopt;
}

using AttributeValue = std::variant<Number, std::string>;

struct Item {
  std::string name;
  std::string type;
  std::map<std::string, AttributeValue> values;  // partial: absent attributes are unknown

  bool has(std::string_view attribute) const { return values.find(std::string(attribute)) != values.end(); }

  std::optional<Number> number(std::string_view attribute) const {
    auto it = values.find(std::string(attribute));
    if (it == values.end()) return std::nullopt;
    if (const auto* n = std::get_if<Number>(&it->second)) return *n;
    return std::nullopt;
  }

  const std::string* category(std::string_view attribute) const {
    auto it = values.find(std::string(attribute));
    if (it == values.end()) return nullptr;
    return std::get_if<std::string>(&it->second);
  }

  bool operator==(const Item&) const = default;
};

// Throws ValidationError unless every value conforms to its attribute spec.
inline void validate_item(const Ontology& o, const Item& item) {
  if (item.name.empty()) throw ValidationError("item name must not be empty");
  if (std::find(o.item_types.begin(), o.item_types.end(), item.type) == o.item_types.end())
    throw ValidationError("item '" + item.name + "' has unknown type '" + item.type + "'");
  for (const auto& [attr, value] : item.values) {
    const AttributeSpec& spec = o.attribute(attr);
    if (spec.numeric()) {
      const auto* n = std::get_if<Number>(&value);
      if (!n) throw ValidationError("item '" + item.name + "': " + attr + " must be numeric");
      if (*n < spec.range.min || (spec.range.bounded && *n > spec.range.max) || !n->representable(spec.range.decimals))
        throw ValidationError("item '" + item.name + "': " + attr + " value " + n->format(2) + " outside its range");
    } else {
      const auto* s = std::get_if<std::string>(&value);
      if (!s || std::find(spec.values.begin(), spec.values.end(), *s) == spec.values.end())
        throw ValidationError("item '" + item.name + "': " + attr + " value is not in its catalog");
    }
  }
}

struct SplitSizes {
  std::size_t train = 0;
  std::size_t dev = 0;
  std::size_t test = 0;

  std::size_t operator[](Split s) const { return s == Split::train ? train : s == Split::dev ? dev : test; }
  std::size_t total() const { return train + dev + test; }

  bool operator==(const SplitSizes&) const = default;
};

struct Catalog {
  Split split = Split::train;
  std::vector<Item> items;
  // Category tokens this split draws from, per categorical attribute.
  std::map<std::string, std::vector<std::string>> pools;
  // SHA-256 over the sorted item names, for disjointness audits.
  std::string fingerprint;
  std::map<std::string, std::vector<std::size_t>> by_type;

  const std::vector<std::string>& pool(const AttributeSpec& a) const {
    auto it = pools.find(a.name);
    return it == pools.end() ? a.values : it->second;
  }

  std::set<std::string> names() const {
    std::set<std::string> out;
    for (const auto& i : items) out.insert(i.name);
    return out;
  }

  void reindex() {
    by_type.clear();
    for (std::size_t i = 0; i < items.size(); ++i) by_type[items[i].type].push_back(i);
    std::vector<std::string> sorted;
    sorted.reserve(items.size());
    for (const auto& i : items) sorted.push_back(i.name);
    std::sort(sorted.begin(), sorted.end());
    Sha256 h;
    for (const auto& n : sorted) h.update(n).update("\n");
    fingerprint = h.hex();
  }
};

namespace detail {

// First `n` entries of a random permutation of [0, population), without
// materialising the population.
inline std::vector<std::uint64_t> sample_indices(std::uint64_t population, std::size_t n, Rng& rng) {
  std::unordered_map<std::uint64_t, std::uint64_t> swapped;
  auto at = [&](std::uint64_t i) {
    auto it = swapped.find(i);
    return it == swapped.end() ? i : it->second;
  };
  std::vector<std::uint64_t> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t j = i + rng.uniform(static_cast<std::size_t>(population - i));
    const std::uint64_t vi = at(i), vj = at(j);
    swapped[j] = vi;
    out.push_back(vj);
  }
  return out;
}

inline AttributeValue draw_value(const AttributeSpec& a, const std::vector<std::string>& pool, Rng& rng) {
  if (a.numeric()) return a.grid_value(static_cast<std::int64_t>(rng.uniform(static_cast<std::size_t>(a.grid_size()))));
  return rng.pick(pool);
}

}  // namespace detail

// Three catalogs with pairwise-disjoint item names. Categorical attributes
// whose pool is large enough also get disjoint per-split token pools.
inline std::array<Catalog, 3> build_split_catalogs(const Ontology& o, SplitSizes sizes, std::uint64_t seed) {
  for (auto s : kSplits)
    if (sizes[s] < 1) throw ValidationError("catalog size for " + std::string(to_string(s)) + " must be at least 1");
  if (sizes.total() > o.name_capacity())
    throw QuotaError("requested " + std::to_string(sizes.total()) + " catalog items but the name pool holds only " +
                     std::to_string(o.name_capacity()));

  Rng rng(derive_seed(seed, "catalog", 0));
  const auto picks = detail::sample_indices(o.name_capacity(), sizes.total(), rng);

  std::array<Catalog, 3> out;
  for (auto s : kSplits) out[static_cast<std::size_t>(s)].split = s;

  for (const auto& a : o.attributes) {
    if (!a.categorical()) continue;
    if (!a.splits_disjointly()) continue;
    if (a.values.size() < 3)
      throw ValidationError("attribute '" + a.name + "' has too few tokens to split three ways");
    std::vector<std::string> shuffled = a.values;
    rng.shuffle(shuffled.begin(), shuffled.end());
    std::array<std::size_t, 3> counts{};
    std::size_t assigned = 0;
    for (auto s : {Split::dev, Split::test}) {
      const auto c = std::max<std::size_t>(1, shuffled.size() * sizes[s] / sizes.total());
      counts[static_cast<std::size_t>(s)] = c;
      assigned += c;
    }
    if (assigned >= shuffled.size())
      throw ValidationError("attribute '" + a.name + "' has too few tokens to split three ways");
    counts[0] = shuffled.size() - assigned;
    std::size_t begin = 0;
    for (auto s : kSplits) {
      const auto c = counts[static_cast<std::size_t>(s)];
      out[static_cast<std::size_t>(s)].pools[a.name].assign(shuffled.begin() + static_cast<std::ptrdiff_t>(begin),
                                                            shuffled.begin() + static_cast<std::ptrdiff_t>(begin + c));
      begin += c;
    }
  }

  std::size_t next = 0;
  for (auto s : kSplits) {
    Catalog& cat = out[static_cast<std::size_t>(s)];
    cat.items.reserve(sizes[s]);
    for (std::size_t i = 0; i < sizes[s]; ++i) {
      Item item;
      std::tie(item.type, item.name) = o.item_identity(picks[next++]);
      for (const auto& a : o.attributes) {
        if (!rng.chance(o.presence_probability)) continue;
        item.values.emplace(a.name, detail::draw_value(a, cat.pool(a), rng));
      }
      cat.items.push_back(std::move(item));
    }
    cat.reindex();
  }
  return out;
}

namespace detail {

inline bool collides(const Item& a, const Item& b) {
  for (const auto& [attr, value] : a.values) {
    const auto* n = std::get_if<Number>(&value);
    if (!n) continue;
    if (auto other = b.number(attr); other && *other == *n) return true;
  }
  return false;
}

}  // namespace detail

// `k` items of one item type in sampling order. No two returned items share a
// value on any numeric attribute, so extremes are always unique.
inline std::vector<Item> sample_context_items(const Catalog& c, std::size_t k, Rng& rng) {
  if (k == 0) return {};
  std::vector<const std::vector<std::size_t>*> candidates;
  for (const auto& [type, idx] : c.by_type)
    if (idx.size() >= k) candidates.push_back(&idx);
  if (candidates.empty())
    throw QuotaError("no item type in the " + std::string(to_string(c.split)) + " catalog has " + std::to_string(k) +
                     " items");
  rng.shuffle(candidates.begin(), candidates.end());
  for (const auto* idx : candidates) {
    std::vector<std::size_t> order = *idx;
    std::vector<Item> picked;
    // Incremental Fisher-Yates: draw until k compatible items are found.
    for (std::size_t i = 0; i < order.size() && picked.size() < k; ++i) {
      const std::size_t j = i + rng.uniform(order.size() - i);
      std::swap(order[i], order[j]);
      const Item& cand = c.items[order[i]];
      if (std::none_of(picked.begin(), picked.end(), [&](const Item& p) { return detail::collides(p, cand); }))
        picked.push_back(cand);
    }
    if (picked.size() == k) return picked;
  }
  throw QuotaError("cannot draw " + std::to_string(k) + " same-type items with distinct numeric values from the " +
                   std::string(to_string(c.split)) + " catalog");
}

// "Name|type|attr=value|..." as accepted by the CLI and REPL.
inline Item parse_item_spec(const Ontology& o, std::string_view spec) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : spec) {
    if (ch == '|') fields.push_back(cur), cur.clear();
    else cur += ch;
  }
  fields.push_back(cur);
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(' ');
    const auto e = s.find_last_not_of(' ');
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  if (fields.size() < 2) throw ValidationError("item spec needs at least 'Name|type': " + std::string(spec));
  Item item{trim(fields[0]), trim(fields[1]), {}};
  for (std::size_t i = 2; i < fields.size(); ++i) {
    const auto f = trim(fields[i]);
    const auto eq = f.find('=');
    if (eq == std::string::npos) throw ValidationError("expected attr=value in item spec, got '" + f + "'");
    const auto attr = trim(f.substr(0, eq));
    const auto raw = trim(f.substr(eq + 1));
    const AttributeSpec& a = o.attribute(attr);
    if (a.numeric()) {
      auto n = parse_decimal(!raw.empty() && raw[0] == '$' ? std::string_view(raw).substr(1) : std::string_view(raw));
      if (!n) throw ValidationError("bad number '" + raw + "' for " + attr);
      item.values[attr] = *n;
    } else {
      item.values[attr] = raw;
    }
  }
  validate_item(o, item);
  return item;
}

inline nlohmann::ordered_json item_to_json(const Ontology& o, const Item& item) {
  nlohmann::ordered_json values = nlohmann::ordered_json::object();
  for (const auto& a : o.attributes) {
    auto it = item.values.find(a.name);
    if (it == item.values.end()) continue;
    if (const auto* n = std::get_if<Number>(&it->second)) values[a.name] = a.format(*n);
    else values[a.name] = std::get<std::string>(it->second);
  }
  return {{"name", item.name}, {"type", item.type}, {"values", values}};
}

inline Item item_from_json(const Ontology& o, const nlohmann::json& j) {
  Item item;
  item.name = j.at("name").get<std::string>();
  item.type = j.at("type").get<std::string>();
  for (auto it = j.at("values").begin(); it != j.at("values").end(); ++it) {
    const AttributeSpec& a = o.attribute(it.key());
    const auto text = it.value().get<std::string>();
    if (a.numeric()) {
      auto n = parse_decimal(text);
      if (!n) throw ValidationError("bad number '" + text + "' for " + a.name);
      item.values[a.name] = *n;
    } else {
      item.values[a.name] = text;
    }
  }
  validate_item(o, item);
  return item;
}

// One JSON object per line: {"split","name","type","values"}.
inline void write_catalog(const Ontology& o, const Catalog& c, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write catalog " + path.string());
  for (const auto& item : c.items) {
    nlohmann::ordered_json j;
    j["split"] = to_string(c.split);
    const auto fields = item_to_json(o, item);
    for (const auto& [k, v] : fields.items()) j[k] = v;
    out << j.dump() << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

// Pools of an imported catalog are the tokens its items use (disjoint
// attributes) or the whole value catalog (shared attributes).
inline Catalog read_catalog(const Ontology& o, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read catalog " + path.string());
  Catalog c;
  std::string line;
  std::size_t lineno = 0;
  std::optional<Split> split;
  std::map<std::string, std::set<std::string>> used;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      auto s = parse_split(j.at("split").get<std::string>());
      if (!s || (split && *s != *split)) throw ValidationError("inconsistent split tag");
      split = s;
      c.items.push_back(item_from_json(o, j));
      for (const auto& [attr, v] : c.items.back().values)
        if (const auto* t = std::get_if<std::string>(&v)) used[attr].insert(*t);
    } catch (const std::exception& e) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": " + e.what(), lineno);
    }
  }
  c.split = split.value_or(Split::train);
  for (const auto& a : o.attributes)
    if (a.categorical() && a.splits_disjointly() && used.count(a.name))
      c.pools[a.name].assign(used[a.name].begin(), used[a.name].end());
  c.reindex();
  return c;
}

}  // namespace ctxreason
