#include <gtest/gtest.h>

#include <set>

#include "test_support.hpp"

using namespace ctxreason;
using testing_support::onto;

TEST(Catalog, SplitsAreNameDisjoint) {
  const auto cats = build_split_catalogs(onto(), {3000, 500, 1000}, 11);
  std::set<std::string> all;
  std::size_t total = 0;
  for (const auto& c : cats) {
    total += c.items.size();
    for (const auto& i : c.items) all.insert(i.name);
  }
  EXPECT_EQ(total, 4500u);
  EXPECT_EQ(all.size(), total);
}

TEST(Catalog, LargeCategoricalPoolsAreDisjoint) {
  const auto cats = build_split_catalogs(onto(), {3000, 500, 1000}, 11);
  const auto& flavor = onto().attribute("flavor");
  std::set<std::string> seen;
  std::size_t total = 0;
  for (const auto& c : cats) {
    total += c.pool(flavor).size();
    seen.insert(c.pool(flavor).begin(), c.pool(flavor).end());
    const std::set<std::string> pool(c.pool(flavor).begin(), c.pool(flavor).end());
    for (const auto& i : c.items)
      if (const auto* tok = i.category("flavor")) EXPECT_TRUE(pool.count(*tok)) << *tok;
  }
  EXPECT_EQ(total, flavor.values.size());
  EXPECT_EQ(seen.size(), total);
  // diet is small and shared
  EXPECT_EQ(cats[0].pool(onto().attribute("diet")).size(), onto().attribute("diet").values.size());
}

TEST(Catalog, ValuesLieOnTheAttributeGrid) {
  const auto cats = build_split_catalogs(onto(), {2000, 1, 1}, 5);
  for (const auto& i : cats[0].items) {
    EXPECT_NO_THROW(validate_item(onto(), i));
    for (const auto& a : onto().attributes) {
      if (!a.numeric() || !i.has(a.name)) continue;
      const auto v = *i.number(a.name);
      EXPECT_GE(v, a.range.min);
      EXPECT_LE(v, a.range.max);
      EXPECT_TRUE(v.representable(a.range.decimals));
    }
  }
}

TEST(Catalog, SameSeedSameCatalog) {
  const auto a = build_split_catalogs(onto(), {500, 50, 50}, 99);
  const auto b = build_split_catalogs(onto(), {500, 50, 50}, 99);
  const auto c = build_split_catalogs(onto(), {500, 50, 50}, 100);
  for (std::size_t s = 0; s < 3; ++s) EXPECT_EQ(a[s].fingerprint, b[s].fingerprint);
  EXPECT_EQ(a[0].items, b[0].items);
  EXPECT_NE(a[0].fingerprint, c[0].fingerprint);
}

TEST(Catalog, QuotaErrors) {
  EXPECT_THROW(build_split_catalogs(onto(), {onto().name_capacity(), 1, 1}, 1), QuotaError);
  EXPECT_THROW(build_split_catalogs(onto(), {10, 0, 1}, 1), ValidationError);
  const auto cats = build_split_catalogs(onto(), {20, 1, 1}, 1);
  Rng rng(3);
  EXPECT_THROW(sample_context_items(cats[1], 2, rng), QuotaError);
}

TEST(Catalog, ContextItemsShareTypeAndNumericValuesDiffer) {
  const auto cats = build_split_catalogs(onto(), {2000, 1, 1}, 8);
  Rng rng(4);
  for (int n = 0; n < 500; ++n) {
    const std::size_t k = 1 + rng.uniform(5);
    const auto items = sample_context_items(cats[0], k, rng);
    ASSERT_EQ(items.size(), k);
    for (std::size_t i = 0; i < k; ++i) {
      EXPECT_EQ(items[i].type, items[0].type);
      for (std::size_t j = i + 1; j < k; ++j) {
        EXPECT_NE(items[i].name, items[j].name);
        for (const auto& a : onto().attributes) {
          if (!a.numeric()) continue;
          const auto x = items[i].number(a.name), y = items[j].number(a.name);
          if (x && y) EXPECT_NE(*x, *y);
        }
      }
    }
  }
}

TEST(Catalog, ItemSpec) {
  const auto i = parse_item_spec(onto(), "Fuji Apple | apple | price=$1.89 | rating=4.1 | diet=kosher");
  EXPECT_EQ(i.name, "Fuji Apple");
  EXPECT_EQ(i.type, "apple");
  EXPECT_EQ(*i.number("price"), Number::from_hundredths(189));
  EXPECT_EQ(*i.category("diet"), "kosher");
  EXPECT_FALSE(i.has("flavor"));
  EXPECT_THROW(parse_item_spec(onto(), "Fuji Apple"), ValidationError);
  EXPECT_THROW(parse_item_spec(onto(), "Fuji Apple|apple|price"), ValidationError);
  EXPECT_THROW(parse_item_spec(onto(), "Fuji Apple|apple|price=cheap"), ValidationError);
  EXPECT_THROW(parse_item_spec(onto(), "Fuji Apple|apple|weight=3"), ValidationError);
}

TEST(Catalog, FileRoundTrip) {
  const auto cats = build_split_catalogs(onto(), {300, 1, 1}, 2);
  const auto dir = testing_support::temp_dir("catalog");
  write_catalog(onto(), cats[0], dir / "c.jsonl");
  const auto back = read_catalog(onto(), dir / "c.jsonl");
  EXPECT_EQ(back.items, cats[0].items);
  EXPECT_EQ(back.fingerprint, cats[0].fingerprint);
}
