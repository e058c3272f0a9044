#include <gtest/gtest.h>

#include "reference_oracle.hpp"
#include "test_support.hpp"

using namespace ctxreason;
using testing_support::apples;
using testing_support::inv;
using testing_support::lit;
using testing_support::onto;
using testing_support::pred;

namespace {

std::string gold(const ReasoningContext& ctx, const QuerySemantics& q) { return emit_output(derive_gold(onto(), ctx, q)); }

std::string ask(const ReasoningContext& ctx, const std::string& utterance) {
  return gold(ctx, parse_query(utterance, onto(), inv()));
}

QuerySemantics open(std::vector<Predicate> ps) { return {Action::inform_open, std::nullopt, std::move(ps), false}; }

QuerySemantics tf(ItemRef s, Predicate p) { return {Action::inform_tf, std::move(s), {std::move(p)}, false}; }

const std::array<Catalog, 3>& catalogs() {
  static const auto c = build_split_catalogs(onto(), {3000, 1, 1}, 41);
  return c;
}

}  // namespace

TEST(Oracle, ApplesWalkthrough) {
  const auto ctx = apples();
  EXPECT_EQ(ask(ctx, "Which one is the cheapest?"), "inform Fuji Apple");
  EXPECT_EQ(ask(ctx, "Add the highest rated one to my cart."), "select Honeycrisp Apple");
  EXPECT_EQ(ask(ctx, "Which one is the cheapest and organic?"), "inform Organic Gala Apple");
  EXPECT_EQ(ask(ctx, "Show me something cheaper than $3."), "inform Organic Gala Apple and Fuji Apple");
  EXPECT_EQ(ask(ctx, "Add everything organic to my cart."), "select Honeycrisp Apple and Organic Gala Apple");
  EXPECT_EQ(ask(ctx, "Is the second one more popular?"), "inform false");
  EXPECT_EQ(ask(ctx, "Is the first one more popular?"), "inform true");
  EXPECT_EQ(ask(ctx, "Is Organic Gala Apple cheaper than the first one?"), "inform true");
  EXPECT_EQ(ask(ctx, "Does the third one cost more than $2?"), "inform false");
  EXPECT_EQ(ask(ctx, "Please repeat."), "NoAnswer");
}

TEST(Oracle, ExtractionWhenNothingQualifies) {
  const auto ctx = apples();
  EXPECT_EQ(ask(ctx, "Show me something vegan and cheaper than $5."), "include diet vegan and less-than price 5");
  EXPECT_EQ(ask(ctx, "Show me something vegan and cheaper than five dollars."),
            "include diet vegan and less-than price 5");
  EXPECT_EQ(ask(ctx, "I want something cheaper."), "less-than price 1.89");
  EXPECT_EQ(ask(ctx, "I want something more popular."), "more-than rating 4.5");
  EXPECT_EQ(ask(ctx, "Anything pricier than the first one?"), "more-than price 3.99");
}

TEST(Oracle, SuperlativeAfterEmptyPrefilter) {
  const auto ctx = apples();
  EXPECT_EQ(gold(ctx, open({pred("diet", Op::include, Category{"vegan"}), pred("price", Op::min)})),
            "include diet vegan and less-than price 1.89");
  EXPECT_EQ(gold(ctx, open({pred("rating", Op::max), pred("diet", Op::include, Category{"vegan"})})),
            "more-than rating 4.5 and include diet vegan");
}

TEST(Oracle, EmptyContextExtractsEverything) {
  const auto ctx = testing_support::context_of({});
  EXPECT_EQ(gold(ctx, open({pred("price", Op::less_than, lit("2.50"))})), "less-than price 2.50");
  EXPECT_THROW(gold(ctx, open({pred("price", Op::min)})), OracleError);
}

TEST(Oracle, TiesReturnEveryItem) {
  const auto ctx = testing_support::context_of({"A Apple|apple|price=2", "B Apple|apple|price=1", "C Apple|apple|price=1"});
  EXPECT_EQ(gold(ctx, open({pred("price", Op::min)})), "inform B Apple and C Apple");
}

TEST(Oracle, UndefinedQueriesThrow) {
  const auto ctx = apples();
  EXPECT_THROW(gold(ctx, tf(ItemRef::ordinal(7), pred("price", Op::min))), OracleError);
  EXPECT_THROW(gold(ctx, tf(ItemRef::named("Pear"), pred("price", Op::min))), OracleError);
  EXPECT_THROW(gold(ctx, tf(ItemRef::ordinal(0), pred("price", Op::less_than, ItemRef::ordinal(0)))), OracleError);
  EXPECT_THROW(gold(ctx, tf(ItemRef::ordinal(0), pred("flavor", Op::include, Category{"mango"}))), OracleError);
  // survivors exist but none carries the superlative attribute
  const auto partial = testing_support::context_of({"A Apple|apple|diet=kosher", "B Apple|apple|rating=4|diet=vegan"});
  EXPECT_THROW(gold(partial, open({pred("diet", Op::include, Category{"kosher"}), pred("rating", Op::max)})),
               OracleError);
  EXPECT_THROW(gold(ctx, open({pred("flavor", Op::max)})), ValidationError);
}

TEST(Oracle, NamesResolveCaseInsensitively) {
  EXPECT_EQ(gold(apples(), tf(ItemRef::named("fuji apple"), pred("price", Op::min))), "inform true");
}

// Shared driver for the property tests: random Case I contexts.
template <typename F>
void for_random_contexts(std::uint64_t seed, int n, F&& f) {
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    const auto ctx = assemble_context(onto(), sample_context_items(catalogs()[0], rng.uniform(6), rng),
                                      ContextCase::I, rng);
    f(ctx, rng);
  }
}

TEST(OracleProperty, InverseRelations) {
  for_random_contexts(1, 400, [](const ReasoningContext& ctx, Rng&) {
    for (const auto* attr : {"price", "rating"})
      for (std::size_t a = 0; a < ctx.items.size(); ++a)
        for (std::size_t b = 0; b < ctx.items.size(); ++b) {
          if (a == b || !ctx.items[a].has(attr) || !ctx.items[b].has(attr)) continue;
          const bool less = eval_true_false(ctx, ItemRef::ordinal(a), pred(attr, Op::less_than, ItemRef::ordinal(b)));
          const bool more = eval_true_false(ctx, ItemRef::ordinal(b), pred(attr, Op::more_than, ItemRef::ordinal(a)));
          EXPECT_EQ(less, more);
          EXPECT_NE(less, eval_true_false(ctx, ItemRef::ordinal(a), pred(attr, Op::more_than, ItemRef::ordinal(b))));
        }
  });
}

TEST(OracleProperty, Transitivity) {
  for_random_contexts(2, 400, [](const ReasoningContext& ctx, Rng&) {
    const auto n = ctx.items.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
          if (a == b || b == c || a == c) continue;
          if (!ctx.items[a].has("price") || !ctx.items[b].has("price") || !ctx.items[c].has("price")) continue;
          auto lt = [&](std::size_t x, std::size_t y) {
            return eval_true_false(ctx, ItemRef::ordinal(x), pred("price", Op::less_than, ItemRef::ordinal(y)));
          };
          if (lt(a, b) && lt(b, c)) EXPECT_TRUE(lt(a, c));
        }
  });
}

TEST(OracleProperty, SuperlativeBeatsEveryOtherCarrier) {
  for_random_contexts(3, 400, [](const ReasoningContext& ctx, Rng&) {
    for (auto op : {Op::min, Op::max}) {
      if (detail::carriers(ctx, "rating").empty()) continue;
      const auto best = resolve_superlative(ctx, "rating", direction_of(op), {});
      ASSERT_EQ(best.size(), 1u);
      for (std::size_t i = 0; i < ctx.items.size(); ++i) {
        if (!ctx.items[i].has("rating")) continue;
        EXPECT_EQ(eval_true_false(ctx, ItemRef::ordinal(i), pred("rating", op)), ctx.items[i].name == best[0]);
      }
    }
  });
}

// Extracted constraints, read as filters, match no item of the context.
TEST(OracleProperty, ExtractedConstraintsAreUnsatisfiable) {
  std::size_t checked = 0;
  for_random_contexts(4, 150, [&](const ReasoningContext& ctx, Rng& rng) {
    for (const auto& q : enumerate_applicable_queries(ctx, onto(), inv(), {}, rng)) {
      const auto g = derive_gold(onto(), ctx, q);
      const auto* cs = std::get_if<Constraints>(&g);
      if (!cs) continue;
      std::vector<Predicate> filters;
      for (const auto& c : cs->list) {
        const AttributeSpec& a = onto().attribute(c.attribute);
        Operand operand = a.numeric() ? Operand{lit(c.value)} : Operand{Category{c.value}};
        const Op op = c.relation == Relation::include     ? Op::include
                      : c.relation == Relation::exclude   ? Op::exclude
                      : c.relation == Relation::equal     ? Op::equal
                      : c.relation == Relation::less_than ? Op::less_than
                                                          : Op::more_than;
        filters.push_back({c.attribute, op, operand});
      }
      EXPECT_TRUE(filter_items(ctx, filters).empty()) << describe(q) << " -> " << emit_output(g);
      ++checked;
    }
  });
  EXPECT_GT(checked, 1000u);
}

TEST(OracleProperty, AgreesWithReferenceEvaluator) {
  std::size_t checked = 0;
  for_random_contexts(5, 200, [&](const ReasoningContext& ctx, Rng& rng) {
    for (const auto& q : enumerate_applicable_queries(ctx, onto(), inv(), {}, rng)) {
      ASSERT_EQ(gold(ctx, q), reference::answer(onto(), ctx, q)) << describe(q) << "\n" << ctx.full_text;
      ++checked;
    }
  });
  EXPECT_GT(checked, 5000u);
}

TEST(OracleProperty, TracesNameTheRule) {
  const auto t = derive_gold_traced(onto(), apples(), parse_query("Which one is the cheapest?", onto(), inv()));
  EXPECT_EQ(t.trace.rule, "superlative resolved in the context");
  ASSERT_FALSE(t.trace.notes.empty());
}
