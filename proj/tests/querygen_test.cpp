#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace ctxreason;
using testing_support::inv;
using testing_support::lit;
using testing_support::onto;
using testing_support::pred;

namespace {

QuerySemantics parse(const std::string& s) { return parse_query(s, onto(), inv()); }

const std::array<Catalog, 3>& catalogs() {
  static const auto c = build_split_catalogs(onto(), {3000, 1, 1}, 31);
  return c;
}

}  // namespace

TEST(QueryParse, SelectCheapest) {
  const auto q = parse("Add the cheapest to my cart.");
  EXPECT_EQ(q.action, Action::select);
  ASSERT_EQ(q.predicates.size(), 1u);
  EXPECT_EQ(q.predicates[0], pred("price", Op::min));
  EXPECT_EQ(parse("add the cheapest one to my cart"), q);
}

TEST(QueryParse, NegatedWish) {
  const auto q = parse("I don't want sweet mango.");
  EXPECT_EQ(q.action, Action::inform_open);
  ASSERT_EQ(q.predicates.size(), 1u);
  EXPECT_EQ(q.predicates[0].op, Op::exclude);
  EXPECT_EQ(q.predicates[0], pred("flavor", Op::exclude, Category{"sweet mango"}));
}

TEST(QueryParse, NegatedDiet) {
  const auto q = parse("I don't want anything vegan.");
  ASSERT_EQ(q.predicates.size(), 1u);
  EXPECT_EQ(q.predicates[0], pred("diet", Op::exclude, Category{"vegan"}));
}

TEST(QueryParse, SpokenComparative) {
  const auto q = parse("I want something cheaper than five dollars.");
  EXPECT_TRUE(q.spoken);
  ASSERT_EQ(q.predicates.size(), 1u);
  EXPECT_EQ(q.predicates[0], pred("price", Op::less_than, lit("5")));
  const auto cents = parse("Anything cheaper than three dollars fifty?");
  ASSERT_EQ(cents.predicates.size(), 1u);
  EXPECT_EQ(cents.predicates[0], pred("price", Op::less_than, lit("3.50")));
}

TEST(QueryParse, DigitsKeepTheirText) {
  const auto q = parse("Show me something vegan and cheaper than $5.");
  ASSERT_EQ(q.predicates.size(), 2u);
  EXPECT_EQ(q.predicates[0], pred("diet", Op::include, Category{"vegan"}));
  EXPECT_EQ(q.predicates[1], pred("price", Op::less_than, lit("5")));
  EXPECT_FALSE(q.spoken);
  EXPECT_EQ(parse("Show me something cheaper than $5.00.").predicates[0].literal()->text, "5.00");
}

TEST(QueryParse, TrueFalseQuestions) {
  const auto q = parse("Is the second one more popular?");
  EXPECT_EQ(q.action, Action::inform_tf);
  ASSERT_TRUE(q.subject);
  EXPECT_EQ(*q.subject, ItemRef::ordinal(1));
  EXPECT_EQ(q.predicates[0], pred("rating", Op::more_than, ContextRelative{}));

  const auto named = parse("Is Fuji Apple cheaper than the first one?");
  EXPECT_EQ(*named.subject, ItemRef::named("Fuji Apple"));
  EXPECT_EQ(named.predicates[0], pred("price", Op::less_than, ItemRef::ordinal(0)));

  const auto verb = parse("Does the third one cost less than $2?");
  EXPECT_EQ(verb.action, Action::inform_tf);
  EXPECT_EQ(verb.predicates[0], pred("price", Op::less_than, lit("2")));
}

TEST(QueryParse, UnrecognizedFallsBackToNoReason) {
  EXPECT_EQ(parse("Please repeat."), no_reason_query());
  EXPECT_EQ(parse("colourless green ideas sleep furiously"), no_reason_query());
  EXPECT_EQ(parse(""), no_reason_query());
  EXPECT_EQ(parse_query_detailed("Please repeat.", onto(), inv()).family, "no_reason");
  EXPECT_EQ(parse_query_detailed("zzz", onto(), inv()).family, "");
}

TEST(QueryRealize, SpokenNumeralsAreWords) {
  QuerySemantics q{Action::inform_open, std::nullopt, {pred("price", Op::less_than, lit("3.50"))}, true};
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto s = realize_surface(q, onto(), inv(), rng);
    EXPECT_EQ(s.find('$'), std::string::npos) << s;
    EXPECT_NE(s.find("three dollars fifty"), std::string::npos) << s;
    EXPECT_EQ(parse(s), q) << s;
  }
}

TEST(QueryRealize, EveryFamilyVariationIsReachable) {
  QuerySemantics q{Action::inform_open, std::nullopt, {pred("diet", Op::include, Category{"vegan"})}, false};
  std::set<std::string> seen;
  Rng rng(2);
  for (int i = 0; i < 400; ++i) seen.insert(realize_surface(q, onto(), inv(), rng));
  std::size_t expected = 0;
  for (const auto& f : inv().families)
    if (family_accepts(onto(), f, q)) expected += f.variations.size();
  EXPECT_GE(seen.size(), expected);
}

TEST(QueryEnumerate, EmptyContextHasNoAnswerableQueries) {
  Rng rng(3);
  const auto ctx = testing_support::context_of({});
  const auto qs = enumerate_applicable_queries(ctx, onto(), inv(), {}, rng);
  ASSERT_FALSE(qs.empty());
  EXPECT_EQ(qs.front(), no_reason_query());
  for (std::size_t i = 1; i < qs.size(); ++i) {
    EXPECT_NE(qs[i].action, Action::inform_tf);
    EXPECT_FALSE(qs[i].has_superlative());
    EXPECT_TRUE(std::holds_alternative<Constraints>(derive_gold(onto(), ctx, qs[i]))) << describe(qs[i]);
  }
}

// Realize then parse recovers the semantics, over many random contexts.
TEST(QueryEnumerate, RoundTripProperty) {
  Rng rng(4);
  std::size_t checked = 0;
  for (int n = 0; n < 60; ++n) {
    const std::size_t k = rng.uniform(6);
    const auto ctx = assemble_context(onto(), sample_context_items(catalogs()[0], k, rng), ContextCase::I, rng);
    QuerySettings s;
    s.category_pools = &catalogs()[0].pools;
    for (auto q : enumerate_applicable_queries(ctx, onto(), inv(), s, rng)) {
      if (q.action == Action::no_reason) continue;
      q.spoken = q.has_numeral() && rng.chance(0.5);
      const auto surface = realize_surface(q, onto(), inv(), rng);
      ASSERT_EQ(parse(surface), q) << surface << " / " << describe(q);
      ++checked;
    }
  }
  EXPECT_GT(checked, 1000u);
}

TEST(QueryEnumerate, SampleQueryHonoursTarget) {
  Rng rng(5);
  QuerySettings s;
  for (int n = 0; n < 300; ++n) {
    const auto ctx = assemble_context(onto(), sample_context_items(catalogs()[0], 1 + rng.uniform(5), rng),
                                      ContextCase::I, rng);
    const QueryTarget target{1 + rng.uniform(2), rng.chance(0.5)};
    for (int tries = 0; tries < 24; ++tries) {
      auto q = sample_query(onto(), ctx, inv(), s, target, rng);
      if (!q) continue;
      EXPECT_EQ(q->attributes().size(), target.num_attributes);
      EXPECT_EQ(std::holds_alternative<Constraints>(derive_gold(onto(), ctx, *q)), target.extract);
      break;
    }
  }
}

TEST(QueryValidate, RejectsMalformedSemantics) {
  EXPECT_THROW(validate_query(onto(), {Action::inform_open, std::nullopt, {pred("weight", Op::min)}, false}),
               ValidationError);
  EXPECT_THROW(validate_query(onto(), {Action::inform_open, std::nullopt, {pred("diet", Op::min)}, false}),
               ValidationError);
  EXPECT_THROW(validate_query(onto(), {Action::inform_tf, std::nullopt, {pred("price", Op::min)}, false}),
               ValidationError);
  EXPECT_THROW(validate_query(onto(), {Action::inform_open, std::nullopt,
                                       {pred("price", Op::min), pred("price", Op::max), pred("diet", Op::include, Category{"vegan"})},
                                       false}),
               ValidationError);
}
