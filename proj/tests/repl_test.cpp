#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace ctxreason;
using testing_support::inv;
using testing_support::onto;

TEST(Repl, SampleAndAsk) {
  Session s(onto(), inv(), 7);
  const auto shown = s.handle(":new k=2");
  EXPECT_EQ(s.context().items.size(), 2u);
  EXPECT_NE(shown.text.find("second: "), std::string::npos);
  const auto r = s.handle("Which one is the cheapest?");
  EXPECT_TRUE(r.text.rfind("inform ", 0) == 0 || r.text.rfind("less-than price", 0) == 0) << r.text;
}

TEST(Repl, HandBuiltContext) {
  Session s(onto(), inv(), 7);
  s.handle(":item Honeycrisp Apple|apple|price=3.99|rating=4.5|diet=organic");
  s.handle(":item Organic Gala Apple|apple|price=2.49|rating=4.3|diet=organic");
  EXPECT_EQ(s.handle("Is the second one more popular?").text, "inform false");
  EXPECT_EQ(s.handle("Add the highest rated one to my cart.").text, "select Honeycrisp Apple");
  EXPECT_EQ(s.handle("blorp wibble").text, "NoAnswer");
  EXPECT_EQ(s.handle("Is the fifth one cheaper than $2?").text.rfind("error: ", 0), 0u);
}

TEST(Repl, TraceToggle) {
  Session s(onto(), inv(), 7);
  s.handle(":item Fuji Apple|apple|price=1.89");
  EXPECT_EQ(s.handle(":trace").text, "trace on");
  const auto r = s.handle("Which one is the cheapest?").text;
  EXPECT_NE(r.find("rule: "), std::string::npos);
  EXPECT_NE(r.find("template: which"), std::string::npos);
  EXPECT_EQ(s.handle(":trace").text, "trace off");
}

TEST(Repl, Commands) {
  Session s(onto(), inv(), 7);
  EXPECT_TRUE(s.handle(":quit").quit);
  EXPECT_TRUE(s.handle(":q").quit);
  EXPECT_FALSE(s.handle(":help").quit);
  EXPECT_EQ(s.handle(":show").text, "(empty context)");
  EXPECT_EQ(s.handle(":new k=99").text.rfind("error: ", 0), 0u);
  EXPECT_EQ(s.handle(":new bogus").text.rfind("error: ", 0), 0u);
  EXPECT_EQ(s.handle(":item nonsense").text.rfind("error: ", 0), 0u);
  EXPECT_EQ(s.handle(":frobnicate").text.rfind("unknown command", 0), 0u);
  s.handle(":new k=3 case=III");
  EXPECT_EQ(s.context().items.size(), 3u);
  EXPECT_EQ(s.handle(":clear").text, "context cleared");
  EXPECT_TRUE(s.context().items.empty());
  EXPECT_EQ(s.handle("").text, "");
}

TEST(Repl, SameSeedSameContexts) {
  Session a(onto(), inv(), 11), b(onto(), inv(), 11);
  EXPECT_EQ(a.handle(":new k=4 case=II").text, b.handle(":new k=4 case=II").text);
}
