#include <gtest/gtest.h>

#include "reflecto/errors.hpp"
#include "reflecto/rational.hpp"
#include "support.hpp"

namespace reflecto {
namespace {

TEST(RatParse, Examples) {
  EXPECT_EQ(rat_parse("1/3"), Rational(1, 3));
  EXPECT_EQ(rat_parse("0"), Rational(0));
  EXPECT_EQ(rat_parse("0").denominator(), 1);
  EXPECT_EQ(rat_parse("-6/4"), Rational(-3, 2));
  EXPECT_EQ(rat_parse("-6/4").to_string(), "-3/2");
  EXPECT_EQ(rat_parse("42"), Rational(42));
}

TEST(RatParse, RejectsMalformed) {
  for (const char* bad : {"", "1/", "/2", "1/0", "1.5", "a", "1/-2", "+1", " 1", "1//2", "--1"}) {
    EXPECT_THROW(rat_parse(bad), ParseError) << bad;
  }
}

TEST(RatParse, CanonicalStringsRoundTrip) {
  testing::Gen gen(11);
  for (int n = 0; n < 500; ++n) {
    const Rational r = gen.signed_small(1000) / gen.positive();
    const std::string text = r.to_string();
    EXPECT_EQ(rat_parse(text).to_string(), text);
    EXPECT_EQ(rat_parse(text), r);
  }
}

TEST(RatParse, BigValues) {
  const std::string big = "123456789012345678901234567891/1024";
  EXPECT_EQ(rat_parse(big).to_string(), big);
}

TEST(Rational, Arithmetic) {
  const Rational a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - b, Rational(1, 6));
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_EQ(-a, Rational(-1, 3));
  EXPECT_THROW(a / Rational(0), Error);
  EXPECT_LT(b, a);
  EXPECT_EQ(abs(Rational(-5, 2)), Rational(5, 2));
  EXPECT_THROW(Rational(1, 0), ParseError);
}

TEST(Rational, ParseList) {
  const RatVector v = parse_rational_list("1, 2/4,-3");
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[1], Rational(1, 2));
  EXPECT_EQ(to_strings(v), (std::vector<std::string>{"1", "1/2", "-3"}));
  EXPECT_THROW(parse_rational_list("1,,2"), ParseError);
}

}  // namespace
}  // namespace reflecto
