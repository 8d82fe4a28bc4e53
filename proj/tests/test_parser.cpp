#include <gtest/gtest.h>

#include "support.hpp"

using namespace corank;
using testsupport::NaivePoly;

TEST(ParseMapGerm, WorkedExampleCoefficients) {
  const auto g = parse_map_germ("(x, x*y, y^2, y^5)", 6);
  EXPECT_EQ(g[0].terms().size(), 1u);
  EXPECT_EQ(g[0].coeff(1, 0), 1);
  EXPECT_EQ(g[1].terms().size(), 1u);
  EXPECT_EQ(g[1].coeff(1, 1), 1);
  EXPECT_EQ(g[2].terms().size(), 1u);
  EXPECT_EQ(g[2].coeff(0, 2), 1);
  EXPECT_EQ(g[3].terms().size(), 1u);
  EXPECT_EQ(g[3].coeff(0, 5), 1);
}

TEST(ParseMapGerm, ZeroComponents) {
  const auto g = parse_map_germ("(x, 0, 0, 0)", 2);
  EXPECT_EQ(g.order(), 2);
  EXPECT_EQ(g[0], PolyQ::var(Var::x, 2));
  for (int k = 1; k < 4; ++k) EXPECT_TRUE(g[k].is_zero());
}

TEST(ParseMapGerm, ExpansionMatchesIndependentRoutine) {
  const auto g = parse_map_germ("(x, (y^3+x)^2, (y^3+x)^3, (y^3+x)^2*y)", 6);
  const NaivePoly base{{{0, 3}, Rational(1)}, {{1, 0}, Rational(1)}};
  const NaivePoly y{{{0, 1}, Rational(1)}};
  EXPECT_TRUE(testsupport::matches_truncated(g[1], testsupport::naive_pow(base, 2)));
  EXPECT_TRUE(testsupport::matches_truncated(g[2], testsupport::naive_pow(base, 3)));
  EXPECT_TRUE(testsupport::matches_truncated(
      g[3], testsupport::naive_mul(testsupport::naive_pow(base, 2), y)));
  EXPECT_EQ(g[1], parse_poly("x^2 + 2*x*y^3 + y^6", 6));
}

TEST(ParseMapGerm, Literals) {
  EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(parse_rational("-1.25"), Rational(-5, 4));
  EXPECT_EQ(parse_rational("0.5/2"), Rational(1, 4));
  const auto g = parse_map_germ("(x, -x*y + 1/2*y^2, 2.5*x^2, -(x - y)^2)", 4);
  EXPECT_EQ(g[1].coeff(1, 1), -1);
  EXPECT_EQ(g[1].coeff(0, 2), Rational(1, 2));
  EXPECT_EQ(g[2].coeff(2, 0), Rational(5, 2));
  EXPECT_EQ(g[3], parse_poly("-x^2 + 2*x*y - y^2", 4));
}

TEST(ParseMapGerm, LeadingZerosAreDecimal) {
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("0.99"), Rational(99, 100));
  EXPECT_EQ(parse_rational("-1.01"), Rational(-101, 100));
  EXPECT_EQ(parse_rational("007/010"), Rational(7, 10));
  EXPECT_EQ(parse_rational("0.0"), Rational(0));
  EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
}

TEST(ParseMapGerm, NamedParameters) {
  ParameterMap params{{"t", Rational(-3, 2)}};
  const auto g = parse_map_germ("(x, x*y, t*x^2 + y^2, 0)", 6, params);
  EXPECT_EQ(g[2].coeff(2, 0), Rational(-3, 2));
  EXPECT_THROW(parse_map_germ("(x, x*y, t*x^2 + y^2, 0)", 6), ParseError);
}

TEST(ParseMapGerm, TruncatesAboveOrder) {
  const auto g = parse_map_germ("(x, x*y + y^7, y^2, x^3*y^4)", 6);
  EXPECT_EQ(g[1].coeff(0, 7), 0);
  EXPECT_TRUE(g[3].is_zero());
}

TEST(ParseMapGerm, ErrorsCarryPositions) {
  try {
    parse_map_germ("(x, x*y, y^2, z)");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 14u);
  }
  EXPECT_THROW(parse_map_germ("(x, x*y, y^2)"), ParseError);
  EXPECT_THROW(parse_map_germ("(x, x*y, y^2, 0"), ParseError);
  EXPECT_THROW(parse_map_germ("(x, x*y, y^2, 0) junk"), ParseError);
  EXPECT_THROW(parse_map_germ("(x, x*y, y^, 0)"), ParseError);
  EXPECT_THROW(parse_map_germ("(x, x/0, y^2, 0)"), ParseError);
  EXPECT_THROW(parse_map_germ("(x, 1/0, y^2, 0)"), ParseError);
  EXPECT_THROW(parse_map_germ("(x, x*y, y^2, 0)", 1), InputError);
}

TEST(ParseMapGerm, ConstantTermIsInputError) {
  EXPECT_THROW(parse_map_germ("(x + 1, x*y, y^2, 0)"), InputError);
}

TEST(ParseMapGerm, RoundTripThroughText) {
  testsupport::RationalSource src(21);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = testsupport::germ_from_jet(testsupport::random_jet(src), 5, &src);
    EXPECT_EQ(parse_map_germ(g.to_string(), 5), g) << g.to_string();
  }
}

TEST(ExtractJet2, Examples) {
  const auto j = extract_jet2(parse_map_germ("(x, x*y, y^2, 0)"));
  EXPECT_EQ(j.a11, 1);
  EXPECT_EQ(j.b02, 1);
  EXPECT_EQ(j.a20, 0);
  EXPECT_EQ(j.a02, 0);
  EXPECT_EQ(j.b20, 0);
  EXPECT_EQ(j.b11, 0);
  EXPECT_EQ(j.c20, 0);
  EXPECT_EQ(j.c11, 0);
  EXPECT_EQ(j.c02, 0);

  const auto z = extract_jet2(parse_map_germ("(x, 0, 0, 0)"));
  for (const auto& v : {z.x2(), z.xy(), z.y2()})
    for (const auto& c : v) EXPECT_EQ(c, 0);

  const auto u = extract_jet2(parse_map_germ("(x, (y^3+x)^2, (y^3+x)^3, (y^3+x)^2*y)", 6));
  EXPECT_EQ(u.a20, 1);
  for (const auto& c : {u.a11, u.a02, u.b20, u.b11, u.b02, u.c20, u.c11, u.c02}) EXPECT_EQ(c, 0);
}

TEST(ExtractJet2, RequiresPrenormal) {
  EXPECT_THROW(extract_jet2(parse_map_germ("(x + y^2, x*y, y^2, 0)")), PreconditionError);
  EXPECT_TRUE(is_prenormal(parse_map_germ("(x, x*y, y^2, y^5)")));
  EXPECT_FALSE(is_prenormal(parse_map_germ("(y, x*y, y^2, 0)")));
}
