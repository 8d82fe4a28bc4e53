#include <gtest/gtest.h>

#include <numbers>

#include "support.hpp"

using namespace corank;

TEST(CheckCorank, Examples) {
  EXPECT_EQ(check_corank(parse_map_germ("(x, x*y, y^2, y^5)")), 1);
  EXPECT_EQ(check_corank(parse_map_germ("(x, y, 0, 0)")), 2);
  EXPECT_EQ(check_corank(parse_map_germ("(x^2, x*y, y^2, 0)")), 0);
  EXPECT_EQ(check_corank(parse_map_germ("(x, x*y, y^2, y^5)").cast<double>()), 1);
}

TEST(Adapt, WorkedExampleIsIdentity) {
  const auto a = adapt(parse_map_germ("(x, x*y, y^2, y^5)"));
  EXPECT_TRUE(a.identity);
  EXPECT_TRUE(a.exactness_flag());
  EXPECT_EQ(a.tangent, Vec4::UnitX());
  Eigen::Matrix<double, 4, 3> expected = Eigen::Matrix<double, 4, 3>::Zero();
  expected(1, 0) = expected(2, 1) = expected(3, 2) = 1.0;
  EXPECT_EQ(a.normal_frame, expected);
  EXPECT_EQ(*a.exact, parse_map_germ("(x, x*y, y^2, y^5)"));
}

TEST(Adapt, ZeroNormalPartIsIdentity) {
  const auto a = adapt(parse_map_germ("(x, 0, 0, 0)", 2));
  EXPECT_TRUE(a.identity);
  EXPECT_EQ(a.tangent, Vec4::UnitX());
}

TEST(Adapt, RejectsWrongCorank) {
  EXPECT_THROW(adapt(parse_map_germ("(x, y, 0, 0)")), PreconditionError);
  EXPECT_THROW(adapt(parse_map_germ("(x^2, x*y, y^2, 0)")), PreconditionError);
  EXPECT_THROW(adapt(parse_map_germ("(x, y, 0, 0)").cast<double>()), PreconditionError);
}

TEST(Adapt, ExactRouteWhenTangentOnFirstAxis) {
  const auto f = parse_map_germ("(x + y + y^2, x*y, y^2, x^3)", 5);
  const auto a = adapt(f);
  ASSERT_TRUE(a.exactness_flag());
  EXPECT_FALSE(a.identity);
  EXPECT_TRUE(is_prenormal(*a.exact, 0.0));
  const auto& s = *a.source_change.exact_series;
  for (int k = 0; k < 4; ++k) {
    EXPECT_EQ(f[k].compose(s[0], s[1]), (*a.exact)[k]) << k;
  }
}

TEST(Adapt, RotatedGermKeepsOrbit) {
  const auto f = parse_map_germ("(x, x*y, y^2, 0)", 5).cast<double>();
  std::mt19937_64 rng(31);
  const double c = std::cos(std::numbers::pi / 6);
  const double s = std::sin(std::numbers::pi / 6);
  Mat2 rot;
  rot << c, -s, s, c;
  for (int trial = 0; trial < 10; ++trial) {
    const Mat4 r = testsupport::random_rotation4(rng);
    const auto g = testsupport::transform(f, rot, r);
    const auto a = adapt(g);
    EXPECT_FALSE(a.exactness_flag());
    EXPECT_EQ(classify_two_jet(extract_jet2(a.germ)), Orbit::XY_Y2);
  }
}

TEST(Adapt, WitnessesReconstructTwoJetAndFrameIsOrthonormal) {
  testsupport::RationalSource src(32);
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = testsupport::germ_from_jet(testsupport::random_jet(src), 4, &src).cast<double>();
    const auto g = testsupport::transform(f, testsupport::random_linear2(src.rng()),
                                          testsupport::random_rotation4(src.rng()));
    const auto a = adapt(g);
    EXPECT_LE(frame_orthonormality_error(a), 1e-10);
    const auto rec = reconstruct(a, g);
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i <= 2; ++i)
        for (int j = 0; i + j <= 2; ++j)
          EXPECT_NEAR(rec[k].coeff(i, j), a.germ[k].coeff(i, j), 1e-9);
  }
}

TEST(Adapt, IsIdempotentOnPrenormalOutput) {
  testsupport::RationalSource src(33);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = testsupport::germ_from_jet(testsupport::random_jet(src), 4, &src).cast<double>();
    const auto g = testsupport::transform(f, testsupport::random_linear2(src.rng()),
                                          testsupport::random_rotation4(src.rng()));
    const auto once = adapt(g);
    const auto twice = adapt(once.germ);
    EXPECT_TRUE(twice.identity);
    for (int k = 0; k < 4; ++k)
      for (const auto& [m, c] : once.germ[k].terms())
        EXPECT_NEAR(twice.germ[k].coeff(m.i, m.j), c, 1e-12);
  }
}

TEST(Adapt, TangentSpansImageOfDifferential) {
  const auto g = parse_map_germ("(x + 2*y, 3*x + 6*y + x*y, y^2, x^2)").cast<double>();
  const auto a = adapt(g);
  const Vec4 w = Vec4(1, 3, 0, 0).normalized();
  EXPECT_NEAR(std::abs(a.tangent.dot(w)), 1.0, 1e-12);
  EXPECT_LE((a.normal_frame.transpose() * w).norm(), 1e-12);
}
