#include <gtest/gtest.h>

#include "support.hpp"

using namespace corank;

namespace {

Mat2 numeric_height_hessian(const MapGermR4<double>& f, const Vec4& nu, double h = 1e-4) {
  auto height = [&](double x, double y) {
    double v = 0.0;
    for (int k = 0; k < 4; ++k) v += nu(k) * f[k].evaluate_double(x, y);
    return v;
  };
  Mat2 out;
  out(0, 0) = (height(h, 0) - 2 * height(0, 0) + height(-h, 0)) / (h * h);
  out(1, 1) = (height(0, h) - 2 * height(0, 0) + height(0, -h)) / (h * h);
  out(0, 1) = out(1, 0) =
      (height(h, h) - height(h, -h) - height(-h, h) + height(-h, -h)) / (4 * h * h);
  return out;
}

}  // namespace

TEST(FirstForm, Examples) {
  const auto ff = first_form(adapt(parse_map_germ("(x, x*y, y^2, y^5)")));
  EXPECT_EQ(ff.E, 1.0);
  EXPECT_EQ(ff.F, 0.0);
  EXPECT_EQ(ff.G, 0.0);
  const auto z = first_form(adapt(parse_map_germ("(x, 0, 0, 0)")));
  EXPECT_EQ(z.E, 1.0);
  EXPECT_EQ(z.F, 0.0);
  EXPECT_EQ(z.G, 0.0);
}

TEST(FirstForm, AdaptedGermsAgreeWithNumericDerivatives) {
  testsupport::RationalSource src(41);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = testsupport::germ_from_jet(testsupport::random_jet(src), 4, &src).cast<double>();
    const auto g = testsupport::transform(f, testsupport::random_linear2(src.rng()),
                                          testsupport::random_rotation4(src.rng()));
    const auto a = adapt(g);
    const auto [fx, fy] = testsupport::numeric_first_derivatives(a.germ);
    EXPECT_NEAR(fx.dot(fx), 1.0, 1e-8);
    EXPECT_NEAR(fx.dot(fy), 0.0, 1e-8);
    EXPECT_NEAR(fy.dot(fy), 0.0, 1e-8);
    const auto ff = first_form(a);
    EXPECT_NEAR(ff.E, 1.0, 1e-10);
    EXPECT_NEAR(ff.F, 0.0, 1e-10);
    EXPECT_NEAR(ff.G, 0.0, 1e-10);
  }
}

TEST(SecondForm, WorkedExampleMatrix) {
  const auto sf = second_form(adapt(parse_map_germ("(x, x*y, y^2, y^5)")));
  Mat3 expected;
  expected << 0, 1, 0, 0, 0, 2, 0, 0, 0;
  EXPECT_EQ(sf.values, expected);
  ASSERT_TRUE(sf.is_exact());
  EXPECT_EQ((*sf.exact)[1][2], 2);
  EXPECT_EQ(rank_second_form(sf), 2);
}

TEST(SecondForm, ZeroGerm) {
  const auto sf = second_form(adapt(parse_map_germ("(x, 0, 0, 0)")));
  EXPECT_EQ(sf.values, Mat3::Zero());
  EXPECT_EQ(rank_second_form(sf), 0);
}

TEST(SecondForm, OrbitOneNormalFormMatrix) {
  testsupport::RationalSource src(42);
  for (int trial = 0; trial < 10; ++trial) {
    const Rational b20 = src.any(), b11 = src.any(), b02 = src.any(), c20 = src.any();
    ParameterMap p{{"b20", b20}, {"b11", b11}, {"b02", b02}, {"c20", c20}};
    const auto g = parse_map_germ(
        "(x, x*y + x^3 - y^4, b20*x^2 + b11*x*y + b02*y^2 + x*y^2, c20*x^2 + y^3)", 6, p);
    const auto sf = second_form(adapt(g));
    const Mat3Q& q = *sf.exact;
    EXPECT_EQ(q[0], (Vec3Q{0, 1, 0}));
    EXPECT_EQ(q[1], (Vec3Q{2 * b20, b11, 2 * b02}));
    EXPECT_EQ(q[2], (Vec3Q{2 * c20, 0, 0}));
  }
}

TEST(SecondForm, RankExamples) {
  Mat3Q q{Vec3Q{0, 1, 0}, Vec3Q{2, 0, 2}, Vec3Q{2, 0, 0}};
  SecondForm sf;
  sf.exact = q;
  sf.values = to_eigen(q);
  EXPECT_EQ(rank_second_form(sf), 3);
  SecondForm numeric;
  numeric.values = sf.values;
  EXPECT_EQ(rank_second_form(numeric), 3);
}

TEST(SecondForm, IIAlongExamples) {
  const auto sf = second_form(adapt(parse_map_germ("(x, x*y, y^2, y^5)")));
  EXPECT_EQ(II_along(sf, Vec3::UnitY(), Vec2(0, 1), Vec2(0, 1)), 2.0);
  EXPECT_EQ(II_along(sf, Vec3(0.3, -1, 2), Vec2(0, 0), Vec2(1, 5)), 0.0);
}

TEST(SecondForm, IIAlongMatchesFiniteDifferences) {
  testsupport::RationalSource src(43);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = testsupport::germ_from_jet(testsupport::random_jet(src), 4, &src).cast<double>();
    const auto g = testsupport::transform(f, testsupport::random_linear2(src.rng()),
                                          testsupport::random_rotation4(src.rng()));
    const auto a = adapt(g);
    const auto sf = second_form(a);
    const Vec3 nu(n(src.rng()), n(src.rng()), n(src.rng()));
    const Vec2 u(n(src.rng()), n(src.rng()));
    const Vec2 v(n(src.rng()), n(src.rng()));
    const Mat2 h = numeric_height_hessian(a.germ, Vec4(0, nu(0), nu(1), nu(2)));
    EXPECT_NEAR(II_along(sf, nu, u, v), u.dot(h * v), 1e-6);
  }
}

TEST(SecondForm, CongruenceUnderSourceChange) {
  testsupport::RationalSource src(44);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = testsupport::germ_from_jet(testsupport::random_jet(src), 4, &src).cast<double>();
    const Mat2 j = testsupport::random_linear2(src.rng());
    const auto g = testsupport::transform(f, j, Mat4::Identity());
    NormalFrame axes = NormalFrame::Zero();
    axes.bottomRows<3>() = Mat3::Identity();
    const Mat3 s0 = second_form_in_frame(f, axes);
    const Mat3 s1 = second_form_in_frame(g, axes);
    for (int i = 0; i < 3; ++i) {
      Mat2 h;
      h << s0(i, 0), s0(i, 1), s0(i, 1), s0(i, 2);
      const Mat2 c = j.transpose() * h * j;
      EXPECT_NEAR(s1(i, 0), c(0, 0), 1e-12);
      EXPECT_NEAR(s1(i, 1), c(0, 1), 1e-12);
      EXPECT_NEAR(s1(i, 2), c(1, 1), 1e-12);
    }
  }
}
