#include <gtest/gtest.h>

#include "support.hpp"

using namespace corank;

namespace {

UmbilicResult kappa_of(const MapGermR4<Rational>& g) {
  return umbilic_curvature(build_parabola(second_form(adapt(g))));
}

UmbilicResult kappa_of(const MapGermR4<double>& g) {
  return umbilic_curvature(build_parabola(second_form(adapt(g))));
}

double independent_kappa(const ParabolaProfile& pp) {
  switch (pp.shape) {
    case Shape::NondegenerateParabola: return testsupport::gram_distance(pp.L, {pp.M, pp.N});
    case Shape::HalfLine: return testsupport::gram_distance(pp.L, {pp.N});
    case Shape::Line: return testsupport::gram_distance(pp.L, {pp.M});
    case Shape::Point: return pp.L.norm();
  }
  return -1.0;
}

}  // namespace

TEST(UmbilicCurvature, ZeroAndTwoPair) {
  const auto zero = kappa_of(parse_map_germ("(x, y^2, y^3, x^2*y)"));
  EXPECT_NEAR(zero.kappa_u, 0.0, 1e-10);
  EXPECT_EQ(zero.formula, UmbilicFormula::HalfLineDeterminant);
  const auto two = kappa_of(parse_map_germ("(x, (y^3+x)^2, (y^3+x)^3, (y^3+x)^2*y)"));
  EXPECT_NEAR(two.kappa_u, 2.0, 1e-10);
  EXPECT_EQ(two.formula, UmbilicFormula::PointDistance);
}

TEST(UmbilicCurvature, OrbitOneNormalForm) {
  testsupport::RationalSource src(71);
  for (int trial = 0; trial < 30; ++trial) {
    const Rational c20 = src.any();
    ParameterMap p{{"b20", src.any()}, {"b11", src.any()}, {"b02", src.nonzero()}, {"c20", c20}};
    const auto r = kappa_of(
        parse_map_germ("(x, x*y, b20*x^2 + b11*x*y + b02*y^2, c20*x^2 + x*y^3)", 6, p));
    EXPECT_EQ(r.formula, UmbilicFormula::NondegenerateProjection);
    EXPECT_NEAR(r.kappa_u, 2 * std::abs(to_double(c20)), 1e-12);
    EXPECT_NEAR(r.spread, 0.0, 1e-10);
  }
}

TEST(UmbilicCurvature, MatchesGramDeterminantDistance) {
  testsupport::RationalSource src(72);
  for (int trial = 0; trial < 300; ++trial) {
    const auto pp = build_parabola(second_form_from_jet(testsupport::random_jet(src)));
    const auto r = umbilic_curvature(pp);
    EXPECT_NEAR(r.kappa_u, independent_kappa(pp), 1e-9);
    EXPECT_NEAR(r.kappa_u, r.oracle_value, 1e-7);
    EXPECT_NEAR(r.kappa_u, r.alternative, 1e-10);
    EXPECT_LE(r.spread, 1e-10 * std::max(1.0, r.kappa_u));
    EXPECT_TRUE(kappa_stratum_check(pp, r));
  }
}

TEST(UmbilicCurvature, HalfLineFormulasAgree) {
  const auto pp = build_parabola(second_form(adapt(parse_map_germ("(x, x^2 + 2*x*y + y^2, x^2, 0)"))));
  ASSERT_EQ(pp.shape, Shape::HalfLine);
  for (double y : {-3.0, 0.5, 2.0, 7.0}) {
    EXPECT_NEAR(kappa_halfline_det(pp, y), kappa_halfline_cross(pp, y), 1e-12);
    EXPECT_NEAR(kappa_halfline_det(pp, y), independent_kappa(pp), 1e-12);
  }
}

TEST(UmbilicCurvature, FrameIndependence) {
  testsupport::RationalSource src(73);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = testsupport::germ_from_jet(testsupport::random_jet(src), 4, &src);
    const double k0 = kappa_of(f).kappa_u;
    const auto fd = f.cast<double>();
    const double rotated =
        kappa_of(testsupport::rotate_normal(fd, testsupport::random_rotation3(src.rng()))).kappa_u;
    const double flipped = kappa_of(testsupport::flip_y(fd)).kappa_u;
    EXPECT_NEAR(rotated, k0, 1e-10);
    EXPECT_NEAR(flipped, k0, 1e-10);
  }
}

TEST(KappaStratum, Examples) {
  ParameterMap p{{"c", Rational(1)}};
  const auto pp = build_parabola(second_form(adapt(parse_map_germ("(x, x*y, y^2, c*x^2)", 6, p))));
  const auto r = umbilic_curvature(pp);
  EXPECT_EQ(pp.stratum, 3);
  EXPECT_NEAR(r.kappa_u, 2.0, 1e-12);
  EXPECT_TRUE(kappa_stratum_check(pp, r));

  const auto z = build_parabola(second_form(adapt(parse_map_germ("(x, 0, 0, 0)"))));
  EXPECT_EQ(z.stratum, 0);
  EXPECT_EQ(umbilic_curvature(z).kappa_u, 0.0);
  EXPECT_TRUE(kappa_stratum_check(z, umbilic_curvature(z)));

  const auto q = build_parabola(second_form(adapt(parse_map_germ("(x, x^2, 0, 0)"))));
  EXPECT_EQ(q.stratum, 1);
  EXPECT_EQ(umbilic_curvature(q).kappa_u, 2.0);
  EXPECT_TRUE(kappa_stratum_check(q, umbilic_curvature(q)));

  UmbilicResult wrong = umbilic_curvature(q);
  wrong.kappa_u = 0.0;
  EXPECT_FALSE(kappa_stratum_check(q, wrong));
}

TEST(KappaFromSecondForm, EqualsProjectionOnEpNormal) {
  const auto sf = second_form(adapt(parse_map_germ("(x, x*y, x^2 + y^2, 3*x^2)")));
  const auto pp = build_parabola(sf);
  for (double y : {-1.0, 0.0, 2.0}) {
    EXPECT_NEAR(kappa_from_second_form(sf, pp.ep.normal, y), 6.0, 1e-12);
  }
  EXPECT_EQ(to_string(UmbilicFormula::HalfLineDeterminant), "halfline_det");
}
