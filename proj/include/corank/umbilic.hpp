#ifndef CORANK_UMBILIC_HPP_
#define CORANK_UMBILIC_HPP_

#include <array>
#include <cmath>
#include <string>

#include "corank/forms.hpp"
#include "corank/linalg.hpp"
#include "corank/oracle.hpp"
#include "corank/parabola.hpp"
#include "corank/tolerances.hpp"

namespace corank {

enum class UmbilicFormula { NondegenerateProjection, HalfLineDeterminant, PointDistance };

inline std::string to_string(UmbilicFormula f) {
  switch (f) {
    case UmbilicFormula::NondegenerateProjection: return "nondegenerate_proj";
    case UmbilicFormula::HalfLineDeterminant: return "halfline_det";
    case UmbilicFormula::PointDistance: return "point_distance";
  }
  return "?";
}

struct UmbilicResult {
  double kappa_u = 0.0;
  UmbilicFormula formula = UmbilicFormula::PointDistance;
  double oracle_value = 0.0;  // distance from the origin to the sampled affine hull
  double evaluation_y = 0.0;
  double alternative = 0.0;   // second closed form of the same corollary
  double spread = 0.0;        // variation of the formula over several parameters
};

namespace detail {

/// Embeds normal-frame coordinates into R^4 with the tangent e = e_0.
inline Vec4 lift(const Vec3& v) {
  Vec4 w;
  w << 0.0, v;
  return w;
}

inline double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
  Mat4 m;
  m << a, b, c, d;
  return m.determinant();
}

inline double pick_eval_parameter(const ParabolaProfile& pp) {
  double y = pp.shape == Shape::HalfLine ? pp.vertex_param + 1.0 : 0.0;
  for (int tries = 0; tries < 8 && pp.eta_prime(y).norm() < 1e-12; ++tries) y += 1.0;
  return y;
}

}  // namespace detail

/// |det(e, eta(y), eta'(y), nu3)| / |eta'(y)| for a half-line or line.
inline double kappa_halfline_det(const ParabolaProfile& pp, double y) {
  const Vec4 e = Vec4::UnitX();
  return std::abs(detail::det4(e, detail::lift(pp.eta(y)), detail::lift(pp.eta_prime(y)),
                               detail::lift(pp.ep.normal))) /
         pp.eta_prime(y).norm();
}

/// |e x eta(y) x eta'(y)| / |eta'(y)| with the ternary cross product of R^4.
inline double kappa_halfline_cross(const ParabolaProfile& pp, double y) {
  const Vec4 w = cross4(Vec4::UnitX(), detail::lift(pp.eta(y)), detail::lift(pp.eta_prime(y)));
  return w.norm() / pp.eta_prime(y).norm();
}

inline UmbilicResult umbilic_curvature(const ParabolaProfile& pp, const Tolerances& tol = {}) {
  UmbilicResult r;
  switch (pp.shape) {
    case Shape::NondegenerateParabola: {
      r.formula = UmbilicFormula::NondegenerateProjection;
      r.kappa_u = std::abs(pp.eta(0.0).dot(pp.ep.normal));
      double lo = r.kappa_u;
      double hi = r.kappa_u;
      for (double y : {-1.0, 1.0}) {
        const double v = std::abs(pp.eta(y).dot(pp.ep.normal));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      r.spread = hi - lo;
      r.alternative = r.kappa_u;
      break;
    }
    case Shape::HalfLine:
    case Shape::Line: {
      r.formula = UmbilicFormula::HalfLineDeterminant;
      r.evaluation_y = detail::pick_eval_parameter(pp);
      r.kappa_u = kappa_halfline_det(pp, r.evaluation_y);
      r.alternative = kappa_halfline_cross(pp, r.evaluation_y);
      double lo = r.kappa_u;
      double hi = r.kappa_u;
      for (double dy : {1.0, 2.0}) {
        const double y = r.evaluation_y + dy;
        if (pp.eta_prime(y).norm() < 1e-12) continue;
        const double v = kappa_halfline_det(pp, y);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      r.spread = hi - lo;
      break;
    }
    case Shape::Point:
      r.formula = UmbilicFormula::PointDistance;
      r.kappa_u = pp.vertex_is_origin ? 0.0 : pp.L.norm();
      r.alternative = r.kappa_u;
      break;
  }
  r.oracle_value = affine_hull_distance(sample_eta(pp, -2.0, 2.0, 101), tol.eps_rank);
  return r;
}

/// |II_nu(u, u)| / I(u, u) with u = (1, y), which for a prenormal germ is |<eta(y), nu>|.
inline double kappa_from_second_form(const SecondForm& sf, const Vec3& nu, double y) {
  const Vec2 u(1.0, y);
  return std::abs(II_along(sf, nu, u, u)) / (u.x() * u.x());
}

/// The three equivalences between the stratum and kappa_u != 0.
inline bool kappa_stratum_check(const ParabolaProfile& pp, const UmbilicResult& ur,
                                const Tolerances& tol = {}) {
  const double scale = std::max({1.0, pp.L.norm(), pp.M.norm(), pp.N.norm()});
  const bool nonzero = ur.kappa_u > tol.eps_rank * scale;
  switch (pp.shape) {
    case Shape::NondegenerateParabola: return (pp.stratum == 3) == nonzero;
    case Shape::HalfLine:
    case Shape::Line: return (pp.stratum == 2) == nonzero;
    case Shape::Point: return (pp.stratum == 1) == nonzero;
  }
  return false;
}

}  // namespace corank

#endif  // CORANK_UMBILIC_HPP_
