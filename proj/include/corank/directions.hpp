#ifndef CORANK_DIRECTIONS_HPP_
#define CORANK_DIRECTIONS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "corank/adapted_frame.hpp"
#include "corank/error.hpp"
#include "corank/forms.hpp"
#include "corank/linalg.hpp"
#include "corank/parabola.hpp"
#include "corank/tolerances.hpp"

namespace corank {

enum class PointType { Elliptic, Hyperbolic, Parabolic, Inflection };

inline std::string to_string(PointType t) {
  switch (t) {
    case PointType::Elliptic: return "elliptic";
    case PointType::Hyperbolic: return "hyperbolic";
    case PointType::Parabolic: return "parabolic";
    case PointType::Inflection: return "inflection";
  }
  return "?";
}

/// Asymptotic directions u = (1, y), plus u = (0, 1) for y_inf.
struct AsymptoticSet {
  bool all = false;
  std::vector<double> finite;  // ascending
  bool has_infinity = false;
  std::array<double, 3> q{0.0, 0.0, 0.0};  // Q(y) = q0 + q1 y + q2 y^2
  double discriminant = 0.0;
  bool exact = false;

  /// Number of directions, or -1 for all of them.
  int count() const {
    if (all) return -1;
    return static_cast<int>(finite.size()) + (has_infinity ? 1 : 0);
  }
  double quadratic(double y) const { return q[0] + q[1] * y + q[2] * y * y; }

  /// Unit tangent vectors of the finite set, y_inf last.
  std::vector<Vec2> directions() const {
    std::vector<Vec2> out;
    for (double y : finite) out.push_back(Vec2(1.0, y).normalized());
    if (has_infinity) out.push_back(Vec2(0.0, 1.0));
    return out;
  }
};

struct Binormal {
  Vec3 nu = Vec3::Zero();  // unit, normal-frame coordinates
  double y = 0.0;
  bool at_infinity = false;

  Vec2 tangent() const { return at_infinity ? Vec2(0.0, 1.0) : Vec2(1.0, y); }
};

struct BinormalSet {
  bool all = false;
  std::vector<Binormal> items;

  int count() const { return all ? -1 : static_cast<int>(items.size()); }
};

/// Q(y) in E_p coordinates: the 2x2 minors of the projected second form.
inline std::array<double, 3> asymptotic_quadratic(const ParabolaProfile& pp) {
  const Vec3& n = pp.ep.normal;
  return {n.dot(pp.L.cross(pp.M)), n.dot(pp.L.cross(pp.N)), n.dot(pp.M.cross(pp.N))};
}

/// det(pi(eta(y)), pi(eta'(y))), which equals 2 Q(y).
inline double collinearity_determinant(const ParabolaProfile& pp, double y) {
  const Vec3 a = pp.eta(y);
  const Vec3 b = pp.eta_prime(y);
  return pp.ep.normal.dot(a.cross(b));
}

namespace detail {

inline std::vector<double> quadratic_roots(double q0, double q1, double q2, int sign) {
  if (sign < 0) return {};
  if (sign == 0) return {-q1 / (2.0 * q2)};
  const double disc = q1 * q1 - 4.0 * q0 * q2;
  const double sq = std::sqrt(std::max(disc, 0.0));
  const double k = -0.5 * (q1 + (q1 >= 0 ? sq : -sq));
  double r1 = k / q2;
  double r2 = k != 0.0 ? q0 / k : -r1;
  if (r1 > r2) std::swap(r1, r2);
  return {r1, r2};
}

inline Vec3 in_ep(const EpPlane& ep, double a, double b) { return a * ep.b1 + b * ep.b2; }

}  // namespace detail

/// Asymptotic set following the shape-by-shape counting list; Q(y) is
/// solved only for a non-degenerate parabola.
inline AsymptoticSet asymptotic_directions(const ParabolaProfile& pp, const SecondForm& sf,
                                           const Tolerances& tol = {}) {
  AsymptoticSet as;
  as.q = asymptotic_quadratic(pp);
  as.discriminant = as.q[1] * as.q[1] - 4.0 * as.q[0] * as.q[2];
  as.exact = pp.exact;
  switch (pp.shape) {
    case Shape::NondegenerateParabola: {
      int sign = 0;
      std::optional<Rational> exact_root;
      if (sf.exact) {
        const Vec3Q L = column(*sf.exact, 0);
        const Vec3Q M = column(*sf.exact, 1);
        const Vec3Q N = column(*sf.exact, 2);
        const Vec3Q n = cross(M, N);
        const Rational q0 = dot(n, cross(L, M));
        const Rational q1 = dot(n, cross(L, N));
        const Rational q2 = dot(n, cross(M, N));
        const Rational disc = q1 * q1 - Rational(4) * q0 * q2;
        sign = sign_of(disc);
        if (sign == 0) exact_root = -q1 / (Rational(2) * q2);
      } else {
        const double scale =
            std::max(as.q[1] * as.q[1], std::abs(4.0 * as.q[0] * as.q[2]));
        if (std::abs(as.discriminant) <= tol.eps_disc * scale) sign = 0;
        else sign = as.discriminant > 0 ? 1 : -1;
      }
      as.finite = detail::quadratic_roots(as.q[0], as.q[1], as.q[2], sign);
      if (exact_root) as.finite = {to_double(*exact_root)};
      break;
    }
    case Shape::HalfLine:
      if (pp.radial) {
        as.all = true;
      } else {
        as.finite = {pp.vertex_param};
        as.has_infinity = true;
      }
      break;
    case Shape::Line:
      if (pp.radial) as.all = true;
      else as.has_infinity = true;
      break;
    case Shape::Point:
      as.all = true;
      break;
  }
  return as;
}

/// Null vector (unit, E_p coordinates) of the 2x2 system II_nu(u, .) = 0.
inline Vec2 binormal_null_vector(const ParabolaProfile& pp, const Vec2& u) {
  const Vec3 a = u.x() * pp.L + u.y() * pp.M;
  const Vec3 b = u.x() * pp.M + u.y() * pp.N;
  Mat2 m;
  m << a.dot(pp.ep.b1), a.dot(pp.ep.b2), b.dot(pp.ep.b1), b.dot(pp.ep.b2);
  Eigen::JacobiSVD<Mat2> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().col(1);
}

inline BinormalSet binormal_directions(const ParabolaProfile& pp, const AsymptoticSet& as) {
  BinormalSet bs;
  auto at_infinity = [&](const Vec3& direction) {
    const double d1 = direction.dot(pp.ep.b1);
    const double d2 = direction.dot(pp.ep.b2);
    Binormal b;
    b.nu = detail::in_ep(pp.ep, -d2, d1).normalized();
    b.at_infinity = true;
    return b;
  };
  switch (pp.shape) {
    case Shape::NondegenerateParabola:
    case Shape::HalfLine:
    case Shape::Line:
      if (pp.shape != Shape::NondegenerateParabola && pp.radial) {
        if (pp.shape == Shape::HalfLine && pp.vertex_is_origin) {
          bs.all = true;
        } else {
          bs.items.push_back(at_infinity(pp.direction_at_infinity()));
        }
        break;
      }
      for (double y : as.finite) {
        const Vec2 ab = binormal_null_vector(pp, Vec2(1.0, y));
        Binormal b;
        b.nu = canonical_sign(Vec3(detail::in_ep(pp.ep, ab.x(), ab.y()).normalized()));
        b.y = y;
        bs.items.push_back(b);
      }
      if (as.has_infinity) bs.items.push_back(at_infinity(pp.direction_at_infinity()));
      break;
    case Shape::Point:
      if (pp.vertex_is_origin) {
        bs.all = true;
      } else {
        const Vec3 d = pp.L.normalized();
        const double d1 = d.dot(pp.ep.b1);
        const double d2 = d.dot(pp.ep.b2);
        Binormal b;
        b.nu = detail::in_ep(pp.ep, d2, -d1).normalized();
        b.at_infinity = true;
        bs.items.push_back(b);
      }
      break;
  }
  return bs;
}

/// Unit normals (target coordinates of the input) of the osculating
/// hyperplanes through the origin; nullopt stands for "every hyperplane
/// orthogonal to E_p".
inline std::optional<std::vector<Vec4>> osculating_hyperplanes(const BinormalSet& bs,
                                                               const NormalFrame& frame) {
  if (bs.all) return std::nullopt;
  std::vector<Vec4> out;
  for (const auto& b : bs.items) out.push_back(frame * b.nu);
  return out;
}

inline PointType point_type(const AsymptoticSet& as) {
  switch (as.count()) {
    case 0: return PointType::Elliptic;
    case 1: return PointType::Parabolic;
    case 2: return PointType::Hyperbolic;
    default: return PointType::Inflection;
  }
}

/// Sign of b20 for a germ whose 2-jet is (x, xy, b20 x^2 + b11 xy + b02 y^2, c20 x^2), b02 > 0.
inline PointType ik_classify(const AdaptedGerm& g) {
  auto check = [](const auto& j) {
    using T = std::decay_t<decltype(j.a11)>;
    const bool reduced = j.a20 == T(0) && j.a11 == T(1) && j.a02 == T(0) && j.c11 == T(0) &&
                         j.c02 == T(0) && j.b02 > T(0);
    if (!reduced) throw PreconditionError("2-jet is not in reduced (x,xy,y^2,0) normal form");
    if (j.b20 > T(0)) return PointType::Hyperbolic;
    if (j.b20 < T(0)) return PointType::Elliptic;
    return PointType::Parabolic;
  };
  if (g.exact) return check(extract_jet2(*g.exact));
  return check(extract_jet2(g.germ));
}

}  // namespace corank

#endif  // CORANK_DIRECTIONS_HPP_
