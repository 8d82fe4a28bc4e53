#ifndef CORANK_ASSOCIATED_HPP_
#define CORANK_ASSOCIATED_HPP_

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "corank/adapted_frame.hpp"
#include "corank/directions.hpp"
#include "corank/error.hpp"
#include "corank/forms.hpp"
#include "corank/linalg.hpp"
#include "corank/parabola.hpp"
#include "corank/poly.hpp"
#include "corank/tolerances.hpp"

namespace corank {

/// An immersed surface (R^2, 0) -> (R^n, 0) with its second fundamental form
/// at the origin: one row (a, b, c) = (<f_xx, e>, <f_xy, e>, <f_yy, e>) per
/// vector e of an orthonormal normal frame.
struct RegularSurface {
  std::vector<PolyD> components;
  std::optional<std::vector<PolyQ>> exact_components;
  int jacobian_rank = 0;
  Eigen::MatrixXd normal_frame;   // n x (n - 2), columns
  Eigen::MatrixXd second_form;    // (n - 2) x 3
  std::optional<std::vector<Vec3Q>> exact_second_form;

  int ambient_dim() const { return static_cast<int>(components.size()); }
  bool is_exact() const { return exact_second_form.has_value(); }
};

using RegularSurfaceR4 = RegularSurface;
using RegularSurfaceR5 = RegularSurface;

namespace detail {

template <typename T>
T second_derivative_at_origin(const TruncatedPoly2<T>& p, Var a, Var b) {
  return p.differentiate(a).differentiate(b).coeff(0, 0);
}

template <typename T>
bool is_graph_over_first_two(const std::vector<TruncatedPoly2<T>>& c) {
  if (c[0].coeff(1, 0) != T(1) || c[0].coeff(0, 1) != T(0)) return false;
  if (c[1].coeff(1, 0) != T(0) || c[1].coeff(0, 1) != T(1)) return false;
  for (std::size_t k = 2; k < c.size(); ++k) {
    if (c[k].coeff(1, 0) != T(0) || c[k].coeff(0, 1) != T(0)) return false;
  }
  return true;
}

inline RegularSurface build_surface(std::vector<PolyD> comps,
                                    std::optional<std::vector<PolyQ>> exact) {
  RegularSurface s;
  const int n = static_cast<int>(comps.size());
  Eigen::MatrixXd jac(n, 2);
  Eigen::MatrixXd second(n, 3);
  for (int k = 0; k < n; ++k) {
    jac(k, 0) = comps[k].coeff(1, 0);
    jac(k, 1) = comps[k].coeff(0, 1);
    second(k, 0) = second_derivative_at_origin(comps[k], Var::x, Var::x);
    second(k, 1) = second_derivative_at_origin(comps[k], Var::x, Var::y);
    second(k, 2) = second_derivative_at_origin(comps[k], Var::y, Var::y);
  }
  s.jacobian_rank = numeric_rank(jac, 1e-12);
  if (s.jacobian_rank != 2) throw PreconditionError("surface is not immersive at the origin");
  if (is_graph_over_first_two(comps)) {
    s.normal_frame = Eigen::MatrixXd::Identity(n, n).rightCols(n - 2);
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeFullU);
    s.normal_frame = svd.matrixU().rightCols(n - 2);
  }
  s.second_form = s.normal_frame.transpose() * second;
  if (exact && is_graph_over_first_two(*exact)) {
    std::vector<Vec3Q> rows;
    for (int k = 2; k < n; ++k) {
      const auto& p = (*exact)[k];
      rows.push_back({second_derivative_at_origin(p, Var::x, Var::x),
                      second_derivative_at_origin(p, Var::x, Var::y),
                      second_derivative_at_origin(p, Var::y, Var::y)});
    }
    s.exact_second_form = rows;
  }
  s.components = std::move(comps);
  s.exact_components = std::move(exact);
  return s;
}

/// Entries in {-1, 0, 1}, i.e. a signed coordinate axis.
inline bool is_signed_axis(const Vec3& v) {
  int nonzero = 0;
  for (int k = 0; k < 3; ++k) {
    if (v(k) == 0.0) continue;
    if (v(k) != 1.0 && v(k) != -1.0) return false;
    ++nonzero;
  }
  return nonzero == 1;
}

}  // namespace detail

/// N = (x, y, f2, f3, f4), of which M is the projection along (0, 1, 0, 0, 0).
inline RegularSurfaceR5 lift_to_r5(const AdaptedGerm& g) {
  const int order = g.order();
  std::vector<PolyD> comps{PolyD::var(Var::x, order), PolyD::var(Var::y, order), g.germ[1],
                           g.germ[2], g.germ[3]};
  std::optional<std::vector<PolyQ>> exact;
  if (g.exact) {
    exact = std::vector<PolyQ>{PolyQ::var(Var::x, order), PolyQ::var(Var::y, order),
                               (*g.exact)[1], (*g.exact)[2], (*g.exact)[3]};
  }
  return detail::build_surface(std::move(comps), std::move(exact));
}

/// S = (x, y, <f, b1>, <f, b2>) with (b1, b2) the basis of E_p.
inline RegularSurfaceR4 project_to_s(const AdaptedGerm& g, const ParabolaProfile& pp) {
  const int order = g.order();
  auto combine = [&](const Vec3& b) {
    PolyD p(order);
    for (int k = 0; k < 3; ++k) {
      if (b(k) != 0.0) p += g.germ[k + 1] * b(k);
    }
    return p;
  };
  std::vector<PolyD> comps{PolyD::var(Var::x, order), PolyD::var(Var::y, order),
                           combine(pp.ep.b1), combine(pp.ep.b2)};
  std::optional<std::vector<PolyQ>> exact;
  if (g.exact && detail::is_signed_axis(pp.ep.b1) && detail::is_signed_axis(pp.ep.b2)) {
    auto combine_q = [&](const Vec3& b) {
      PolyQ p(order);
      for (int k = 0; k < 3; ++k) {
        if (b(k) != 0.0) p += (*g.exact)[k + 1] * Rational(static_cast<int>(b(k)));
      }
      return p;
    };
    exact = std::vector<PolyQ>{PolyQ::var(Var::x, order), PolyQ::var(Var::y, order),
                               combine_q(pp.ep.b1), combine_q(pp.ep.b2)};
  }
  return detail::build_surface(std::move(comps), std::move(exact));
}

/// Binary differential equation A dx^2 + B dx dy + C dy^2 = 0 of S at the origin.
struct BdeRoots {
  std::array<double, 3> coefficients{0.0, 0.0, 0.0};  // A, B, C
  bool all = false;
  std::vector<Vec2> directions;  // unit (dx, dy)

  int count() const { return all ? -1 : static_cast<int>(directions.size()); }
};

inline BdeRoots s_asymptotic_directions(const RegularSurfaceR4& s, const Tolerances& tol = {}) {
  if (s.ambient_dim() != 4) throw InputError("BDE needs a surface in R^4");
  BdeRoots out;
  const Eigen::MatrixXd& a = s.second_form;
  const double l1 = a(0, 0), m1 = a(0, 1), n1 = a(0, 2);
  const double l2 = a(1, 0), m2 = a(1, 1), n2 = a(1, 2);
  const double A = l1 * m2 - l2 * m1;
  const double B = l1 * n2 - l2 * n1;
  const double C = m1 * n2 - m2 * n1;
  out.coefficients = {A, B, C};

  int sa = 0, sb = 0, sc = 0, sdisc = 0;
  if (s.exact_second_form) {
    const auto& q = *s.exact_second_form;
    const Rational qa = q[0][0] * q[1][1] - q[1][0] * q[0][1];
    const Rational qb = q[0][0] * q[1][2] - q[1][0] * q[0][2];
    const Rational qc = q[0][1] * q[1][2] - q[1][1] * q[0][2];
    sa = sign_of(qa);
    sb = sign_of(qb);
    sc = sign_of(qc);
    sdisc = sign_of(qb * qb - Rational(4) * qa * qc);
  } else {
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    const double zero = tol.eps_rank * scale * scale;
    auto sgn = [&](double v) { return std::abs(v) <= zero ? 0 : (v > 0 ? 1 : -1); };
    sa = sgn(A);
    sb = sgn(B);
    sc = sgn(C);
    const double disc = B * B - 4.0 * A * C;
    const double dscale = std::max(B * B, std::abs(4.0 * A * C));
    sdisc = std::abs(disc) <= tol.eps_disc * dscale ? 0 : (disc > 0 ? 1 : -1);
  }

  if (sa == 0 && sb == 0 && sc == 0) {
    out.all = true;
    return out;
  }
  if (sc == 0) {
    // dx = 0 solves the equation; the rest is linear in dy/dx.
    if (sb != 0) out.directions.push_back(Vec2(1.0, -A / B).normalized());
    out.directions.push_back(Vec2(0.0, 1.0));
    return out;
  }
  if (sdisc < 0) return out;
  if (sdisc == 0) {
    out.directions.push_back(Vec2(1.0, -B / (2.0 * C)).normalized());
    return out;
  }
  const double sq = std::sqrt(B * B - 4.0 * A * C);
  const double k = -0.5 * (B + (B >= 0 ? sq : -sq));
  out.directions.push_back(Vec2(1.0, k / C).normalized());
  out.directions.push_back(Vec2(1.0, A / k).normalized());
  return out;
}

inline PointType bde_point_type(const BdeRoots& r) {
  switch (r.count()) {
    case 0: return PointType::Elliptic;
    case 1: return PointType::Parabolic;
    case 2: return PointType::Hyperbolic;
    default: return PointType::Inflection;
  }
}

/// eta(theta) in the normal frame of S.
inline Vec2 curvature_ellipse(const RegularSurfaceR4& s, double theta) {
  const Eigen::MatrixXd& a = s.second_form;
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  return Vec2(a(0, 0) * c * c + 2.0 * a(0, 1) * c * sn + a(0, 2) * sn * sn,
              a(1, 0) * c * c + 2.0 * a(1, 1) * c * sn + a(1, 2) * sn * sn);
}

enum class EllipseKind {
  Ellipse,
  Semiumbilic,
  InflectionReal,
  InflectionImaginary,
  InflectionFlat,
  Umbilic,
  FlatUmbilic
};

inline std::string to_string(EllipseKind k) {
  switch (k) {
    case EllipseKind::Ellipse: return "ellipse";
    case EllipseKind::Semiumbilic: return "semiumbilic";
    case EllipseKind::InflectionReal: return "inflection_real";
    case EllipseKind::InflectionImaginary: return "inflection_imaginary";
    case EllipseKind::InflectionFlat: return "inflection_flat";
    case EllipseKind::Umbilic: return "umbilic";
    case EllipseKind::FlatUmbilic: return "flat_umbilic";
  }
  return "?";
}

/// Shape of the curvature ellipse eta = c + A cos 2t + B sin 2t.
inline EllipseKind classify_ellipse(const RegularSurfaceR4& s, const Tolerances& tol = {}) {
  const Eigen::MatrixXd& a = s.second_form;
  const Vec2 l = a.col(0);
  const Vec2 m = a.col(1);
  const Vec2 n = a.col(2);
  const Vec2 center = 0.5 * (l + n);
  const Vec2 A = 0.5 * (l - n);
  const Vec2 B = m;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double zero = tol.eps_rank * scale;
  Eigen::Matrix2d ab;
  ab << A, B;
  const int rank = ab.cwiseAbs().maxCoeff() <= zero ? 0 : numeric_rank(ab, tol.eps_rank);
  if (rank == 2) return EllipseKind::Ellipse;
  if (rank == 0) return center.norm() <= zero ? EllipseKind::FlatUmbilic : EllipseKind::Umbilic;
  const Vec2 d = (A.norm() >= B.norm() ? A : B).normalized();
  const double radius = std::hypot(A.dot(d), B.dot(d));
  if (std::abs(cross2(center, d)) > zero) return EllipseKind::Semiumbilic;
  const double t0 = std::abs(center.dot(d));
  if (std::abs(t0 - radius) <= zero) return EllipseKind::InflectionFlat;
  return t0 < radius ? EllipseKind::InflectionReal : EllipseKind::InflectionImaginary;
}

struct TransferVerdict {
  bool directions_match = false;
  bool labels_match = false;
  bool binormals_degenerate_on_s = false;
  bool second_form_match = false;
  bool second_form_exact = false;
  PointType m_label = PointType::Inflection;
  PointType s_label = PointType::Inflection;
  double max_angle = 0.0;
  double max_binormal_det = 0.0;
  double second_form_gap = 0.0;
};

/// Angle between two projective directions of the plane.
inline double projective_angle(const Vec2& a, const Vec2& b) {
  const Vec2 u = a.normalized();
  const Vec2 v = b.normalized();
  return std::atan2(std::abs(cross2(u, v)), std::abs(u.dot(v)));
}

/// Compares M's asymptotic directions, labels and binormals with those of S,
/// and the second form of M with that of its lift N.
inline TransferVerdict verify_transfer(const SecondForm& sf,
                                       const ParabolaProfile& pp, const AsymptoticSet& as,
                                       const BinormalSet& bs, const RegularSurfaceR4& s,
                                       const RegularSurfaceR5& n, double angle_tol = 1e-7,
                                       const Tolerances& tol = {}) {
  TransferVerdict v;
  const BdeRoots roots = s_asymptotic_directions(s, tol);
  v.m_label = point_type(as);
  v.s_label = bde_point_type(roots);
  v.labels_match = v.m_label == v.s_label;

  if (as.all || roots.all) {
    v.directions_match = as.all && roots.all;
  } else {
    const auto md = as.directions();
    v.directions_match = md.size() == roots.directions.size();
    std::vector<bool> used(roots.directions.size(), false);
    for (const auto& d : md) {
      double best = 10.0;
      std::size_t best_k = 0;
      for (std::size_t k = 0; k < roots.directions.size(); ++k) {
        if (used[k]) continue;
        const double ang = projective_angle(d, roots.directions[k]);
        if (ang < best) {
          best = ang;
          best_k = k;
        }
      }
      if (best > angle_tol || best == 10.0) {
        v.directions_match = false;
      } else {
        used[best_k] = true;
      }
      if (best != 10.0) v.max_angle = std::max(v.max_angle, best);
    }
  }

  const double scale = std::max(1.0, s.second_form.cwiseAbs().maxCoeff());
  v.binormals_degenerate_on_s = true;
  for (const auto& b : bs.items) {
    const Vec2 w(b.nu.dot(pp.ep.b1), b.nu.dot(pp.ep.b2));
    const Eigen::Vector3d c = s.second_form.transpose() * w;
    const double det = c(0) * c(2) - c(1) * c(1);
    v.max_binormal_det = std::max(v.max_binormal_det, std::abs(det));
    if (std::abs(det) > 1e-8 * scale * scale) v.binormals_degenerate_on_s = false;
  }

  v.second_form_gap = (n.second_form - sf.values).cwiseAbs().maxCoeff();
  if (sf.exact && n.exact_second_form) {
    v.second_form_exact = true;
    bool eq = true;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) eq = eq && (*sf.exact)[i][j] == (*n.exact_second_form)[i][j];
    v.second_form_match = eq;
  } else {
    v.second_form_match = v.second_form_gap <= 1e-12 * std::max(1.0, sf.values.cwiseAbs().maxCoeff());
  }
  return v;
}

}  // namespace corank

#endif  // CORANK_ASSOCIATED_HPP_
