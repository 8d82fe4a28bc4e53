#ifndef CORANK_ADAPTED_FRAME_HPP_
#define CORANK_ADAPTED_FRAME_HPP_

#include <array>
#include <optional>
#include <string>

#include "corank/error.hpp"
#include "corank/germ.hpp"
#include "corank/linalg.hpp"
#include "corank/tolerances.hpp"

namespace corank {

using NormalFrame = Eigen::Matrix<double, 4, 3>;

/// The axes e_2, e_3, e_4 of R^4.
inline NormalFrame standard_normal_frame() {
  NormalFrame f = NormalFrame::Zero();
  f.bottomRows<3>() = Eigen::Matrix3d::Identity();
  return f;
}

/// Source reparametrisation (X, Y) -> (x, y) that produced the adapted germ.
struct SourceChange {
  Mat2 linear = Mat2::Identity();  // Jacobian at the origin
  std::array<PolyD, 2> series{PolyD::var(Var::x, kDefaultOrder), PolyD::var(Var::y, kDefaultOrder)};
  std::optional<std::array<PolyQ, 2>> exact_series;
};

/// A germ in prenormal form (x, f2, f3, f4) plus the changes of coordinates
/// and frames that produced it from the input.
struct AdaptedGerm {
  MapGermR4<double> germ;
  std::optional<MapGermR4<Rational>> exact;  // present on the rational path
  Vec4 tangent = Vec4::UnitX();
  NormalFrame normal_frame = standard_normal_frame();
  SourceChange source_change;
  Mat4 target_rotation = Mat4::Identity();
  bool identity = true;

  bool exactness_flag() const noexcept { return exact.has_value(); }
  int order() const noexcept { return germ.order(); }

  /// Maps normal-frame coordinates to a vector of the input's target space.
  Vec4 to_ambient(const Vec3& normal_coords) const { return normal_frame * normal_coords; }
};

namespace detail {

template <typename T>
std::array<std::array<T, 2>, 4> jacobian_at_origin(const MapGermR4<T>& f) {
  std::array<std::array<T, 2>, 4> j;
  for (std::size_t k = 0; k < 4; ++k) j[k] = {f[k].coeff(1, 0), f[k].coeff(0, 1)};
  return j;
}

inline NormalFrame normal_frame_from_rotation(const Mat4& r) {
  // Rows of r are the adapted axes expressed in the input's coordinates.
  return r.transpose().rightCols<3>();
}

/// Inverts (s, t) -> (g0(s, t), t) where g0 = a*s + h(s, t) and h has no
/// linear term in s, returning s as a series in (X, t).
template <typename T>
TruncatedPoly2<T> invert_first_coordinate(const TruncatedPoly2<T>& g0) {
  const int order = g0.order();
  const T a = g0.coeff(1, 0);
  TruncatedPoly2<T> h = g0;
  h.set(1, 0, T(0));
  const auto X = TruncatedPoly2<T>::var(Var::x, order);
  const auto t = TruncatedPoly2<T>::var(Var::y, order);
  const T inv = T(1) / a;
  TruncatedPoly2<T> s = X * inv;
  // Each pass fixes one more degree of the inverse.
  for (int pass = 0; pass < order; ++pass) {
    s = (X - h.compose(s, t)) * inv;
  }
  return s;
}

template <typename T>
MapGermR4<T> substitute(const MapGermR4<T>& f, const TruncatedPoly2<T>& x,
                        const TruncatedPoly2<T>& y) {
  return MapGermR4<T>({f[0].compose(x, y), f[1].compose(x, y), f[2].compose(x, y),
                       f[3].compose(x, y)});
}

template <typename T>
MapGermR4<T> rotate_target(const MapGermR4<T>& f, const Mat4& r) {
  std::array<TruncatedPoly2<T>, 4> out{TruncatedPoly2<T>(f.order()), TruncatedPoly2<T>(f.order()),
                                       TruncatedPoly2<T>(f.order()), TruncatedPoly2<T>(f.order())};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (r(i, j) != 0.0) out[i] += f[j] * T(r(i, j));
    }
  }
  return MapGermR4<T>(out);
}

inline MapGermR4<double> clean_prenormal(const MapGermR4<double>& g) {
  std::array<PolyD, 4> c = g.components();
  c[0] = PolyD::var(Var::x, g.order());
  for (int k = 1; k < 4; ++k) {
    c[k].set(1, 0, 0.0);
    c[k].set(0, 1, 0.0);
  }
  return MapGermR4<double>(c);
}

}  // namespace detail

/// Rank (0, 1 or 2) of the differential at the origin.
template <typename T>
int check_corank(const MapGermR4<T>& f, const Tolerances& tol = {}) {
  const auto j = detail::jacobian_at_origin(f);
  if constexpr (is_exact_v<T>) {
    std::array<std::array<Rational, 2>, 4> m;
    for (int k = 0; k < 4; ++k) m[k] = {j[k][0], j[k][1]};
    return exact_rank(m);
  } else {
    Eigen::Matrix<double, 4, 2> m;
    for (int k = 0; k < 4; ++k) m.row(k) << j[k][0], j[k][1];
    if (m.cwiseAbs().maxCoeff() <= tol.eps_jet) return 0;
    return numeric_rank(m, tol.eps_rank);
  }
}

namespace detail {

template <typename T>
AdaptedGerm adapt_impl(const MapGermR4<T>& f, const Tolerances& tol) {
  const int rank = check_corank(f, tol);
  if (rank != 1) {
    throw PreconditionError("differential at the origin has rank " + std::to_string(rank) +
                            " (corank " + std::to_string(2 - rank) + "); expected corank 1");
  }
  const int order = f.order();
  AdaptedGerm out;
  out.source_change.series = {PolyD::var(Var::x, order), PolyD::var(Var::y, order)};

  if (is_prenormal(f, tol.eps_jet)) {
    if constexpr (is_exact_v<T>) {
      out.germ = f.template cast<double>();
      out.exact = f;
      out.source_change.exact_series = {PolyQ::var(Var::x, order), PolyQ::var(Var::y, order)};
    } else {
      out.germ = clean_prenormal(f);
    }
    return out;
  }

  out.identity = false;
  const auto j = jacobian_at_origin(f);
  bool tangent_on_first_axis = true;
  for (int k = 1; k < 4; ++k) {
    if (!negligible(j[k][0], 0.0) || !negligible(j[k][1], 0.0)) tangent_on_first_axis = false;
  }

  if constexpr (is_exact_v<T>) {
    if (tangent_on_first_axis) {
      // Exact route: only a rational source change is needed.
      const Rational j0 = j[0][0];
      const Rational j1 = j[0][1];
      std::array<Rational, 2> u = j0 != 0 ? std::array<Rational, 2>{Rational(sign_of(j0)), 0}
                                          : std::array<Rational, 2>{0, Rational(sign_of(j1))};
      std::array<Rational, 2> k{-j1, j0};
      const auto s = PolyQ::var(Var::x, order);
      const auto t = PolyQ::var(Var::y, order);
      PolyQ x_of = s * u[0] + t * k[0];
      PolyQ y_of = s * u[1] + t * k[1];
      MapGermR4<Rational> g = substitute(f, x_of, y_of);
      PolyQ s_of = invert_first_coordinate(g[0]);
      MapGermR4<Rational> adapted = substitute(g, s_of, t);
      PolyQ x_final = x_of.compose(s_of, t);
      PolyQ y_final = y_of.compose(s_of, t);
      if (!is_prenormal(adapted, 0.0)) {
        throw std::logic_error("exact adaptation did not reach prenormal form");
      }
      out.exact = adapted;
      out.germ = adapted.template cast<double>();
      out.source_change.exact_series = {x_final, y_final};
      out.source_change.series = {x_final.template cast<double>(), y_final.template cast<double>()};
      out.source_change.linear << to_double(u[0]), to_double(k[0]), to_double(u[1]),
          to_double(k[1]);
      return out;
    }
  }

  // Numeric route: kernel/complement basis in the source, rotation in the target.
  MapGermR4<double> fd = f.template cast<double>();
  Eigen::Matrix<double, 4, 2> jm;
  for (int k = 0; k < 4; ++k) jm.row(k) << to_double(j[k][0]), to_double(j[k][1]);
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>> svd(jm, Eigen::ComputeFullV);
  Vec2 kernel = svd.matrixV().col(1);
  kernel = canonical_sign(kernel);
  Vec2 u(kernel.y(), -kernel.x());
  Vec4 w = jm * u;
  if (w.norm() == 0.0) throw std::logic_error("degenerate complement direction");
  Mat4 r = rotation_to_first_axis(w);

  const auto s = PolyD::var(Var::x, order);
  const auto t = PolyD::var(Var::y, order);
  PolyD x_of = s * u.x() + t * kernel.x();
  PolyD y_of = s * u.y() + t * kernel.y();
  MapGermR4<double> g = rotate_target(substitute(fd, x_of, y_of), r);
  PolyD s_of = invert_first_coordinate(g[0]);
  MapGermR4<double> adapted = substitute(g, s_of, t);
  if (!is_prenormal(adapted, tol.eps_jet)) {
    throw std::logic_error("numeric adaptation did not reach prenormal form within eps_jet");
  }
  out.germ = clean_prenormal(adapted);
  out.target_rotation = r;
  out.tangent = r.transpose().col(0);
  out.normal_frame = normal_frame_from_rotation(r);
  out.source_change.linear.col(0) = u;
  out.source_change.linear.col(1) = kernel;
  out.source_change.series = {x_of.compose(s_of, t), y_of.compose(s_of, t)};
  return out;
}

}  // namespace detail

/// Normalizes a corank-1 germ to prenormal form (x, f2, f3, f4).
///
/// Throws PreconditionError when the differential at the origin does not
/// have rank one.
inline AdaptedGerm adapt(const MapGermR4<Rational>& f, const Tolerances& tol = {}) {
  return detail::adapt_impl(f, tol);
}
inline AdaptedGerm adapt(const MapGermR4<double>& f, const Tolerances& tol = {}) {
  return detail::adapt_impl(f, tol);
}

/// Applies the recorded witnesses to the input: R * f(source_change(X, Y)).
inline MapGermR4<double> reconstruct(const AdaptedGerm& a, const MapGermR4<double>& f) {
  auto g = detail::substitute(f, a.source_change.series[0], a.source_change.series[1]);
  return detail::rotate_target(g, a.target_rotation);
}

/// Largest deviation of an orthonormal frame (e, nu1, nu2, nu3) from I4.
inline double frame_orthonormality_error(const AdaptedGerm& a) {
  Mat4 frame;
  frame.col(0) = a.tangent;
  frame.rightCols<3>() = a.normal_frame;
  return (frame.transpose() * frame - Mat4::Identity()).cwiseAbs().maxCoeff();
}

}  // namespace corank

#endif  // CORANK_ADAPTED_FRAME_HPP_
