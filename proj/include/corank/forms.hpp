#ifndef CORANK_FORMS_HPP_
#define CORANK_FORMS_HPP_

#include <optional>

#include "corank/adapted_frame.hpp"
#include "corank/germ.hpp"
#include "corank/linalg.hpp"
#include "corank/tolerances.hpp"

namespace corank {

/// Pseudometric coefficients at the singular point.
struct FirstForm {
  double E = 0.0;
  double F = 0.0;
  double G = 0.0;

  double operator()(const Vec2& u, const Vec2& v) const {
    return u.x() * v.x() * E + (u.x() * v.y() + u.y() * v.x()) * F + u.y() * v.y() * G;
  }
};

/// Second fundamental form: rows indexed by the normal frame (nu1, nu2, nu3),
/// columns (l, m, n) with l = <f_xx, nu>, m = <f_xy, nu>, n = <f_yy, nu>.
struct SecondForm {
  Mat3 values = Mat3::Zero();
  std::optional<Mat3Q> exact;

  bool is_exact() const noexcept { return exact.has_value(); }
  Vec3 l() const { return values.col(0); }
  Vec3 m() const { return values.col(1); }
  Vec3 n() const { return values.col(2); }

  /// II(u, v) as a vector in normal-frame coordinates.
  Vec3 operator()(const Vec2& u, const Vec2& v) const {
    return u.x() * v.x() * l() + (u.x() * v.y() + u.y() * v.x()) * m() + u.y() * v.y() * n();
  }

  /// 2x2 matrix of II_nu in the source basis.
  Mat2 along(const Vec3& nu) const {
    const Vec3 c = values.transpose() * nu;
    Mat2 h;
    h << c(0), c(1), c(1), c(2);
    return h;
  }
};

/// First fundamental form of any germ at the origin.
template <typename T>
FirstForm first_form(const MapGermR4<T>& f) {
  Vec4 fx;
  Vec4 fy;
  for (int k = 0; k < 4; ++k) {
    fx(k) = to_double(f[k].coeff(1, 0));
    fy(k) = to_double(f[k].coeff(0, 1));
  }
  return {fx.dot(fx), fx.dot(fy), fy.dot(fy)};
}

inline FirstForm first_form(const AdaptedGerm& g) { return first_form(g.germ); }

/// Second form of an arbitrary parametrisation projected on a given
/// orthonormal normal frame (columns in target coordinates).
inline Mat3 second_form_in_frame(const MapGermR4<double>& f, const NormalFrame& frame) {
  Vec4 fxx;
  Vec4 fxy;
  Vec4 fyy;
  for (int k = 0; k < 4; ++k) {
    fxx(k) = 2.0 * f[k].coeff(2, 0);
    fxy(k) = f[k].coeff(1, 1);
    fyy(k) = 2.0 * f[k].coeff(0, 2);
  }
  Mat3 out;
  out.col(0) = frame.transpose() * fxx;
  out.col(1) = frame.transpose() * fxy;
  out.col(2) = frame.transpose() * fyy;
  return out;
}

/// Coefficient matrix of II in the adapted normal frame. Exact whenever the
/// adapted germ carries rational coefficients.
inline SecondForm second_form(const AdaptedGerm& g) {
  SecondForm sf;
  sf.values = second_form_in_frame(g.germ, standard_normal_frame());
  if (g.exact) {
    Mat3Q q;
    for (int i = 0; i < 3; ++i) {
      const auto& p = (*g.exact)[i + 1];
      q[i] = {Rational(2) * p.coeff(2, 0), p.coeff(1, 1), Rational(2) * p.coeff(0, 2)};
    }
    sf.exact = q;
  }
  return sf;
}

/// II_nu(u, v) = <II(u, v), nu>, nu in normal-frame coordinates.
inline double II_along(const SecondForm& sf, const Vec3& nu, const Vec2& u, const Vec2& v) {
  return u.dot(sf.along(nu) * v);
}

inline int rank_second_form(const SecondForm& sf, const Tolerances& tol = {}) {
  if (sf.exact) return exact_rank(*sf.exact);
  if (sf.values.cwiseAbs().maxCoeff() == 0.0) return 0;
  return numeric_rank(sf.values, tol.eps_rank);
}

/// Second form built directly from raw jet coefficients (prenormal germs).
template <typename T>
SecondForm second_form_from_jet(const Jet2Coefficients<T>& j) {
  SecondForm sf;
  Mat3Q q{Vec3Q{Rational(0), Rational(0), Rational(0)}, Vec3Q{}, Vec3Q{}};
  auto as_q = [](const T& v) {
    if constexpr (is_exact_v<T>) {
      return v;
    } else {
      return rational_from_double(v);
    }
  };
  const std::array<std::array<T, 3>, 3> rows{std::array<T, 3>{j.a20, j.a11, j.a02},
                                             std::array<T, 3>{j.b20, j.b11, j.b02},
                                             std::array<T, 3>{j.c20, j.c11, j.c02}};
  for (int i = 0; i < 3; ++i) {
    q[i] = {Rational(2) * as_q(rows[i][0]), as_q(rows[i][1]), Rational(2) * as_q(rows[i][2])};
    sf.values.row(i) << 2.0 * to_double(rows[i][0]), to_double(rows[i][1]),
        2.0 * to_double(rows[i][2]);
  }
  if constexpr (is_exact_v<T>) sf.exact = q;
  return sf;
}

}  // namespace corank

#endif  // CORANK_FORMS_HPP_
