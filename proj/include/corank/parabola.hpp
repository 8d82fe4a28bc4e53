#ifndef CORANK_PARABOLA_HPP_
#define CORANK_PARABOLA_HPP_

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "corank/forms.hpp"
#include "corank/germ.hpp"
#include "corank/linalg.hpp"
#include "corank/tolerances.hpp"

namespace corank {

enum class Shape { NondegenerateParabola, HalfLine, Line, Point };

/// The four A^2-orbits of corank-1 2-jets.
enum class Orbit { XY_Y2, Y2, XY, Zero };

inline std::string to_string(Shape s) {
  switch (s) {
    case Shape::NondegenerateParabola: return "NondegenerateParabola";
    case Shape::HalfLine: return "HalfLine";
    case Shape::Line: return "Line";
    case Shape::Point: return "Point";
  }
  return "?";
}

inline std::string to_string(Orbit o) {
  switch (o) {
    case Orbit::XY_Y2: return "(x,xy,y^2,0)";
    case Orbit::Y2: return "(x,y^2,0,0)";
    case Orbit::XY: return "(x,xy,0,0)";
    case Orbit::Zero: return "(x,0,0,0)";
  }
  return "?";
}

/// Orbit the curvature parabola's shape corresponds to.
inline Orbit orbit_of_shape(Shape s) {
  switch (s) {
    case Shape::NondegenerateParabola: return Orbit::XY_Y2;
    case Shape::HalfLine: return Orbit::Y2;
    case Shape::Line: return Orbit::XY;
    case Shape::Point: return Orbit::Zero;
  }
  return Orbit::Zero;
}

struct AffineSubspace {
  Vec3 base = Vec3::Zero();  // foot of the perpendicular from the origin
  std::vector<Vec3> directions;  // orthonormal

  int dim() const noexcept { return static_cast<int>(directions.size()); }
  double distance_to_origin() const { return base.norm(); }
};

/// The plane E_p through the origin with an orthonormal basis (b1, b2) and
/// unit normal b3 = b1 x b2 inside the normal space.
struct EpPlane {
  Vec3 b1 = Vec3::UnitX();
  Vec3 b2 = Vec3::UnitY();
  Vec3 normal = Vec3::UnitZ();
  bool forced = false;  // false when any plane containing Aff_p would do

  Mat3 basis() const {
    Mat3 b;
    b << b1, b2, normal;
    return b;
  }
  bool contains(const Vec3& v, double eps) const {
    return std::abs(v.dot(normal)) <= eps * std::max(1.0, v.norm());
  }
};

struct ParabolaProfile {
  Vec3 L = Vec3::Zero();
  Vec3 M = Vec3::Zero();
  Vec3 N = Vec3::Zero();
  Shape shape = Shape::Point;
  bool radial = false;            // containing line passes through p
  bool vertex_is_origin = false;  // half-line vertex or point equal to p
  double vertex_param = 0.0;      // half-line only
  Vec3 vertex = Vec3::Zero();
  Orbit orbit = Orbit::Zero;
  AffineSubspace aff;
  EpPlane ep;
  int stratum = 0;
  bool exact = false;  // discrete decisions were made over the rationals

  Vec3 eta(double y) const { return L + 2.0 * y * M + y * y * N; }
  Vec3 eta_prime(double y) const { return 2.0 * M + 2.0 * y * N; }
  bool degenerate() const noexcept { return shape != Shape::NondegenerateParabola; }

  /// Unit direction eta(y_inf) of a half-line or line.
  Vec3 direction_at_infinity() const {
    if (shape == Shape::HalfLine) return N.normalized();
    if (shape == Shape::Line) return M.normalized();
    return Vec3::Zero();
  }
};

namespace detail {

/// Zero and parallelism decisions, exact when rational data is available.
struct ShapeOracle {
  std::optional<std::array<Vec3Q, 3>> q;  // L, M, N
  std::array<Vec3, 3> d;
  double scale = 0.0;
  double eps = 1e-9;

  bool zero(int a) const {
    if (q) return is_zero((*q)[a]);
    return d[a].norm() <= eps * scale;
  }
  bool parallel(int a, int b) const {
    if (q) return is_zero(cross((*q)[a], (*q)[b]));
    return d[a].cross(d[b]).norm() <= eps * scale * scale;
  }
};

inline Vec3 unit_normal(const Vec3& a, const Vec3& b) { return canonical_sign(Vec3(a.cross(b).normalized())); }

inline EpPlane plane_with_normal(const Vec3& normal, bool forced) {
  EpPlane ep;
  ep.normal = normal;
  ep.b1 = lowest_axis_completion({normal});
  ep.b2 = normal.cross(ep.b1);
  ep.forced = forced;
  return ep;
}

inline EpPlane plane_through_direction(const Vec3& d, bool forced) {
  const Vec3 dn = d.normalized();
  const Vec3 c = lowest_axis_completion({dn});
  return plane_with_normal(unit_normal(dn, c), forced);
}

template <typename T>
Orbit classify_impl(const Jet2Coefficients<T>& j, double eps) {
  const T g1 = j.a11 * j.b02 - j.a02 * j.b11;
  const T g2 = j.a11 * j.c02 - j.a02 * j.c11;
  const T g3 = j.c11 * j.b02 - j.c02 * j.b11;
  const double scale = std::max({std::abs(to_double(j.a11)), std::abs(to_double(j.b11)),
                                 std::abs(to_double(j.c11)), std::abs(to_double(j.a02)),
                                 std::abs(to_double(j.b02)), std::abs(to_double(j.c02)),
                                 std::abs(to_double(j.a20)), std::abs(to_double(j.b20)),
                                 std::abs(to_double(j.c20))});
  auto nz1 = [&](const T& v) {
    if constexpr (is_exact_v<T>) return v != 0;
    else return std::abs(v) > eps * scale;
  };
  auto nz2 = [&](const T& v) {
    if constexpr (is_exact_v<T>) return v != 0;
    else return std::abs(v) > eps * scale * scale;
  };
  if (nz2(g1) || nz2(g2) || nz2(g3)) return Orbit::XY_Y2;
  if (nz1(j.a02) || nz1(j.b02) || nz1(j.c02)) return Orbit::Y2;
  if (nz1(j.a11) || nz1(j.b11) || nz1(j.c11)) return Orbit::XY;
  return Orbit::Zero;
}

}  // namespace detail

/// Table of conditions on the raw 2-jet coefficients deciding the A^2-orbit.
inline Orbit classify_two_jet(const Jet2Coefficients<Rational>& j) {
  return detail::classify_impl(j, 0.0);
}
inline Orbit classify_two_jet(const Jet2Coefficients<double>& j, const Tolerances& tol = {}) {
  return detail::classify_impl(j, tol.eps_rank);
}

/// Raw 2-jet recovered from second-form columns (l = 2 a20, m = a11, n = 2 a02).
inline Jet2Coefficients<double> jet_from_second_form(const SecondForm& sf) {
  const Mat3& v = sf.values;
  return {v(0, 0) / 2, v(0, 1), v(0, 2) / 2, v(1, 0) / 2, v(1, 1),
          v(1, 2) / 2, v(2, 0) / 2, v(2, 1), v(2, 2) / 2};
}
inline Jet2Coefficients<Rational> exact_jet_from_second_form(const Mat3Q& q) {
  const Rational h(1, 2);
  return {q[0][0] * h, q[0][1], q[0][2] * h, q[1][0] * h, q[1][1],
          q[1][2] * h, q[2][0] * h, q[2][1], q[2][2] * h};
}

/// Curvature parabola eta(y) = L + 2 M y + N y^2 with its shape, Aff_p,
/// E_p and stratum.
inline ParabolaProfile build_parabola(const SecondForm& sf, const Tolerances& tol = {}) {
  ParabolaProfile pp;
  pp.L = sf.l();
  pp.M = sf.m();
  pp.N = sf.n();
  pp.exact = sf.is_exact();

  detail::ShapeOracle o;
  o.d = {pp.L, pp.M, pp.N};
  o.scale = sf.values.cwiseAbs().maxCoeff();
  o.eps = tol.eps_rank;
  if (sf.exact) o.q = std::array<Vec3Q, 3>{column(*sf.exact, 0), column(*sf.exact, 1), column(*sf.exact, 2)};
  enum { kL = 0, kM = 1, kN = 2 };

  if (!o.parallel(kM, kN)) {
    pp.shape = Shape::NondegenerateParabola;
  } else if (!o.zero(kN)) {
    pp.shape = Shape::HalfLine;
  } else if (!o.zero(kM)) {
    pp.shape = Shape::Line;
  } else {
    pp.shape = Shape::Point;
  }

  switch (pp.shape) {
    case Shape::NondegenerateParabola: {
      const Vec3 normal = detail::unit_normal(pp.M, pp.N);
      pp.ep = detail::plane_with_normal(normal, true);
      pp.aff.directions = {pp.ep.b1, pp.ep.b2};
      pp.aff.base = pp.L.dot(normal) * normal;
      break;
    }
    case Shape::HalfLine: {
      double mu = pp.M.dot(pp.N) / pp.N.squaredNorm();
      if (o.q) {
        const auto& q = *o.q;
        const Rational muq = dot(q[kM], q[kN]) / dot(q[kN], q[kN]);
        mu = to_double(muq);
        Vec3Q v{q[kL][0] - muq * muq * q[kN][0], q[kL][1] - muq * muq * q[kN][1],
                q[kL][2] - muq * muq * q[kN][2]};
        pp.vertex_is_origin = is_zero(v);
        pp.vertex = to_eigen(v);
      } else {
        pp.vertex = pp.L - mu * mu * pp.N;
        pp.vertex_is_origin = pp.vertex.norm() <= o.eps * o.scale;
      }
      pp.vertex_param = -mu;
      pp.radial = o.parallel(kL, kN);
      const Vec3 dir = pp.N.normalized();
      pp.aff.directions = {dir};
      pp.aff.base = pp.L - pp.L.dot(dir) * dir;
      pp.ep = pp.radial ? detail::plane_through_direction(dir, false)
                        : detail::plane_with_normal(detail::unit_normal(pp.L, pp.N), true);
      break;
    }
    case Shape::Line: {
      pp.radial = o.parallel(kL, kM);
      const Vec3 dir = pp.M.normalized();
      pp.aff.directions = {dir};
      pp.aff.base = pp.L - pp.L.dot(dir) * dir;
      pp.ep = pp.radial ? detail::plane_through_direction(dir, false)
                        : detail::plane_with_normal(detail::unit_normal(pp.L, pp.M), true);
      break;
    }
    case Shape::Point: {
      pp.vertex = pp.L;
      pp.vertex_is_origin = o.zero(kL);
      pp.radial = true;
      pp.aff.base = pp.L;
      pp.ep = pp.vertex_is_origin ? detail::plane_with_normal(Vec3::UnitZ(), false)
                                  : detail::plane_through_direction(pp.L, false);
      break;
    }
  }

  pp.orbit = sf.exact ? classify_two_jet(exact_jet_from_second_form(*sf.exact))
                      : classify_two_jet(jet_from_second_form(sf), tol);
  pp.stratum = rank_second_form(sf, tol);
  return pp;
}

/// Witnesses of the reduction of a 2-jet to its R^2 x O(4) normal form: the
/// source change (x, y) -> (x, s x + t y) and a rotation of the normal space
/// whose rows are the new axes.
struct NormalFormReduction {
  Orbit orbit = Orbit::Zero;
  Jet2Coefficients<double> normal_form;
  double s = 0.0;
  double t = 1.0;
  Mat3 rotation = Mat3::Identity();
  double reconstruction_error = 0.0;
};

/// Applies (x, y) -> (x, s x + t y) then the normal-space rotation to a raw 2-jet.
inline Jet2Coefficients<double> apply_jet2_witness(const Jet2Coefficients<double>& j, double s,
                                                   double t, const Mat3& rotation) {
  auto vec = [](const std::array<double, 3>& a) { return Vec3(a[0], a[1], a[2]); };
  const Vec3 A = vec(j.x2());
  const Vec3 B = vec(j.xy());
  const Vec3 C = vec(j.y2());
  const Vec3 A2 = rotation * (A + s * B + s * s * C);
  const Vec3 B2 = rotation * (t * B + 2.0 * s * t * C);
  const Vec3 C2 = rotation * (t * t * C);
  return Jet2Coefficients<double>::from_vectors({A2(0), A2(1), A2(2)}, {B2(0), B2(1), B2(2)},
                                                {C2(0), C2(1), C2(2)});
}

inline double max_abs_difference(const Jet2Coefficients<double>& a,
                                 const Jet2Coefficients<double>& b) {
  const std::array<double, 9> d{a.a20 - b.a20, a.a11 - b.a11, a.a02 - b.a02,
                                a.b20 - b.b20, a.b11 - b.b11, a.b02 - b.b02,
                                a.c20 - b.c20, a.c11 - b.c11, a.c02 - b.c02};
  double m = 0.0;
  for (double v : d) m = std::max(m, std::abs(v));
  return m;
}

/// Reduces a 2-jet with source changes and target isometries to
///   (x, xy, b20 x^2 + b11 xy + b02 y^2, c20 x^2), b02 > 0   orbit (x,xy,y^2,0)
///   (x, a20 x^2 + y^2, b20 x^2, 0)                          orbit (x,y^2,0,0)
///   (x, xy, b20 x^2, 0)                                     orbit (x,xy,0,0)
///   (x, 0, b20 x^2, 0)                                      orbit (x,0,0,0)
inline NormalFormReduction reduce_to_normal_form(const Jet2Coefficients<double>& j,
                                                 const Tolerances& tol = {}) {
  NormalFormReduction r;
  r.orbit = classify_two_jet(j, tol);
  auto vec = [](const std::array<double, 3>& a) { return Vec3(a[0], a[1], a[2]); };
  const Vec3 A = vec(j.x2());
  const Vec3 B = vec(j.xy());
  const Vec3 C = vec(j.y2());
  const double scale = std::max({A.cwiseAbs().maxCoeff(), B.cwiseAbs().maxCoeff(),
                                 C.cwiseAbs().maxCoeff()});
  auto small = [&](const Vec3& v) { return v.norm() <= tol.eps_rank * std::max(scale, 1e-300); };
  Vec3 f1;
  Vec3 f2;
  switch (r.orbit) {
    case Orbit::XY_Y2: {
      f2 = C.normalized();
      const Vec3 b_perp = B - B.dot(f2) * f2;
      f1 = b_perp.normalized();
      r.t = 1.0 / B.dot(f1);
      r.s = -A.dot(f1) / B.dot(f1);
      break;
    }
    case Orbit::Y2: {
      f1 = C.normalized();
      r.s = -B.dot(C) / (2.0 * C.squaredNorm());
      r.t = 1.0 / std::sqrt(C.norm());
      const Vec3 a2 = A + r.s * B + r.s * r.s * C;
      const Vec3 rest = a2 - a2.dot(f1) * f1;
      f2 = small(rest) ? lowest_axis_completion({f1}) : Vec3(rest.normalized());
      break;
    }
    case Orbit::XY: {
      f1 = B.normalized();
      r.t = 1.0 / B.norm();
      r.s = -A.dot(B) / B.squaredNorm();
      const Vec3 a2 = A + r.s * B;
      f2 = small(a2) ? lowest_axis_completion({f1}) : Vec3(a2.normalized());
      break;
    }
    case Orbit::Zero: {
      f2 = small(A) ? Vec3::UnitY() : Vec3(A.normalized());
      f1 = lowest_axis_completion({f2});
      break;
    }
  }
  const Vec3 f3 = f1.cross(f2);
  r.rotation.row(0) = f1;
  r.rotation.row(1) = f2;
  r.rotation.row(2) = f3;
  Jet2Coefficients<double> out = apply_jet2_witness(j, r.s, r.t, r.rotation);
  // Entries the normal form forces to vanish are set to exact zeros.
  Jet2Coefficients<double> nf;
  switch (r.orbit) {
    case Orbit::XY_Y2:
      nf.a11 = 1.0;
      nf.b20 = out.b20;
      nf.b11 = out.b11;
      nf.b02 = out.b02;
      nf.c20 = out.c20;
      break;
    case Orbit::Y2:
      nf.a20 = out.a20;
      nf.a02 = 1.0;
      nf.b20 = out.b20;
      break;
    case Orbit::XY:
      nf.a11 = 1.0;
      nf.b20 = out.b20;
      break;
    case Orbit::Zero:
      nf.b20 = out.b20;
      break;
  }
  r.normal_form = nf;
  r.reconstruction_error = max_abs_difference(out, nf);
  return r;
}

/// Samples eta(y) in the target coordinates of the input germ.
struct ParabolaSample {
  double y;
  Vec4 point;
};

inline std::vector<ParabolaSample> sample_parabola(const ParabolaProfile& pp,
                                                   const NormalFrame& frame, double lo, double hi,
                                                   int samples) {
  std::vector<ParabolaSample> out;
  if (samples <= 0) return out;
  out.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    const double y = samples == 1 ? lo : lo + (hi - lo) * k / (samples - 1);
    out.push_back({y, frame * pp.eta(y)});
  }
  return out;
}

}  // namespace corank

#endif  // CORANK_PARABOLA_HPP_
