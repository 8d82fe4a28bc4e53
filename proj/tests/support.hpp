#ifndef CORANK_TESTS_SUPPORT_HPP_
#define CORANK_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "corank/corank.hpp"

namespace testsupport {

using corank::MapGermR4;
using corank::Mat2;
using corank::Mat3;
using corank::Mat4;
using corank::PolyD;
using corank::PolyQ;
using corank::Rational;
using corank::Vec2;
using corank::Vec3;
using corank::Vec4;

/// Small random rationals with a bias towards zero and simple values.
class RationalSource {
 public:
  explicit RationalSource(std::uint64_t seed) : rng_(seed) {}

  Rational any(int range = 3) {
    std::uniform_int_distribution<int> num(-range, range);
    std::uniform_int_distribution<int> den(1, 3);
    return Rational(num(rng_), den(rng_));
  }
  Rational nonzero(int range = 3) {
    Rational q;
    do q = any(range);
    while (q == 0);
    return q;
  }
  Rational sparse(double p_zero = 0.3) {
    std::bernoulli_distribution z(p_zero);
    return z(rng_) ? Rational(0) : any();
  }
  int pick(int n) {
    std::uniform_int_distribution<int> d(0, n - 1);
    return d(rng_);
  }
  double uniform(double a, double b) {
    std::uniform_real_distribution<double> d(a, b);
    return d(rng_);
  }
  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

using Vec3Q = corank::Vec3Q;

inline Vec3Q random_vec(RationalSource& src) { return {src.sparse(), src.sparse(), src.sparse()}; }
inline Vec3Q nonzero_vec(RationalSource& src) {
  Vec3Q v;
  do v = random_vec(src);
  while (corank::is_zero(v));
  return v;
}
inline Vec3Q scaled(const Vec3Q& v, const Rational& s) { return {v[0] * s, v[1] * s, v[2] * s}; }
inline Vec3Q added(const Vec3Q& a, const Vec3Q& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

/// Raw 2-jet (x^2, xy, y^2 coefficient vectors over components 2..4) drawn
/// from one of seven families that between them reach every orbit and every
/// radial / vertex configuration.
inline corank::Jet2Coefficients<Rational> random_jet(RationalSource& src, int family = -1) {
  if (family < 0) family = src.pick(7);
  Vec3Q A = random_vec(src);
  Vec3Q B{0, 0, 0};
  Vec3Q C{0, 0, 0};
  switch (family) {
    case 0:  // generic
      B = random_vec(src);
      C = random_vec(src);
      break;
    case 1:  // B parallel to C
      C = nonzero_vec(src);
      B = scaled(C, src.any());
      break;
    case 2:  // B parallel to C, A on the same line
      C = nonzero_vec(src);
      B = scaled(C, src.any());
      A = scaled(C, src.any());
      break;
    case 3:  // C = 0
      B = nonzero_vec(src);
      break;
    case 4:  // C = 0, A parallel to B
      B = nonzero_vec(src);
      A = scaled(B, src.any());
      break;
    case 5:  // only A
      break;
    default:  // half-line with vertex at the origin: A = mu^2 C, B = mu C
    {
      C = nonzero_vec(src);
      const Rational mu = src.any();
      B = scaled(C, mu);
      A = scaled(C, mu * mu);
      break;
    }
  }
  return corank::Jet2Coefficients<Rational>::from_vectors(A, B, C);
}

/// Prenormal germ (x, f2, f3, f4) with the given 2-jet and optional random
/// cubic terms.
inline MapGermR4<Rational> germ_from_jet(const corank::Jet2Coefficients<Rational>& j, int order,
                                          RationalSource* cubic = nullptr) {
  std::array<PolyQ, 4> c{PolyQ::var(corank::Var::x, order), PolyQ(order), PolyQ(order),
                         PolyQ(order)};
  const std::array<std::array<Rational, 3>, 3> rows{std::array<Rational, 3>{j.a20, j.a11, j.a02},
                                                    std::array<Rational, 3>{j.b20, j.b11, j.b02},
                                                    std::array<Rational, 3>{j.c20, j.c11, j.c02}};
  for (int k = 0; k < 3; ++k) {
    c[k + 1].set(2, 0, rows[k][0]);
    c[k + 1].set(1, 1, rows[k][1]);
    c[k + 1].set(0, 2, rows[k][2]);
    if (cubic && order >= 3) {
      for (int i = 0; i <= 3; ++i) c[k + 1].set(i, 3 - i, cubic->sparse(0.5));
    }
  }
  return MapGermR4<Rational>(c);
}

inline Mat4 random_rotation4(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = n(rng);
  Eigen::HouseholderQR<Mat4> qr(g);
  Mat4 q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

inline Mat3 random_rotation3(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = n(rng);
  Eigen::HouseholderQR<Mat3> qr(g);
  Mat3 q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

inline Mat2 random_linear2(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Mat2 a;
  do {
    a << u(rng), u(rng), u(rng), u(rng);
  } while (std::abs(a.determinant()) < 0.3);
  return a;
}

/// R * f(A (X, Y)) computed in floating point.
inline MapGermR4<double> transform(const MapGermR4<double>& f, const Mat2& a, const Mat4& r) {
  const int order = f.order();
  const PolyD X = PolyD::var(corank::Var::x, order);
  const PolyD Y = PolyD::var(corank::Var::y, order);
  const PolyD x = X * a(0, 0) + Y * a(0, 1);
  const PolyD y = X * a(1, 0) + Y * a(1, 1);
  std::array<PolyD, 4> c;
  for (int k = 0; k < 4; ++k) c[k] = f[k].compose(x, y);
  std::array<PolyD, 4> out{PolyD(order), PolyD(order), PolyD(order), PolyD(order)};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i] += c[j] * r(i, j);
  return MapGermR4<double>(out);
}

/// Polynomial over the rationals as a plain exponent map, multiplied by the
/// schoolbook rule without truncation.
using NaivePoly = std::map<std::pair<int, int>, Rational>;

inline NaivePoly naive_mul(const NaivePoly& a, const NaivePoly& b) {
  NaivePoly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) out[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
  return out;
}

inline NaivePoly naive_pow(const NaivePoly& a, int n) {
  NaivePoly out{{{0, 0}, Rational(1)}};
  for (int k = 0; k < n; ++k) out = naive_mul(out, a);
  return out;
}

inline bool matches_truncated(const PolyQ& p, const NaivePoly& q) {
  for (const auto& [e, c] : q) {
    if (e.first + e.second > p.order()) continue;
    if (p.coeff(e.first, e.second) != c) return false;
  }
  for (const auto& [m, c] : p.terms()) {
    auto it = q.find({m.i, m.j});
    if (it == q.end() || it->second != c) return false;
  }
  return true;
}

/// Distance from the origin to L + span(dirs) from the Gram normal equations.
inline double gram_distance(const Vec3& L, const std::vector<Vec3>& dirs) {
  if (dirs.empty()) return L.norm();
  const int n = static_cast<int>(dirs.size());
  Eigen::MatrixXd g(n, n);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    b(i) = dirs[i].dot(L);
    for (int j = 0; j < n; ++j) g(i, j) = dirs[i].dot(dirs[j]);
  }
  const Eigen::VectorXd c = g.ldlt().solve(b);
  Vec3 r = L;
  for (int i = 0; i < n; ++i) r -= c(i) * dirs[i];
  return r.norm();
}

/// Central differences of a germ's components at the origin.
inline std::pair<Vec4, Vec4> numeric_first_derivatives(const MapGermR4<double>& f, double h = 1e-5) {
  Vec4 fx;
  Vec4 fy;
  for (int k = 0; k < 4; ++k) {
    fx(k) = (f[k].evaluate_double(h, 0) - f[k].evaluate_double(-h, 0)) / (2 * h);
    fy(k) = (f[k].evaluate_double(0, h) - f[k].evaluate_double(0, -h)) / (2 * h);
  }
  return {fx, fy};
}

/// Distance from p to the curve c(y) = L + 2yM + y^2 N, minimized over a
/// wide parameter window by sampling and Newton refinement.
inline double distance_to_parabola(const Vec3& p, const Vec3& L, const Vec3& M, const Vec3& N,
                                   double lo = -200.0, double hi = 200.0) {
  auto d2 = [&](double y) { return (L + 2 * y * M + y * y * N - p).squaredNorm(); };
  const int n = 40001;
  double best_y = lo;
  double best = d2(lo);
  for (int k = 1; k < n; ++k) {
    const double y = lo + (hi - lo) * k / (n - 1);
    const double v = d2(y);
    if (v < best) {
      best = v;
      best_y = y;
    }
  }
  // Golden-section refinement inside the bracketing grid cells.
  const double cell = (hi - lo) / (n - 1);
  double a = best_y - cell;
  double b = best_y + cell;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  for (int it = 0; it < 200 && b - a > 1e-16; ++it) {
    if (d2(c) < d2(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - g * (b - a);
    d = a + g * (b - a);
  }
  best = std::min(best, d2(0.5 * (a + b)));
  double y = best_y;
  for (int it = 0; it < 50; ++it) {
    const Vec3 r = L + 2 * y * M + y * y * N - p;
    const Vec3 c1 = 2 * M + 2 * y * N;
    const Vec3 c2 = 2 * N;
    const double g = 2 * r.dot(c1);
    const double h = 2 * (c1.dot(c1) + r.dot(c2));
    if (h <= 0) break;
    const double step = g / h;
    y -= step;
    if (std::abs(step) < 1e-15) break;
  }
  return std::sqrt(std::min(best, d2(y)));
}

/// Germ with rational coefficients rotated in the normal space only:
/// (x, Q (f2, f3, f4)).
inline MapGermR4<double> rotate_normal(const MapGermR4<double>& f, const Mat3& q) {
  Mat4 r = Mat4::Identity();
  r.bottomRightCorner<3, 3>() = q;
  std::array<PolyD, 4> out{f[0], PolyD(f.order()), PolyD(f.order()), PolyD(f.order())};
  for (int i = 1; i < 4; ++i)
    for (int j = 1; j < 4; ++j) out[i] += f[j] * r(i, j);
  return MapGermR4<double>(out);
}

/// f(x, -y).
inline MapGermR4<double> flip_y(const MapGermR4<double>& f) {
  const PolyD X = PolyD::var(corank::Var::x, f.order());
  const PolyD Y = PolyD::var(corank::Var::y, f.order()) * -1.0;
  return MapGermR4<double>({f[0].compose(X, Y), f[1].compose(X, Y), f[2].compose(X, Y),
                            f[3].compose(X, Y)});
}

}  // namespace testsupport

#endif  // CORANK_TESTS_SUPPORT_HPP_
