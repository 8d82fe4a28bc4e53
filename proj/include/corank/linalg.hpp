#ifndef CORANK_LINALG_HPP_
#define CORANK_LINALG_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "corank/rational.hpp"

namespace corank {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

using Vec3Q = std::array<Rational, 3>;
using Mat3Q = std::array<Vec3Q, 3>;  // row-major

inline Vec3Q cross(const Vec3Q& a, const Vec3Q& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline Rational dot(const Vec3Q& a, const Vec3Q& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline bool is_zero(const Vec3Q& a) { return a[0] == 0 && a[1] == 0 && a[2] == 0; }
inline Vec3 to_eigen(const Vec3Q& a) {
  return {to_double(a[0]), to_double(a[1]), to_double(a[2])};
}
inline Mat3 to_eigen(const Mat3Q& m) {
  Mat3 out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out(r, c) = to_double(m[r][c]);
  return out;
}
inline Vec3Q column(const Mat3Q& m, int c) { return {m[0][c], m[1][c], m[2][c]}; }

inline Rational det(const Mat3Q& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// Rank by fraction-exact Gaussian elimination.
template <std::size_t R, std::size_t C>
int exact_rank(std::array<std::array<Rational, C>, R> m) {
  int rank = 0;
  for (std::size_t col = 0; col < C && rank < static_cast<int>(R); ++col) {
    std::size_t pivot = R;
    for (std::size_t r = rank; r < R; ++r) {
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == R) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = 0; r < R; ++r) {
      if (r == static_cast<std::size_t>(rank) || m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[rank][col];
      for (std::size_t k = col; k < C; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// Numeric rank: singular values above eps_rank * sigma_max.
template <typename Derived>
int numeric_rank(const Eigen::MatrixBase<Derived>& m, double eps_rank) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m.derived().template cast<double>());
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (int k = 0; k < s.size(); ++k) {
    if (s(k) > eps_rank * s(0)) ++rank;
  }
  return rank;
}

/// Orthonormal basis (columns) of the null space of m, decided at eps_rank.
inline Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double eps_rank) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double top = s.size() > 0 ? s(0) : 0.0;
  int rank = 0;
  for (int k = 0; k < s.size(); ++k) {
    if (top > 0.0 && s(k) > eps_rank * top) ++rank;
  }
  const int n = static_cast<int>(m.cols());
  return svd.matrixV().rightCols(n - rank);
}

/// Orthogonal projector onto the column span of an orthonormal basis.
inline Eigen::MatrixXd projector(const Eigen::MatrixXd& basis, int dim) {
  if (basis.cols() == 0) return Eigen::MatrixXd::Zero(dim, dim);
  return basis * basis.transpose();
}

/// Two-dimensional cross product (signed area).
inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Parallel test relative to the vector sizes.
inline bool nearly_parallel(const Vec3& a, const Vec3& b, double eps) {
  return a.cross(b).norm() <= eps * std::max(1.0, a.norm() * b.norm());
}

/// Generalized cross product in R^4: the vector w with <w, v> = det(a, b, c, v).
inline Vec4 cross4(const Vec4& a, const Vec4& b, const Vec4& c) {
  Vec4 w;
  for (int k = 0; k < 4; ++k) {
    Mat4 m;
    m.col(0) = a;
    m.col(1) = b;
    m.col(2) = c;
    m.col(3) = Vec4::Unit(k);
    w(k) = m.determinant();
  }
  return w;
}

/// Householder reflection H (symmetric, orthogonal) with H v = |v| e_k.
inline Eigen::MatrixXd householder_to_axis(const Eigen::VectorXd& v, int k) {
  const int n = static_cast<int>(v.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd target = Eigen::VectorXd::Zero(n);
  target(k) = v.norm();
  Eigen::VectorXd w = v - target;
  const double wn = w.squaredNorm();
  if (wn <= 1e-300) return h;
  h -= 2.0 * w * w.transpose() / wn;
  return h;
}

/// Rotation (det +1) taking v to |v| e_0. The Householder reflection is
/// composed with a sign flip of the last axis when needed.
inline Mat4 rotation_to_first_axis(const Vec4& v) {
  Mat4 h = householder_to_axis(v, 0);
  if (h.determinant() < 0) h.row(3) *= -1.0;
  return h;
}

/// Extends a set of orthonormal columns in R^3 by the normal-frame axis of
/// lowest index whose residual against their span exceeds one half,
/// re-orthonormalized. Such an axis always exists for fewer than three
/// columns.
inline Vec3 lowest_axis_completion(const std::vector<Vec3>& ortho) {
  for (int k = 0; k < 3; ++k) {
    Vec3 r = Vec3::Unit(k);
    for (const auto& q : ortho) r -= r.dot(q) * q;
    if (r.norm() > 0.5) return r.normalized();
  }
  return Vec3::Zero();
}

/// Makes the first coordinate with magnitude above tol positive.
template <typename V>
V canonical_sign(V v, double tol = 1e-12) {
  for (int k = 0; k < v.size(); ++k) {
    if (std::abs(v(k)) > tol) {
      if (v(k) < 0) v = -v;
      break;
    }
  }
  return v;
}

}  // namespace corank

#endif  // CORANK_LINALG_HPP_
