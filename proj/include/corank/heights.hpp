#ifndef CORANK_HEIGHTS_HPP_
#define CORANK_HEIGHTS_HPP_

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "corank/directions.hpp"
#include "corank/forms.hpp"
#include "corank/linalg.hpp"
#include "corank/parabola.hpp"
#include "corank/tolerances.hpp"
#include "corank/umbilic.hpp"

namespace corank {

/// Hessian at the origin of h_nu = <f, nu>, nu in normal-frame coordinates.
inline Mat2 height_hessian(const SecondForm& sf, const Vec3& nu) { return sf.along(nu); }

/// A linear subspace of the normal space: orthonormal basis columns.
struct Subspace {
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(3, 0);

  int dim() const { return static_cast<int>(basis.cols()); }
  Mat3 projector() const { return basis * basis.transpose(); }
};

struct DegeneracyCone {
  Mat3 quad = Mat3::Zero();  // nu^T quad nu = det H(h_nu)
  Subspace corank2;

  double det(const Vec3& nu) const { return nu.dot(quad * nu); }
};

inline DegeneracyCone degeneracy_cone(const SecondForm& sf, const Tolerances& tol = {}) {
  DegeneracyCone dc;
  const Vec3 l = sf.l();
  const Vec3 m = sf.m();
  const Vec3 n = sf.n();
  dc.quad = 0.5 * (l * n.transpose() + n * l.transpose()) - m * m.transpose();
  const Mat3 st = sf.values.transpose();
  const int rank = rank_second_form(sf, tol);
  Eigen::JacobiSVD<Mat3> svd(st, Eigen::ComputeFullV);
  dc.corank2.basis = svd.matrixV().rightCols(3 - rank);
  return dc;
}

/// The corank-2 locus predicted from the shape of the parabola and kappa_u.
struct Corank2Verdict {
  Subspace predicted;
  Subspace computed;
  double projector_gap = 0.0;
  bool agree = false;
  std::string description;
};

inline Subspace orthogonal_complement(const std::vector<Vec3>& dirs) {
  Eigen::MatrixXd a(3, static_cast<int>(dirs.size()));
  for (std::size_t k = 0; k < dirs.size(); ++k) a.col(static_cast<int>(k)) = dirs[k];
  Subspace s;
  if (dirs.empty()) {
    s.basis = Mat3::Identity();
    return s;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU);
  s.basis = svd.matrixU().rightCols(3 - static_cast<int>(dirs.size()));
  return s;
}

inline Corank2Verdict corank2_conditions(const ParabolaProfile& pp, const DegeneracyCone& dc,
                                         const UmbilicResult& ur, const Tolerances& tol = {}) {
  Corank2Verdict v;
  const double scale = std::max({1.0, pp.L.norm(), pp.M.norm(), pp.N.norm()});
  const bool kappa_zero = ur.kappa_u <= tol.eps_rank * scale;
  switch (pp.shape) {
    case Shape::NondegenerateParabola:
      if (kappa_zero) {
        v.predicted.basis = pp.ep.normal;
        v.description = "E_p^perp";
      } else {
        v.predicted.basis = Eigen::MatrixXd::Zero(3, 0);
        v.description = "{0}";
      }
      break;
    case Shape::HalfLine:
    case Shape::Line:
      if (kappa_zero) {
        v.predicted = orthogonal_complement({pp.direction_at_infinity()});
        v.description = "Aff_p^perp";
      } else {
        v.predicted.basis = pp.ep.normal;
        v.description = "E_p^perp";
      }
      break;
    case Shape::Point:
      if (kappa_zero) {
        v.predicted.basis = Mat3::Identity();
        v.description = "N_pM";
      } else {
        v.predicted = orthogonal_complement({pp.L.normalized()});
        v.description = "line(p, Delta_p)^perp";
      }
      break;
  }
  v.computed = dc.corank2;
  if (v.predicted.dim() == v.computed.dim()) {
    v.projector_gap = (v.predicted.projector() - v.computed.projector()).cwiseAbs().maxCoeff();
    v.agree = v.projector_gap <= tol.eps_rank;
  } else {
    v.projector_gap = 1.0;
    v.agree = false;
  }
  return v;
}

/// |<eta(y), nu>| <= 1e-8 (1 + |eta(y)|) at each finite asymptotic root with
/// its binormal.
inline bool cone_parabola_orthogonality(const ParabolaProfile& pp, const BinormalSet& bs,
                                        double eps = 1e-8) {
  for (const auto& b : bs.items) {
    if (b.at_infinity) continue;
    const Vec3 e = pp.eta(b.y);
    if (std::abs(e.dot(b.nu)) > eps * (1.0 + e.norm())) return false;
  }
  return true;
}

struct ConeSample {
  double theta;
  double phi;
  int sign;
  double value;
};

/// det H(h_nu) on a polar grid of unit normals (n_theta x n_phi points).
inline std::vector<ConeSample> sample_cone(const DegeneracyCone& dc, int n_theta = 30,
                                           int n_phi = 24) {
  std::vector<ConeSample> out;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = n_theta == 1 ? 0.0 : std::numbers::pi * i / (n_theta - 1);
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / n_phi;
      const Vec3 nu(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                    std::cos(theta));
      const double d = dc.det(nu);
      out.push_back({theta, phi, d > 0 ? 1 : (d < 0 ? -1 : 0), d});
    }
  }
  return out;
}

}  // namespace corank

#endif  // CORANK_HEIGHTS_HPP_
