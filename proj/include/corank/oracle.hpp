#ifndef CORANK_ORACLE_HPP_
#define CORANK_ORACLE_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "corank/adapted_frame.hpp"
#include "corank/error.hpp"
#include "corank/forms.hpp"
#include "corank/linalg.hpp"
#include "corank/parabola.hpp"
#include "corank/tolerances.hpp"

namespace corank {

/// Distance from the origin to the least-squares affine hull of a point
/// cloud. Singular values below eps_rank times the size of the cloud count
/// as zero.
inline double affine_hull_distance(const std::vector<Eigen::VectorXd>& points,
                                   double eps_rank = 1e-9) {
  if (points.size() < 3) throw InputError("affine hull oracle needs at least 3 points");
  const auto dim = points.front().size();
  Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
  for (const auto& p : points) centroid += p;
  centroid /= static_cast<double>(points.size());
  Eigen::MatrixXd centered(points.size(), dim);
  for (std::size_t k = 0; k < points.size(); ++k) centered.row(k) = (points[k] - centroid).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  double scale = 0.0;
  for (const auto& p : points) scale = std::max(scale, p.norm());
  scale *= std::sqrt(static_cast<double>(points.size()));
  int rank = 0;
  for (int k = 0; k < s.size(); ++k) {
    if (s(k) > eps_rank * scale) ++rank;
  }
  const Eigen::MatrixXd dirs = svd.matrixV().leftCols(rank);
  const Eigen::VectorXd foot = centroid - dirs * (dirs.transpose() * centroid);
  return foot.norm();
}

inline double affine_hull_distance(const std::vector<Vec3>& points, double eps_rank = 1e-9) {
  std::vector<Eigen::VectorXd> p(points.begin(), points.end());
  return affine_hull_distance(p, eps_rank);
}

/// eta(y) on an evenly spaced grid.
inline std::vector<Vec3> sample_eta(const ParabolaProfile& pp, double lo, double hi, int n) {
  std::vector<Vec3> out;
  for (int k = 0; k < n; ++k) out.push_back(pp.eta(lo + (hi - lo) * k / (n - 1)));
  return out;
}

struct ScanOptions {
  double y_min = -50.0;
  double y_max = 50.0;
  int y_samples = 100001;
  int nu_samples = 720;
  double threshold = 1e-6;
  double merge = 1e-4;
  double saturation = 0.99;
};

struct ScanResult {
  bool all = false;
  std::vector<double> roots;  // cluster centers
  bool infinity = false;
  double infinity_residual = 0.0;
  std::vector<double> residuals_at_roots;

  int count() const { return all ? -1 : static_cast<int>(roots.size()) + (infinity ? 1 : 0); }
};

namespace detail {

template <typename F>
double golden_min(F&& f, double a, double b, int iters, double* arg = nullptr) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int k = 0; k < iters; ++k) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  const double x = fc < fd ? c : d;
  if (arg) *arg = x;
  return std::min(fc, fd);
}

/// min over unit nu in E_p of max over v in {e_x, e_y} of |II_nu(u, v)|.
class DefinitionResidual {
 public:
  DefinitionResidual(const SecondForm& sf, const EpPlane& ep, int nu_samples)
      : h1_(sf.along(ep.b1)), h2_(sf.along(ep.b2)), nu_samples_(nu_samples) {
    const double step = std::numbers::pi / nu_samples_;
    for (int k = 0; k < nu_samples_; ++k) {
      cos_.push_back(std::cos(k * step));
      sin_.push_back(std::sin(k * step));
    }
  }

  double operator()(const Vec2& u_raw) const {
    const Vec2 u = u_raw.normalized();
    const Vec2 a = h1_ * u;
    const Vec2 b = h2_ * u;
    auto value = [&](double phi) {
      const Vec2 w = std::cos(phi) * a + std::sin(phi) * b;
      return w.cwiseAbs().maxCoeff();
    };
    const double step = std::numbers::pi / nu_samples_;
    double best = std::numeric_limits<double>::infinity();
    int best_k = 0;
    for (int k = 0; k < nu_samples_; ++k) {
      const double v = (cos_[k] * a + sin_[k] * b).cwiseAbs().maxCoeff();
      if (v < best) {
        best = v;
        best_k = k;
      }
    }
    const double phi0 = best_k * step;
    return std::min(best, golden_min(value, phi0 - step, phi0 + step, 60));
  }

 private:
  Mat2 h1_;
  Mat2 h2_;
  int nu_samples_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

}  // namespace detail

/// Brute-force search for tangent directions u = (1, y) admitting a unit
/// nu in E_p with II_nu(u, .) = 0, plus the direction (0, 1).
inline ScanResult asymptotic_scan(const SecondForm& sf, const EpPlane& ep,
                                  const ScanOptions& opt = {}) {
  ScanResult out;
  const detail::DefinitionResidual residual(sf, ep, opt.nu_samples);
  const double scale = std::max(1.0, sf.values.cwiseAbs().maxCoeff());
  const double tol = opt.threshold * scale;
  const int n = opt.y_samples;
  const double dy = (opt.y_max - opt.y_min) / (n - 1);
  std::vector<double> r(n);
  int below = 0;
  for (int k = 0; k < n; ++k) {
    r[k] = residual(Vec2(1.0, opt.y_min + k * dy));
    if (r[k] <= tol) ++below;
  }
  out.infinity_residual = residual(Vec2(0.0, 1.0));
  out.infinity = out.infinity_residual <= tol;
  if (below >= opt.saturation * n) {
    out.all = true;
    return out;
  }
  std::vector<double> accepted;
  for (int k = 0; k < n; ++k) {
    const bool left = k == 0 || r[k] <= r[k - 1];
    const bool right = k == n - 1 || r[k] < r[k + 1];
    if (!(left && right)) continue;
    const double y0 = opt.y_min + k * dy;
    double y = y0;
    const double v = detail::golden_min([&](double t) { return residual(Vec2(1.0, t)); },
                                        y0 - dy, y0 + dy, 80, &y);
    if (v <= tol) {
      accepted.push_back(y);
      out.residuals_at_roots.push_back(v);
    }
  }
  std::sort(accepted.begin(), accepted.end());
  std::vector<std::vector<double>> clusters;
  for (double y : accepted) {
    if (!clusters.empty() && y - clusters.back().back() <= opt.merge) clusters.back().push_back(y);
    else clusters.push_back({y});
  }
  for (const auto& c : clusters) {
    double s = 0.0;
    for (double y : c) s += y;
    out.roots.push_back(s / static_cast<double>(c.size()));
  }
  return out;
}

/// Central-difference Hessian at the origin of (x, y) -> <f(x, y), nu>.
inline Mat2 finite_difference_hessian(const MapGermR4<double>& f, const Vec4& nu,
                                      double step = 1e-4) {
  auto h = [&](double x, double y) {
    double s = 0.0;
    for (int k = 0; k < 4; ++k) {
      if (nu(k) != 0.0) s += nu(k) * f[k].evaluate_double(x, y);
    }
    return s;
  };
  const double e = step;
  const double h00 = h(0.0, 0.0);
  const double hxx = (h(e, 0.0) - 2.0 * h00 + h(-e, 0.0)) / (e * e);
  const double hyy = (h(0.0, e) - 2.0 * h00 + h(0.0, -e)) / (e * e);
  const double hxy = (h(e, e) - h(e, -e) - h(-e, e) + h(-e, -e)) / (4.0 * e * e);
  Mat2 m;
  m << hxx, hxy, hxy, hyy;
  return m;
}

/// Same, with nu given in the adapted normal frame of g.
inline Mat2 finite_difference_hessian(const AdaptedGerm& g, const Vec3& nu, double step = 1e-4) {
  Vec4 v;
  v << 0.0, nu;
  return finite_difference_hessian(g.germ, v, step);
}

/// One line of a verification subreport.
struct VerificationCheck {
  std::string name;
  double closed_form = 0.0;
  double oracle = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::vector<VerificationCheck> checks;

  void add(std::string name, double closed, double oracle, double tol) {
    checks.push_back({std::move(name), closed, oracle, tol, std::abs(closed - oracle) <= tol});
  }
  void add_flag(std::string name, bool ok) {
    checks.push_back({std::move(name), ok ? 1.0 : 0.0, 1.0, 0.0, ok});
  }
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
  }
};

}  // namespace corank

#endif  // CORANK_ORACLE_HPP_
