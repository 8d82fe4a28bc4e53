#ifndef CORANK_ANALYSIS_HPP_
#define CORANK_ANALYSIS_HPP_

#include <optional>
#include <string>

#include "corank/adapted_frame.hpp"
#include "corank/associated.hpp"
#include "corank/directions.hpp"
#include "corank/forms.hpp"
#include "corank/germ.hpp"
#include "corank/heights.hpp"
#include "corank/oracle.hpp"
#include "corank/parabola.hpp"
#include "corank/parser.hpp"
#include "corank/tolerances.hpp"
#include "corank/umbilic.hpp"

namespace corank {

struct AnalysisOptions {
  int order = kDefaultOrder;
  Tolerances tol;
  bool verify = false;
  ScanOptions scan;
};

/// Everything computed for one germ.
struct Analysis {
  std::string input;
  int order = kDefaultOrder;
  MapGermR4<Rational> germ;
  AdaptedGerm adapted;
  FirstForm first;
  SecondForm second;
  Jet2Coefficients<double> jet;
  std::optional<Jet2Coefficients<Rational>> exact_jet;
  Orbit orbit = Orbit::Zero;
  ParabolaProfile parabola;
  NormalFormReduction normal_form;
  AsymptoticSet asymptotic;
  BinormalSet binormals;
  PointType type = PointType::Inflection;
  UmbilicResult umbilic;
  bool kappa_stratum = false;
  DegeneracyCone cone;
  Corank2Verdict corank2;
  bool cone_orthogonal = false;
  bool binormals_on_cone = false;
  RegularSurfaceR5 lift;
  RegularSurfaceR4 s;
  BdeRoots s_roots;
  EllipseKind s_ellipse = EllipseKind::FlatUmbilic;
  TransferVerdict transfer;
  std::optional<VerificationReport> verification;

  bool exact() const { return adapted.exactness_flag(); }
};

/// Oracle comparisons for an analysis.
inline VerificationReport verify_analysis(const Analysis& a, const AnalysisOptions& opt) {
  const Tolerances& tol = opt.tol;
  VerificationReport rep;
  rep.add("frame_orthonormality", frame_orthonormality_error(a.adapted), 0.0, 1e-10);
  {
    const auto rec = reconstruct(a.adapted, a.germ.cast<double>());
    double gap = 0.0;
    for (int k = 0; k < 4; ++k) {
      for (int i = 0; i <= 2; ++i) {
        for (int j = 0; i + j <= 2; ++j) {
          gap = std::max(gap, std::abs(rec[k].coeff(i, j) - a.adapted.germ[k].coeff(i, j)));
        }
      }
    }
    rep.add("reconstruction_2jet", gap, 0.0, 1e-9);
  }
  rep.add("first_form_E", a.first.E, 1.0, tol.eps_jet);
  rep.add("umbilic_vs_affine_hull", a.umbilic.kappa_u, a.umbilic.oracle_value, tol.oracle_kappa);

  const ScanResult scan = asymptotic_scan(a.second, a.parabola.ep, opt.scan);
  if (a.asymptotic.all || scan.all) {
    rep.add_flag("asymptotic_scan_all", a.asymptotic.all == scan.all);
  } else {
    std::vector<double> expected;
    for (double y : a.asymptotic.finite) {
      if (y > opt.scan.y_min + 1e-3 && y < opt.scan.y_max - 1e-3) expected.push_back(y);
    }
    rep.add("asymptotic_scan_count", static_cast<double>(scan.roots.size()),
            static_cast<double>(expected.size()), 0.0);
    if (scan.roots.size() == expected.size()) {
      for (std::size_t k = 0; k < expected.size(); ++k) {
        rep.add("asymptotic_scan_root_" + std::to_string(k), scan.roots[k], expected[k],
                tol.oracle_cluster);
      }
    }
    rep.add_flag("asymptotic_scan_infinity", scan.infinity == a.asymptotic.has_infinity);
  }

  std::vector<Vec3> probes{Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ(),
                           Vec3(1.0, -2.0, 0.5).normalized()};
  for (const auto& b : a.binormals.items) probes.push_back(b.nu);
  double worst = 0.0;
  for (const auto& nu : probes) {
    const Mat2 fd = finite_difference_hessian(a.adapted, nu, tol.fd_step);
    worst = std::max(worst, (fd - height_hessian(a.second, nu)).cwiseAbs().maxCoeff());
  }
  rep.add("height_hessian_vs_finite_differences", worst, 0.0, tol.oracle_hessian);
  rep.add_flag("kappa_stratum_equivalence", a.kappa_stratum);
  rep.add_flag("corank2_locus_matches_theorem", a.corank2.agree);
  rep.add_flag("binormals_on_cone", a.binormals_on_cone);
  rep.add_flag("cone_parabola_orthogonality", a.cone_orthogonal);
  rep.add_flag("transfer_directions", a.transfer.directions_match);
  rep.add_flag("transfer_point_type", a.transfer.labels_match);
  rep.add_flag("transfer_second_form", a.transfer.second_form_match);
  rep.add_flag("orbit_matches_shape", a.orbit == orbit_of_shape(a.parabola.shape));
  return rep;
}

inline Analysis analyze(const MapGermR4<Rational>& germ, const AnalysisOptions& opt = {},
                        std::string input = {}) {
  const Tolerances& tol = opt.tol;
  Analysis a;
  a.input = input.empty() ? germ.to_string() : std::move(input);
  a.order = germ.order();
  a.germ = germ;
  a.adapted = adapt(germ, tol);
  a.first = first_form(a.adapted);
  a.second = second_form(a.adapted);
  a.jet = extract_jet2(a.adapted.germ, tol.eps_jet);
  if (a.adapted.exact) {
    a.exact_jet = extract_jet2(*a.adapted.exact);
    a.orbit = classify_two_jet(*a.exact_jet);
  } else {
    a.orbit = classify_two_jet(a.jet, tol);
  }
  a.parabola = build_parabola(a.second, tol);
  a.normal_form = reduce_to_normal_form(a.jet, tol);
  a.asymptotic = asymptotic_directions(a.parabola, a.second, tol);
  a.binormals = binormal_directions(a.parabola, a.asymptotic);
  a.type = point_type(a.asymptotic);
  a.umbilic = umbilic_curvature(a.parabola, tol);
  a.kappa_stratum = kappa_stratum_check(a.parabola, a.umbilic, tol);
  a.cone = degeneracy_cone(a.second, tol);
  a.corank2 = corank2_conditions(a.parabola, a.cone, a.umbilic, tol);
  a.cone_orthogonal = cone_parabola_orthogonality(a.parabola, a.binormals);
  a.binormals_on_cone = true;
  const double scale = std::max(1.0, a.second.values.cwiseAbs().maxCoeff());
  for (const auto& b : a.binormals.items) {
    if (std::abs(a.cone.det(b.nu)) > 1e-8 * scale * scale ||
        !a.parabola.ep.contains(b.nu, 1e-10)) {
      a.binormals_on_cone = false;
    }
  }
  a.lift = lift_to_r5(a.adapted);
  a.s = project_to_s(a.adapted, a.parabola);
  a.s_roots = s_asymptotic_directions(a.s, tol);
  a.s_ellipse = classify_ellipse(a.s, tol);
  a.transfer = verify_transfer(a.second, a.parabola, a.asymptotic, a.binormals, a.s, a.lift,
                               1e-7, tol);
  if (opt.verify) a.verification = verify_analysis(a, opt);
  return a;
}

inline Analysis analyze(const std::string& text, const AnalysisOptions& opt = {},
                        const ParameterMap& params = {}) {
  return analyze(parse_map_germ(text, opt.order, params), opt, text);
}

}  // namespace corank

#endif  // CORANK_ANALYSIS_HPP_
