#ifndef CORANK_REPORT_HPP_
#define CORANK_REPORT_HPP_

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "corank/analysis.hpp"

namespace corank {

using Json = nlohmann::ordered_json;

/// Fixed formatting: 12 significant digits, no negative zero.
inline std::string format_number(double v) {
  if (v == 0.0 || std::abs(v) < 1e-300) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

inline double round12(double v) {
  const double r = std::stod(format_number(v));
  return r == 0.0 ? 0.0 : r;
}

namespace detail {

template <typename V>
Json vec_json(const V& v) {
  Json a = Json::array();
  for (int k = 0; k < v.size(); ++k) a.push_back(round12(v(k)));
  return a;
}

template <typename M>
Json rows_json(const M& m) {
  Json a = Json::array();
  for (int r = 0; r < m.rows(); ++r) a.push_back(vec_json(Eigen::VectorXd(m.row(r).transpose())));
  return a;
}

template <typename M>
Json cols_json(const M& m) {
  Json a = Json::array();
  for (int c = 0; c < m.cols(); ++c) a.push_back(vec_json(Eigen::VectorXd(m.col(c))));
  return a;
}

inline Json jet_json(const Jet2Coefficients<double>& j) {
  Json o;
  o["a20"] = round12(j.a20);
  o["a11"] = round12(j.a11);
  o["a02"] = round12(j.a02);
  o["b20"] = round12(j.b20);
  o["b11"] = round12(j.b11);
  o["b02"] = round12(j.b02);
  o["c20"] = round12(j.c20);
  o["c11"] = round12(j.c11);
  o["c02"] = round12(j.c02);
  return o;
}

inline Json exact_jet_json(const Jet2Coefficients<Rational>& j) {
  Json o;
  o["a20"] = to_string(j.a20);
  o["a11"] = to_string(j.a11);
  o["a02"] = to_string(j.a02);
  o["b20"] = to_string(j.b20);
  o["b11"] = to_string(j.b11);
  o["b02"] = to_string(j.b02);
  o["c20"] = to_string(j.c20);
  o["c11"] = to_string(j.c11);
  o["c02"] = to_string(j.c02);
  return o;
}

inline std::string chopped_germ_string(const MapGermR4<double>& g) {
  std::string out = "(";
  for (int k = 0; k < 4; ++k) out += (k ? ", " : "") + g[k].chopped(1e-15).to_string();
  return out + ")";
}

inline Json count_json(int c) { return c < 0 ? Json("all") : Json(c); }

}  // namespace detail

inline std::string stratum_label(int rank) { return "M" + std::to_string(rank); }

inline Json to_json(const Analysis& a) {
  using detail::cols_json;
  using detail::rows_json;
  using detail::vec_json;
  Json r;
  r["input"] = {{"germ", a.input}, {"order", a.order}};
  r["path"] = a.exact() ? "exact" : "numeric";

  const AdaptedGerm& ad = a.adapted;
  Json adj;
  adj["identity"] = ad.identity;
  adj["exact"] = ad.exactness_flag();
  adj["adapted_germ"] = ad.exact ? ad.exact->to_string() : detail::chopped_germ_string(ad.germ);
  adj["tangent"] = vec_json(ad.tangent);
  adj["normal_frame"] = cols_json(ad.normal_frame);
  adj["target_rotation"] = rows_json(ad.target_rotation);
  adj["source_linear"] = rows_json(ad.source_change.linear);
  adj["orthonormality_error"] = round12(frame_orthonormality_error(ad));
  r["adaptation"] = adj;

  r["jet2"] = a.exact_jet ? detail::exact_jet_json(*a.exact_jet) : detail::jet_json(a.jet);
  r["orbit"] = to_string(a.orbit);
  r["first_form"] = {{"E", round12(a.first.E)}, {"F", round12(a.first.F)}, {"G", round12(a.first.G)}};
  {
    Json sf;
    sf["rows"] = rows_json(a.second.values);
    if (a.second.exact) {
      Json ex = Json::array();
      for (const auto& row : *a.second.exact) {
        ex.push_back({to_string(row[0]), to_string(row[1]), to_string(row[2])});
      }
      sf["exact_rows"] = ex;
    }
    sf["rank"] = rank_second_form(a.second);
    r["second_form"] = sf;
  }

  const ParabolaProfile& pp = a.parabola;
  {
    Json p;
    p["L"] = vec_json(pp.L);
    p["M"] = vec_json(pp.M);
    p["N"] = vec_json(pp.N);
    p["shape"] = to_string(pp.shape);
    p["radial"] = pp.radial;
    p["vertex_is_origin"] = pp.vertex_is_origin;
    if (pp.shape == Shape::HalfLine) p["vertex_param"] = round12(pp.vertex_param);
    if (pp.shape == Shape::HalfLine || pp.shape == Shape::Point) p["vertex"] = vec_json(pp.vertex);
    p["aff"] = {{"dim", pp.aff.dim()},
                {"base", vec_json(pp.aff.base)},
                {"directions", Json::array()},
                {"distance", round12(pp.aff.distance_to_origin())}};
    for (const auto& d : pp.aff.directions) p["aff"]["directions"].push_back(vec_json(d));
    p["ep"] = {{"b1", vec_json(pp.ep.b1)},
               {"b2", vec_json(pp.ep.b2)},
               {"normal", vec_json(pp.ep.normal)},
               {"choice", pp.ep.forced ? "forced" : "free"}};
    r["parabola"] = p;
  }
  r["stratum"] = stratum_label(pp.stratum);
  {
    const auto& nf = a.normal_form;
    r["normal_form"] = {{"orbit", to_string(nf.orbit)},
                        {"jet2", detail::jet_json(nf.normal_form)},
                        {"s", round12(nf.s)},
                        {"t", round12(nf.t)},
                        {"rotation", rows_json(nf.rotation)},
                        {"reconstruction_error", round12(nf.reconstruction_error)}};
  }
  {
    const auto& as = a.asymptotic;
    Json j;
    j["kind"] = as.all ? "all" : "finite";
    j["count"] = detail::count_json(as.count());
    Json roots = Json::array();
    for (double y : as.finite) roots.push_back(round12(y));
    j["roots"] = roots;
    j["y_infinity"] = as.has_infinity;
    j["quadratic"] = {round12(as.q[0]), round12(as.q[1]), round12(as.q[2])};
    j["discriminant"] = round12(as.discriminant);
    r["asymptotic"] = j;
  }
  {
    Json j;
    j["kind"] = a.binormals.all ? "all" : "finite";
    j["count"] = detail::count_json(a.binormals.count());
    Json items = Json::array();
    for (const auto& b : a.binormals.items) {
      Json it;
      it["nu"] = vec_json(b.nu);
      it["nu_ambient"] = vec_json(Vec4(ad.to_ambient(b.nu)));
      if (b.at_infinity) it["y"] = "inf";
      else it["y"] = round12(b.y);
      items.push_back(it);
    }
    j["vectors"] = items;
    r["binormals"] = j;
  }
  r["point_type"] = to_string(a.type);
  r["umbilic"] = {{"kappa_u", round12(a.umbilic.kappa_u)},
                  {"formula", to_string(a.umbilic.formula)},
                  {"oracle_value", round12(a.umbilic.oracle_value)},
                  {"alternative", round12(a.umbilic.alternative)},
                  {"stratum_check", a.kappa_stratum}};
  {
    Json c;
    c["quadratic"] = rows_json(a.cone.quad);
    c["corank2_locus"] = {{"dim", a.cone.corank2.dim()}, {"basis", cols_json(a.cone.corank2.basis)}};
    c["theorem"] = {{"description", a.corank2.description},
                    {"dim", a.corank2.predicted.dim()},
                    {"agree", a.corank2.agree}};
    c["binormals_on_cone"] = a.binormals_on_cone;
    c["cone_parabola_orthogonal"] = a.cone_orthogonal;
    r["cone"] = c;
  }
  {
    Json s;
    s["N_second_form"] = rows_json(a.lift.second_form);
    s["S_components"] = Json::array();
    for (const auto& c : a.s.components) s["S_components"].push_back(c.chopped(1e-15).to_string());
    s["S_second_form"] = rows_json(a.s.second_form);
    s["S_bde"] = {round12(a.s_roots.coefficients[0]), round12(a.s_roots.coefficients[1]),
                  round12(a.s_roots.coefficients[2])};
    s["S_directions"] = a.s_roots.all ? Json("all") : Json::array();
    if (!a.s_roots.all) {
      for (const auto& d : a.s_roots.directions) s["S_directions"].push_back(vec_json(d));
    }
    s["S_point_type"] = to_string(a.transfer.s_label);
    s["S_ellipse"] = to_string(a.s_ellipse);
    s["transfer"] = {{"directions_match", a.transfer.directions_match},
                     {"point_type_match", a.transfer.labels_match},
                     {"binormals_degenerate_on_S", a.transfer.binormals_degenerate_on_s},
                     {"second_form_match", a.transfer.second_form_match},
                     {"second_form_exact", a.transfer.second_form_exact}};
    r["associated"] = s;
  }
  if (a.verification) {
    Json v;
    v["passed"] = a.verification->passed();
    v["checks"] = Json::array();
    for (const auto& c : a.verification->checks) {
      v["checks"].push_back({{"name", c.name},
                             {"closed_form", round12(c.closed_form)},
                             {"oracle", round12(c.oracle)},
                             {"tolerance", round12(c.tolerance)},
                             {"pass", c.pass}});
    }
    r["verification"] = v;
  }
  return r;
}

inline std::string to_text(const Analysis& a) {
  std::ostringstream os;
  auto vec = [](const Vec3& v) {
    return "(" + format_number(v(0)) + ", " + format_number(v(1)) + ", " + format_number(v(2)) + ")";
  };
  const auto& pp = a.parabola;
  os << "germ:        " << a.input << "\n";
  os << "path:        " << (a.exact() ? "exact" : "numeric") << "\n";
  os << "orbit:       " << to_string(a.orbit) << "\n";
  os << "first form:  E=" << format_number(a.first.E) << " F=" << format_number(a.first.F)
     << " G=" << format_number(a.first.G) << "\n";
  os << "second form:\n";
  for (int i = 0; i < 3; ++i) {
    os << "  " << format_number(a.second.values(i, 0)) << " " << format_number(a.second.values(i, 1))
       << " " << format_number(a.second.values(i, 2)) << "\n";
  }
  os << "parabola:    eta(y) = " << vec(pp.L) << " + 2y" << vec(pp.M) << " + y^2"
     << vec(pp.N) << "\n";
  os << "shape:       " << to_string(pp.shape);
  if (pp.shape != Shape::NondegenerateParabola) {
    os << (pp.radial ? " (radial)" : " (non-radial)");
  }
  os << "\n";
  os << "stratum:     " << stratum_label(pp.stratum) << "\n";
  os << "asymptotic:  ";
  if (a.asymptotic.all) {
    os << "all";
  } else {
    os << "{";
    bool first = true;
    for (double y : a.asymptotic.finite) {
      os << (first ? "" : ", ") << format_number(y);
      first = false;
    }
    if (a.asymptotic.has_infinity) os << (first ? "" : ", ") << "y_inf";
    os << "}";
  }
  os << "\n";
  os << "binormals:   ";
  if (a.binormals.all) {
    os << "all of E_p";
  } else {
    for (const auto& b : a.binormals.items) os << vec(b.nu) << " ";
  }
  os << "\n";
  os << "point type:  " << to_string(a.type) << "\n";
  os << "kappa_u:     " << format_number(a.umbilic.kappa_u) << " (" << to_string(a.umbilic.formula)
     << ")\n";
  os << "corank-2:    dim " << a.cone.corank2.dim() << " (" << a.corank2.description << ", "
     << (a.corank2.agree ? "agrees" : "DISAGREES") << ")\n";
  os << "transfer:    directions " << (a.transfer.directions_match ? "match" : "DIFFER")
     << ", point type " << (a.transfer.labels_match ? "match" : "DIFFER") << "\n";
  if (a.verification) {
    os << "verification: " << (a.verification->passed() ? "PASS" : "FAIL") << "\n";
    for (const auto& c : a.verification->checks) {
      os << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name << "  closed=" << format_number(c.closed_form)
         << " oracle=" << format_number(c.oracle) << " tol=" << format_number(c.tolerance) << "\n";
    }
  }
  return os.str();
}

/// CSV writers: header row, comma separated, LF line endings.
inline void write_parabola_csv(std::ostream& os, const Analysis& a, double lo, double hi,
                               int samples) {
  os << "y,eta_1,eta_2,eta_3,eta_4\n";
  for (const auto& s : sample_parabola(a.parabola, a.adapted.normal_frame, lo, hi, samples)) {
    os << format_number(s.y);
    for (int k = 0; k < 4; ++k) os << "," << format_number(s.point(k));
    os << "\n";
  }
}

inline void write_cone_csv(std::ostream& os, const Analysis& a, int n_theta = 30, int n_phi = 24) {
  os << "theta,phi,det_sign,det_value\n";
  for (const auto& s : sample_cone(a.cone, n_theta, n_phi)) {
    os << format_number(s.theta) << "," << format_number(s.phi) << "," << s.sign << ","
       << format_number(s.value) << "\n";
  }
}

inline void write_ellipse_csv(std::ostream& os, const Analysis& a, int samples = 360) {
  os << "theta,eta_1,eta_2\n";
  for (int k = 0; k < samples; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / samples;
    const Vec2 e = curvature_ellipse(a.s, theta);
    os << format_number(theta) << "," << format_number(e(0)) << "," << format_number(e(1)) << "\n";
  }
}

}  // namespace corank

#endif  // CORANK_REPORT_HPP_
