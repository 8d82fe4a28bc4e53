#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "corank/analysis.hpp"
#include "corank/report.hpp"

namespace {

enum ExitCode { kOk = 0, kInputError = 1, kVerifyFailed = 2, kPrecondition = 3 };

struct CommonFlags {
  std::string germ;
  std::string file;
  int order = corank::kDefaultOrder;
  bool verify = false;
  std::string out;
  std::string config;
  std::string format = "json";
  std::optional<double> eps_jet;
  std::optional<double> eps_rank;
  std::optional<double> eps_orth;
  std::optional<double> eps_disc;
};

corank::Tolerances load_tolerances(const CommonFlags& f) {
  corank::Tolerances tol;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw corank::InputError("cannot open config file " + f.config);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw corank::InputError("malformed config file: " + std::string(e.what()));
    }
    if (!j.is_object()) throw corank::InputError("config file must hold a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!it.value().is_number()) throw corank::InputError("config value for " + it.key() + " must be a number");
      const double v = it.value().get<double>();
      const std::string& k = it.key();
      if (k == "eps_jet") tol.eps_jet = v;
      else if (k == "eps_rank") tol.eps_rank = v;
      else if (k == "eps_orth") tol.eps_orth = v;
      else if (k == "eps_disc") tol.eps_disc = v;
      else if (k == "oracle_kappa") tol.oracle_kappa = v;
      else if (k == "oracle_scan") tol.oracle_scan = v;
      else if (k == "oracle_hessian") tol.oracle_hessian = v;
      else if (k == "oracle_cluster") tol.oracle_cluster = v;
      else if (k == "fd_step") tol.fd_step = v;
      else throw corank::InputError("unknown config key " + k);
    }
  }
  if (f.eps_jet) tol.eps_jet = *f.eps_jet;
  if (f.eps_rank) tol.eps_rank = *f.eps_rank;
  if (f.eps_orth) tol.eps_orth = *f.eps_orth;
  if (f.eps_disc) tol.eps_disc = *f.eps_disc;
  return tol;
}

corank::AnalysisOptions options_from(const CommonFlags& f) {
  corank::AnalysisOptions opt;
  opt.order = f.order;
  opt.tol = load_tolerances(f);
  opt.verify = f.verify;
  opt.scan.threshold = opt.tol.oracle_scan;
  return opt;
}

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("-g,--germ", f.germ, "germ, e.g. \"(x, x*y, y^2, y^5)\"");
  cmd->add_option("-o,--order", f.order, "jet truncation order")->capture_default_str();
  cmd->add_option("--out", f.out, "output path");
  cmd->add_option("--config", f.config, "JSON file overriding tolerances");
  cmd->add_option("--eps-jet", f.eps_jet, "vanishing threshold for Taylor coefficients");
  cmd->add_option("--eps-rank", f.eps_rank, "relative singular-value threshold");
  cmd->add_option("--eps-orth", f.eps_orth, "orthogonality threshold");
  cmd->add_option("--eps-disc", f.eps_disc, "relative discriminant threshold");
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::vector<std::string> read_germ_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw corank::InputError("cannot open " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(first, last - first + 1));
  }
  return out;
}

struct Outcome {
  int code = kOk;
  corank::Json json;
  std::string text;
};

Outcome run_one(const std::string& germ, const corank::AnalysisOptions& opt) {
  Outcome o;
  try {
    const corank::Analysis a = corank::analyze(germ, opt);
    o.json = corank::to_json(a);
    o.text = corank::to_text(a);
    if (a.verification && !a.verification->passed()) o.code = kVerifyFailed;
  } catch (const corank::InputError& e) {
    o.code = kInputError;
    o.text = std::string("error: ") + e.what() + "\n";
    o.json = {{"input", {{"germ", germ}}}, {"error", e.what()}, {"exit_code", o.code}};
  } catch (const corank::PreconditionError& e) {
    o.code = kPrecondition;
    o.text = std::string("error: ") + e.what() + "\n";
    o.json = {{"input", {{"germ", germ}}}, {"error", e.what()}, {"exit_code", o.code}};
  }
  return o;
}

int run_analyze(const CommonFlags& f) {
  if (f.germ.empty() == f.file.empty()) {
    throw corank::InputError("exactly one of --germ or --file is required");
  }
  if (f.format != "json" && f.format != "text") throw corank::InputError("--format must be json or text");
  const corank::AnalysisOptions opt = options_from(f);
  if (!f.germ.empty()) {
    Outcome o = run_one(f.germ, opt);
    if (o.code == kInputError || o.code == kPrecondition) {
      std::cerr << o.text;
      return o.code;
    }
    emit(f.format == "json" ? o.json.dump(2) + "\n" : o.text, f.out);
    if (o.code == kVerifyFailed) std::cerr << "verification failed\n";
    return o.code;
  }
  int code = kOk;
  corank::Json all = corank::Json::array();
  std::string text;
  for (const auto& g : read_germ_file(f.file)) {
    Outcome o = run_one(g, opt);
    code = std::max(code, o.code);
    if (o.code == kInputError || o.code == kPrecondition) std::cerr << g << ": " << o.text;
    all.push_back(o.json);
    text += o.text + "\n";
  }
  emit(f.format == "json" ? all.dump(2) + "\n" : text, f.out);
  return code;
}

struct SweepFlags {
  std::string param = "t";
  std::vector<std::string> range;
  std::string values;
  int samples = 101;
};

std::vector<corank::Rational> sweep_values(const SweepFlags& s) {
  std::vector<corank::Rational> out;
  if (!s.values.empty()) {
    std::stringstream ss(s.values);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(corank::parse_rational(item));
    return out;
  }
  if (s.range.empty()) return out;
  if (s.range.size() != 2) throw corank::InputError("--range needs LO HI");
  if (s.samples < 0) throw corank::InputError("--samples must be non-negative");
  const corank::Rational lo = corank::parse_rational(s.range[0]);
  const corank::Rational hi = corank::parse_rational(s.range[1]);
  for (int k = 0; k < s.samples; ++k) {
    out.push_back(s.samples == 1 ? lo : lo + (hi - lo) * corank::Rational(k, s.samples - 1));
  }
  return out;
}

int run_sweep(const CommonFlags& f, const SweepFlags& s) {
  if (f.germ.empty()) throw corank::InputError("--germ template is required");
  if (s.param.empty() || s.param == "x" || s.param == "y") {
    throw corank::InputError("parameter name must differ from x and y");
  }
  const corank::AnalysisOptions opt = options_from(f);
  const auto values = sweep_values(s);
  std::ostringstream os;
  os << s.param << ",orbit,shape,point_type,kappa_u,asymptotic_count,binormal_count,transition\n";
  std::string previous;
  int code = kOk;
  for (const auto& v : values) {
    corank::ParameterMap params{{s.param, v}};
    std::string labels;
    std::string row;
    try {
      const corank::Analysis a = corank::analyze(corank::parse_map_germ(f.germ, opt.order, params), opt, f.germ);
      auto count = [](int c) { return c < 0 ? std::string("all") : std::to_string(c); };
      labels = corank::to_string(a.orbit) + "," + corank::to_string(a.parabola.shape) + "," +
               corank::to_string(a.type) + "," + count(a.asymptotic.count()) + "," +
               count(a.binormals.count());
      row = "\"" + corank::to_string(a.orbit) + "\"," + corank::to_string(a.parabola.shape) + "," +
            corank::to_string(a.type) + "," + corank::format_number(a.umbilic.kappa_u) + "," +
            count(a.asymptotic.count()) + "," + count(a.binormals.count());
      if (a.verification && !a.verification->passed()) code = std::max(code, int(kVerifyFailed));
    } catch (const corank::PreconditionError& e) {
      labels = "precondition";
      row = "\"\",,,,,";
      code = std::max(code, int(kPrecondition));
      std::cerr << "at " << s.param << "=" << corank::to_string(v) << ": " << e.what() << "\n";
    }
    const bool transition = !previous.empty() && labels != previous;
    previous = labels;
    os << corank::format_number(corank::to_double(v)) << "," << row << "," << (transition ? 1 : 0)
       << "\n";
  }
  emit(os.str(), f.out);
  return code;
}

struct PlotFlags {
  int samples = 401;
  std::vector<double> range{-5.0, 5.0};
  bool ellipse = false;
};

int run_plotdata(const CommonFlags& f, const PlotFlags& p) {
  if (f.germ.empty()) throw corank::InputError("--germ is required");
  if (p.range.size() != 2) throw corank::InputError("--range needs LO HI");
  if (p.samples < 0) throw corank::InputError("--samples must be non-negative");
  corank::AnalysisOptions opt = options_from(f);
  opt.verify = false;
  const corank::Analysis a = corank::analyze(f.germ, opt);
  const std::filesystem::path dir = f.out.empty() ? std::filesystem::path(".") : std::filesystem::path(f.out);
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream os(dir / name, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + (dir / name).string());
    return os;
  };
  {
    auto os = open("parabola.csv");
    corank::write_parabola_csv(os, a, p.range[0], p.range[1], p.samples);
  }
  {
    auto os = open("cone.csv");
    corank::write_cone_csv(os, a);
  }
  if (p.ellipse) {
    auto os = open("ellipse.csv");
    corank::write_ellipse_csv(os, a);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Second-order geometry of corank-1 map germs (R^2,0) -> (R^4,0)"};
  app.require_subcommand(1);

  CommonFlags analyze_flags;
  auto* analyze = app.add_subcommand("analyze", "full analysis report");
  add_common(analyze, analyze_flags);
  analyze->add_option("-f,--file", analyze_flags.file, "file with one germ per line");
  analyze->add_flag("--verify", analyze_flags.verify, "run the oracle cross-checks");
  analyze->add_option("--format", analyze_flags.format, "json or text")->capture_default_str();

  CommonFlags verify_flags;
  verify_flags.verify = true;
  auto* verify = app.add_subcommand("verify", "alias for analyze --verify");
  add_common(verify, verify_flags);
  verify->add_option("-f,--file", verify_flags.file, "file with one germ per line");
  verify->add_option("--format", verify_flags.format, "json or text")->capture_default_str();

  CommonFlags sweep_flags;
  SweepFlags sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "one summary row per parameter value");
  add_common(sweep, sweep_flags);
  sweep->add_option("--param", sweep_opts.param, "parameter name")->capture_default_str();
  sweep->add_option("--range", sweep_opts.range, "LO HI")->expected(2);
  sweep->add_option("--samples", sweep_opts.samples, "number of values")->capture_default_str();
  sweep->add_option("--values", sweep_opts.values, "comma-separated values");

  CommonFlags plot_flags;
  PlotFlags plot_opts;
  auto* plot = app.add_subcommand("plotdata", "write parabola, cone and ellipse CSV files");
  add_common(plot, plot_flags);
  plot->add_option("--samples", plot_opts.samples, "parabola samples")->capture_default_str();
  plot->add_option("--range", plot_opts.range, "LO HI")->expected(2);
  plot->add_flag("--ellipse", plot_opts.ellipse, "also write the curvature ellipse of S");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (analyze->parsed()) return run_analyze(analyze_flags);
    if (verify->parsed()) return run_analyze(verify_flags);
    if (sweep->parsed()) return run_sweep(sweep_flags, sweep_opts);
    if (plot->parsed()) return run_plotdata(plot_flags, plot_opts);
  } catch (const corank::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const corank::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
