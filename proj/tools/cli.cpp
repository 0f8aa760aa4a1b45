#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "bandlim/errors.hpp"
#include "bandlim/odesolve.hpp"
#include "bandlim/series_io.hpp"
#include "bandlim/specfun.hpp"
#include "bandlim/transform.hpp"
#include "json.hpp"

namespace bandlim::cli {

namespace {

using nlohmann::json;

constexpr double kDefaultBauerTol = 1e-10;
constexpr double kDefaultOrthoTol = 1e-6;
constexpr double kDefaultOrthoDiagTol = 1e-4;
constexpr double kDefaultLegendreGramTol = 1e-12;
constexpr double kGridClamp = 1e-9;

// Shortest representation that reads back to the same double.
std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// Independent variables print as-is; function values always carry a decimal
// point or exponent so the column type is unambiguous.
std::string coord(double x) { return shortest(x); }

std::string value(double x) {
  std::string s = shortest(x);
  if (s.find_first_of(".einf") == std::string::npos) s += ".0";
  return s;
}

struct GridFlags {
  std::optional<double> single;
  std::optional<double> lo;
  std::optional<double> hi;
  int steps = 11;

  void attach(CLI::App* app, const std::string& name, const std::string& what) {
    app->add_option("--" + name, single, what);
    app->add_option("--" + name + "-min", lo, "Grid start for " + name);
    app->add_option("--" + name + "-max", hi, "Grid end for " + name);
    app->add_option("--" + name + "-steps", steps, "Grid points for " + name + " (inclusive)")
        ->check(CLI::PositiveNumber);
  }

  // Inclusive linear grid, or the single value. `open_unit` shrinks endpoints that
  // touch or leave [-1, 1] to lie strictly inside it.
  std::vector<double> resolve(const std::string& name, bool open_unit = false,
                              std::vector<double> fallback = {}) const {
    std::vector<double> grid;
    if (single) {
      if (lo || hi) throw ValidationError("give either --" + name + " or a --" + name + "-min/max grid");
      return {*single};
    }
    if (lo.has_value() != hi.has_value()) {
      throw ValidationError("--" + name + "-min and --" + name + "-max go together");
    }
    if (!lo) {
      if (fallback.empty()) throw ValidationError("missing --" + name + " (or --" + name + "-min/max)");
      return fallback;
    }
    double a = *lo;
    double b = *hi;
    if (open_unit) {
      a = std::clamp(a, -1.0 + kGridClamp, 1.0 - kGridClamp);
      b = std::clamp(b, -1.0 + kGridClamp, 1.0 - kGridClamp);
    }
    if (steps == 1) return {a};
    for (int k = 0; k < steps; ++k) grid.push_back(a + (b - a) * k / (steps - 1));
    grid.back() = b;
    return grid;
  }
};

struct Options {
  std::string out = "-";
  std::string in;
  std::string op;
  int n = 0;
  int nmax = -1;
  int npoints = 64;
  int mode = 0;
  double tol = -1.0;
  double diag_tol = kDefaultOrthoDiagTol;
  double threshold = 1e-8;
  std::optional<double> plane_wave;
  std::string normalization = "calibrated";
  GridFlags z;
  GridFlags t;
};

LineIntegralParams line_params() { return apply_environment(LineIntegralParams{}); }

TransformConfig make_config(const Options& o) {
  const Normalization norm =
      o.normalization == "quarter" ? Normalization::PaperQuarter : Normalization::Calibrated;
  return TransformConfig(norm, line_params(), gauss_legendre_rule(o.npoints));
}

AnySeries load_series(const Options& o) {
  if (o.in.empty()) throw ValidationError("this subcommand needs --in <series.json>");
  return parse_series(read_text_file(o.in));
}

// g for the transform-side commands: a Bessel series as given, a Legendre series
// through its exact forward image.
BesselSeries load_line_function(const Options& o) {
  const AnySeries s = load_series(o);
  if (const auto* b = std::get_if<BesselSeries>(&s)) return *b;
  return coeff_unbar(std::get<LegendreSeries>(s));
}

struct Outcome {
  Outcome(std::string d) : data(std::move(d)) {}  // NOLINT(google-explicit-constructor)

  std::string data;
  int status = kOk;
  std::string message;
};

Outcome eval_jn(const Options& o) {
  std::ostringstream csv;
  csv << "n,z,re,im\n";
  for (double z : o.z.resolve("z")) {
    csv << o.n << ',' << coord(z) << ',' << value(spherical_j(o.n, z)) << ',' << value(0.0) << '\n';
  }
  return {csv.str()};
}

Outcome eval_pn(const Options& o) {
  std::ostringstream csv;
  csv << "n,t,re,im\n";
  for (double t : o.t.resolve("t")) {
    csv << o.n << ',' << coord(t) << ',' << value(legendre_p(o.n, t)) << ',' << value(0.0) << '\n';
  }
  return {csv.str()};
}

Outcome gauss_rule(const Options& o) {
  const QuadratureRule rule = gauss_legendre_rule(o.npoints);
  std::ostringstream csv;
  csv << "index,node,weight\n";
  for (std::size_t i = 0; i < rule.size(); ++i) {
    csv << i << ',' << value(rule.nodes()[i]) << ',' << value(rule.weights()[i]) << '\n';
  }
  return {csv.str()};
}

Outcome forward(const Options& o) {
  const TransformConfig config(Normalization::PaperQuarter, line_params(), gauss_legendre_rule(o.npoints));
  std::optional<LegendreSeries> f;
  if (!o.in.empty()) {
    const AnySeries s = load_series(o);
    if (!std::holds_alternative<LegendreSeries>(s)) {
      throw ValidationError("forward expects a legendre series");
    }
    f = std::get<LegendreSeries>(s);
  } else {
    std::vector<Complex> unit(static_cast<std::size_t>(o.n) + 1, 0.0);
    unit.back() = 1.0;
    f = LegendreSeries(std::move(unit));
  }
  std::ostringstream csv;
  csv << "z,re,im\n";
  for (double z : o.z.resolve("z")) {
    const Complex g = forward_transform(*f, z, config);
    csv << coord(z) << ',' << value(g.real()) << ',' << value(g.imag()) << '\n';
  }
  return {csv.str()};
}

Outcome inverse(const Options& o) {
  const BesselSeries g = load_line_function(o);
  const TransformConfig config = make_config(o);
  std::ostringstream csv;
  csv << "t,re,im\n";
  for (double t : o.t.resolve("t", true)) {
    const Complex f = inverse_transform(g.as_integrand(), t, config);
    csv << coord(t) << ',' << value(f.real()) << ',' << value(f.imag()) << '\n';
  }
  return {csv.str()};
}

Outcome project_legendre(const Options& o) {
  const int nmax = o.nmax < 0 ? 16 : o.nmax;
  const QuadratureRule rule = gauss_legendre_rule(std::max(o.npoints, nmax + 1));
  LegendreSeries result({0.0});
  if (o.plane_wave) {
    const double z = *o.plane_wave;
    result = legendre_projection([z](double t) { return std::polar(1.0, z * t); }, nmax, rule);
  } else {
    const AnySeries s = load_series(o);
    if (!std::holds_alternative<LegendreSeries>(s)) {
      throw ValidationError("project-legendre expects a legendre series or --plane-wave");
    }
    result = legendre_projection(std::get<LegendreSeries>(s).as_integrand(), nmax, rule);
  }
  return {to_json(result) + "\n"};
}

Outcome project_bessel(const Options& o) {
  const BesselSeries g = load_line_function(o);
  const int nmax = o.nmax < 0 ? g.degree() : o.nmax;
  const TransformConfig config(Normalization::PaperQuarter, line_params(), gauss_legendre_rule(o.npoints));
  return {to_json(bessel_projection(g.as_integrand(), nmax, config)) + "\n"};
}

Outcome bauer_check(const Options& o) {
  const int nmax = o.nmax < 0 ? 60 : o.nmax;
  const double tol = o.tol < 0.0 ? kDefaultBauerTol : o.tol;
  std::ostringstream csv;
  csv << "z,t,re,im,abs_err\n";
  double worst = 0.0;
  for (double z : o.z.resolve("z")) {
    for (double t : o.t.resolve("t")) {
      const Complex s = bauer_partial_sum(z, t, nmax);
      const double err = std::abs(s - std::polar(1.0, z * t));
      worst = std::max(worst, err);
      csv << coord(z) << ',' << coord(t) << ',' << value(s.real()) << ',' << value(s.imag()) << ','
          << value(err) << '\n';
    }
  }
  Outcome result{csv.str()};
  if (!(worst <= tol)) {
    result.status = kDomainError;
    result.message = "bauer-check: max error " + shortest(worst) + " exceeds tol " + shortest(tol);
  }
  return result;
}

Outcome ortho_check(const Options& o) {
  const int nmax = o.nmax < 0 ? 6 : o.nmax;
  const double tol = o.tol < 0.0 ? kDefaultOrthoTol : o.tol;
  const RealMatrix gram = orthogonality_matrix_j(nmax, line_params());

  json rows = json::array();
  json scaled = json::array();
  double max_offdiag = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double mean = 0.0;
  for (int n = 0; n <= nmax; ++n) {
    json row = json::array();
    for (int m = 0; m <= nmax; ++m) {
      row.push_back(gram(n, m));
      if (m != n) max_offdiag = std::max(max_offdiag, std::abs(gram(n, m)));
    }
    rows.push_back(row);
    const double c = gram(n, n) * (2.0 * n + 1.0);
    scaled.push_back(c);
    lo = std::min(lo, c);
    hi = std::max(hi, c);
    mean += c / (nmax + 1);
  }
  const double spread = (hi - lo) / std::abs(mean);

  // Legendre side: Gram matrix of P_0..P_20 under a 32-point rule.
  const QuadratureRule rule = gauss_legendre_rule(32);
  double legendre_err = 0.0;
  for (int n = 0; n <= 20; ++n) {
    for (int m = 0; m <= 20; ++m) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) {
        s += rule.weights()[i] * legendre_p(n, rule.nodes()[i]) * legendre_p(m, rule.nodes()[i]);
      }
      const double expect = n == m ? 2.0 / (2.0 * n + 1.0) : 0.0;
      legendre_err = std::max(legendre_err, std::abs(s - expect));
    }
  }

  const bool pass = max_offdiag <= tol && spread <= o.diag_tol && legendre_err <= kDefaultLegendreGramTol;
  const json report{{"nmax", nmax},
                    {"gram", rows},
                    {"diag_times_2n_plus_1", scaled},
                    {"measured_constant", mean},
                    {"measured_constant_over_pi", mean / std::numbers::pi},
                    {"printed_constant", 2.0},
                    {"max_offdiag", max_offdiag},
                    {"diag_spread", spread},
                    {"legendre_gram_max_error", legendre_err},
                    {"tol", tol},
                    {"diag_tol", o.diag_tol},
                    {"pass", pass}};
  Outcome result{report.dump(2) + "\n"};
  if (!pass) {
    result.status = kDomainError;
    result.message = "ortho-check: tolerance violated (max_offdiag " + shortest(max_offdiag) +
                     ", diag_spread " + shortest(spread) + ")";
  }
  return result;
}

Outcome calibrate(const Options& o) {
  const TransformConfig config(Normalization::PaperQuarter, line_params());
  const double c_star = calibrate_normalization(config, o.mode);
  const json report{{"C_star", c_star}, {"paper_C", kQuarterDivisor}, {"ratio", c_star / kQuarterDivisor},
                    {"mode", o.mode}};
  return {report.dump(2) + "\n"};
}

Outcome roundtrip_cmd(const Options& o) {
  const BesselSeries g = load_line_function(o);
  const TransformConfig config = make_config(o);
  const std::vector<double> zs = o.z.resolve("z");
  const std::vector<Complex> back = roundtrip(g.as_integrand(), zs, config);
  std::ostringstream csv;
  csv << "z,re,im,direct_re,direct_im\n";
  for (std::size_t k = 0; k < zs.size(); ++k) {
    const Complex direct = g(zs[k]);
    csv << coord(zs[k]) << ',' << value(back[k].real()) << ',' << value(back[k].imag()) << ','
        << value(direct.real()) << ',' << value(direct.imag()) << '\n';
  }
  return {csv.str()};
}

Outcome solve_ode(const Options& o) {
  if (o.op.empty()) throw ValidationError("solve-ode needs --op <operator.json>");
  const DifferentialOperator op = parse_operator(read_text_file(o.op));
  const AnySeries s = load_series(o);
  if (!std::holds_alternative<BesselSeries>(s)) throw ValidationError("solve-ode expects h as a bessel series");
  const TransformConfig config(Normalization::PaperQuarter, line_params(), gauss_legendre_rule(o.npoints));
  SolveOptions options;
  options.residual_threshold = o.threshold;
  const SolutionBundle sol = solve(op, std::get<BesselSeries>(s), o.nmax < 0 ? 16 : o.nmax, config, options);

  json samples = json::array();
  for (double z : o.z.resolve("z", false, default_check_grid())) {
    const Complex g = sol.g_at(z);
    samples.push_back(json::array({z, g.real(), g.imag()}));
  }
  const json report{{"f_series", json::parse(to_json(sol.f_series()))},
                    {"residual", sol.residual()},
                    {"threshold", o.threshold},
                    {"g", samples}};
  return {report.dump(2) + "\n"};
}

json show_config() {
  const LineIntegralParams p = line_params();
  return json{{"line_integral",
               {{"initial_halfwidth", p.initial_halfwidth},
                {"segment_length", p.segment_length},
                {"acceleration_terms", p.acceleration_terms},
                {"tol", p.tol},
                {"max_segments", p.max_segments},
                {"envelope_frequencies", p.envelope_frequencies}}},
              {"compact_rule_points", 64},
              {"paper_C", kQuarterDivisor},
              {"bauer_check_tol", kDefaultBauerTol},
              {"ortho_check_tol", kDefaultOrthoTol},
              {"ortho_check_diag_tol", kDefaultOrthoDiagTol},
              {"legendre_gram_tol", kDefaultLegendreGramTol},
              {"solve_residual_threshold", SolveOptions{}.residual_threshold},
              {"solve_symbol_floor", SolveOptions{}.symbol_floor},
              {"t_grid_clamp", kGridClamp}};
}

void emit(const std::string& path, const std::string& data, std::ostream& out) {
  if (path == "-") {
    out << data;
    out.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << data;
  file.close();
  if (!file) throw IoError("error while writing '" + path + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Band-limited transform toolkit: Legendre <-> spherical-Bessel transforms"};
  app.name("bandlim");
  app.require_subcommand(0, 1);
  bool want_config = false;
  app.add_flag("--show-config", want_config, "Print default parameters as JSON and exit");

  Options o;
  std::map<CLI::App*, std::function<Outcome(const Options&)>> handlers;
  auto add = [&](const std::string& name, const std::string& help, auto handler) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--out", o.out, "Output path, '-' for standard output");
    handlers[sub] = handler;
    return sub;
  };
  auto add_rule = [&](CLI::App* sub) {
    sub->add_option("--npoints", o.npoints, "Gauss-Legendre points on [-1, 1]")
        ->check(CLI::Range(1, kMaxGaussPoints));
  };
  auto add_norm = [&](CLI::App* sub) {
    sub->add_option("--normalization", o.normalization, "calibrated | quarter")
        ->check(CLI::IsMember({"calibrated", "quarter"}));
  };

  CLI::App* sub = add("eval-jn", "Spherical Bessel j_n on a z grid", eval_jn);
  sub->add_option("--n", o.n, "Order")->required();
  o.z.attach(sub, "z", "Argument");

  sub = add("eval-pn", "Legendre P_n on a t grid", eval_pn);
  sub->add_option("--n", o.n, "Order")->required();
  o.t.attach(sub, "t", "Argument in [-1, 1]");

  sub = add("gauss-rule", "Gauss-Legendre nodes and weights", gauss_rule);
  add_rule(sub);

  sub = add("forward", "g(z) = int f(t) e^{izt} dt for a Legendre series (or P_n)", forward);
  sub->add_option("--in", o.in, "Legendre series JSON");
  sub->add_option("--n", o.n, "Use f = P_n when --in is absent");
  add_rule(sub);
  o.z.attach(sub, "z", "Argument");

  sub = add("inverse", "f(t) = (1/C) int g(y) e^{-iyt} dy", inverse);
  sub->add_option("--in", o.in, "Series JSON (bessel, or legendre via its forward image)");
  add_norm(sub);
  o.t.attach(sub, "t", "Argument in (-1, 1)");

  sub = add("project-legendre", "Legendre coefficients of a function on [-1, 1]", project_legendre);
  sub->add_option("--in", o.in, "Legendre series JSON");
  sub->add_option("--plane-wave", o.plane_wave, "Project e^{izt} for this z instead");
  sub->add_option("--nmax", o.nmax, "Highest order (default 16)");
  add_rule(sub);

  sub = add("project-bessel", "Spherical-Bessel coefficients of a band-limited function", project_bessel);
  sub->add_option("--in", o.in, "Series JSON (bessel, or legendre via its forward image)");
  sub->add_option("--nmax", o.nmax, "Highest order (default: input degree)");

  sub = add("bauer-check", "Partial sums of the plane-wave expansion against e^{izt}", bauer_check);
  sub->add_option("--nmax", o.nmax, "Truncation order N (default 60)");
  sub->add_option("--tol", o.tol, "Fail (exit 1) if any |error| exceeds this (default 1e-10)");
  o.z.attach(sub, "z", "Argument");
  o.t.attach(sub, "t", "Argument in [-1, 1]");

  sub = add("ortho-check", "Measured Gram matrix of j_0..j_nmax over the real line", ortho_check);
  sub->add_option("--nmax", o.nmax, "Highest order (default 6, at most 16)");
  sub->add_option("--tol", o.tol, "Off-diagonal tolerance (default 1e-6)");
  sub->add_option("--diag-tol", o.diag_tol, "Relative spread allowed in K_n (2n+1) (default 1e-4)");

  sub = add("calibrate", "Measure the inverse-transform divisor C*", calibrate);
  sub->add_option("--mode", o.mode, "Even Legendre order used for calibration (default 0)");

  sub = add("roundtrip", "forward(inverse(g)) against g on a z grid", roundtrip_cmd);
  sub->add_option("--in", o.in, "Series JSON (bessel, or legendre via its forward image)");
  add_norm(sub);
  add_rule(sub);
  o.z.attach(sub, "z", "Argument");

  sub = add("solve-ode", "Solve L g = h through the transform", solve_ode);
  sub->add_option("--op", o.op, "Operator JSON {\"op\": [[re, im], ...]}");
  sub->add_option("--in", o.in, "h as a bessel series JSON");
  sub->add_option("--nmax", o.nmax, "Degree of the exported Legendre series (default 16)");
  sub->add_option("--threshold", o.threshold, "Maximum accepted residual (default 1e-8)");
  add_rule(sub);
  o.z.attach(sub, "z", "Where to sample g (default: the check grid)");

  std::vector<std::string> argv_storage{"bandlim"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kDomainError;
  }

  try {
    if (want_config) {
      out << show_config().dump(2) << "\n";
      return kOk;
    }
    const auto chosen = app.get_subcommands();
    if (chosen.empty()) {
      err << "error: a subcommand is required\n\n" << app.help();
      return kDomainError;
    }
    const Outcome result = handlers.at(chosen.front())(o);
    emit(o.out, result.data, out);
    if (result.status != kOk) err << result.message << "\n";
    return result.status;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const NoConvergence& e) {
    err << "no convergence: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const ResidualTooLarge& e) {
    err << "residual check failed: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const EvaluationError& e) {
    err << "evaluation error: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
}

}  // namespace bandlim::cli
