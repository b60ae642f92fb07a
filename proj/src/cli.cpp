// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#include "murearr/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "murearr/elliptic.hpp"
#include "murearr/gridsets.hpp"
#include "murearr/io.hpp"
#include "murearr/rearrangefn.hpp"
#include "murearr/shapes.hpp"
#include "murearr/suites.hpp"

namespace murearr {

namespace {

namespace fs = std::filesystem;

class UsageError : public Error {
 public:
  using Error::Error;
};

// Flags shared by every subcommand; unset flags fall back to --config.
struct Common {
  std::string config;
  std::optional<double> c;
  std::optional<int> n;
  std::optional<int> N;
  std::optional<double> L;
  std::optional<double> p;
  std::optional<double> q;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> cases;
  std::string out;
  std::string density;
};

void add_common(CLI::App* sub, Common& o) {
  sub->add_option("--config", o.config, "JSON file with any of the flags below (flags win)");
  sub->add_option("--c", o.c, "Gaussian parameter c of the density e^{c|x|^2}");
  sub->add_option("--n", o.n, "dimension");
  sub->add_option("--N", o.N, "cells per axis");
  sub->add_option("--L", o.L, "window half-width");
  sub->add_option("--p", o.p, "exponent p");
  sub->add_option("--q", o.q, "exponent q");
  sub->add_option("--seed", o.seed, "random seed");
  sub->add_option("--tol", o.tol, "relative tolerance override");
  sub->add_option("--cases", o.cases, "number of random cases");
  sub->add_option("--out", o.out, "output directory (or file)");
  sub->add_option("--density", o.density, "density kind, or a JSON density spec");
}

const std::vector<std::string> kKnownKeys = {"seed", "cases", "c", "n", "N", "L", "p", "q", "tol", "out",
                                             "density", "mode", "in", "m_max", "points", "axis", "domain",
                                             "f", "solver", "qs"};

Json load_config(const Common& o) {
  Json cfg = Json::object();
  if (!o.config.empty()) {
    std::ifstream is(o.config);
    if (!is) throw UsageError("config: cannot open '" + o.config + "'");
    try {
      cfg = Json::parse(is);
    } catch (const Json::exception& e) {
      throw UsageError("config: invalid JSON in '" + o.config + "': " + e.what());
    }
    if (!cfg.is_object()) throw UsageError("config: top level must be an object");
    for (const auto& [k, v] : cfg.items()) {
      if (std::find(kKnownKeys.begin(), kKnownKeys.end(), k) == kKnownKeys.end()) {
        throw UsageError("config." + k + ": unknown field");
      }
    }
  }
  auto put = [&cfg](const char* k, const auto& v) {
    if (v) cfg[k] = *v;
  };
  put("c", o.c);
  put("n", o.n);
  put("N", o.N);
  put("L", o.L);
  put("p", o.p);
  put("q", o.q);
  put("seed", o.seed);
  put("tol", o.tol);
  put("cases", o.cases);
  if (!o.out.empty()) cfg["out"] = o.out;
  if (!o.density.empty()) {
    if (o.density.front() == '{') {
      try {
        cfg["density"] = Json::parse(o.density);
      } catch (const Json::exception& e) {
        throw UsageError(std::string("--density: invalid JSON: ") + e.what());
      }
    } else {
      cfg["density"] = o.density;
    }
  }
  return cfg;
}

template <class T>
std::optional<T> get(const Json& cfg, const std::string& key) {
  if (!cfg.contains(key)) return std::nullopt;
  const Json& v = cfg.at(key);
  if constexpr (std::is_same_v<T, std::string>) {
    if (!v.is_string()) throw UsageError("config." + key + ": expected a string");
    return v.get<std::string>();
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) throw UsageError("config." + key + ": expected an integer");
    return v.get<T>();
  } else {
    if (!v.is_number()) throw UsageError("config." + key + ": expected a number");
    return v.get<T>();
  }
}

double require_nonneg(const std::optional<double>& v, const std::string& key) {
  if (v && !(*v >= 0.0)) throw UsageError("config." + key + ": must be >= 0");
  return v.value_or(0.0);
}

SuiteConfig suite_config(const Json& cfg) {
  SuiteConfig s;
  s.seed = get<std::uint64_t>(cfg, "seed").value_or(7);
  s.cases = get<int>(cfg, "cases");
  if (s.cases && *s.cases <= 0) throw UsageError("config.cases: must be positive");
  s.c = get<double>(cfg, "c");
  require_nonneg(s.c, "c");
  s.n = get<int>(cfg, "n");
  s.N = get<int>(cfg, "N");
  if (s.N && (*s.N < 8 || *s.N % 2 != 0)) throw UsageError("config.N: must be an even integer >= 8");
  s.L = get<double>(cfg, "L");
  if (s.L && !(*s.L > 0.0)) throw UsageError("config.L: must be positive");
  s.p = get<double>(cfg, "p");
  s.q = get<double>(cfg, "q");
  s.tol = get<double>(cfg, "tol");
  require_nonneg(s.tol, "tol");
  return s;
}

// Density spec: object, kind name, or absent (gauss with --c, --n).
Json density_spec(const Json& cfg, double c_default, int n_default) {
  const double c = get<double>(cfg, "c").value_or(c_default);
  const int n = get<int>(cfg, "n").value_or(n_default);
  if (!cfg.contains("density")) return Json{{"kind", "gauss"}, {"c", c}, {"n", n}};
  const Json& d = cfg.at("density");
  if (d.is_object()) return d;
  if (d.is_string() && d.get<std::string>() == "gauss") return Json{{"kind", "gauss"}, {"c", c}, {"n", n}};
  throw UsageError("config.density: expected \"gauss\" or a density object");
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("--out: cannot create directory '" + dir + "': " + ec.message());
}

// --out as directory (created) unless it names a file with an extension.
std::string out_path(const std::string& out, const std::string& default_name) {
  if (out.empty()) return "";
  const fs::path p(out);
  if (fs::is_directory(p) || !p.has_extension()) {
    ensure_dir(out);
    return (p / default_name).string();
  }
  if (p.has_parent_path()) ensure_dir(p.parent_path().string());
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw UsageError("cannot write '" + path + "'");
  os << text;
}

// ---------------------------------------------------------------- profile

int cmd_profile(const Json& cfg, double m_max, int points, std::ostream& out) {
  if (!(m_max > 0.0)) throw UsageError("--m-max: must be positive");
  if (points < 1) throw UsageError("--points: must be >= 1");
  const Json spec = density_spec(cfg, 1.0, 2);
  std::ostringstream csv;
  const bool one_d = spec.value("n", 2) == 1 || spec.value("kind", std::string()) == "tabulated";
  if (one_d) {
    const Density1D d = density1d_from_json(spec);
    csv << "m,J,I1\n";
    for (int k = 0; k <= points; ++k) {
      const double m = m_max * k / points;
      csv << format_double(m) << ',' << format_double(iso_fn_J(d, m)) << ',' << format_double(one_d_profile(d, m)) << '\n';
    }
  } else {
    const Weight w = weight_from_json(spec);
    if (const auto* r = std::get_if<RadialDensity>(&w)) {
      csv << "m,radius,I\n";
      for (int k = 0; k <= points; ++k) {
        const double m = m_max * k / points;
        csv << format_double(m) << ',' << format_double(r->H_inverse(m)) << ',' << format_double(r->profile(m))
            << '\n';
      }
    } else if (const auto* s = std::get_if<SingularRadialDensity>(&w)) {
      csv << "m,radius,sphere_weight\n";
      for (int k = 0; k <= points; ++k) {
        const double m = m_max * k / points;
        const double R = s->ball_radius(m);
        csv << format_double(m) << ',' << format_double(R) << ',' << format_double(s->sphere_weight(R)) << '\n';
      }
    } else {
      throw UsageError("config.density: profile needs a radial, singular-radial or one-dimensional density");
    }
  }
  const std::string path = out_path(get<std::string>(cfg, "out").value_or(""), "profile.csv");
  if (path.empty()) {
    out << csv.str();
  } else {
    write_text(path, csv.str());
  }
  return kExitPass;
}

// ------------------------------------------------------------- symmetrize

int cmd_symmetrize(const Json& cfg, const std::string& mode_s, const std::string& in, int axis, std::ostream& out) {
  if (in.empty()) throw UsageError("--in: required");
  SymMode mode;
  try {
    mode = sym_mode_from_string(mode_s);
  } catch (const Error& e) {
    throw UsageError(std::string("--mode: ") + e.what());
  }
  GridFile f = read_grid_path(in);
  GridFile r = f;
  if (f.is_function) {
    const GridFunction u(f.lattice, f.values);
    r.values = mode == SymMode::kSteiner ? steiner_symmetrize_fn(u, axis).values : schwarz_symmetrize_fn(u).values;
  } else {
    const GridSet s(f.lattice, f.values);
    r.values = (mode == SymMode::kSteiner ? steiner_symmetrize_set(s, axis) : schwarz_symmetrize_set(s)).occ;
  }
  const std::string path = out_path(get<std::string>(cfg, "out").value_or(""), "symmetrized.mugrid");
  if (path.empty()) {
    if (r.is_function) {
      write_grid_function(out, GridFunction(r.lattice, r.values));
    } else {
      write_grid_set(out, GridSet(r.lattice, r.values));
    }
  } else {
    write_grid_path(path, r);
  }
  return kExitPass;
}

// ----------------------------------------------------------------- verify

int cmd_verify(const Json& cfg, const std::string& suite, std::ostream& out) {
  if (suite.empty()) throw UsageError("verify: missing suite name");
  const SuiteConfig sc = suite_config(cfg);
  Json result;
  if (suite == "full" || suite == "all") {
    result = run_all_suites(sc);
  } else {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) {
      std::string known;
      for (const auto& n : names) known += n + ", ";
      throw UsageError("verify: unknown suite '" + suite + "' (known: " + known + "full)");
    }
    result = run_suite(suite, sc);
  }
  const std::string text = result.dump(2) + "\n";
  out << text;
  const std::string path = out_path(get<std::string>(cfg, "out").value_or(""), "verify_" + suite + ".json");
  if (!path.empty()) write_text(path, text);
  return result["passed"].get<bool>() ? kExitPass : kExitAssertion;
}

// ------------------------------------------------------------------ solve

Shape shape_from_json(const Json& d, const std::string& path) {
  if (!d.is_object()) throw UsageError(path + ": expected an object");
  const std::string kind = d.value("shape", std::string("disk"));
  auto num = [&](const char* k, double def) {
    if (!d.contains(k)) return def;
    if (!d.at(k).is_number()) throw UsageError(path + "." + k + ": expected a number");
    return d.at(k).get<double>();
  };
  if (kind == "disk") return ball({num("x", 0.0), num("y", 0.0), num("z", 0.0)}, num("r", 1.0));
  if (kind == "square") {
    const double h = 0.5 * num("side", 1.6);
    return box({-h, -h, -h}, {h, h, h});
  }
  if (kind == "lshape") return l_shape(num("s", 0.8));
  if (kind == "ellipse") return ellipse({num("x", 0.0), num("y", 0.0), 0.0}, num("a", 1.0), num("b", 0.6), num("angle", 0.0));
  throw UsageError(path + ".shape: unknown shape '" + kind + "' (disk, square, lshape, ellipse)");
}

GridFunction f_from_json(const LatticePtr& lat, const Json& f) {
  if (!f.is_object()) throw UsageError("config.f: expected an object");
  const std::string kind = f.value("kind", std::string("constant"));
  if (kind == "constant") {
    const double v = f.value("value", 1.0);
    if (v < 0.0) throw UsageError("config.f.value: must be >= 0");
    return sample(lat, [v](const Point&) { return v; });
  }
  if (kind == "bump") {
    Bump b;
    if (f.contains("center")) {
      const auto& c = f.at("center");
      if (!c.is_array()) throw UsageError("config.f.center: expected an array");
      for (std::size_t a = 0; a < std::min<std::size_t>(3, c.size()); ++a) b.center[a] = c[a].get<double>();
    }
    b.width = f.value("width", 0.5);
    b.height = f.value("height", 1.0);
    if (!(b.width > 0.0)) throw UsageError("config.f.width: must be positive");
    return sample_bumps(lat, {b});
  }
  if (kind == "radial_ramp") {
    const double R = f.value("radius", 1.0);
    return sample(lat, [R](const Point& x) {
      return std::max(0.0, 1.0 - std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / R);
    });
  }
  if (kind == "gridfile") {
    GridFile g = read_grid_path(f.value("path", std::string()));
    if (g.lattice->spec().to_json() != lat->spec().to_json()) throw UsageError("config.f.path: grid differs from the problem grid");
    return GridFunction(lat, g.values);
  }
  throw UsageError("config.f.kind: unknown kind '" + kind + "' (constant, bump, radial_ramp, gridfile)");
}

int cmd_solve(const Json& cfg, std::ostream& out) {
  const Json dspec = density_spec(cfg, 1.0, 2);
  const int n = dspec.value("n", 2);
  GridSpec gs{n, get<int>(cfg, "N").value_or(256), get<double>(cfg, "L").value_or(1.2)};
  try {
    gs.validate();
  } catch (const Error& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  const LatticePtr lat = make_lattice(gs, weight_from_json(dspec));
  EllipticProblem prob;
  const Json dom = cfg.value("domain", Json{{"shape", "disk"}, {"r", 1.0}});
  if (dom.is_object() && dom.contains("gridfile")) {
    GridFile g = read_grid_path(dom.at("gridfile").get<std::string>());
    if (g.lattice->spec().to_json() != gs.to_json()) throw UsageError("config.domain.gridfile: grid differs from --N/--L");
    prob.domain = GridSet(lat, g.values);
  } else {
    prob.shape = shape_from_json(dom, "config.domain");
    prob.domain = rasterize(lat, *prob.shape);
  }
  prob.p = get<double>(cfg, "p").value_or(2.0);
  prob.f = f_from_json(lat, cfg.value("f", Json{{"kind", "constant"}, {"value", 1.0}}));
  if (cfg.contains("solver")) {
    const Json& s = cfg.at("solver");
    if (!s.is_object()) throw UsageError("config.solver: expected an object");
    prob.solver.residual_tol = s.value("residual_tol", prob.solver.residual_tol);
    prob.solver.max_iter = s.value("max_iter", prob.solver.max_iter);
  }
  std::vector<double> qs;
  if (cfg.contains("qs")) {
    for (const auto& q : cfg.at("qs")) qs.push_back(q.get<double>());
  } else if (auto q = get<double>(cfg, "q")) {
    qs = {*q};
  } else {
    qs = {1.0, 0.5 * (1.0 + prob.p)};
  }
  const double tol = get<double>(cfg, "tol").value_or(0.02);
  const SolveResult sol = solve_weighted_plaplace(prob);
  Json report = {{"command", "solve"},
                 {"config", cfg},
                 {"grid", gs.to_json()},
                 {"density", dspec},
                 {"p", prob.p},
                 {"linear_iterations", sol.linear_iterations},
                 {"picard_iterations", sol.picard_iterations},
                 {"epsilon", sol.epsilon},
                 {"max_u", sol.u.max_value()}};
  bool passed = true;
  if (lat->radial()) {
    const auto rep = compare_with(prob, sol, qs, tol);
    report["comparison"] = rep.to_json();
    passed = rep.passed;
  }
  report["passed"] = passed;
  const std::string dir = get<std::string>(cfg, "out").value_or("");
  if (!dir.empty()) {
    ensure_dir(dir);
    std::ofstream os((fs::path(dir) / "solution.mugrid").string());
    write_grid_function(os, sol.u);
    write_text((fs::path(dir) / "solve_report.json").string(), report.dump(2) + "\n");
  }
  out << report.dump(2) << "\n";
  return passed ? kExitPass : kExitAssertion;
}

// ----------------------------------------------------------------- report

void report_rows(const Json& j, const std::string& src, std::ostringstream& csv, bool& all_ok) {
  if (j.contains("suites")) {
    for (const auto& s : j.at("suites")) report_rows(s, src, csv, all_ok);
    return;
  }
  if (j.contains("checks")) {
    const std::string suite = j.value("suite", std::string());
    for (const auto& c : j.at("checks")) {
      const bool ok = c.at("passed").get<bool>();
      all_ok = all_ok && ok;
      csv << src << ',' << suite << ',' << c.at("id").get<std::string>() << ','
          << format_double(c.at("value").get<double>()) << ',' << c.at("relation").get<std::string>() << ','
          << format_double(c.at("bound").get<double>()) << ',' << (ok ? "true" : "false") << '\n';
    }
    return;
  }
  const Json& rep = j.contains("comparison") ? j.at("comparison") : j;
  if (rep.contains("operation")) {
    const auto r = ComparisonReport::from_json(rep);
    all_ok = all_ok && r.passed;
    csv << src << ",report," << r.operation << ',' << format_double(r.deficit) << ",>=,"
        << format_double(-r.tolerance) << ',' << (r.passed ? "true" : "false") << '\n';
    return;
  }
  throw UsageError(src + ": not a suite result or comparison report");
}

int cmd_report(const Json& cfg, const std::vector<std::string>& inputs, std::ostream& out) {
  if (inputs.empty()) throw UsageError("report: no input files");
  std::ostringstream csv;
  csv << "source,suite,check,value,relation,bound,passed\n";
  bool all_ok = true;
  for (const auto& in : inputs) {
    std::ifstream is(in);
    if (!is) throw UsageError("report: cannot open '" + in + "'");
    Json j;
    try {
      j = Json::parse(is);
    } catch (const Json::exception& e) {
      throw UsageError("report: invalid JSON in '" + in + "': " + e.what());
    }
    report_rows(j, fs::path(in).filename().string(), csv, all_ok);
  }
  const std::string path = out_path(get<std::string>(cfg, "out").value_or(""), "summary.csv");
  if (path.empty()) {
    out << csv.str();
  } else {
    write_text(path, csv.str());
  }
  return all_ok ? kExitPass : kExitAssertion;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted symmetrization and rearrangement checks", "mu_rearrange"};
  app.require_subcommand(1);
  Common o_prof, o_sym, o_ver, o_sol, o_rep;

  auto* prof = app.add_subcommand("profile", "tabulate the isoperimetric profile of a density as CSV");
  add_common(prof, o_prof);
  double m_max = 20.0;
  int points = 200;
  prof->add_option("--m-max", m_max, "largest mass");
  prof->add_option("--points", points, "number of intervals");

  auto* sym = app.add_subcommand("symmetrize", "Steiner or Schwarz symmetrization of a grid file");
  add_common(sym, o_sym);
  std::string mode = "schwarz";
  std::string in;
  int axis = 1;
  sym->add_option("--mode", mode, "steiner or schwarz");
  sym->add_option("--in", in, "input MUGRID or CSV file")->required();
  sym->add_option("--axis", axis, "Steiner axis (1-based)");

  auto* ver = app.add_subcommand("verify", "run a verification suite");
  add_common(ver, o_ver);
  std::string suite;
  ver->add_option("suite", suite, "iso1d, anchors, isond, steiner, properties, polya, comparison, rayleigh, singular, full")
      ->required();

  auto* sol = app.add_subcommand("solve", "solve a weighted p-Laplace problem and compare with the radial bound");
  add_common(sol, o_sol);

  auto* rep = app.add_subcommand("report", "merge JSON reports into a CSV summary");
  add_common(rep, o_rep);
  std::vector<std::string> inputs;
  rep->add_option("inputs", inputs, "JSON report files");
  rep->add_option("--in", inputs, "JSON report files");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitPass;
    }
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*prof) return cmd_profile(load_config(o_prof), m_max, points, out);
    if (*sym) {
      if (axis < 1) throw UsageError("--axis: must be >= 1");
      return cmd_symmetrize(load_config(o_sym), mode, in, axis - 1, out);
    }
    if (*ver) return cmd_verify(load_config(o_ver), suite, out);
    if (*sol) return cmd_solve(load_config(o_sol), out);
    if (*rep) return cmd_report(load_config(o_rep), inputs, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const QuadratureError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Json::exception& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace murearr
