// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#include "murearr/suites.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "murearr/elliptic.hpp"
#include "murearr/gridsets.hpp"
#include "murearr/io.hpp"
#include "murearr/rearrange1d.hpp"
#include "murearr/rearrangefn.hpp"
#include "murearr/shapes.hpp"
#include "murearr/spectral.hpp"

namespace murearr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

class Suite {
 public:
  Suite(std::string name, const SuiteConfig& cfg) : name_(std::move(name)) {
    out_["suite"] = name_;
    out_["config"] = cfg.to_json();
    out_["passed"] = true;
    out_["checks"] = Json::array();
    out_["failures"] = Json::array();
  }

  void check(const std::string& id, double value, const std::string& rel, double bound) {
    const bool ok = rel == "<=" ? value <= bound : value >= bound;
    out_["checks"].push_back(
        {{"id", id}, {"value", value}, {"relation", rel}, {"bound", bound}, {"passed", ok}});
    if (!ok) out_["passed"] = false;
  }

  void fail(const ComparisonReport& rep, Json context) {
    if (out_["failures"].size() >= 10) return;  // keep reports readable
    Json j = rep.to_json();
    j["context"] = std::move(context);
    out_["failures"].push_back(std::move(j));
  }

  void note(const std::string& key, Json value) { out_["summary"][key] = std::move(value); }

  Json finish() { return std::move(out_); }

 private:
  std::string name_;
  Json out_ = Json::object();
};

double rel_deficit(const ComparisonReport& r) {
  const double scale = std::max(std::abs(r.lhs), std::abs(r.rhs));
  return scale > 0.0 ? r.deficit / scale : 0.0;
}

std::vector<double> c_list(const SuiteConfig& cfg, std::vector<double> def) {
  return cfg.c ? std::vector<double>{*cfg.c} : def;
}

// ----------------------------------------------------------------------------

Json suite_iso1d(const SuiteConfig& cfg) {
  Suite S("iso1d", cfg);
  const int cases = cfg.cases.value_or(10000);
  const auto cs = c_list(cfg, {0.0, 0.5, 1.0});
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const double c = cs[k];
    const Density1D d = Density1D::gaussian(c);
    Rng rng(cfg.seed * 7919 + k);
    double min_sd = kInf;
    double max_meas = 0.0;
    double centered_max = 0.0;
    int near_equal = 0;
    int violations = 0;
    for (int i = 0; i < cases; ++i) {
      const bool centered = i % 20 == 19;
      const IntervalSet s = centered ? IntervalSet::centered(rng.uniform(0.05, 2.5)) : random_interval_set(rng);
      const auto rep = verify_iso_1d(d, s);
      const double sd = rep.deficit / std::max(1.0, rep.rhs);
      if (sd < -1e-9) S.fail(rep, {{"case", i}, {"set", interval_set_to_json(s)}});
      min_sd = std::min(min_sd, sd);
      const IntervalSet sym = symmetrize_1d(d, s);
      const double m = rep.metadata["measure"].get<double>();
      max_meas = std::max(max_meas, std::abs(measure_1d(d, sym) - m) / m);
      if (centered) centered_max = std::max(centered_max, std::abs(rep.deficit));
      if (c >= 1.0 && rep.deficit < 1e-6) {
        ++near_equal;
        if (hausdorff_distance(s, sym) > 1e-4) ++violations;
      }
    }
    const std::string tag = "c=" + num(c) + "/";
    S.check(tag + "min_scaled_deficit", min_sd, ">=", -1e-9);
    S.check(tag + "max_measure_rel_error", max_meas, "<=", 1e-9);
    S.check(tag + "centered_max_abs_deficit", centered_max, "<=", 1e-9);
    if (c >= 1.0) {
      S.check(tag + "near_equality_not_centered", violations, "<=", 0);
      S.note(tag + "near_equality_cases", near_equal);
    }
  }
  return S.finish();
}

Json suite_anchors(const SuiteConfig& cfg) {
  Suite S("anchors", cfg);
  const double e = std::numbers::e;
  const double pi = std::numbers::pi;
  const RadialDensity d(2, 1.0);
  const double H1 = d.H(1.0);
  S.check("H(1)/rel_error", std::abs(H1 - pi * (e - 1.0)) / (pi * (e - 1.0)), "<=", 1e-8);
  const double I = d.profile(pi * (e - 1.0));
  S.check("I(pi(e-1))/rel_error", std::abs(I - 2.0 * pi * e) / (2.0 * pi * e), "<=", 1e-8);
  const double Hinv = d.H_inverse(pi * (e - 1.0));
  S.check("Hinv(pi(e-1))/abs_error", std::abs(Hinv - 1.0), "<=", 1e-10);
  // 2∫₀¹ e^{t²} dt = √π erfi(1).
  const Density1D g = Density1D::gaussian(1.0);
  const double two_psi = 2.925303491814363;
  S.check("measure(-1,1)/rel_error", std::abs(measure_1d(g, IntervalSet({{-1.0, 1.0}})) - two_psi) / two_psi, "<=",
          1e-10);
  S.check("perimeter(0,1)/abs_error", std::abs(perimeter_1d(g, IntervalSet({{0.0, 1.0}})) - (1.0 + e)), "<=",
          1e-12);
  return S.finish();
}

Json suite_isond(const SuiteConfig& cfg) {
  Suite S("isond", cfg);
  const int N = cfg.N.value_or(512);
  const double L = cfg.L.value_or(2.5);
  S.note("grid", Json{{"N", N}, {"L", L}});
  const double c = cfg.c.value_or(1.0);
  const int cases = cfg.cases.value_or(200);
  const auto lat = make_lattice(GridSpec{2, N, L}, RadialDensity(2, c));
  double disk_err = 0.0;
  for (int k = 3; k <= 15; ++k) {
    const double r = 0.1 * k;
    const auto rep = verify_iso_nd(rasterize(lat, ball({0, 0, 0}, r)));
    disk_err = std::max(disk_err, std::abs(rep.deficit) / rep.rhs);
  }
  S.check("disk_max_rel_error", disk_err, "<=", 0.01);
  Rng rng(cfg.seed * 104729 + 3);
  double min_ratio = kInf;
  int containment_failures = 0;
  for (int i = 0; i < cases; ++i) {
    const Shape sh = random_blob(rng, 2, L);
    const GridSet s = rasterize(lat, sh);
    const auto rep = verify_iso_nd(s);
    min_ratio = std::min(min_ratio, rep.lhs / rep.rhs);
    if (rep.lhs < 0.98 * rep.rhs) S.fail(rep, {{"case", i}, {"shape", sh.id}});
    if (i < 20) {
      const auto cont = verify_parallel_containment(s, 0.2);
      if (!cont.passed) {
        ++containment_failures;
        S.fail(cont, {{"case", i}, {"shape", sh.id}});
      }
    }
  }
  S.check("blob_min_perimeter_over_profile", min_ratio, ">=", 0.98);
  S.check("parallel_containment_failures", containment_failures, "<=", 0);
  return S.finish();
}

Json suite_steiner(const SuiteConfig& cfg) {
  Suite S("steiner", cfg);
  const int N = cfg.N.value_or(512);
  const double L = cfg.L.value_or(2.5);
  S.note("grid", Json{{"N", N}, {"L", L}});
  const int cases = cfg.cases.value_or(200);
  const auto cs = c_list(cfg, {0.0, 1.0});
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const double c = cs[k];
    const std::string tag = "c=" + num(c) + "/";
    const auto lat = make_lattice(GridSpec{2, N, L}, RadialDensity(2, c));
    Rng rng(cfg.seed * 15485863 + k);
    double min_ratio = kInf;
    double max_meas = 0.0;
    for (int i = 0; i < cases; ++i) {
      const Shape sh = random_blob(rng, 2, L);
      const GridSet s = rasterize(lat, sh);
      const GridSet st = steiner_symmetrize_set(s, 0);
      const double m = grid_measure(s);
      max_meas = std::max(max_meas, std::abs(grid_measure(st) - m) / m);
      const double p = perimeter_boundary_integral(s);
      const double ps = perimeter_boundary_integral(threshold(st));
      min_ratio = std::min(min_ratio, p / ps);
      if (p < 0.98 * ps) {
        S.fail(ComparisonReport::make("steiner_perimeter", p, ps, 0.02 * ps), {{"case", i}, {"shape", sh.id}});
      }
    }
    S.check(tag + "min_perimeter_ratio", min_ratio, ">=", 0.98);
    S.check(tag + "max_measure_rel_error", max_meas, "<=", 1e-12);
    double min_bound = kInf;
    int positive = 0;
    for (int i = 0; i < 50; ++i) {
      const Shape sh = random_rectangles(rng, L, lat->delta());
      const auto rep = steiner_deficit_bound(rasterize(lat, sh));
      if (rep.rhs > 0.0) {
        ++positive;
        min_bound = std::min(min_bound, rep.lhs / rep.rhs);
        if (rep.lhs < 0.95 * rep.rhs) S.fail(rep, {{"case", i}, {"shape", sh.id}});
      }
    }
    S.check(tag + "polyhedral_min_deficit_over_bound", positive > 0 ? min_bound : 0.0, ">=", 0.95);
    S.note(tag + "polyhedral_with_positive_bound", positive);
  }
  {
    // Iterated Steiner towards the Schwarz ball (coarser grid).
    const auto lat = make_lattice(GridSpec{2, std::min(N, 256), L}, RadialDensity(2, cs.back()));
    Rng rng(cfg.seed * 2 + 1);
    const auto res = iterated_steiner(rasterize(lat, random_blob(rng, 2, L)), 8, std::numbers::pi / 5.0);
    S.check("iterated_final_distance_to_ball", res.distance_to_ball.back(), "<=", 0.03);
    S.note("iterated_distance_to_ball", res.distance_to_ball);
    S.note("iterated_rotation_drift", res.drift);
  }
  return S.finish();
}

Json suite_properties(const SuiteConfig& cfg) {
  Suite S("properties", cfg);
  const int N = cfg.N.value_or(256);
  const double L = cfg.L.value_or(2.5);
  S.note("grid", Json{{"N", N}, {"L", L}});
  const int cases = cfg.cases.value_or(100);
  const double tol = cfg.tol.value_or(0.01);
  const auto cs = c_list(cfg, {0.0, 1.0});
  const PropertyKind kinds[] = {PropertyKind::kHardyLittlewood, PropertyKind::kNonexpansivity,
                                PropertyKind::kSupnormContraction, PropertyKind::kCorrelation};
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const double c = cs[k];
    const auto lat = make_lattice(GridSpec{2, N, L}, RadialDensity(2, c));
    Rng rng(cfg.seed * 32452843 + k);
    for (SymMode mode : {SymMode::kSteiner, SymMode::kSchwarz}) {
      const std::string tag = "c=" + num(c) + "/" + to_string(mode) + "/";
      double min_rel[4] = {kInf, kInf, kInf, kInf};
      double min_rel_min_corr = kInf;
      double cav = 0.0;
      double equi = 0.0;
      double slice = 0.0;
      double integral_err = 0.0;
      double order = 0.0;
      double omega_excess = -kInf;
      Rng pair_rng = rng;  // same pairs for both modes
      for (int i = 0; i < cases; ++i) {
        const auto bu = random_bumps(pair_rng, 2, L);
        const auto bv = random_bumps(pair_rng, 2, L);
        const GridFunction u = sample_bumps(lat, bu);
        const GridFunction v = sample_bumps(lat, bv);
        const GridFunction us = symmetrize_fn(u, mode);
        const GridFunction vs = symmetrize_fn(v, mode);
        const Json ctx = {{"c", c}, {"case", i}, {"mode", to_string(mode)}};
        PropertyOptions opt;
        opt.rel_tol = tol;
        for (int q = 0; q < 4; ++q) {
          const auto rep = property_check(u, v, us, vs, kinds[q], mode, opt);
          min_rel[q] = std::min(min_rel[q], rel_deficit(rep));
          if (!rep.passed) S.fail(rep, ctx);
        }
        opt.correlation = "min";
        min_rel_min_corr =
            std::min(min_rel_min_corr, rel_deficit(property_check(u, v, us, vs, PropertyKind::kCorrelation, mode, opt)));
        cav = std::max(cav, std::abs(rel_deficit(property_check(u, v, us, vs, PropertyKind::kCavalieri, mode, opt))));
        const auto eq = equimeasurability_check(u, us);
        equi = std::max(equi, 3.0 * eq.rhs / eq.lhs);
        if (!eq.passed) S.fail(eq, ctx);
        if (mode == SymMode::kSteiner) slice = std::max(slice, slice_equimeasurability(u, us));
        const double iu = integral_mu(u, [](double t) { return t; });
        integral_err = std::max(integral_err, std::abs(integral_mu(us, [](double t) { return t; }) - iu) / iu);
        // u <= u + v survives symmetrization cell by cell.
        GridFunction w = u;
        for (std::size_t j = 0; j < w.values.size(); ++j) w.values[j] += v.values[j];
        const GridFunction ws = symmetrize_fn(w, mode);
        for (std::size_t j = 0; j < ws.values.size(); ++j) {
          if (us.values[j] > ws.values[j]) order = std::max(order, (us.values[j] - ws.values[j]) / ws.values[j]);
        }
        if (i < 5) {
          const double slack = 2.0 * lat->delta() * bump_lipschitz(bu);
          for (double t : {0.1, 0.2, 0.4}) {
            omega_excess = std::max(omega_excess, modulus_of_continuity(us, t) - modulus_of_continuity(u, t) - slack);
          }
        }
      }
      S.check(tag + "hardy_littlewood_min_rel_deficit", min_rel[0], ">=", -tol);
      S.check(tag + "nonexpansivity_min_rel_deficit", min_rel[1], ">=", -tol);
      S.check(tag + "supnorm_contraction_min_rel_deficit", min_rel[2], ">=", -tol);
      S.check(tag + "correlation_product_min_rel_deficit", min_rel[3], ">=", -tol);
      S.check(tag + "correlation_min_min_rel_deficit", min_rel_min_corr, ">=", -tol);
      S.check(tag + "cavalieri_max_rel_error", cav, "<=", 1e-12);
      S.check(tag + "equimeasurability_max_cell_masses", equi, "<=", 3.0);
      if (mode == SymMode::kSteiner) S.check(tag + "slice_equimeasurability_max_cell_masses", slice, "<=", 1.0);
      S.check(tag + "integral_max_rel_error", integral_err, "<=", 1e-10);
      S.check(tag + "order_max_violation", order, "<=", 0.0);
      S.check(tag + "modulus_max_excess", omega_excess, "<=", 0.0);
    }
  }
  return S.finish();
}

Json suite_polya(const SuiteConfig& cfg) {
  Suite S("polya", cfg);
  const int N = cfg.N.value_or(256);
  const double L = cfg.L.value_or(2.5);
  S.note("grid", Json{{"N", N}, {"L", L}});
  const int cases = cfg.cases.value_or(50);
  const double tol = cfg.tol.value_or(0.02);
  const auto cs = c_list(cfg, {0.0, 1.0});
  const std::vector<double> ps = cfg.p ? std::vector<double>{*cfg.p} : std::vector<double>{1.0, 2.0, 3.0};
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const double c = cs[k];
    const auto lat = make_lattice(GridSpec{2, N, L}, RadialDensity(2, c));
    Rng rng(cfg.seed * 49979687 + k);
    std::vector<GridFunction> corpus;
    for (int i = 0; i < cases; ++i) corpus.push_back(sample_bumps(lat, random_bumps(rng, 2, L)));
    for (double p : ps) {
      for (SymMode mode : {SymMode::kSteiner, SymMode::kSchwarz}) {
        double min_rel = kInf;
        for (int i = 0; i < cases; ++i) {
          const auto rep = dirichlet_functional(corpus[i], p, mode, tol);
          min_rel = std::min(min_rel, rep.deficit / rep.rhs);
          if (!rep.passed) S.fail(rep, {{"c", c}, {"case", i}});
        }
        S.check("c=" + num(c) + "/p=" + num(p) + "/" + to_string(mode) + "/min_rel_deficit", min_rel, ">=", -tol);
      }
    }
    if (c > 0.0) {
      // A single bump moved off the symmetry axes: recentring lowers the weighted energy.
      const GridFunction u = sample_bumps(lat, {Bump{{0.6, 0.3, 0.0}, 1.0, 0.6}});
      for (SymMode mode : {SymMode::kSteiner, SymMode::kSchwarz}) {
        const auto rep = dirichlet_functional(u, 2.0, mode, tol);
        S.check("c=" + num(c) + "/recentered/" + to_string(mode) + "/rel_deficit", rep.deficit / rep.rhs, ">=", 1e-3);
      }
    }
  }
  return S.finish();
}

struct CompareCase {
  std::string id;
  double c;
  double p;
  Shape shape;
  bool bump;
  std::vector<double> qs;
  double tol;
};

Json suite_comparison(const SuiteConfig& cfg) {
  Suite S("comparison", cfg);
  const int N = cfg.N.value_or(256);
  const double L = cfg.L.value_or(1.2);
  S.note("grid", Json{{"N", N}, {"L", L}});
  auto f_of = [](const LatticePtr& lat, bool bump) {
    if (!bump) return sample(lat, [](const Point&) { return 1.0; });
    return sample_bumps(lat, {Bump{{0.3, -0.2, 0.0}, 1.0, 0.5}});
  };
  {
    const auto lat = make_lattice(GridSpec{2, N, L}, RadialDensity(2, 0.0));
    EllipticProblem prob;
    prob.shape = ball({0, 0, 0}, 1.0);
    prob.domain = rasterize(lat, *prob.shape);
    prob.f = f_of(lat, false);
    const auto sol = solve_weighted_plaplace(prob);
    double err = 0.0;
    for (std::size_t i = 0; i < lat->size(); ++i) {
      if (prob.domain.occ[i] != 1.0) continue;
      const auto x = lat->position(i);
      err = std::max(err, std::abs(sol.u.values[i] - 0.25 * (1.0 - x[0] * x[0] - x[1] * x[1])));
    }
    S.check("control/solver_rel_linf_error", err / 0.25, "<=", 0.01);
    const auto rep = compare_with(prob, sol, {1.0, 1.5}, 0.01);
    S.check("control/symmetrized_vs_v_rel_linf", rep.metadata["max_abs_diff"].get<double>() / rep.metadata["max_v"].get<double>(),
            "<=", 0.01);
    if (!rep.passed) S.fail(rep, {{"case", "control"}});
  }
  std::vector<CompareCase> cases;
  for (bool bump : {false, true}) {
    const std::string fid = bump ? "bump" : "one";
    cases.push_back({"square/f=" + fid, 1.0, 2.0, box({-0.8, -0.8, 0}, {0.8, 0.8, 0}), bump, {1.0, 1.5}, 0.02});
    cases.push_back({"lshape/f=" + fid, 1.0, 2.0, l_shape(0.8), bump, {1.0, 1.5}, 0.02});
  }
  cases.push_back({"p1.5/square/f=one", 1.0, 1.5, box({-0.8, -0.8, 0}, {0.8, 0.8, 0}), false, {1.0, 1.25}, 0.03});
  if (cfg.c) {
    for (auto& cc : cases) cc.c = *cfg.c;
  }
  if (cfg.p) {
    for (auto& cc : cases) {
      cc.p = *cfg.p;
      cc.qs = {1.0, 0.5 * (1.0 + cc.p)};
    }
  }
  for (const auto& cc : cases) {
    const auto lat = make_lattice(GridSpec{2, N, L}, RadialDensity(2, cc.c));
    EllipticProblem prob;
    prob.shape = cc.shape;
    prob.domain = rasterize(lat, cc.shape);
    prob.p = cc.p;
    prob.f = f_of(lat, cc.bump);
    const auto rep = compare(prob, cc.qs, cc.tol);
    const double vmax = rep.metadata["max_v"].get<double>();
    S.check(cc.id + "/min_v_minus_usym_over_max_v", vmax > 0.0 ? rep.lhs / vmax : 0.0, ">=", -cc.tol);
    double worst = 0.0;
    for (const auto& g : rep.metadata["gradient"]) worst = std::max(worst, g["ratio"].get<double>());
    S.check(cc.id + "/max_gradient_ratio", worst, "<=", 1.0 + cc.tol);
    if (!rep.passed) S.fail(rep, {{"case", cc.id}});
  }
  {
    // Three dimensions, c = 0: (1 - |x|²)/6.
    const auto lat = make_lattice(GridSpec{3, std::min(N, 64), L}, RadialDensity(3, 0.0));
    EllipticProblem prob;
    prob.shape = ball({0, 0, 0}, 1.0);
    prob.domain = rasterize(lat, *prob.shape);
    prob.f = f_of(lat, false);
    const auto sol = solve_weighted_plaplace(prob);
    const auto rep = compare_with(prob, sol, {1.0, 1.5}, 0.02);
    S.check("ball3d/min_v_minus_usym_over_max_v", rep.lhs / rep.metadata["max_v"].get<double>(), ">=", -0.02);
    double worst = 0.0;
    for (const auto& g : rep.metadata["gradient"]) worst = std::max(worst, g["ratio"].get<double>());
    S.check("ball3d/max_gradient_ratio", worst, "<=", 1.02);
  }
  return S.finish();
}

Json suite_rayleigh(const SuiteConfig& cfg) {
  Suite S("rayleigh", cfg);
  const int N = cfg.N.value_or(512);
  const double L = cfg.L.value_or(4.0);
  S.note("grid", Json{{"N", N}, {"L", L}});
  const double c = cfg.c.value_or(1.0);
  const int n = 2;
  const int cases = cfg.cases.value_or(100);
  const auto lat = make_lattice(GridSpec{n, N, L}, RadialDensity(n, c));
  const double target = 2.0 * c * n;
  const auto corpus = bump_corpus(lat, cfg.seed * 67867967 + 1, cases);
  const auto g = rayleigh_report(corpus.front().u, corpus.front().id);
  S.note("gaussian", g.to_json());
  if (target > 0.0) {
    S.check("gaussian_rel_gap", std::abs(g.relative_gap), "<=", 0.02);
    double min_q = kInf;
    for (std::size_t i = 1; i < corpus.size(); ++i) min_q = std::min(min_q, rayleigh_quotient(corpus[i].u));
    S.check("bumps_min_quotient", min_q, ">=", target * 0.98);
    const auto survey = sobolev_ratio_survey(corpus, 2.0, 2.0, 0.02);
    S.check("survey_2_2_min_ratio_squared", survey.min_ratio * survey.min_ratio, ">=", target * 0.98);
    S.note("survey_2_2_argmin", survey.argmin);
  } else {
    S.check("gaussian_quotient_positive", g.quotient, ">=", 0.0);
  }
  const auto s11 = sobolev_ratio_survey(corpus, 1.0, 1.0);
  S.check("survey_1_1_min_ratio", s11.min_ratio, ">=", 1e-300);
  double worst = kInf;
  for (const auto& f : corpus) {
    const auto form = oscillator_form(f.u, c, n);
    worst = std::min(worst, form.value() / form.positive_part());
  }
  S.check("oscillator_min_over_positive_part", worst, ">=", -0.005);
  if (c > 0.0) {
    const GridFunction ground = sample(lat, [&](const Point& x) {
      const double r2 = x[0] * x[0] + x[1] * x[1];
      return std::exp(-0.5 * c * r2) * smooth_cutoff(std::sqrt(r2), 0.7 * L, 0.9 * L);
    });
    const auto form = oscillator_form(ground, c, n);
    S.check("ground_state_abs_form_over_gradient", std::abs(form.value()) / form.gradient, "<=", 0.005);
  }
  return S.finish();
}

Json suite_singular(const SuiteConfig& cfg) {
  Suite S("singular", cfg);
  const int N = cfg.N.value_or(512);
  const double L = cfg.L.value_or(2.5);
  S.note("grid", Json{{"N", N}, {"L", L}});
  const int cases = cfg.cases.value_or(20);
  const SingularRadialDensity d(2, ConvexProfile::affine(0.0, 1.0));
  const auto lat = make_lattice(GridSpec{2, N, L}, d);
  const auto ball_rep = singular_minkowski_check(d, rasterize(lat, ball({0, 0, 0}, 1.0)));
  S.check("ball_rel_error", std::abs(ball_rep.deficit) / ball_rep.rhs, "<=", 0.01);
  Rng rng(cfg.seed * 86028121 + 5);
  double min_ratio = kInf;
  for (int i = 0; i < cases; ++i) {
    const Shape sh = random_star_about_origin(rng, rng.uniform(0.6, 1.4));
    const auto rep = singular_minkowski_check(d, rasterize(lat, sh));
    min_ratio = std::min(min_ratio, rep.lhs / rep.rhs);
    if (!rep.passed) S.fail(rep, {{"case", i}, {"shape", sh.id}});
  }
  S.check("stars_min_ratio", min_ratio, ">=", 0.98);
  {
    // a ≡ 0: ∫_{∂Ω} |x|⁻¹ dH¹ is at least the total angle.
    const SingularRadialDensity d0(2, ConvexProfile::affine(0.0, 0.0));
    const auto lat0 = make_lattice(GridSpec{2, N, L}, d0);
    const GridSet s = rasterize(lat0, ellipse({0.2, 0.1, 0.0}, 1.2, 0.7, 0.4));
    const double lhs = boundary_integral(s, [&d0](double x, double y) {
      const double p[2] = {x, y};
      return d0.value(p);
    });
    S.check("angular/boundary_integral_over_2pi", lhs / (2.0 * std::numbers::pi), ">=", 0.99);
  }
  return S.finish();
}

}  // namespace

Json SuiteConfig::to_json() const {
  Json j = {{"seed", seed}};
  auto put = [&j](const char* k, const auto& v) {
    if (v) j[k] = *v;
  };
  put("cases", cases);
  put("c", c);
  put("n", n);
  put("N", N);
  put("L", L);
  put("p", p);
  put("q", q);
  put("tol", tol);
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"anchors", "iso1d",      "isond",    "steiner", "properties",
                                                 "polya",   "comparison", "rayleigh", "singular"};
  return names;
}

Json run_suite(const std::string& name, const SuiteConfig& cfg) {
  if (name == "anchors") return suite_anchors(cfg);
  if (name == "iso1d") return suite_iso1d(cfg);
  if (name == "isond") return suite_isond(cfg);
  if (name == "steiner") return suite_steiner(cfg);
  if (name == "properties") return suite_properties(cfg);
  if (name == "polya") return suite_polya(cfg);
  if (name == "comparison") return suite_comparison(cfg);
  if (name == "rayleigh") return suite_rayleigh(cfg);
  if (name == "singular") return suite_singular(cfg);
  std::string known;
  for (const auto& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
  throw ParameterError("unknown suite '" + name + "' (known: " + known + ", full)");
}

Json run_all_suites(const SuiteConfig& cfg) {
  Json out = {{"suite", "full"}, {"config", cfg.to_json()}, {"passed", true}, {"suites", Json::array()}};
  for (const auto& n : suite_names()) {
    Json r = run_suite(n, cfg);
    if (!r["passed"].get<bool>()) out["passed"] = false;
    out["suites"].push_back(std::move(r));
  }
  return out;
}

double check_value(const Json& suite, const std::string& id) {
  for (const auto& c : suite.at("checks")) {
    if (c.at("id").get<std::string>() == id) return c.at("value").get<double>();
  }
  throw ParameterError("suite " + suite.value("suite", std::string("?")) + " has no check '" + id + "'");
}

}  // namespace murearr
