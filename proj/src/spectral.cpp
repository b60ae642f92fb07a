// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#include "murearr/spectral.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "murearr/io.hpp"
#include "murearr/parallel.hpp"
#include "murearr/rearrangefn.hpp"
#include "murearr/shapes.hpp"

namespace murearr {

namespace {

double weighted_sum(const GridFunction& u, const std::vector<double>& term) {
  const Lattice& lat = *u.lattice;
  return deterministic_sum(term.size(), [&](std::size_t i) { return term[i] * lat.cell_mass(i); });
}

double norm_q(const GridFunction& u, double q) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (double v : u.values) m = std::max(m, std::abs(v));
    return m;
  }
  const Lattice& lat = *u.lattice;
  const double s = deterministic_sum(u.values.size(), [&](std::size_t i) {
    return std::pow(std::abs(u.values[i]), q) * lat.cell_mass(i);
  });
  return std::pow(s, 1.0 / q);
}

double grad_norm_p(const GridFunction& u, double p) {
  const auto g = grid_gradient(u);
  const Lattice& lat = *u.lattice;
  const double s = deterministic_sum(g.size(), [&](std::size_t i) {
    const double m2 = g[i][0] * g[i][0] + g[i][1] * g[i][1] + g[i][2] * g[i][2];
    return std::pow(m2, 0.5 * p) * lat.cell_mass(i);
  });
  return std::pow(s, 1.0 / p);
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

double rayleigh_quotient(const GridFunction& u) {
  const auto g = grid_gradient(u);
  std::vector<double> g2(g.size());
  std::vector<double> u2(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g2[i] = g[i][0] * g[i][0] + g[i][1] * g[i][1] + g[i][2] * g[i][2];
    u2[i] = u.values[i] * u.values[i];
  }
  const double den = weighted_sum(u, u2);
  if (!(den > 0.0)) throw DomainError("rayleigh quotient: u vanishes identically");
  return weighted_sum(u, g2) / den;
}

Json RayleighReport::to_json() const {
  return Json{{"function_id", function_id}, {"quotient", quotient},   {"grid", grid.to_json()},
              {"c", c},                    {"n", n},                  {"target", target},
              {"relative_gap", relative_gap}};
}

RayleighReport rayleigh_report(const GridFunction& u, const std::string& id) {
  const RadialDensity& d = u.lattice->radial_density();
  RayleighReport r;
  r.quotient = rayleigh_quotient(u);
  r.function_id = id;
  r.grid = u.lattice->spec();
  r.c = d.c();
  r.n = d.n();
  r.target = 2.0 * d.c() * d.n();
  r.relative_gap = r.target > 0.0 ? (r.quotient - r.target) / r.target : 0.0;
  return r;
}

OscillatorForm oscillator_form(const GridFunction& v, double c, int n) {
  const Lattice& lat = *v.lattice;
  const auto g = grid_gradient(v);
  const double vol = lat.spec().cell_volume();
  OscillatorForm f;
  f.gradient = vol * deterministic_sum(g.size(), [&](std::size_t i) {
                 return g[i][0] * g[i][0] + g[i][1] * g[i][1] + g[i][2] * g[i][2];
               });
  f.potential = vol * c * c * deterministic_sum(g.size(), [&](std::size_t i) {
                  const auto x = lat.position(i);
                  return (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) * v.values[i] * v.values[i];
                });
  f.mass = vol * c * n * deterministic_sum(g.size(), [&](std::size_t i) { return v.values[i] * v.values[i]; });
  return f;
}

double smooth_cutoff(double r, double r0, double r1) {
  if (r <= r0) return 1.0;
  if (r >= r1) return 0.0;
  const double t = (r1 - r) / (r1 - r0);
  return t * t * (3.0 - 2.0 * t);
}

GridFunction truncated_gaussian(LatticePtr lat, double alpha) {
  const double L = lat->spec().L;
  return sample(lat, [&](const Point& x) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    return std::exp(-alpha * r2) * smooth_cutoff(std::sqrt(r2), 0.7 * L, 0.9 * L);
  });
}

std::vector<NamedFunction> bump_corpus(LatticePtr lat, std::uint64_t seed, int count) {
  std::vector<NamedFunction> out;
  double c = 1.0;
  if (lat->radial() && lat->radial_density().c() > 0.0) c = lat->radial_density().c();
  out.push_back({"gaussian", truncated_gaussian(lat, c)});
  Rng rng(seed);
  for (int k = 0; k < count; ++k) {
    const auto bumps = random_bumps(rng, lat->n(), lat->spec().L);
    out.push_back({"bump-" + std::to_string(k), sample_bumps(lat, bumps)});
  }
  return out;
}

void check_sobolev_range(int n, double p, double q) {
  if (!(p >= 1.0) || std::isinf(p)) throw ParameterError("sobolev survey: p must be a finite number >= 1");
  const std::string where = "(n = " + std::to_string(n) + ", p = " + fmt(p) + ", q = " + fmt(q) + ")";
  if (p < n) {
    const double qmax = n * p / (n - p);
    if (!(q >= p && q <= qmax)) {
      throw ParameterError("sobolev survey: q must lie in [p, np/(n-p)] = [" + fmt(p) + ", " + fmt(qmax) + "] " + where);
    }
  } else if (p == n) {
    if (!(q >= p) || std::isinf(q)) throw ParameterError("sobolev survey: q must lie in [n, inf) " + where);
  } else if (!(q >= p)) {
    throw ParameterError("sobolev survey: q must lie in [p, inf] " + where);
  }
}

SurveyResult sobolev_ratio_survey(const std::vector<NamedFunction>& corpus, double p, double q, double rel_tol) {
  if (corpus.empty()) throw ParameterError("sobolev survey: empty corpus");
  const Lattice& lat = *corpus.front().u.lattice;
  check_sobolev_range(lat.n(), p, q);
  SurveyResult res;
  res.min_ratio = std::numeric_limits<double>::infinity();
  for (const auto& f : corpus) {
    const double den = norm_q(f.u, q);
    if (!(den > 0.0)) throw DomainError("sobolev survey: function " + f.id + " vanishes identically");
    const double ratio = grad_norm_p(f.u, p) / den;
    res.rows.push_back({f.id, p, q, ratio});
    if (ratio < res.min_ratio) {
      res.min_ratio = ratio;
      res.argmin = f.id;
    }
  }
  const bool l2 = p == 2.0 && q == 2.0 && lat.radial();
  if (l2) {
    const RadialDensity& d = lat.radial_density();
    const double target = 2.0 * d.c() * d.n();
    res.report = ComparisonReport::make("sobolev_ratio", res.min_ratio * res.min_ratio, target * (1.0 - rel_tol), 0.0);
    res.report.metadata["target"] = target;
  } else {
    res.report = ComparisonReport::make("sobolev_ratio", res.min_ratio, 0.0, 0.0);
    res.report.passed = res.min_ratio > 0.0;
  }
  res.report.metadata["p"] = p;
  res.report.metadata["q"] = std::isinf(q) ? Json("inf") : Json(q);
  res.report.metadata["argmin"] = res.argmin;
  res.report.metadata["functions"] = corpus.size();
  res.report.metadata["grid"] = lat.spec().to_json();
  res.report.metadata["density"] = lat.density_json();
  return res;
}

void write_survey_csv(std::ostream& os, const std::vector<SurveyRow>& rows) {
  os << "function_id,p,q,ratio\n";
  for (const auto& r : rows) {
    os << r.function_id << ',' << format_double(r.p) << ',' << (std::isinf(r.q) ? "inf" : format_double(r.q)) << ','
       << format_double(r.ratio) << '\n';
  }
}

}  // namespace murearr
