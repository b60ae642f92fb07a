// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#include "murearr/rearrangefn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "murearr/io.hpp"
#include "murearr/parallel.hpp"

namespace murearr {

double LayerProfile::operator()(double s) const {
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), s);
  if (it == cumulative.end()) return 0.0;
  return values[static_cast<std::size_t>(it - cumulative.begin())];
}

double LayerProfile::integrate(const std::function<double(double)>& f) const {
  KahanSum acc;
  double prev = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    acc += (cumulative[k] - prev) * f(values[k]);
    prev = cumulative[k];
  }
  return acc.value();
}

double LayerProfile::integral(double a, double b) const {
  KahanSum acc;
  double prev = 0.0;
  for (std::size_t k = 0; k < values.size() && prev < b; ++k) {
    const double lo = std::max(a, prev);
    const double hi = std::min(b, cumulative[k]);
    if (hi > lo) acc += (hi - lo) * values[k];
    prev = cumulative[k];
  }
  return acc.value();
}

double distribution_fn(const GridFunction& u, double t) {
  const auto& m = u.lattice->masses();
  return deterministic_sum(u.values.size(), [&](std::size_t i) { return u.values[i] > t ? m[i] : 0.0; });
}

double distribution_fn_slice(const GridFunction& u, std::size_t line, double t) {
  const auto N = static_cast<std::size_t>(u.lattice->N());
  if (line >= u.values.size() / N) throw ParameterError("distribution_fn_slice: line index out of range");
  KahanSum acc;
  for (std::size_t i = 0; i < N; ++i) {
    const std::size_t idx = line * N + i;
    if (u.values[idx] > t) acc += u.lattice->cell_mass(idx);
  }
  return acc.value();
}

LayerProfile layer_profile(const GridFunction& u) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    if (u.values[i] > 0.0) order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return u.values[a] != u.values[b] ? u.values[a] > u.values[b] : a < b;
  });
  LayerProfile p;
  KahanSum cum;
  for (std::size_t q = 0; q < order.size(); ++q) {
    const double v = u.values[order[q]];
    cum += u.lattice->cell_mass(order[q]);
    if (!p.values.empty() && p.values.back() == v) {
      p.cumulative.back() = cum.value();
    } else {
      p.values.push_back(v);
      p.cumulative.push_back(cum.value());
    }
  }
  p.total_mass = cum.value();
  return p;
}

void write_layer_profile_csv(std::ostream& os, const LayerProfile& p) {
  os << "value,cumulative_mass\n";
  for (std::size_t k = 0; k < p.values.size(); ++k) {
    os << format_double(p.values[k]) << ',' << format_double(p.cumulative[k]) << '\n';
  }
}

SymMode sym_mode_from_string(const std::string& s) {
  if (s == "steiner") return SymMode::kSteiner;
  if (s == "schwarz") return SymMode::kSchwarz;
  throw ParameterError("mode: expected \"steiner\" or \"schwarz\", got \"" + s + "\"");
}

const char* to_string(SymMode m) { return m == SymMode::kSteiner ? "steiner" : "schwarz"; }

namespace {

// Atoms (mass, value) sorted by value descending are laid along the mass
// axis; `cells` in fill order take the mean of ũ over their mass interval.
void fill_from_atoms(const std::vector<std::pair<double, double>>& atoms,
                     const std::vector<std::size_t>& cells, const Lattice& lat,
                     std::vector<double>& out) {
  // Extended precision: overlaps are small differences of running totals.
  using Wide = long double;
  std::size_t a = 0;
  Wide atom_lo = 0.0;
  Wide atom_hi = atoms.empty() ? 0.0 : atoms[0].first;
  Wide lo = 0.0;
  for (std::size_t idx : cells) {
    const double m = lat.cell_mass(idx);
    const Wide hi = lo + m;
    Wide acc = 0.0;
    int touched = 0;
    double single = 0.0;
    while (a < atoms.size() && atom_lo < hi) {
      const Wide overlap = std::min(hi, atom_hi) - std::max(lo, atom_lo);
      if (overlap > 0.0) {
        acc += overlap * atoms[a].second;
        single = atoms[a].second;
        ++touched;
      }
      if (atom_hi <= hi) {
        ++a;
        atom_lo = atom_hi;
        if (a < atoms.size()) atom_hi += atoms[a].first;
      } else {
        break;
      }
    }
    out[idx] = touched == 1 && acc >= m * single * (1.0 - 1e-12) ? single : static_cast<double>(acc / m);
    lo = hi;
  }
}

std::vector<std::pair<double, double>> sorted_atoms(const GridFunction& u, const std::vector<std::size_t>& cells) {
  std::vector<std::size_t> pos;
  for (std::size_t q = 0; q < cells.size(); ++q) {
    if (u.values[cells[q]] > 0.0) pos.push_back(q);
  }
  std::stable_sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) {
    return u.values[cells[a]] > u.values[cells[b]];
  });
  std::vector<std::pair<double, double>> atoms;
  atoms.reserve(pos.size());
  for (std::size_t q : pos) atoms.emplace_back(u.lattice->cell_mass(cells[q]), u.values[cells[q]]);
  return atoms;
}

}  // namespace

GridFunction steiner_symmetrize_fn(const GridFunction& u, int axis) {
  const Lattice& lat = *u.lattice;
  if (axis < 0 || axis >= lat.n()) throw ParameterError("steiner_symmetrize_fn: axis out of range");
  if (!lat.factorizes_along(axis)) {
    throw PreconditionError("steiner_symmetrize_fn: density does not factorize along axis " +
                            std::to_string(axis + 1));
  }
  const auto N = static_cast<std::size_t>(lat.N());
  std::size_t stride = 1;
  for (int a = 0; a < axis; ++a) stride *= N;
  const std::size_t lines = lat.size() / N;
  GridFunction out(u.lattice);
  parallel_for(lines, 32, [&](std::size_t b, std::size_t e) {
    std::vector<std::size_t> line_cells(N);
    std::vector<std::size_t> fill(N);
    for (std::size_t line = b; line < e; ++line) {
      const std::size_t base = line % stride + (line / stride) * stride * N;
      for (std::size_t i = 0; i < N; ++i) line_cells[i] = base + i * stride;
      for (std::size_t k = 0; k < N / 2; ++k) {
        fill[2 * k] = line_cells[N / 2 - 1 - k];
        fill[2 * k + 1] = line_cells[N / 2 + k];
      }
      fill_from_atoms(sorted_atoms(u, line_cells), fill, lat, out.values);
    }
  });
  return out;
}

GridFunction schwarz_symmetrize_fn(const GridFunction& u) {
  const Lattice& lat = *u.lattice;
  lat.radial_density();
  std::vector<std::size_t> all(lat.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  const auto atoms = sorted_atoms(u, all);
  std::vector<long long> key(lat.size());
  for (std::size_t i = 0; i < key.size(); ++i) key[i] = lat.radius_key(i);
  std::vector<std::size_t> fill = all;
  std::sort(fill.begin(), fill.end(),
            [&](std::size_t a, std::size_t b) { return key[a] != key[b] ? key[a] < key[b] : a < b; });
  KahanSum atom_mass;
  for (const auto& at : atoms) atom_mass += at.first;
  KahanSum capacity;
  const long long cap = static_cast<long long>(lat.N() - 2) * (lat.N() - 2);
  for (std::size_t idx : fill) {
    if (key[idx] > cap) break;
    capacity += lat.cell_mass(idx);
  }
  if (atom_mass.value() > capacity.value()) {
    throw RangeError("schwarz_symmetrize_fn: support mass exceeds the largest ball inside the window");
  }
  GridFunction out(u.lattice);
  fill_from_atoms(atoms, fill, lat, out.values);
  return out;
}

GridFunction symmetrize_fn(const GridFunction& u, SymMode mode) {
  return mode == SymMode::kSteiner ? steiner_symmetrize_fn(u, 0) : schwarz_symmetrize_fn(u);
}

double integral_mu(const GridFunction& u, const std::function<double(double)>& f) {
  const auto& m = u.lattice->masses();
  return deterministic_sum(u.values.size(), [&](std::size_t i) { return f(u.values[i]) * m[i]; });
}

PropertyKind property_kind_from_string(const std::string& s) {
  if (s == "cavalieri") return PropertyKind::kCavalieri;
  if (s == "hardy_littlewood") return PropertyKind::kHardyLittlewood;
  if (s == "nonexpansivity") return PropertyKind::kNonexpansivity;
  if (s == "supnorm_contraction") return PropertyKind::kSupnormContraction;
  if (s == "correlation") return PropertyKind::kCorrelation;
  throw ParameterError("unknown property kind \"" + s + "\"");
}

const char* to_string(PropertyKind k) {
  switch (k) {
    case PropertyKind::kCavalieri:
      return "cavalieri";
    case PropertyKind::kHardyLittlewood:
      return "hardy_littlewood";
    case PropertyKind::kNonexpansivity:
      return "nonexpansivity";
    case PropertyKind::kSupnormContraction:
      return "supnorm_contraction";
    case PropertyKind::kCorrelation:
      return "correlation";
  }
  return "?";
}

namespace {

double pair_integral(const GridFunction& u, const GridFunction& v, const std::function<double(double, double)>& f) {
  const auto& m = u.lattice->masses();
  return deterministic_sum(u.values.size(), [&](std::size_t i) { return f(u.values[i], v.values[i]) * m[i]; });
}

double sup_diff(const GridFunction& u, const GridFunction& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) s = std::max(s, std::abs(u.values[i] - v.values[i]));
  return s;
}

}  // namespace

ComparisonReport property_check(const GridFunction& u, const GridFunction& v, PropertyKind kind,
                                 SymMode mode, const PropertyOptions& opt) {
  if (kind == PropertyKind::kCavalieri) return property_check(u, v, symmetrize_fn(u, mode), v, kind, mode, opt);
  return property_check(u, v, symmetrize_fn(u, mode), symmetrize_fn(v, mode), kind, mode, opt);
}

ComparisonReport property_check(const GridFunction& u, const GridFunction& v, const GridFunction& us,
                                 const GridFunction& vs, PropertyKind kind, SymMode mode,
                                 const PropertyOptions& opt) {
  if (u.lattice != v.lattice && u.lattice->spec().to_json() != v.lattice->spec().to_json()) {
    throw ParameterError("property_check: u and v live on different grids");
  }
  if (!(opt.power >= 1.0)) throw ParameterError("property_check: power must be >= 1");
  const double p = opt.power;
  ComparisonReport rep;
  auto finish = [&](double lhs, double rhs, double rel) {
    rep = ComparisonReport::make(std::string("property_") + to_string(kind), lhs, rhs,
                                 rel * std::max(std::abs(lhs), std::abs(rhs)));
  };
  if (kind == PropertyKind::kCavalieri) {
    auto f = [p](double t) { return std::pow(t, p); };
    const auto prof = layer_profile(u);
    finish(integral_mu(u, f), prof.integrate(f), 1e-12);
    rep.metadata["grid_level_symmetrized"] = integral_mu(us, f);
  } else {
    switch (kind) {
      case PropertyKind::kHardyLittlewood: {
        auto prod = [](double a, double b) { return a * b; };
        finish(pair_integral(us, vs, prod), pair_integral(u, v, prod), opt.rel_tol);
        break;
      }
      case PropertyKind::kNonexpansivity: {
        auto g = [p](double a, double b) { return std::pow(std::abs(a - b), p); };
        finish(pair_integral(u, v, g), pair_integral(us, vs, g), opt.rel_tol);
        break;
      }
      case PropertyKind::kSupnormContraction:
        finish(sup_diff(u, v), sup_diff(us, vs), opt.rel_tol);
        break;
      case PropertyKind::kCorrelation: {
        std::function<double(double, double)> F;
        if (opt.correlation == "product") {
          F = [](double a, double b) { return a * b; };
        } else if (opt.correlation == "min") {
          F = [](double a, double b) { return std::min(a, b); };
        } else {
          throw ParameterError("correlation functional must be \"product\" or \"min\"");
        }
        finish(pair_integral(us, vs, F), pair_integral(u, v, F), opt.rel_tol);
        rep.metadata["F"] = opt.correlation;
        break;
      }
      default:
        break;
    }
  }
  rep.metadata["mode"] = to_string(mode);
  rep.metadata["power"] = p;
  rep.metadata["grid"] = u.lattice->spec().to_json();
  rep.metadata["density"] = u.lattice->density_json();
  return rep;
}

ComparisonReport equimeasurability_check(const GridFunction& u, const GridFunction& sym, int thresholds) {
  const double top = std::max(u.max_value(), sym.max_value());
  double worst = 0.0;
  double worst_t = 0.0;
  for (int k = 1; k <= thresholds; ++k) {
    const double t = top * k / (thresholds + 1.0);
    const double d = std::abs(distribution_fn(u, t) - distribution_fn(sym, t));
    if (d > worst) {
      worst = d;
      worst_t = t;
    }
  }
  const double budget = 3.0 * max_support_cell_mass(*u.lattice, u.values, sym.values);
  auto rep = ComparisonReport::make("equimeasurability", budget, worst, 0.0);
  rep.metadata["worst_threshold"] = worst_t;
  rep.metadata["thresholds"] = thresholds;
  return rep;
}

double slice_equimeasurability(const GridFunction& u, const GridFunction& sym, int thresholds) {
  const Lattice& lat = *u.lattice;
  const auto N = static_cast<std::size_t>(lat.N());
  const std::size_t lines = lat.size() / N;
  const double top = std::max(u.max_value(), sym.max_value());
  std::vector<double> worst(lines, 0.0);
  parallel_for(lines, 16, [&](std::size_t b, std::size_t e) {
    for (std::size_t line = b; line < e; ++line) {
      double big = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        const std::size_t idx = line * N + i;
        if (u.values[idx] > 0.0 || sym.values[idx] > 0.0) big = std::max(big, lat.cell_mass(idx));
      }
      if (big == 0.0) continue;
      for (int k = 1; k <= thresholds; ++k) {
        const double t = top * k / (thresholds + 1.0);
        const double d = std::abs(distribution_fn_slice(u, line, t) - distribution_fn_slice(sym, line, t));
        worst[line] = std::max(worst[line], d / big);
      }
    }
  });
  return *std::max_element(worst.begin(), worst.end());
}

double modulus_of_continuity(const GridFunction& u, double t) {
  const Lattice& lat = *u.lattice;
  const double h = lat.delta();
  if (t < 2.0 * h * (1.0 - 1e-12)) {
    throw ParameterError("modulus_of_continuity: t must be at least 2 cell widths");
  }
  const int n = lat.n();
  const int N = lat.N();
  const int reach = static_cast<int>(std::ceil(t / h));
  std::vector<std::array<int, 3>> offsets;
  for (int dk = (n == 3 ? -reach : 0); dk <= (n == 3 ? reach : 0); ++dk) {
    for (int dj = -reach; dj <= reach; ++dj) {
      for (int di = -reach; di <= reach; ++di) {
        const bool positive = dk > 0 || (dk == 0 && (dj > 0 || (dj == 0 && di > 0)));
        if (!positive) continue;
        if (std::sqrt(double(di * di + dj * dj + dk * dk)) * h < t) offsets.push_back({di, dj, dk});
      }
    }
  }
  const std::size_t chunk = 1024;
  const std::size_t chunks = (lat.size() + chunk - 1) / chunk;
  std::vector<double> best(chunks, 0.0);
  parallel_for(lat.size(), chunk, [&](std::size_t b, std::size_t e) {
    double local = 0.0;
    for (std::size_t idx = b; idx < e; ++idx) {
      const auto c = lat.coords(idx);
      const double v = u.values[idx];
      for (const auto& o : offsets) {
        const int i = c[0] + o[0];
        const int j = c[1] + o[1];
        const int k = c[2] + o[2];
        if (i < 0 || j < 0 || k < 0 || i >= N || j >= N || (n == 3 ? k >= N : k != 0)) continue;
        local = std::max(local, std::abs(v - u.values[lat.index(i, j, k)]));
      }
    }
    best[b / chunk] = local;
  });
  return *std::max_element(best.begin(), best.end());
}

std::vector<std::array<double, 3>> grid_gradient(const GridFunction& u) {
  const Lattice& lat = *u.lattice;
  const int n = lat.n();
  const int N = lat.N();
  const double h = lat.delta();
  std::vector<std::array<double, 3>> g(lat.size(), {0.0, 0.0, 0.0});
  parallel_for(lat.size(), 4096, [&](std::size_t b, std::size_t e) {
    for (std::size_t idx = b; idx < e; ++idx) {
      const auto c = lat.coords(idx);
      std::size_t stride = 1;
      for (int a = 0; a < n; ++a) {
        if (c[a] == 0) {
          g[idx][a] = (u.values[idx + stride] - u.values[idx]) / h;
        } else if (c[a] == N - 1) {
          g[idx][a] = (u.values[idx] - u.values[idx - stride]) / h;
        } else {
          g[idx][a] = (u.values[idx + stride] - u.values[idx - stride]) / (2.0 * h);
        }
        stride *= static_cast<std::size_t>(N);
      }
    }
  });
  return g;
}

double dirichlet_energy(const GridFunction& u, double p) {
  const auto g = grid_gradient(u);
  const auto& m = u.lattice->masses();
  return deterministic_sum(g.size(), [&](std::size_t i) {
    const double s = g[i][0] * g[i][0] + g[i][1] * g[i][1] + g[i][2] * g[i][2];
    return std::pow(s, 0.5 * p) * m[i];
  });
}

ComparisonReport dirichlet_functional(const GridFunction& u, double p, SymMode mode, double rel_tol) {
  if (!(p >= 1.0 && p <= 4.0)) throw ParameterError("dirichlet_functional: p must lie in [1, 4]");
  if (!u.support_interior()) {
    throw PreconditionError("dirichlet_functional: u must have compact support inside the window");
  }
  const GridFunction s = symmetrize_fn(u, mode);
  const double rhs = dirichlet_energy(s, p);
  auto rep = ComparisonReport::make("dirichlet_functional", dirichlet_energy(u, p), rhs, rel_tol * rhs);
  rep.metadata["mode"] = to_string(mode);
  rep.metadata["p"] = p;
  rep.metadata["grid"] = u.lattice->spec().to_json();
  rep.metadata["density"] = u.lattice->density_json();
  return rep;
}

}  // namespace murearr
