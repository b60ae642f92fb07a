// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#include "murearr/gridsets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "murearr/io.hpp"
#include "murearr/parallel.hpp"

namespace murearr {

namespace {

constexpr double kIso = 0.5;

void require_2d(const GridSet& s, const char* op) {
  if (s.lattice->n() != 2) throw PreconditionError(std::string(op) + " is defined for two-dimensional sets only");
}

void require_boolean(const GridSet& s, const char* op) {
  if (!s.is_boolean()) {
    throw PreconditionError(std::string(op) + " needs a boolean set; threshold the occupancy first");
  }
}

void require_interior(const GridSet& s, const char* op) {
  if (!s.support_interior()) {
    throw PreconditionError(std::string(op) + ": set touches the window boundary");
  }
}

Json grid_meta(const GridSet& s) {
  Json m;
  m["grid"] = s.lattice->spec().to_json();
  m["density"] = s.lattice->density_json();
  return m;
}

std::size_t stride_of(const GridSpec& spec, int axis) {
  std::size_t st = 1;
  for (int a = 0; a < axis; ++a) st *= static_cast<std::size_t>(spec.N);
  return st;
}

}  // namespace

std::vector<Segment> boundary_segments(const GridSet& s, double blur_cells) {
  require_2d(s, "boundary extraction");
  const auto& spec = s.lattice->spec();
  const auto g = gaussian_blur(spec, s.occ, blur_cells);
  const int N = spec.N;
  const double h = spec.delta();
  std::vector<std::vector<Segment>> rows(static_cast<std::size_t>(N - 1));
  parallel_for(static_cast<std::size_t>(N - 1), 8, [&](std::size_t b, std::size_t e) {
    for (std::size_t jj = b; jj < e; ++jj) {
      const int j = static_cast<int>(jj);
      auto& out = rows[jj];
      for (int i = 0; i + 1 < N; ++i) {
        const double v[4] = {g[s.lattice->index(i, j)], g[s.lattice->index(i + 1, j)],
                             g[s.lattice->index(i + 1, j + 1)], g[s.lattice->index(i, j + 1)]};
        const bool in[4] = {v[0] >= kIso, v[1] >= kIso, v[2] >= kIso, v[3] >= kIso};
        if (in[0] == in[1] && in[1] == in[2] && in[2] == in[3]) continue;
        const double x0 = spec.center(i);
        const double y0 = spec.center(j);
        // Corner k sits between edges k-1 and k; edge k joins corners k and k+1.
        const double cx[4] = {x0, x0 + h, x0 + h, x0};
        const double cy[4] = {y0, y0, y0 + h, y0 + h};
        double px[4];
        double py[4];
        bool cut[4];
        for (int k = 0; k < 4; ++k) {
          const int k1 = (k + 1) % 4;
          cut[k] = in[k] != in[k1];
          if (cut[k]) {
            const double t = (kIso - v[k]) / (v[k1] - v[k]);
            px[k] = cx[k] + t * (cx[k1] - cx[k]);
            py[k] = cy[k] + t * (cy[k1] - cy[k]);
          }
        }
        const int ncut = cut[0] + cut[1] + cut[2] + cut[3];
        if (ncut == 2) {
          int a = -1;
          int c = -1;
          for (int k = 0; k < 4; ++k) {
            if (cut[k]) (a < 0 ? a : c) = k;
          }
          out.push_back({px[a], py[a], px[c], py[c]});
        } else {
          // Saddle: cut off the corners whose side differs from the center's.
          const bool center_in = 0.25 * (v[0] + v[1] + v[2] + v[3]) >= kIso;
          for (int k = 0; k < 4; ++k) {
            if (in[k] == center_in) continue;
            const int km = (k + 3) % 4;
            out.push_back({px[km], py[km], px[k], py[k]});
          }
        }
      }
    }
  });
  std::vector<Segment> all;
  for (auto& r : rows) all.insert(all.end(), r.begin(), r.end());
  return all;
}

double boundary_integral(const GridSet& s, const std::function<double(double, double)>& weight,
                         double blur_cells) {
  const auto segs = boundary_segments(s, blur_cells);
  return deterministic_sum(segs.size(), [&](std::size_t k) {
    const auto& g = segs[k];
    const double len = std::hypot(g.x1 - g.x0, g.y1 - g.y0);
    return len * weight(0.5 * (g.x0 + g.x1), 0.5 * (g.y0 + g.y1));
  });
}

double perimeter_boundary_integral(const GridSet& s) {
  require_2d(s, "perimeter_boundary_integral");
  require_boolean(s, "perimeter_boundary_integral");
  require_interior(s, "perimeter_boundary_integral");
  const Lattice& lat = *s.lattice;
  return boundary_integral(s, [&lat](double x, double y) {
    const double p[2] = {x, y};
    return lat.density(p);
  });
}

GridSet parallel_set(const GridSet& s, double r) {
  const auto& spec = s.lattice->spec();
  const double h = spec.delta();
  if (!(r > 0.0)) throw ParameterError("parallel_set: r must be positive");
  const auto g = gaussian_blur(spec, s.occ, kBoundaryBlurCells);
  const int n = spec.n;
  const Lattice& lat = *s.lattice;

  // The boundary at sub-cell accuracy: the isoline polygon in two
  // dimensions, 0.5-crossings of g along lattice edges in three.
  std::vector<Segment> segs;
  std::vector<std::array<double, 3>> seeds;
  if (n == 2) {
    segs = boundary_segments(s, kBoundaryBlurCells);
    for (const auto& q : segs) seeds.push_back({q.x0, q.y0, 0.0});
  } else {
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
      const auto c = lat.coords(idx);
      for (int a = 0; a < n; ++a) {
        if (c[a] + 1 >= spec.N) continue;
        const std::size_t nb = idx + stride_of(spec, a);
        if ((g[idx] >= kIso) == (g[nb] >= kIso)) continue;
        auto p = lat.position(idx);
        p[a] += (kIso - g[idx]) / (g[nb] - g[idx]) * h;
        seeds.push_back(p);
      }
    }
  }
  const double limit = spec.L - h;
  for (const auto& p : seeds) {
    for (int a = 0; a < n; ++a) {
      if (std::abs(p[a]) + r > limit) {
        throw ParameterError("parallel_set: dilation by r = " + std::to_string(r) +
                             " leaves the window [-L, L]^n");
      }
    }
  }

  std::vector<double> dist2(g.size(), std::numeric_limits<double>::infinity());
  const int reach = static_cast<int>(std::ceil(r / h)) + 1;
  auto cell_of = [&](double x) { return static_cast<int>(std::floor(x / h + 0.5 * spec.N)); };
  if (n == 2) {
    for (const auto& q : segs) {
      const double ex = q.x1 - q.x0;
      const double ey = q.y1 - q.y0;
      const double len2 = ex * ex + ey * ey;
      const int i0 = std::max(0, cell_of(std::min(q.x0, q.x1)) - reach);
      const int i1 = std::min(spec.N - 1, cell_of(std::max(q.x0, q.x1)) + reach);
      const int j0 = std::max(0, cell_of(std::min(q.y0, q.y1)) - reach);
      const int j1 = std::min(spec.N - 1, cell_of(std::max(q.y0, q.y1)) + reach);
      for (int j = j0; j <= j1; ++j) {
        const double py = spec.center(j) - q.y0;
        for (int i = i0; i <= i1; ++i) {
          const double px = spec.center(i) - q.x0;
          const double t = len2 > 0.0 ? std::clamp((px * ex + py * ey) / len2, 0.0, 1.0) : 0.0;
          const double dx = px - t * ex;
          const double dy = py - t * ey;
          const double d2 = dx * dx + dy * dy;
          const std::size_t idx = lat.index(i, j);
          if (d2 < dist2[idx]) dist2[idx] = d2;
        }
      }
    }
  } else {
    for (const auto& p : seeds) {
      int lo[3];
      int hi[3];
      for (int a = 0; a < 3; ++a) {
        lo[a] = std::max(0, cell_of(p[a]) - reach);
        hi[a] = std::min(spec.N - 1, cell_of(p[a]) + reach);
      }
      for (int k = lo[2]; k <= hi[2]; ++k) {
        const double dz = spec.center(k) - p[2];
        for (int j = lo[1]; j <= hi[1]; ++j) {
          const double dy = spec.center(j) - p[1];
          for (int i = lo[0]; i <= hi[0]; ++i) {
            const double dx = spec.center(i) - p[0];
            const double d2 = dx * dx + dy * dy + dz * dz;
            const std::size_t idx = lat.index(i, j, k);
            if (d2 < dist2[idx]) dist2[idx] = d2;
          }
        }
      }
    }
  }
  GridSet out(s.lattice);
  const double r2 = r * r;
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const bool in = g[idx] >= kIso || dist2[idx] < r2;
    out.occ[idx] = in ? 1.0 : s.occ[idx];
  }
  return out;
}

double perimeter_minkowski(const GridSet& s, double r) {
  const double h = s.lattice->delta();
  if (r < 2.0 * h * (1.0 - 1e-12)) {
    throw ParameterError("perimeter_minkowski: r must be at least 2 cell widths (r = " + std::to_string(r) +
                         ", cell width " + std::to_string(h) + ")");
  }
  return (grid_measure(parallel_set(s, r)) - grid_measure(s)) / r;
}

GridSet steiner_symmetrize_set(const GridSet& s, int axis) {
  const Lattice& lat = *s.lattice;
  if (axis < 0 || axis >= lat.n()) throw ParameterError("steiner_symmetrize_set: axis out of range");
  if (!lat.factorizes_along(axis)) {
    throw PreconditionError("steiner_symmetrize_set: density does not factorize along axis " +
                            std::to_string(axis + 1));
  }
  const auto& spec = lat.spec();
  const std::size_t N = static_cast<std::size_t>(spec.N);
  const std::size_t stride = stride_of(spec, axis);
  const std::size_t lines = lat.size() / N;
  GridSet out(s.lattice);
  parallel_for(lines, 64, [&](std::size_t b, std::size_t e) {
    for (std::size_t line = b; line < e; ++line) {
      const std::size_t base = line % stride + (line / stride) * stride * N;
      KahanSum mass;
      for (std::size_t i = 0; i < N; ++i) {
        const std::size_t idx = base + i * stride;
        mass += s.occ[idx] * lat.cell_mass(idx);
      }
      double rem = mass.value();
      for (std::size_t k = 0; k < N / 2 && rem > 0.0; ++k) {
        const std::size_t left = base + (N / 2 - 1 - k) * stride;
        const std::size_t right = base + (N / 2 + k) * stride;
        const double pair = lat.cell_mass(left) + lat.cell_mass(right);
        const double f = rem >= pair ? 1.0 : rem / pair;
        out.occ[left] = f;
        out.occ[right] = f;
        rem -= pair;
      }
    }
  });
  return out;
}

GridSet schwarz_symmetrize_set(const GridSet& s) {
  const Lattice& lat = *s.lattice;
  lat.radial_density();
  const double total = grid_measure(s);
  std::vector<std::size_t> order(lat.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<long long> key(lat.size());
  for (std::size_t i = 0; i < key.size(); ++i) key[i] = lat.radius_key(i);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return key[a] != key[b] ? key[a] < key[b] : a < b; });
  const long long cap = static_cast<long long>(lat.N() - 2) * (lat.N() - 2);
  GridSet out(s.lattice);
  double rem = total;
  std::size_t g0 = 0;
  while (rem > 0.0) {
    if (g0 >= order.size() || key[order[g0]] > cap) {
      throw RangeError("schwarz_symmetrize_set: measure exceeds the largest ball inside the window");
    }
    std::size_t g1 = g0;
    KahanSum gm;
    while (g1 < order.size() && key[order[g1]] == key[order[g0]]) gm += lat.cell_mass(order[g1++]);
    const double f = rem >= gm.value() ? 1.0 : rem / gm.value();
    for (std::size_t q = g0; q < g1; ++q) out.occ[order[q]] = f;
    rem -= gm.value();
    g0 = g1;
  }
  return out;
}

double symmetric_difference(const GridSet& a, const GridSet& b) {
  const auto& m = a.lattice->masses();
  return deterministic_sum(a.occ.size(), [&](std::size_t i) { return std::abs(a.occ[i] - b.occ[i]) * m[i]; });
}

ComparisonReport steiner_deficit_bound(const GridSet& s, double rel_tol) {
  require_2d(s, "steiner_deficit_bound");
  require_boolean(s, "steiner_deficit_bound");
  require_interior(s, "steiner_deficit_bound");
  const Lattice& lat = *s.lattice;
  const Density1D& psi = lat.axis_density(0);
  std::function<double(double)> rho;
  std::function<double(double, double)> rho_int;
  if (lat.radial()) {
    const Density1D& f = lat.radial_density().axis_factor();
    rho = [&f](double y) { return f.psi(y); };
    rho_int = [&f](double a, double b) { return f.primitive(b) - f.primitive(a); };
  } else {
    const auto& w = std::get<ProductDensity>(lat.weight()).rho();
    rho = [&w](double y) { return w(std::span<const double>(&y, 1)); };
    rho_int = [&w](double a, double b) { return w.line_integral(a, b); };
  }
  const auto& spec = lat.spec();
  const int N = spec.N;
  const double h = spec.delta();
  auto edge = [&](int i) { return (i - 0.5 * N) * h; };  // left edge of cell i
  auto occ = [&](int i, int j) {
    return i >= 0 && i < N && j >= 0 && j < N && s.occ[lat.index(i, j)] == 1.0;
  };

  KahanSum p_set;
  KahanSum p_sym;
  KahanSum root_sum;
  std::vector<double> row_mass(static_cast<std::size_t>(N), 0.0);
  for (int j = 0; j < N; ++j) {
    const double w = rho_int(edge(j), edge(j + 1));
    KahanSum mass;
    KahanSum ends;
    for (int i = 0; i <= N; ++i) {
      if (occ(i - 1, j) != occ(i, j)) ends += psi.psi(edge(i));
      if (occ(i, j) && !occ(i - 1, j)) mass += -psi.primitive(edge(i));
      if (occ(i - 1, j) && !occ(i, j)) mass += psi.primitive(edge(i));
    }
    row_mass[j] = mass.value();
    p_set += ends.value() * w;
    if (row_mass[j] > 0.0) {
      const double z = psi.primitive_inverse(0.5 * row_mass[j]);
      const double pz = psi.psi(z);
      p_sym += 2.0 * pz * w;
      root_sum += w * std::sqrt(pz * std::abs(ends.value() - 2.0 * pz));
    }
  }
  for (int j = 0; j <= N; ++j) {
    const double ry = rho(edge(j));
    KahanSum across;
    for (int i = 0; i < N; ++i) {
      if (occ(i, j - 1) != occ(i, j)) across += psi.primitive(edge(i + 1)) - psi.primitive(edge(i));
    }
    p_set += ry * across.value();
    const double below = j > 0 ? row_mass[j - 1] : 0.0;
    const double above = j < N ? row_mass[j] : 0.0;
    p_sym += ry * std::abs(above - below);
  }
  const double lhs = p_set.value() - p_sym.value();
  const double S = root_sum.value();
  const double rhs = p_sym.value() > 0.0 ? 2.0 * S * S / p_sym.value() : 0.0;
  auto rep = ComparisonReport::make("steiner_deficit_bound", lhs, rhs, rel_tol * rhs);
  rep.metadata = grid_meta(s);
  rep.metadata["perimeter_set"] = p_set.value();
  rep.metadata["perimeter_symmetrized"] = p_sym.value();
  rep.metadata["rhs_literal"] = p_sym.value() > 0.0 ? S / p_sym.value() : 0.0;
  return rep;
}

ComparisonReport verify_iso_nd(const GridSet& s, double tol_disc) {
  const Lattice& lat = *s.lattice;
  const RadialDensity& d = lat.radial_density();
  const GridSet crisp = s.is_boolean() ? s : threshold(s);
  const double m = grid_measure(crisp);
  const double lhs = lat.n() == 2 ? perimeter_boundary_integral(crisp) : perimeter_minkowski(crisp, 4.0 * lat.delta());
  const double rhs = d.profile(m);
  auto rep = ComparisonReport::make("verify_iso_nd", lhs, rhs, tol_disc * rhs);
  rep.metadata = grid_meta(s);
  rep.metadata["measure"] = m;
  rep.metadata["estimator"] = lat.n() == 2 ? "boundary_integral" : "minkowski_4cells";
  return rep;
}

ComparisonReport verify_parallel_containment(const GridSet& s, double r) {
  const Lattice& lat = *s.lattice;
  const RadialDensity& d = lat.radial_density();
  const double m = grid_measure(s);
  const double R = d.H_inverse(m);
  const double lhs = grid_measure(parallel_set(s, r));
  const double rhs = d.H(R + r);
  auto rep = ComparisonReport::make("verify_parallel_containment", lhs, rhs, d.h(R + r) * lat.delta());
  rep.metadata = grid_meta(s);
  rep.metadata["r"] = r;
  rep.metadata["measure"] = m;
  rep.metadata["ball_radius"] = R;
  return rep;
}

ComparisonReport singular_minkowski_check(const SingularRadialDensity& d, const GridSet& s, double r,
                                          double rel_tol) {
  require_2d(s, "singular_minkowski_check");
  require_boolean(s, "singular_minkowski_check");
  require_interior(s, "singular_minkowski_check");
  const Lattice& lat = *s.lattice;
  const double h = lat.delta();
  for (std::size_t idx = 0; idx < lat.size(); ++idx) {
    const auto x = lat.position(idx);
    if (std::hypot(x[0], x[1]) < 2.0 * h && s.occ[idx] != 1.0) {
      throw PreconditionError("singular_minkowski_check: the set must contain a neighborhood of the origin");
    }
  }
  // Masses with the singular density, unless the set already carries it.
  LatticePtr mass_lat = s.lattice;
  if (!std::holds_alternative<SingularRadialDensity>(lat.weight()) ||
      lat.density_json() != weight_to_json(Weight(d))) {
    mass_lat = make_lattice(lat.spec(), d);
  }
  const GridSet ms(mass_lat, s.occ);
  const double m = grid_measure(ms);
  const double lhs = boundary_integral(ms, [&d](double x, double y) {
    const double p[2] = {x, y};
    return d.value(p);
  });
  const double R = d.ball_radius(m);
  const double rhs = d.sphere_weight(R);
  auto rep = ComparisonReport::make("singular_minkowski_check", lhs, rhs, rel_tol * rhs);
  rep.metadata = grid_meta(ms);
  rep.metadata["measure"] = m;
  rep.metadata["ball_radius"] = R;
  if (r > 0.0) rep.metadata["minkowski_quotient"] = perimeter_minkowski(ms, r);
  return rep;
}

RotatedSet rotate_set(const GridSet& s, double angle) {
  const Lattice& lat = *s.lattice;
  const auto& spec = lat.spec();
  const int N = spec.N;
  const double h = spec.delta();
  const double ca = std::cos(angle);
  const double sa = std::sin(angle);
  GridSet out(s.lattice);
  auto at = [&](int i, int j, int k) {
    if (i < 0 || j < 0 || i >= N || j >= N) return 0.0;
    return s.occ[lat.index(i, j, k)];
  };
  parallel_for(lat.size(), 4096, [&](std::size_t b, std::size_t e) {
    for (std::size_t idx = b; idx < e; ++idx) {
      const auto c = lat.coords(idx);
      const double x = spec.center(c[0]);
      const double y = spec.center(c[1]);
      // Source point R(-angle) x in fractional index coordinates.
      const double fx = (ca * x + sa * y) / h + 0.5 * N - 0.5;
      const double fy = (-sa * x + ca * y) / h + 0.5 * N - 0.5;
      const int i0 = static_cast<int>(std::floor(fx));
      const int j0 = static_cast<int>(std::floor(fy));
      const double tx = fx - i0;
      const double ty = fy - j0;
      out.occ[idx] = (1 - tx) * (1 - ty) * at(i0, j0, c[2]) + tx * (1 - ty) * at(i0 + 1, j0, c[2]) +
                     (1 - tx) * ty * at(i0, j0 + 1, c[2]) + tx * ty * at(i0 + 1, j0 + 1, c[2]);
    }
  });
  const double before = grid_measure(s);
  const double after = grid_measure(out);
  if (after > 0.0) {
    const double f = before / after;
    for (double& v : out.occ) v = std::min(1.0, v * f);
  }
  RotatedSet r{out, 0.0};
  r.drift = before > 0.0 ? grid_measure(r.set) / before - 1.0 : 0.0;
  return r;
}

IteratedSteinerResult iterated_steiner(const GridSet& s, int iterations, double angle) {
  IteratedSteinerResult res;
  GridSet cur = s;
  for (int it = 0; it < iterations; ++it) {
    cur = steiner_symmetrize_set(cur, 0);
    cur = steiner_symmetrize_set(cur, 1);
    const double m = grid_measure(cur);
    res.distance_to_ball.push_back(m > 0.0 ? symmetric_difference(cur, schwarz_symmetrize_set(cur)) / m : 0.0);
    if (it + 1 < iterations) {
      auto rot = rotate_set(cur, angle);
      res.drift.push_back(rot.drift);
      cur = std::move(rot.set);
    }
  }
  res.final_set = std::move(cur);
  return res;
}

}  // namespace murearr
