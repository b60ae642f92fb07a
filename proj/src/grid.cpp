// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#include "murearr/grid.hpp"

#include <algorithm>
#include <cmath>

#include "murearr/io.hpp"
#include "murearr/parallel.hpp"

namespace murearr {

std::size_t GridSpec::cells() const {
  std::size_t c = 1;
  for (int a = 0; a < n; ++a) c *= static_cast<std::size_t>(N);
  return c;
}

double GridSpec::cell_volume() const { return std::pow(delta(), n); }

void GridSpec::validate() const {
  if (n != 2 && n != 3) throw ParameterError("grid dimension n must be 2 or 3");
  if (N <= 0 || N % 2 != 0) throw ParameterError("grid N must be positive and even");
  if (!(L > 0.0) || !std::isfinite(L)) throw ParameterError("grid L must be positive");
}

Json GridSpec::to_json() const {
  Json j;
  j["n"] = n;
  j["N"] = N;
  j["L"] = L;
  return j;
}

Lattice::Lattice(GridSpec spec, Weight weight) : spec_(spec), weight_(std::move(weight)) {
  spec_.validate();
  const int wn = std::visit([](const auto& w) { return w.n(); }, weight_);
  if (wn != spec_.n) throw ParameterError("density dimension does not match grid dimension");
  mass_.assign(spec_.cells(), 0.0);
  const double vol = spec_.cell_volume();
  const bool singular = std::holds_alternative<SingularRadialDensity>(weight_);
  const double h = spec_.delta();
  parallel_for(mass_.size(), 4096, [&](std::size_t b, std::size_t e) {
    for (std::size_t idx = b; idx < e; ++idx) {
      const auto x = position(idx);
      const std::span<const double> xs(x.data(), static_cast<std::size_t>(spec_.n));
      double r2 = 0.0;
      for (double v : xs) r2 += v * v;
      if (singular && r2 < 4.0 * spec_.n * h * h) {
        // Integrable singularity at the origin: sub-sample the nearby cells.
        constexpr int kSub = 16;
        const int total = spec_.n == 2 ? kSub * kSub : kSub * kSub * kSub;
        KahanSum acc;
        for (int q = 0; q < total; ++q) {
          std::array<double, 3> y = x;
          int rem = q;
          for (int a = 0; a < spec_.n; ++a) {
            y[a] += ((rem % kSub) + 0.5 - 0.5 * kSub) * h / kSub;
            rem /= kSub;
          }
          acc += density(std::span<const double>(y.data(), static_cast<std::size_t>(spec_.n)));
        }
        mass_[idx] = acc.value() / total * vol;
      } else {
        mass_[idx] = density(xs) * vol;
      }
    }
  });
}

std::array<int, 3> Lattice::coords(std::size_t idx) const {
  const auto N = static_cast<std::size_t>(spec_.N);
  std::array<int, 3> c{0, 0, 0};
  c[0] = static_cast<int>(idx % N);
  c[1] = static_cast<int>((idx / N) % N);
  if (spec_.n == 3) c[2] = static_cast<int>(idx / (N * N));
  return c;
}

std::size_t Lattice::index(int i, int j, int k) const {
  const auto N = static_cast<std::size_t>(spec_.N);
  return static_cast<std::size_t>(i) + N * (static_cast<std::size_t>(j) + N * static_cast<std::size_t>(k));
}

std::array<double, 3> Lattice::position(std::size_t idx) const {
  const auto c = coords(idx);
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int a = 0; a < spec_.n; ++a) x[a] = spec_.center(c[a]);
  return x;
}

long long Lattice::radius_key(std::size_t idx) const {
  const auto c = coords(idx);
  long long k = 0;
  for (int a = 0; a < spec_.n; ++a) {
    const long long d = 2LL * c[a] + 1 - spec_.N;
    k += d * d;
  }
  return k;
}

double Lattice::density(std::span<const double> x) const {
  return std::visit(
      [&](const auto& w) -> double {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, RadialDensity>) {
          double r2 = 0.0;
          for (double v : x) r2 += v * v;
          return std::exp(w.c() * r2);
        } else {
          return w.value(x);
        }
      },
      weight_);
}

const RadialDensity& Lattice::radial_density() const {
  if (!radial()) throw PreconditionError("operation requires a radial density e^{c|x|^2}");
  return std::get<RadialDensity>(weight_);
}

bool Lattice::factorizes_along(int axis) const {
  if (radial()) return axis >= 0 && axis < spec_.n;
  if (std::holds_alternative<ProductDensity>(weight_)) return axis == 0;
  return false;
}

const Density1D& Lattice::axis_density(int axis) const {
  if (!factorizes_along(axis)) {
    throw PreconditionError("density does not factorize as psi(x_axis) * rho(rest) along axis " +
                            std::to_string(axis + 1));
  }
  if (radial()) return std::get<RadialDensity>(weight_).axis_factor();
  return std::get<ProductDensity>(weight_).psi();
}

Json Lattice::density_json() const { return weight_to_json(weight_); }

LatticePtr make_lattice(GridSpec spec, Weight weight) {
  return std::make_shared<const Lattice>(spec, std::move(weight));
}

GridSet::GridSet(LatticePtr lat) : lattice(std::move(lat)) { occ.assign(lattice->size(), 0.0); }

GridSet::GridSet(LatticePtr lat, std::vector<double> values)
    : lattice(std::move(lat)), occ(std::move(values)) {
  if (occ.size() != lattice->size()) throw ParameterError("occupancy size does not match grid");
  for (double v : occ) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("occupancy must lie in [0, 1]");
  }
}

bool GridSet::is_boolean() const {
  return std::all_of(occ.begin(), occ.end(), [](double v) { return v == 0.0 || v == 1.0; });
}

namespace {

bool interior(const Lattice& lat, const std::vector<double>& v) {
  const int N = lat.N();
  for (std::size_t idx = 0; idx < v.size(); ++idx) {
    if (v[idx] == 0.0) continue;
    const auto c = lat.coords(idx);
    for (int a = 0; a < lat.n(); ++a) {
      if (c[a] == 0 || c[a] == N - 1) return false;
    }
  }
  return true;
}

}  // namespace

bool GridSet::support_interior() const { return interior(*lattice, occ); }

GridFunction::GridFunction(LatticePtr lat) : lattice(std::move(lat)) {
  values.assign(lattice->size(), 0.0);
}

GridFunction::GridFunction(LatticePtr lat, std::vector<double> v)
    : lattice(std::move(lat)), values(std::move(v)) {
  if (values.size() != lattice->size()) throw ParameterError("function size does not match grid");
  for (double x : values) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("grid function values must be finite and >= 0");
  }
}

double GridFunction::max_value() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

bool GridFunction::support_interior() const { return interior(*lattice, values); }

double grid_measure(const GridSet& s) {
  const auto& m = s.lattice->masses();
  return deterministic_sum(s.occ.size(), [&](std::size_t i) { return s.occ[i] * m[i]; });
}

GridSet threshold(const GridSet& s) {
  GridSet out(s.lattice);
  for (std::size_t i = 0; i < s.occ.size(); ++i) out.occ[i] = s.occ[i] >= 0.5 ? 1.0 : 0.0;
  return out;
}

std::vector<double> gaussian_blur(const GridSpec& spec, const std::vector<double>& field,
                                  double sigma_cells) {
  if (!(sigma_cells > 0.0)) return field;
  const int radius = static_cast<int>(std::ceil(4.0 * sigma_cells));
  std::vector<double> kernel(2 * radius + 1);
  double ksum = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    kernel[k + radius] = std::exp(-0.5 * k * k / (sigma_cells * sigma_cells));
    ksum += kernel[k + radius];
  }
  for (double& k : kernel) k /= ksum;

  const std::size_t N = static_cast<std::size_t>(spec.N);
  std::vector<double> cur = field;
  std::vector<double> next(field.size());
  std::size_t stride = 1;
  for (int axis = 0; axis < spec.n; ++axis) {
    const std::size_t lines = field.size() / N;
    parallel_for(lines, 64, [&](std::size_t b, std::size_t e) {
      for (std::size_t line = b; line < e; ++line) {
        // Start of the line: split `line` into the parts below and above `axis`.
        const std::size_t lo = line % stride;
        const std::size_t hi = line / stride;
        const std::size_t base = lo + hi * stride * N;
        for (std::size_t i = 0; i < N; ++i) {
          double acc = 0.0;
          const int ii = static_cast<int>(i);
          const int k0 = std::max(-radius, -ii);
          const int k1 = std::min(radius, static_cast<int>(N) - 1 - ii);
          for (int k = k0; k <= k1; ++k) {
            acc += kernel[k + radius] * cur[base + static_cast<std::size_t>(ii + k) * stride];
          }
          next[base + i * stride] = acc;
        }
      }
    });
    std::swap(cur, next);
    stride *= N;
  }
  return cur;
}

double max_support_cell_mass(const Lattice& lat, const std::vector<double>& a,
                             const std::vector<double>& b) {
  double best = 0.0;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if ((i < a.size() && a[i] != 0.0) || (i < b.size() && b[i] != 0.0)) {
      best = std::max(best, lat.cell_mass(i));
    }
  }
  return best;
}

}  // namespace murearr
