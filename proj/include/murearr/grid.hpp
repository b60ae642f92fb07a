// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "murearr/density.hpp"
#include "murearr/report.hpp"

namespace murearr {

/// Uniform lattice over the window [-L, L]^n with N cells per axis.
struct GridSpec {
  int n = 2;
  int N = 256;
  double L = 2.5;

  double delta() const { return 2.0 * L / N; }
  /// Cell center along one axis; exactly antisymmetric under i -> N-1-i.
  double center(int i) const { return (i + 0.5 - 0.5 * N) * delta(); }
  std::size_t cells() const;
  double cell_volume() const;
  void validate() const;
  Json to_json() const;
};

using Weight = std::variant<RadialDensity, ProductDensity, SingularRadialDensity>;

/// Grid spec plus weight, with the cell masses density(center) * Δⁿ cached.
/// Flat index: axis 0 (x₁) runs fastest, idx = i + N (j + N k).
class Lattice {
 public:
  Lattice(GridSpec spec, Weight weight);

  const GridSpec& spec() const { return spec_; }
  const Weight& weight() const { return weight_; }
  int n() const { return spec_.n; }
  int N() const { return spec_.N; }
  double delta() const { return spec_.delta(); }
  std::size_t size() const { return mass_.size(); }

  std::array<int, 3> coords(std::size_t idx) const;
  std::size_t index(int i, int j, int k = 0) const;
  std::array<double, 3> position(std::size_t idx) const;
  /// Integer key Σ (2 i_a + 1 - N)², proportional to |center|².
  long long radius_key(std::size_t idx) const;

  double density(std::span<const double> x) const;
  double cell_mass(std::size_t idx) const { return mass_[idx]; }
  const std::vector<double>& masses() const { return mass_; }

  bool radial() const { return std::holds_alternative<RadialDensity>(weight_); }
  const RadialDensity& radial_density() const;
  /// True when the weight factorizes as ψ(x_axis)·ρ(rest).
  bool factorizes_along(int axis) const;
  /// One-dimensional factor along `axis` (requires factorizes_along).
  const Density1D& axis_density(int axis) const;
  /// Density id (compact JSON) used in file headers and report metadata.
  Json density_json() const;

 private:
  GridSpec spec_;
  Weight weight_;
  std::vector<double> mass_;
};

using LatticePtr = std::shared_ptr<const Lattice>;

LatticePtr make_lattice(GridSpec spec, Weight weight);

/// Fractional-occupancy set on a lattice.
struct GridSet {
  LatticePtr lattice;
  std::vector<double> occ;

  GridSet() = default;
  explicit GridSet(LatticePtr lat);
  GridSet(LatticePtr lat, std::vector<double> values);

  bool is_boolean() const;
  /// No occupied cell in the outermost layer of the window.
  bool support_interior() const;
};

/// Nonnegative sampled function on a lattice.
struct GridFunction {
  LatticePtr lattice;
  std::vector<double> values;

  GridFunction() = default;
  explicit GridFunction(LatticePtr lat);
  GridFunction(LatticePtr lat, std::vector<double> v);

  double max_value() const;
  bool support_interior() const;
};

/// Σ occ · mass.
double grid_measure(const GridSet& s);
/// occ >= 0.5 -> 1, else 0.
GridSet threshold(const GridSet& s);

/// Separable Gaussian smoothing of a cell field with standard deviation
/// `sigma_cells` cell widths; values beyond the window are taken as 0.
std::vector<double> gaussian_blur(const GridSpec& spec, const std::vector<double>& field,
                                  double sigma_cells);

/// Largest cell mass over the cells where `a` or `b` is nonzero.
double max_support_cell_mass(const Lattice& lat, const std::vector<double>& a,
                             const std::vector<double>& b);

}  // namespace murearr
