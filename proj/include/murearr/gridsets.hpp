// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

#include "murearr/grid.hpp"
#include "murearr/report.hpp"

namespace murearr {

/// Smoothing (in cells) applied to occupancy before boundary extraction.
inline constexpr double kBoundaryBlurCells = 1.25;

/// A boundary polyline piece from marching squares.
struct Segment {
  double x0, y0, x1, y1;
};

/// 0.5-isoline of the blurred occupancy of a 2-D set.
std::vector<Segment> boundary_segments(const GridSet& s, double blur_cells = kBoundaryBlurCells);

/// ∫_{∂M} weight dH¹ over the polygonized boundary (midpoint rule per segment).
double boundary_integral(const GridSet& s, const std::function<double(double, double)>& weight,
                         double blur_cells = kBoundaryBlurCells);

/// μ-perimeter of a 2-D boolean set as the density integral along its boundary.
double perimeter_boundary_integral(const GridSet& s);

/// (μ(M_r) - μ(M)) / r; needs r >= 2Δ.
double perimeter_minkowski(const GridSet& s, double r);

/// M_r = {dist(x, M) < r}, with the boundary of M located at sub-cell
/// accuracy. Throws ParameterError when M_r would leave the window.
GridSet parallel_set(const GridSet& s, double r);

/// Steiner μ-symmetrization along `axis` (0-based): every line parallel to
/// the axis is refilled symmetrically from the center with its own mass.
GridSet steiner_symmetrize_set(const GridSet& s, int axis = 0);

/// Centered ball of equal μ-measure, with a fractional outer shell.
GridSet schwarz_symmetrize_set(const GridSet& s);

/// Σ |occ_a - occ_b| · mass.
double symmetric_difference(const GridSet& a, const GridSet& b);

/// Exact perimeter deficit of a column-wise polyhedral 2-D set under Steiner
/// symmetrization along x₁ against the lower bound 2 (∫ √(ψ(z) X) ρ)² / P(Π*).
/// The uncorrected display bound is reported as metadata "rhs_literal".
ComparisonReport steiner_deficit_bound(const GridSet& s, double rel_tol = 0.05);

/// Perimeter against I(μ(M)). Two dimensions use the boundary integral,
/// three the Minkowski quotient at r = 4Δ.
ComparisonReport verify_iso_nd(const GridSet& s, double tol_disc = 0.02);

/// μ((M_r)⋆) = μ(M_r) against μ((M⋆)_r) = H(H⁻¹(μ(M)) + r).
ComparisonReport verify_parallel_containment(const GridSet& s, double r);

/// Boundary integral of |x|^{1-n} e^{a(|x|)} against nω_n e^{a(R)}, μ(B_R) = μ(M).
/// With r > 0 the Minkowski quotient at r is added to the metadata.
ComparisonReport singular_minkowski_check(const SingularRadialDensity& d, const GridSet& s,
                                          double r = 0.0, double rel_tol = 0.02);

/// Rotation of the x₁x₂ plane about the origin with bilinear resampling;
/// the result is rescaled back to the input measure where clamping allows.
struct RotatedSet {
  GridSet set;
  double drift = 0.0;  ///< relative measure change left after rescaling
};
RotatedSet rotate_set(const GridSet& s, double angle);

struct IteratedSteinerResult {
  GridSet final_set;
  /// Relative symmetric difference to the Schwarz ball after each iteration.
  std::vector<double> distance_to_ball;
  std::vector<double> drift;
};
/// Steiner along x₁, then x₂, then rotate by `angle`; repeated.
IteratedSteinerResult iterated_steiner(const GridSet& s, int iterations, double angle);

}  // namespace murearr
