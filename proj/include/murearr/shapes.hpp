// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "murearr/grid.hpp"

namespace murearr {

using Point = std::array<double, 3>;

/// Implicit shape: level(x) < 0 inside, > 0 outside, roughly a distance near
/// the boundary. Unused trailing coordinates of `x` are 0.
struct Shape {
  std::function<double(const Point&)> level;
  std::string id;
};

Shape ball(Point center, double r);
Shape box(Point lo, Point hi);
/// Ellipse in the x₁x₂ plane with semi-axes a, b rotated by `angle`.
Shape ellipse(Point center, double a, double b, double angle = 0.0);
/// [-s, s]² with the quadrant x₁ > 0, x₂ > 0 removed.
Shape l_shape(double s);
/// Star-shaped curve r(θ) = r0 (1 + Σ amp_k cos(k θ + phase_k)), k = 2, 3, ...
Shape star(Point center, double r0, std::vector<double> amp, std::vector<double> phase);
Shape unite(const Shape& a, const Shape& b);

/// Boolean set of the cells whose center satisfies level < 0.
GridSet rasterize(LatticePtr lat, const Shape& shape);
GridFunction sample(LatticePtr lat, const std::function<double(const Point&)>& f);

/// Random smooth blob supported in [-0.8L, 0.8L]^n: a star-shaped curve in
/// two dimensions, a union of balls in three.
Shape random_blob(Rng& rng, int n, double L);
/// Union of 1-3 axis-parallel rectangles in the x₁x₂ plane with edges on
/// multiples of `h`, inside [-0.7L, 0.7L]²; exact on a grid of cell width h.
Shape random_rectangles(Rng& rng, double L, double h);
/// Star-shaped set about the origin, containing a neighborhood of it.
Shape random_star_about_origin(Rng& rng, double r0);

/// Sum of 1-3 compactly supported C¹ bumps a (1 - |x - x0|²/w²)²₊, support in
/// [-0.8L, 0.8L]^n.
struct Bump {
  Point center{};
  double height = 1.0;
  double width = 1.0;
};
std::vector<Bump> random_bumps(Rng& rng, int n, double L);
double bump_value(const std::vector<Bump>& bumps, const Point& x);
/// Upper bound Σ 8a / (3√3 w) on the Lipschitz constant.
double bump_lipschitz(const std::vector<Bump>& bumps);
GridFunction sample_bumps(LatticePtr lat, const std::vector<Bump>& bumps);

}  // namespace murearr
