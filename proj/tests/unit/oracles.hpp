// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

// Reference computations that do not touch the library.

#pragma once

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

// composite Simpson, n even
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

// Ψ(x) = ∫₀ˣ e^{c t²} dt
inline double psi_primitive(double c, double x) {
  return simpson([c](double t) { return std::exp(c * t * t); }, 0.0, x);
}

inline double sphere_area(int n) {
  return n == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi;
}

// H(r) = |S^{n-1}| ∫₀ʳ e^{c s²} s^{n-1} ds
inline double radial_mass(int n, double c, double r) {
  return sphere_area(n) * simpson([=](double s) { return std::exp(c * s * s) * std::pow(s, n - 1); }, 0.0, r);
}

inline double bisect(const std::function<double(double)>& g, double lo, double hi) {
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// -(1/r)(r e^{cr²} u')' = e^{cr²} on the unit disk, u(1) = 0:
// u'(r) = -(1 - e^{-cr²}) / (2cr), c > 0.
inline double torsion_disk(double c, double r) {
  if (r >= 1.0) return 0.0;
  return simpson(
      [c](double s) { return s == 0.0 ? 0.0 : (1.0 - std::exp(-c * s * s)) / (2.0 * c * s); }, r, 1.0, 4000);
}

}  // namespace oracle
