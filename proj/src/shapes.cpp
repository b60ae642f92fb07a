// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#include "murearr/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "murearr/io.hpp"
#include "murearr/parallel.hpp"

namespace murearr {

namespace {

std::string point_str(const Point& p) {
  return "(" + format_double(p[0]) + "," + format_double(p[1]) + "," + format_double(p[2]) + ")";
}

}  // namespace

Shape ball(Point center, double r) {
  return {[center, r](const Point& x) {
            const double d0 = x[0] - center[0];
            const double d1 = x[1] - center[1];
            const double d2 = x[2] - center[2];
            return std::sqrt(d0 * d0 + d1 * d1 + d2 * d2) - r;
          },
          "ball" + point_str(center) + "r" + format_double(r)};
}

Shape box(Point lo, Point hi) {
  return {[lo, hi](const Point& x) {
            double out = -std::numeric_limits<double>::infinity();
            for (int a = 0; a < 3; ++a) {
              if (lo[a] == hi[a]) continue;  // unused axis
              out = std::max({out, lo[a] - x[a], x[a] - hi[a]});
            }
            return out;
          },
          "box" + point_str(lo) + point_str(hi)};
}

Shape ellipse(Point center, double a, double b, double angle) {
  const double ca = std::cos(angle);
  const double sa = std::sin(angle);
  return {[=](const Point& x) {
            const double u = ca * (x[0] - center[0]) + sa * (x[1] - center[1]);
            const double v = -sa * (x[0] - center[0]) + ca * (x[1] - center[1]);
            // Scaled so the level is close to a distance near the boundary.
            return std::min(a, b) * (std::sqrt((u * u) / (a * a) + (v * v) / (b * b)) - 1.0);
          },
          "ellipse" + point_str(center) + format_double(a) + "x" + format_double(b)};
}

Shape l_shape(double s) {
  return {[s](const Point& x) {
            const double square = std::max(std::abs(x[0]), std::abs(x[1])) - s;
            const double notch = -std::min(x[0], x[1]);
            return std::max(square, notch);
          },
          "lshape" + format_double(s)};
}

Shape star(Point center, double r0, std::vector<double> amp, std::vector<double> phase) {
  std::string id = "star" + point_str(center) + format_double(r0);
  return {[=](const Point& x) {
            const double dx = x[0] - center[0];
            const double dy = x[1] - center[1];
            const double th = std::atan2(dy, dx);
            double r = 1.0;
            for (std::size_t k = 0; k < amp.size(); ++k) {
              r += amp[k] * std::cos(static_cast<double>(k + 2) * th + phase[k]);
            }
            return std::hypot(dx, dy) - r0 * r;
          },
          id};
}

Shape unite(const Shape& a, const Shape& b) {
  return {[fa = a.level, fb = b.level](const Point& x) { return std::min(fa(x), fb(x)); },
          "union(" + a.id + "," + b.id + ")"};
}

GridSet rasterize(LatticePtr lat, const Shape& shape) {
  GridSet s(lat);
  parallel_for(lat->size(), 4096, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) s.occ[i] = shape.level(lat->position(i)) < 0.0 ? 1.0 : 0.0;
  });
  return s;
}

GridFunction sample(LatticePtr lat, const std::function<double(const Point&)>& f) {
  GridFunction u(lat);
  parallel_for(lat->size(), 4096, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) u.values[i] = f(lat->position(i));
  });
  return u;
}

Shape random_blob(Rng& rng, int n, double L) {
  if (n == 2) {
    const Point c{rng.uniform(-0.15, 0.15) * L, rng.uniform(-0.15, 0.15) * L, 0.0};
    const double r0 = rng.uniform(0.16, 0.4) * L;
    std::vector<double> amp(4);
    std::vector<double> phase(4);
    for (std::size_t k = 0; k < 4; ++k) {
      amp[k] = rng.uniform(0.0, 0.35 / 4.0);
      phase[k] = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    return star(c, r0, std::move(amp), std::move(phase));
  }
  const int count = rng.integer(2, 3);
  Shape s;
  for (int k = 0; k < count; ++k) {
    const Point c{rng.uniform(-0.25, 0.25) * L, rng.uniform(-0.25, 0.25) * L,
                  rng.uniform(-0.25, 0.25) * L};
    Shape b = ball(c, rng.uniform(0.15, 0.3) * L);
    s = k == 0 ? b : unite(s, b);
  }
  return s;
}

Shape random_rectangles(Rng& rng, double L, double h) {
  const int cells = static_cast<int>(std::floor(0.7 * L / h));
  const int count = rng.integer(1, 3);
  Shape s;
  for (int k = 0; k < count; ++k) {
    int lo[2];
    int hi[2];
    for (int a = 0; a < 2; ++a) {
      const int w = rng.integer(std::max(2, cells / 8), std::max(3, cells / 2));
      lo[a] = rng.integer(-cells, cells - w);
      hi[a] = lo[a] + w;
    }
    Shape r = box({lo[0] * h, lo[1] * h, 0.0}, {hi[0] * h, hi[1] * h, 0.0});
    s = k == 0 ? r : unite(s, r);
  }
  return s;
}

Shape random_star_about_origin(Rng& rng, double r0) {
  std::vector<double> amp(4);
  std::vector<double> phase(4);
  for (std::size_t k = 0; k < 4; ++k) {
    amp[k] = rng.uniform(0.0, 0.3 / 4.0);
    phase[k] = rng.uniform(0.0, 2.0 * std::numbers::pi);
  }
  return star({0.0, 0.0, 0.0}, r0, std::move(amp), std::move(phase));
}

std::vector<Bump> random_bumps(Rng& rng, int n, double L) {
  const int count = rng.integer(1, 3);
  std::vector<Bump> out;
  for (int k = 0; k < count; ++k) {
    Bump b;
    b.width = rng.uniform(0.2, 0.4) * L;
    const double reach = 0.8 * L - b.width;
    for (int a = 0; a < n; ++a) b.center[a] = rng.uniform(-reach, reach);
    b.height = rng.uniform(0.5, 1.5);
    out.push_back(b);
  }
  return out;
}

double bump_value(const std::vector<Bump>& bumps, const Point& x) {
  double v = 0.0;
  for (const auto& b : bumps) {
    double r2 = 0.0;
    for (int a = 0; a < 3; ++a) r2 += (x[a] - b.center[a]) * (x[a] - b.center[a]);
    const double q = 1.0 - r2 / (b.width * b.width);
    if (q > 0.0) v += b.height * q * q;
  }
  return v;
}

double bump_lipschitz(const std::vector<Bump>& bumps) {
  double lip = 0.0;
  for (const auto& b : bumps) lip += 8.0 * b.height / (3.0 * std::sqrt(3.0) * b.width);
  return lip;
}

GridFunction sample_bumps(LatticePtr lat, const std::vector<Bump>& bumps) {
  return sample(std::move(lat), [&](const Point& x) { return bump_value(bumps, x); });
}

}  // namespace murearr
