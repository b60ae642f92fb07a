// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#include "murearr/rearrange1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace murearr {

IntervalSet::IntervalSet(std::vector<Interval> intervals) {
  for (const auto& [a, b] : intervals) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
      throw DomainError("interval endpoints must be finite with a < b");
    }
  }
  std::sort(intervals.begin(), intervals.end());
  for (const auto& iv : intervals) {
    if (!iv_.empty() && iv.first <= iv_.back().second) {
      iv_.back().second = std::max(iv_.back().second, iv.second);
    } else {
      iv_.push_back(iv);
    }
  }
}

IntervalSet IntervalSet::centered(double half_width) {
  if (half_width <= 0.0) return {};
  return IntervalSet({{-half_width, half_width}});
}

IntervalSet IntervalSet::dilate(double r) const {
  std::vector<Interval> out;
  out.reserve(iv_.size());
  for (const auto& [a, b] : iv_) out.emplace_back(a - r, b + r);
  return IntervalSet(std::move(out));
}

bool IntervalSet::subset_of(const IntervalSet& other) const {
  for (const auto& [a, b] : iv_) {
    const bool inside = std::any_of(other.iv_.begin(), other.iv_.end(), [&](const Interval& o) {
      return o.first <= a && b <= o.second;
    });
    if (!inside) return false;
  }
  return true;
}

double measure_1d(const Density1D& d, const IntervalSet& s) {
  KahanSum acc;
  for (const auto& [a, b] : s.intervals()) acc += d.primitive(b) - d.primitive(a);
  return acc.value();
}

double perimeter_1d(const Density1D& d, const IntervalSet& s) {
  KahanSum acc;
  for (const auto& [a, b] : s.intervals()) {
    acc += d.psi(a);
    acc += d.psi(b);
  }
  return acc.value();
}

IntervalSet symmetrize_1d(const Density1D& d, const IntervalSet& s) {
  const double m = measure_1d(d, s);
  return IntervalSet::centered(d.primitive_inverse(0.5 * m));
}

double minkowski_content_1d(const Density1D& d, const IntervalSet& s, double r) {
  if (!(r > 0.0)) throw ParameterError("Minkowski quotient requires r > 0");
  return (measure_1d(d, s.dilate(r)) - measure_1d(d, s)) / r;
}

ComparisonReport verify_iso_1d(const Density1D& d, const IntervalSet& s) {
  if (!d.is_gaussian()) {
    double reach = 3.0;
    for (const auto& [a, b] : s.intervals()) reach = std::max({reach, std::abs(a), std::abs(b)});
    const auto lc = log_convexity_check(d, SampleGrid{1.5 * reach, 601});
    if (!lc.convex) {
      throw PreconditionError(
          "verify_iso_1d: log_convexity_check failed (worst violation " +
          std::to_string(lc.worst_violation) + " at t = " + std::to_string(lc.worst_at) +
          "); the 1-D isoperimetric inequality is not guaranteed");
    }
  }
  const double m = measure_1d(d, s);
  const double lhs = perimeter_1d(d, s);
  const double rhs = d.profile(m);
  auto rep = ComparisonReport::make("verify_iso_1d", lhs, rhs, 1e-9 * std::max(1.0, rhs));
  rep.metadata["measure"] = m;
  rep.metadata["components"] = s.size();
  rep.metadata["symmetrized_half_width"] = d.primitive_inverse(0.5 * m);
  return rep;
}

namespace {

// sup over x in a of dist(x, b).
double directed_hausdorff(const IntervalSet& a, const IntervalSet& b) {
  const auto& bi = b.intervals();
  auto dist = [&](double x) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [lo, hi] : bi) {
      const double dd = x < lo ? lo - x : (x > hi ? x - hi : 0.0);
      best = std::min(best, dd);
    }
    return best;
  };
  double worst = 0.0;
  for (const auto& [lo, hi] : a.intervals()) {
    worst = std::max({worst, dist(lo), dist(hi)});
    // Interior maxima sit at midpoints of the gaps of b.
    for (std::size_t k = 0; k + 1 < bi.size(); ++k) {
      const double mid = 0.5 * (bi[k].second + bi[k + 1].first);
      if (mid > lo && mid < hi) worst = std::max(worst, dist(mid));
    }
  }
  return worst;
}

}  // namespace

double hausdorff_distance(const IntervalSet& a, const IntervalSet& b) {
  if (a.empty() || b.empty()) throw DomainError("Hausdorff distance needs nonempty sets");
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

IntervalSet random_interval_set(Rng& rng, double lo, double hi, int min_components,
                                int max_components) {
  const int k = rng.integer(min_components, max_components);
  std::vector<double> pts(static_cast<std::size_t>(2 * k));
  for (auto& p : pts) p = rng.uniform(lo, hi);
  std::sort(pts.begin(), pts.end());
  std::vector<IntervalSet::Interval> iv;
  for (int i = 0; i < k; ++i) {
    if (pts[2 * i] < pts[2 * i + 1]) iv.emplace_back(pts[2 * i], pts[2 * i + 1]);
  }
  return IntervalSet(std::move(iv));
}

}  // namespace murearr
