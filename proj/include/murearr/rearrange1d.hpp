// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "murearr/density.hpp"
#include "murearr/report.hpp"

namespace murearr {

/// Finite union of open intervals with pairwise disjoint closures, kept
/// sorted. Overlapping or touching input intervals are merged.
class IntervalSet {
 public:
  using Interval = std::pair<double, double>;

  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> intervals);

  static IntervalSet centered(double half_width);

  const std::vector<Interval>& intervals() const { return iv_; }
  bool empty() const { return iv_.empty(); }
  std::size_t size() const { return iv_.size(); }

  /// Parallel set M + (-r, r), re-merged.
  IntervalSet dilate(double r) const;
  /// Cell-wise containment of closures: every interval of *this lies in one of `other`.
  bool subset_of(const IntervalSet& other) const;

 private:
  std::vector<Interval> iv_;
};

/// μ₁(M) = Σ Ψ(bᵢ) - Ψ(aᵢ).
double measure_1d(const Density1D& d, const IntervalSet& s);
/// μ₁-perimeter Σ ψ(aᵢ) + ψ(bᵢ).
double perimeter_1d(const Density1D& d, const IntervalSet& s);
/// Centered interval of equal μ₁-measure.
IntervalSet symmetrize_1d(const Density1D& d, const IntervalSet& s);
/// (μ₁(M_r) - μ₁(M)) / r, with M_r computed exactly.
double minkowski_content_1d(const Density1D& d, const IntervalSet& s, double r);
/// Perimeter against the 1-D profile I₁(μ₁(M)); requires log-convex ψ.
ComparisonReport verify_iso_1d(const Density1D& d, const IntervalSet& s);

/// Hausdorff distance between the closures of two nonempty interval sets.
double hausdorff_distance(const IntervalSet& a, const IntervalSet& b);

/// 1-8 components, endpoints sorted uniform draws in [lo, hi].
IntervalSet random_interval_set(Rng& rng, double lo = -3.0, double hi = 3.0,
                                int min_components = 1, int max_components = 8);

}  // namespace murearr
