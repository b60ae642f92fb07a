// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "murearr/grid.hpp"
#include "murearr/report.hpp"

namespace murearr {

/// Decreasing rearrangement ũ of a grid function in mass coordinates: a
/// right-continuous step function with ũ(s) = values[k] on
/// [cumulative[k-1], cumulative[k]) and 0 beyond total_mass.
struct LayerProfile {
  std::vector<double> values;      ///< strictly decreasing, > 0
  std::vector<double> cumulative;  ///< strictly increasing masses
  double total_mass = 0.0;

  double operator()(double s) const;
  /// ∫₀^total f(ũ(s)) ds.
  double integrate(const std::function<double(double)>& f) const;
  /// ∫_a^b ũ(s) ds.
  double integral(double a, double b) const;
};

/// m_u(t) = μ({u > t}) over the window.
double distribution_fn(const GridFunction& u, double t);
/// μ₁-mass (cell masses) of {u > t} on the x₁-line through `line` (index of x′).
double distribution_fn_slice(const GridFunction& u, std::size_t line, double t);

/// Cells sorted by value (descending), their masses accumulated.
LayerProfile layer_profile(const GridFunction& u);
void write_layer_profile_csv(std::ostream& os, const LayerProfile& p);

enum class SymMode { kSteiner, kSchwarz };
SymMode sym_mode_from_string(const std::string& s);
const char* to_string(SymMode m);

/// Steiner μ-symmetrization along `axis`. Each line's (mass, value) atoms are
/// rearranged decreasingly from the center outward, alternating left and
/// right; every output cell gets the mean of ũ over its own mass interval.
GridFunction steiner_symmetrize_fn(const GridFunction& u, int axis = 0);
/// u⋆(x) = ũ(H(|x|)) at cell level, with the same mass-interval averaging.
GridFunction schwarz_symmetrize_fn(const GridFunction& u);
GridFunction symmetrize_fn(const GridFunction& u, SymMode mode);

double integral_mu(const GridFunction& u, const std::function<double(double)>& f);

enum class PropertyKind {
  kCavalieri,
  kHardyLittlewood,
  kNonexpansivity,
  kSupnormContraction,
  kCorrelation,
};
PropertyKind property_kind_from_string(const std::string& s);
const char* to_string(PropertyKind k);

struct PropertyOptions {
  double power = 2.0;                 ///< f(t) = t^power (Cavalieri), G(t) = |t|^power
  std::string correlation = "product";  ///< supermodular F: "product" or "min"
  double rel_tol = 0.01;
};

/// One rearrangement property, reported as lhs >= rhs:
///   cavalieri           ∫ f(u) dμ            vs ∫₀^M f(ũ) ds (equality)
///   hardy_littlewood    ∫ u^sym v^sym dμ     >= ∫ u v dμ
///   nonexpansivity      ∫ G(u - v) dμ        >= ∫ G(u^sym - v^sym) dμ
///   supnorm_contraction ‖u - v‖∞             >= ‖u^sym - v^sym‖∞
///   correlation         ∫ F(u^sym, v^sym) dμ >= ∫ F(u, v) dμ
ComparisonReport property_check(const GridFunction& u, const GridFunction& v, PropertyKind kind,
                                 SymMode mode, const PropertyOptions& opt = {});

/// As above with u^sym and v^sym already computed in `mode`.
ComparisonReport property_check(const GridFunction& u, const GridFunction& v, const GridFunction& us,
                                 const GridFunction& vs, PropertyKind kind, SymMode mode,
                                 const PropertyOptions& opt = {});

/// Steiner only: max over x₁-lines and thresholds of the slice distribution
/// deviation, in units of the line's largest support cell mass.
double slice_equimeasurability(const GridFunction& u, const GridFunction& sym, int thresholds = 64);

/// max over 64 thresholds in (0, max u) of |m_u(t) - m_{u^sym}(t)|, reported
/// as budget (3 × largest cell mass on the supports) >= deviation.
ComparisonReport equimeasurability_check(const GridFunction& u, const GridFunction& sym,
                                         int thresholds = 64);

/// sup |u(x) - u(y)| over cell centers with |x - y| < t; t >= 2Δ.
double modulus_of_continuity(const GridFunction& u, double t);

/// Central-difference gradient (one-sided at the window edge), per axis.
std::vector<std::array<double, 3>> grid_gradient(const GridFunction& u);
/// ∫ |∇u|^p dμ.
double dirichlet_energy(const GridFunction& u, double p);
/// ∫ G(|∇u|) dμ against ∫ G(|∇u^sym|) dμ for G(t) = t^p, p ∈ [1, 4].
ComparisonReport dirichlet_functional(const GridFunction& u, double p, SymMode mode,
                                      double rel_tol = 0.02);

}  // namespace murearr
