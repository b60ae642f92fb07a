// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "murearr/common.hpp"

namespace murearr {

/// Behaviour of a tabulated density beyond its last sample.
enum class Tail {
  kFlat,    ///< log ψ constant past the last sample
  kLinear,  ///< log ψ keeps the last segment's slope (must be >= 0)
};

/// Even, positive 1-D weight ψ with infinite total mass, and its transforms.
///
/// Two kinds are supported: the log-convex Gaussian ψ(t) = exp(c t²) with
/// c >= 0, and a tabulated ψ given on t >= 0 and interpolated linearly in
/// log ψ. The primitive Ψ(x) = ∫₀ˣ ψ is cached on a node table at
/// construction, so objects are immutable and safe to share.
class Density1D {
 public:
  static constexpr double kDefaultQuadTol = 1e-10;

  static Density1D gaussian(double c, double quad_tol = kDefaultQuadTol);
  /// `t` strictly increasing with t[0] == 0; `psi` > 0. Evenness is implied.
  static Density1D tabulated(std::vector<double> t, std::vector<double> psi,
                             Tail tail = Tail::kFlat);

  bool is_gaussian() const { return kind_ == Kind::kGaussian; }
  /// Gaussian parameter c (0 for tabulated densities).
  double c() const { return c_; }
  double quad_tol() const { return quad_tol_; }

  double psi(double t) const;
  double log_psi(double t) const;

  /// Ψ(x) = ∫₀ˣ ψ(t) dt; odd and strictly increasing.
  double primitive(double x) const;
  /// Ψ⁻¹(y).
  double primitive_inverse(double y) const;
  /// J(y) = ψ(Ψ⁻¹(y)).
  double iso_j(double y) const;
  /// Perimeter of the centered interval of μ₁-mass m, I₁(m) = 2 J(m/2).
  double profile(double m) const;

  /// Tabulation samples (empty for the Gaussian kind).
  const std::vector<double>& sample_t() const { return tab_t_; }
  std::vector<double> sample_psi() const;
  Tail tail() const { return tail_; }

 private:
  enum class Kind { kGaussian, kTabulated };

  Density1D() = default;
  void build_gaussian_cache();
  void build_tabulated_cache();
  double gaussian_segment(double a, double b) const;
  double tab_slope(std::size_t seg) const;

  Kind kind_ = Kind::kGaussian;
  double c_ = 0.0;
  double quad_tol_ = kDefaultQuadTol;
  Tail tail_ = Tail::kFlat;

  // Tabulated kind: samples of log ψ.
  std::vector<double> tab_t_;
  std::vector<double> tab_log_;

  // Ψ at nodes x_k >= 0 (Gaussian: uniform step; tabulated: sample points).
  double node_step_ = 0.0;
  std::vector<double> node_x_;
  std::vector<double> node_primitive_;
};

double psi_primitive(const Density1D& d, double x);
double psi_primitive_inv(const Density1D& d, double y);
double iso_fn_J(const Density1D& d, double y);
double one_d_profile(const Density1D& d, double m);

/// Symmetric sampling window for the log-convexity test.
struct SampleGrid {
  double half_width = 3.0;
  int count = 601;
};

struct LogConvexityReport {
  bool convex = false;
  /// max over sampled triples of log ψ(mid) - (log ψ(left) + log ψ(right)) / 2
  double worst_violation = 0.0;
  double worst_at = 0.0;
  double tolerance = 0.0;
};

/// Midpoint-convexity test of log ψ over triples at spacings h, 2h, 4h, 8h.
LogConvexityReport log_convexity_check(const Density1D& d, const SampleGrid& grid);

/// Radial weight φ(x) = exp(c|x|²) on ℝⁿ with h(r) = nω_n e^{cr²} r^{n-1}
/// and the radial mass H(r) = ∫₀ʳ h.
class RadialDensity {
 public:
  RadialDensity(int n, double c, double quad_tol = Density1D::kDefaultQuadTol);

  int n() const { return n_; }
  double c() const { return c_; }
  /// Lebesgue measure of the unit ball in ℝⁿ.
  double omega_n() const { return omega_; }

  double phi(double r) const { return std::exp(c_ * r * r); }
  double h(double r) const;
  double H(double r) const;
  double H_inverse(double m) const;
  /// I(m) = h(H⁻¹(m)), the μ-perimeter of the centered ball of μ-mass m.
  double profile(double m) const;

  /// exp(c t²), the factor of φ along one coordinate.
  const Density1D& axis_factor() const { return *axis_; }

 private:
  double segment(double a, double b) const;

  int n_;
  double c_;
  double quad_tol_;
  double omega_;
  double node_step_ = 0.0;
  std::vector<double> node_H_;
  std::shared_ptr<const Density1D> axis_;
};

double radial_mass_H(const RadialDensity& d, double r);
double radial_mass_H_inv(const RadialDensity& d, double m);
double iso_profile_I(const RadialDensity& d, double m);

/// Convex profile a(t) of the singular density |x|^{1-n} exp(a(|x|)).
struct ConvexProfile {
  enum class Kind { kAffine, kQuadratic, kTabulated };
  Kind kind = Kind::kAffine;
  std::vector<double> coeffs;  ///< a0, a1[, a2] for the parametric kinds
  std::vector<double> t;       ///< tabulated nodes (t[0] == 0)
  std::vector<double> a;       ///< tabulated values, linear in between

  static ConvexProfile affine(double a0, double a1);
  static ConvexProfile quadratic(double a0, double a1, double a2);
  static ConvexProfile tabulated(std::vector<double> t, std::vector<double> a);

  double operator()(double r) const;
};

/// Singular radial measure dμ = |x|^{1-n} exp(a(|x|)) dx with convex a.
class SingularRadialDensity {
 public:
  SingularRadialDensity(int n, ConvexProfile a);

  int n() const { return n_; }
  const ConvexProfile& profile_fn() const { return a_; }
  double omega_n() const { return omega_; }

  double value(std::span<const double> x) const;
  /// μ(B_R) = nω_n ∫₀ᴿ e^{a(t)} dt.
  double ball_mass(double R) const;
  double ball_radius(double mass) const;
  /// μ⁺(B_R) = nω_n e^{a(R)}.
  double sphere_weight(double R) const;

 private:
  int n_;
  ConvexProfile a_;
  double omega_;
};

/// Weight on the hyperplane x' = (x₂, ..., xₙ) of a product density.
struct TransverseWeight {
  enum class Kind { kConstant, kGaussian, kTabulated };
  Kind kind = Kind::kConstant;
  double value = 1.0;  ///< constant level, or c for the Gaussian kind
  std::shared_ptr<const Density1D> radial;  ///< tabulated kind, as a function of |x'|

  static TransverseWeight constant(double v);
  static TransverseWeight gaussian(double c);
  static TransverseWeight tabulated(Density1D profile);

  double operator()(std::span<const double> xp) const;
  /// ∫_a^b ρ(s) ds along one transverse axis (two-dimensional grids).
  double line_integral(double a, double b) const;
};

/// dμ = ψ(x₁) ρ(x') dx.
class ProductDensity {
 public:
  ProductDensity(int n, Density1D psi, TransverseWeight rho);

  int n() const { return n_; }
  const Density1D& psi() const { return *psi_; }
  const TransverseWeight& rho() const { return rho_; }
  double value(std::span<const double> x) const;

 private:
  int n_;
  std::shared_ptr<const Density1D> psi_;
  TransverseWeight rho_;
};

double unit_ball_volume(int n);

}  // namespace murearr
