// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#include "murearr/density.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

namespace murearr {

namespace {

// exp() overflows past ~709; transforms stop well before.
constexpr double kMaxExponent = 700.0;

template <class F>
double integrate(F&& f, double a, double b, double rel_tol) {
  if (a == b) return 0.0;
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, 15, rel_tol, &err);
  // The GK15 estimate is very pessimistic on short intervals; cross-check with GK31.
  const bool cross_ok = [&] {
    if (err <= rel_tol * std::abs(v) + 1e-300) return true;
    const double w = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0);
    return std::abs(w - v) <= rel_tol * std::abs(v);
  }();
  if (!cross_ok && err > 1e-15 * std::abs(v)) {
    std::ostringstream os;
    os << "quadrature on [" << a << ", " << b << "] reached error " << err
       << ", requested relative " << rel_tol;
    throw QuadratureError(os.str(), std::abs(v) > 0 ? err / std::abs(v) : err);
  }
  return v;
}

// Root of g on [lo, hi] where g(lo) <= 0 < g(hi), to ~1e-15 relative.
template <class G>
double bracketed_root(G&& g, double lo, double hi, double glo, double ghi) {
  if (glo == 0.0) return lo;
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(
      g, lo, hi, glo, ghi, boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (r.first + r.second);
}

// ∫₀^τ e^{b s} ds, stable for small |b τ|.
double exp_integral(double b, double tau) {
  if (b == 0.0) return tau;
  return std::expm1(b * tau) / b;
}

}  // namespace

double unit_ball_volume(int n) {
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

// ---------------------------------------------------------------- Density1D

Density1D Density1D::gaussian(double c, double quad_tol) {
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw DomainError("gaussian density requires c >= 0 (got " + std::to_string(c) + ")");
  }
  if (!(quad_tol > 0.0)) throw DomainError("quad_tol must be positive");
  Density1D d;
  d.kind_ = Kind::kGaussian;
  d.c_ = c;
  d.quad_tol_ = quad_tol;
  d.build_gaussian_cache();
  return d;
}

Density1D Density1D::tabulated(std::vector<double> t, std::vector<double> psi, Tail tail) {
  if (t.size() < 2 || t.size() != psi.size()) {
    throw DomainError("tabulated density needs >= 2 samples with matching sizes");
  }
  if (t.front() != 0.0) throw DomainError("tabulated density samples must start at t = 0");
  Density1D d;
  d.kind_ = Kind::kTabulated;
  d.tail_ = tail;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i > 0 && !(t[i] > t[i - 1])) {
      throw DomainError("tabulated density nodes must be strictly increasing");
    }
    if (!(psi[i] > 0.0) || !std::isfinite(psi[i])) {
      throw DomainError("tabulated density values must be positive and finite");
    }
  }
  d.tab_t_ = std::move(t);
  d.tab_log_.resize(psi.size());
  std::transform(psi.begin(), psi.end(), d.tab_log_.begin(),
                 [](double v) { return std::log(v); });
  if (tail == Tail::kLinear && d.tab_slope(d.tab_t_.size() - 1) < 0.0) {
    throw PreconditionError(
        "tabulated density with a linear log-tail must not decay: total mass would be finite");
  }
  d.build_tabulated_cache();
  return d;
}

std::vector<double> Density1D::sample_psi() const {
  std::vector<double> out(tab_log_.size());
  std::transform(tab_log_.begin(), tab_log_.end(), out.begin(),
                 [](double l) { return std::exp(l); });
  return out;
}

// Slope of log ψ on segment `seg` (the tail when seg is the last node).
double Density1D::tab_slope(std::size_t seg) const {
  const std::size_t last = tab_t_.size() - 1;
  if (seg >= last) {
    if (tail_ == Tail::kFlat) return 0.0;
    return (tab_log_[last] - tab_log_[last - 1]) / (tab_t_[last] - tab_t_[last - 1]);
  }
  return (tab_log_[seg + 1] - tab_log_[seg]) / (tab_t_[seg + 1] - tab_t_[seg]);
}

void Density1D::build_gaussian_cache() {
  if (c_ == 0.0) return;
  const double x_max = std::sqrt(kMaxExponent / c_);
  const double target = 0.125 / std::max(1.0, std::sqrt(c_));
  const auto count = static_cast<std::size_t>(
      std::min(20000.0, std::ceil(x_max / target)));
  node_step_ = x_max / static_cast<double>(count);
  node_x_.resize(count + 1);
  node_primitive_.resize(count + 1);
  KahanSum acc;
  for (std::size_t k = 0; k <= count; ++k) {
    node_x_[k] = node_step_ * static_cast<double>(k);
    if (k > 0) acc += gaussian_segment(node_x_[k - 1], node_x_[k]);
    node_primitive_[k] = acc.value();
  }
}

void Density1D::build_tabulated_cache() {
  node_x_ = tab_t_;
  node_primitive_.assign(tab_t_.size(), 0.0);
  KahanSum acc;
  for (std::size_t k = 1; k < tab_t_.size(); ++k) {
    const double w = tab_t_[k] - tab_t_[k - 1];
    acc += std::exp(tab_log_[k - 1]) * exp_integral(tab_slope(k - 1), w);
    node_primitive_[k] = acc.value();
  }
}

double Density1D::gaussian_segment(double a, double b) const {
  const double c = c_;
  return integrate([c](double t) { return std::exp(c * t * t); }, a, b, quad_tol_);
}

double Density1D::log_psi(double t) const {
  const double a = std::abs(t);
  if (kind_ == Kind::kGaussian) return c_ * a * a;
  const auto it = std::upper_bound(tab_t_.begin(), tab_t_.end(), a);
  const std::size_t k = static_cast<std::size_t>(it - tab_t_.begin()) - 1;
  return tab_log_[k] + tab_slope(k) * (a - tab_t_[k]);
}

double Density1D::psi(double t) const { return std::exp(log_psi(t)); }

double Density1D::primitive(double x) const {
  const double a = std::abs(x);
  double v = 0.0;
  if (kind_ == Kind::kGaussian) {
    if (c_ == 0.0) return x;
    if (a > node_x_.back()) {
      throw RangeError("Psi argument " + std::to_string(x) + " beyond representable range");
    }
    const auto k = std::min(node_x_.size() - 2, static_cast<std::size_t>(a / node_step_));
    v = node_primitive_[k] + gaussian_segment(node_x_[k], a);
  } else {
    const auto it = std::upper_bound(tab_t_.begin(), tab_t_.end(), a);
    const std::size_t k = static_cast<std::size_t>(it - tab_t_.begin()) - 1;
    v = node_primitive_[k] + std::exp(tab_log_[k]) * exp_integral(tab_slope(k), a - tab_t_[k]);
  }
  return x < 0 ? -v : v;
}

double Density1D::primitive_inverse(double y) const {
  const double a = std::abs(y);
  double x = 0.0;
  if (a == 0.0) return 0.0;
  if (kind_ == Kind::kGaussian) {
    if (c_ == 0.0) return y;
    if (a > node_primitive_.back()) {
      throw RangeError("Psi^-1 argument " + std::to_string(y) + " beyond representable mass");
    }
    auto it = std::upper_bound(node_primitive_.begin(), node_primitive_.end(), a);
    std::size_t k = static_cast<std::size_t>(it - node_primitive_.begin()) - 1;
    k = std::min(k, node_x_.size() - 2);
    const double base = node_primitive_[k];
    const double x0 = node_x_[k];
    auto g = [&](double s) { return base + gaussian_segment(x0, s) - a; };
    x = bracketed_root(g, x0, node_x_[k + 1], base - a, node_primitive_[k + 1] - a);
  } else {
    auto it = std::upper_bound(node_primitive_.begin(), node_primitive_.end(), a);
    const std::size_t k = static_cast<std::size_t>(it - node_primitive_.begin()) - 1;
    const double b = tab_slope(k);
    const double rem = (a - node_primitive_[k]) * std::exp(-tab_log_[k]);
    const double tau = b == 0.0 ? rem : std::log1p(b * rem) / b;
    x = tab_t_[k] + tau;
  }
  return y < 0 ? -x : x;
}

double Density1D::iso_j(double y) const { return psi(primitive_inverse(y)); }

double Density1D::profile(double m) const {
  if (!(m >= 0.0)) throw DomainError("profile requires m >= 0");
  return 2.0 * iso_j(0.5 * m);
}

double psi_primitive(const Density1D& d, double x) { return d.primitive(x); }
double psi_primitive_inv(const Density1D& d, double y) { return d.primitive_inverse(y); }
double iso_fn_J(const Density1D& d, double y) { return d.iso_j(y); }
double one_d_profile(const Density1D& d, double m) { return d.profile(m); }

LogConvexityReport log_convexity_check(const Density1D& d, const SampleGrid& grid) {
  if (grid.count < 3 || !(grid.half_width > 0.0)) {
    throw ParameterError("log-convexity sample grid needs count >= 3 and half_width > 0");
  }
  const int count = grid.count;
  const double step = 2.0 * grid.half_width / (count - 1);
  std::vector<double> lp(static_cast<std::size_t>(count));
  double scale = 1.0;
  for (int j = 0; j < count; ++j) {
    lp[j] = d.log_psi(-grid.half_width + j * step);
    scale = std::max(scale, std::abs(lp[j]));
  }
  LogConvexityReport rep;
  rep.tolerance = 1e-12 * scale;
  rep.worst_violation = -std::numeric_limits<double>::infinity();
  for (int m = 1; m <= 8 && 2 * m < count; m *= 2) {
    for (int j = m; j + m < count; ++j) {
      const double v = lp[j] - 0.5 * (lp[j - m] + lp[j + m]);
      if (v > rep.worst_violation) {
        rep.worst_violation = v;
        rep.worst_at = -grid.half_width + j * step;
      }
    }
  }
  rep.convex = rep.worst_violation <= rep.tolerance;
  return rep;
}

// ------------------------------------------------------------ RadialDensity

RadialDensity::RadialDensity(int n, double c, double quad_tol)
    : n_(n), c_(c), quad_tol_(quad_tol) {
  if (n < 2) throw DomainError("radial density requires n >= 2");
  if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("radial density requires c >= 0");
  omega_ = unit_ball_volume(n);
  axis_ = std::make_shared<const Density1D>(Density1D::gaussian(c, quad_tol));
  if (c_ > 0.0) {
    const double r_max = std::sqrt(kMaxExponent / c_);
    const auto count = static_cast<std::size_t>(std::min(20000.0, std::ceil(r_max / 0.02)));
    node_step_ = r_max / static_cast<double>(count);
    node_H_.resize(count + 1);
    KahanSum acc;
    node_H_[0] = 0.0;
    for (std::size_t k = 1; k <= count; ++k) {
      acc += segment(node_step_ * (k - 1), node_step_ * k);
      node_H_[k] = acc.value();
    }
  }
}

double RadialDensity::h(double r) const {
  if (!(r >= 0.0)) throw DomainError("h requires r >= 0");
  return n_ * omega_ * std::exp(c_ * r * r) * std::pow(r, n_ - 1);
}

double RadialDensity::segment(double a, double b) const {
  const double k = n_ * omega_;
  const double c = c_;
  const int e = n_ - 1;
  if (b * b * std::abs(c) < 1e-6) {
    // Three Taylor terms of e^{ct²}; quadrature error estimates are unreliable this close to 0.
    auto mom = [&](int j) { return (std::pow(b, e + 1 + j) - std::pow(a, e + 1 + j)) / (e + 1 + j); };
    return k * (mom(0) + c * mom(2) + 0.5 * c * c * mom(4));
  }
  return integrate([=](double t) { return k * std::exp(c * t * t) * std::pow(t, e); }, a, b,
                   quad_tol_);
}

double RadialDensity::H(double r) const {
  if (!(r >= 0.0)) throw DomainError("H requires r >= 0");
  if (c_ == 0.0) return omega_ * std::pow(r, n_);
  const double r_max = node_step_ * static_cast<double>(node_H_.size() - 1);
  if (r > r_max) throw RangeError("H argument " + std::to_string(r) + " beyond representable range");
  const auto k = std::min(node_H_.size() - 2, static_cast<std::size_t>(r / node_step_));
  return node_H_[k] + segment(node_step_ * k, r);
}

double RadialDensity::H_inverse(double m) const {
  if (!(m >= 0.0)) throw DomainError("H^-1 requires m >= 0");
  if (m == 0.0) return 0.0;
  if (c_ == 0.0) return std::pow(m / omega_, 1.0 / n_);
  if (m > node_H_.back()) {
    throw RangeError("H^-1 argument " + std::to_string(m) + " beyond representable mass");
  }
  auto it = std::upper_bound(node_H_.begin(), node_H_.end(), m);
  std::size_t k = static_cast<std::size_t>(it - node_H_.begin()) - 1;
  k = std::min(k, node_H_.size() - 2);
  const double r0 = node_step_ * k;
  const double base = node_H_[k];
  auto g = [&](double r) { return base + segment(r0, r) - m; };
  return bracketed_root(g, r0, node_step_ * (k + 1), base - m, node_H_[k + 1] - m);
}

double RadialDensity::profile(double m) const {
  if (!(m >= 0.0)) throw DomainError("isoperimetric profile requires m >= 0");
  return h(H_inverse(m));
}

double radial_mass_H(const RadialDensity& d, double r) { return d.H(r); }
double radial_mass_H_inv(const RadialDensity& d, double m) { return d.H_inverse(m); }
double iso_profile_I(const RadialDensity& d, double m) { return d.profile(m); }

// ---------------------------------------------------- SingularRadialDensity

ConvexProfile ConvexProfile::affine(double a0, double a1) {
  ConvexProfile p;
  p.kind = Kind::kAffine;
  p.coeffs = {a0, a1};
  return p;
}

ConvexProfile ConvexProfile::quadratic(double a0, double a1, double a2) {
  ConvexProfile p;
  p.kind = Kind::kQuadratic;
  p.coeffs = {a0, a1, a2};
  return p;
}

ConvexProfile ConvexProfile::tabulated(std::vector<double> t, std::vector<double> a) {
  ConvexProfile p;
  p.kind = Kind::kTabulated;
  p.t = std::move(t);
  p.a = std::move(a);
  return p;
}

double ConvexProfile::operator()(double r) const {
  switch (kind) {
    case Kind::kAffine:
      return coeffs[0] + coeffs[1] * r;
    case Kind::kQuadratic:
      return coeffs[0] + r * (coeffs[1] + r * coeffs[2]);
    case Kind::kTabulated: {
      const auto it = std::upper_bound(t.begin(), t.end(), r);
      std::size_t k = static_cast<std::size_t>(it - t.begin());
      k = k == 0 ? 0 : k - 1;
      k = std::min(k, t.size() - 2);
      const double slope = (a[k + 1] - a[k]) / (t[k + 1] - t[k]);
      return a[k] + slope * (r - t[k]);
    }
  }
  return 0.0;
}

SingularRadialDensity::SingularRadialDensity(int n, ConvexProfile a) : n_(n), a_(std::move(a)) {
  if (n < 2) throw DomainError("singular radial density requires n >= 2");
  omega_ = unit_ball_volume(n);
  using K = ConvexProfile::Kind;
  if (a_.kind == K::kAffine && a_.coeffs.size() != 2) throw DomainError("affine profile needs 2 coefficients");
  if (a_.kind == K::kQuadratic) {
    if (a_.coeffs.size() != 3) throw DomainError("quadratic profile needs 3 coefficients");
    if (a_.coeffs[2] < 0.0) throw PreconditionError("profile a must be convex (quadratic coefficient < 0)");
  }
  if (a_.kind == K::kTabulated) {
    if (a_.t.size() < 2 || a_.t.size() != a_.a.size() || a_.t.front() != 0.0) {
      throw DomainError("tabulated profile needs >= 2 samples starting at t = 0");
    }
    double prev_slope = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < a_.t.size(); ++k) {
      if (!(a_.t[k + 1] > a_.t[k])) throw DomainError("tabulated profile nodes must increase");
      const double s = (a_.a[k + 1] - a_.a[k]) / (a_.t[k + 1] - a_.t[k]);
      if (s < prev_slope - 1e-12 * std::max(1.0, std::abs(prev_slope))) {
        throw PreconditionError("profile a must be convex (midpoint convexity fails on samples)");
      }
      prev_slope = s;
    }
  }
}

double SingularRadialDensity::value(std::span<const double> x) const {
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  const double r = std::sqrt(r2);
  if (r == 0.0) return std::numeric_limits<double>::infinity();
  return std::pow(r, 1 - n_) * std::exp(a_(r));
}

double SingularRadialDensity::ball_mass(double R) const {
  if (!(R >= 0.0)) throw DomainError("ball mass requires R >= 0");
  const auto& a = a_;
  auto f = [&a](double t) { return std::exp(a(t)); };
  KahanSum acc;
  if (a_.kind == ConvexProfile::Kind::kTabulated) {
    double lo = 0.0;
    for (std::size_t k = 1; k < a_.t.size() && a_.t[k] < R; ++k) {
      acc += integrate(f, lo, a_.t[k], 1e-12);
      lo = a_.t[k];
    }
    acc += integrate(f, lo, R, 1e-12);
  } else {
    acc += integrate(f, 0.0, R, 1e-12);
  }
  return n_ * omega_ * acc.value();
}

double SingularRadialDensity::ball_radius(double mass) const {
  if (!(mass >= 0.0)) throw DomainError("ball radius requires mass >= 0");
  if (mass == 0.0) return 0.0;
  double hi = 1.0;
  while (ball_mass(hi) < mass) {
    hi *= 2.0;
    if (hi > 1e6) throw RangeError("singular ball radius: mass not reached");
  }
  auto g = [&](double R) { return ball_mass(R) - mass; };
  return bracketed_root(g, 0.0, hi, -mass, ball_mass(hi) - mass);
}

double SingularRadialDensity::sphere_weight(double R) const {
  return n_ * omega_ * std::exp(a_(R));
}

// --------------------------------------------------------- ProductDensity

TransverseWeight TransverseWeight::constant(double v) {
  if (!(v > 0.0)) throw DomainError("constant transverse weight must be positive");
  TransverseWeight w;
  w.kind = Kind::kConstant;
  w.value = v;
  return w;
}

TransverseWeight TransverseWeight::gaussian(double c) {
  TransverseWeight w;
  w.kind = Kind::kGaussian;
  w.value = c;
  w.radial = std::make_shared<const Density1D>(Density1D::gaussian(c));
  return w;
}

TransverseWeight TransverseWeight::tabulated(Density1D profile) {
  TransverseWeight w;
  w.kind = Kind::kTabulated;
  w.radial = std::make_shared<const Density1D>(std::move(profile));
  return w;
}

double TransverseWeight::operator()(std::span<const double> xp) const {
  double r2 = 0.0;
  for (double v : xp) r2 += v * v;
  switch (kind) {
    case Kind::kConstant:
      return value;
    case Kind::kGaussian:
      return std::exp(value * r2);
    case Kind::kTabulated:
      return radial->psi(std::sqrt(r2));
  }
  return 0.0;
}

double TransverseWeight::line_integral(double a, double b) const {
  if (kind == Kind::kConstant) return value * (b - a);
  return radial->primitive(b) - radial->primitive(a);
}

ProductDensity::ProductDensity(int n, Density1D psi, TransverseWeight rho)
    : n_(n), psi_(std::make_shared<const Density1D>(std::move(psi))), rho_(std::move(rho)) {
  if (n < 2) throw DomainError("product density requires n >= 2");
}

double ProductDensity::value(std::span<const double> x) const {
  return psi_->psi(x[0]) * rho_(x.subspan(1));
}

}  // namespace murearr
