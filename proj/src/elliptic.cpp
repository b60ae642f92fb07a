// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#include "murearr/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "murearr/parallel.hpp"

namespace murearr {

namespace {

constexpr double kMinTheta = 1e-3;

// Finite-volume stencil over the domain cells. Direction d: axis d / 2,
// towards lower indices when d is even.
struct Stencil {
  int dirs = 4;
  double h = 0.0;
  std::vector<std::size_t> cell;
  std::vector<int> nb;         // unknown id of the neighbor, -1 at the boundary
  std::vector<double> w;       // φ at the face (or boundary half-face) midpoint
  std::vector<double> theta;   // boundary distance / h, 1 for interior faces
  std::vector<double> rhs;     // h² f φ at the cell center
};

double boundary_fraction(const Shape& shape, const Point& inside, const Point& outside) {
  double lo = 0.0;
  double hi = 1.0;
  auto at = [&](double t) {
    Point x;
    for (int a = 0; a < 3; ++a) x[a] = inside[a] + t * (outside[a] - inside[a]);
    return shape.level(x);
  };
  if (at(1.0) < 0.0) return 1.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (at(mid) < 0.0 ? lo : hi) = mid;
  }
  return std::max(kMinTheta, 0.5 * (lo + hi));
}

Stencil build_stencil(const EllipticProblem& prob) {
  const Lattice& lat = *prob.domain.lattice;
  const auto& spec = lat.spec();
  const int n = spec.n;
  const int N = spec.N;
  Stencil st;
  st.dirs = 2 * n;
  st.h = spec.delta();
  std::vector<int> id(lat.size(), -1);
  for (std::size_t idx = 0; idx < lat.size(); ++idx) {
    if (prob.domain.occ[idx] == 1.0) {
      id[idx] = static_cast<int>(st.cell.size());
      st.cell.push_back(idx);
    }
  }
  const std::size_t U = st.cell.size();
  st.nb.assign(U * st.dirs, -1);
  st.w.assign(U * st.dirs, 0.0);
  st.theta.assign(U * st.dirs, 1.0);
  st.rhs.assign(U, 0.0);
  parallel_for(U, 256, [&](std::size_t b, std::size_t e) {
    for (std::size_t u = b; u < e; ++u) {
      const std::size_t idx = st.cell[u];
      const auto c = lat.coords(idx);
      const Point x = lat.position(idx);
      const std::span<const double> xs(x.data(), static_cast<std::size_t>(n));
      st.rhs[u] = st.h * st.h * prob.f.values[idx] * lat.density(xs);
      for (int d = 0; d < st.dirs; ++d) {
        const int a = d / 2;
        const int sgn = d % 2 == 0 ? -1 : 1;
        auto cn = c;
        cn[a] += sgn;
        const std::size_t k = u * st.dirs + d;
        int other = -1;
        if (cn[a] >= 0 && cn[a] < N) other = id[lat.index(cn[0], cn[1], cn[2])];
        double theta = 1.0;
        if (other >= 0) {
          st.nb[k] = other;
        } else if (prob.shape) {
          Point xo = x;
          xo[a] += sgn * st.h;
          theta = boundary_fraction(*prob.shape, x, xo);
        } else {
          theta = 0.5;
        }
        st.theta[k] = theta;
        Point xf = x;
        xf[a] += sgn * 0.5 * theta * st.h;
        st.w[k] = lat.density(std::span<const double>(xf.data(), static_cast<std::size_t>(n)));
      }
    }
  });
  return st;
}

// Cell-centered gradient; outside neighbors contribute the boundary value 0
// at distance θh.
void cell_gradients(const Stencil& st, const std::vector<double>& u, std::vector<double>& g) {
  const std::size_t U = st.cell.size();
  const int n = st.dirs / 2;
  g.assign(U * 3, 0.0);
  parallel_for(U, 1024, [&](std::size_t b, std::size_t e) {
    for (std::size_t c = b; c < e; ++c) {
      for (int a = 0; a < n; ++a) {
        const std::size_t kl = c * st.dirs + 2 * a;
        const std::size_t kr = kl + 1;
        const double ul = st.nb[kl] >= 0 ? u[st.nb[kl]] : 0.0;
        const double ur = st.nb[kr] >= 0 ? u[st.nb[kr]] : 0.0;
        const double dl = st.theta[kl] * st.h;
        const double dr = st.theta[kr] * st.h;
        // Quadratic through (−dl, ul), (0, u_c), (dr, ur), evaluated at 0.
        g[c * 3 + a] = (dl * dl * (ur - u[c]) - dr * dr * (ul - u[c])) / (dl * dr * (dl + dr));
      }
    }
  });
}

void face_coefficients(const Stencil& st, const std::vector<double>& u, double p, double eps,
                       std::vector<double>& k) {
  const std::size_t U = st.cell.size();
  const int n = st.dirs / 2;
  std::vector<double> g;
  cell_gradients(st, u, g);
  k.assign(U * st.dirs, 1.0);
  const double ex = 0.5 * (p - 2.0);
  parallel_for(U, 1024, [&](std::size_t b, std::size_t e) {
    for (std::size_t c = b; c < e; ++c) {
      for (int d = 0; d < st.dirs; ++d) {
        const int a = d / 2;
        const std::size_t f = c * st.dirs + d;
        const int o = st.nb[f];
        double s2 = eps * eps;
        if (o >= 0) {
          const double dn = (u[o] - u[c]) / st.h;
          s2 += dn * dn;
          for (int t = 0; t < n; ++t) {
            if (t == a) continue;
            const double gt = 0.5 * (g[c * 3 + t] + g[static_cast<std::size_t>(o) * 3 + t]);
            s2 += gt * gt;
          }
        } else {
          const double dn = u[c] / (st.theta[f] * st.h);
          s2 += dn * dn;
          for (int t = 0; t < n; ++t) {
            if (t != a) s2 += g[c * 3 + t] * g[c * 3 + t];
          }
        }
        k[f] = std::pow(s2, ex);
      }
    }
  });
}

struct Operator {
  const Stencil& st;
  const std::vector<double>& k;
  std::vector<double> diag;

  Operator(const Stencil& s, const std::vector<double>& coef) : st(s), k(coef) {
    const std::size_t U = st.cell.size();
    diag.assign(U, 0.0);
    for (std::size_t c = 0; c < U; ++c) {
      double dsum = 0.0;
      for (int d = 0; d < st.dirs; ++d) {
        const std::size_t f = c * st.dirs + d;
        dsum += k[f] * st.w[f] / st.theta[f];
      }
      diag[c] = dsum;
    }
  }

  void apply(const std::vector<double>& x, std::vector<double>& y) const {
    const std::size_t U = st.cell.size();
    y.resize(U);
    parallel_for(U, 2048, [&](std::size_t b, std::size_t e) {
      for (std::size_t c = b; c < e; ++c) {
        double acc = diag[c] * x[c];
        for (int d = 0; d < st.dirs; ++d) {
          const std::size_t f = c * st.dirs + d;
          if (st.nb[f] >= 0) acc -= k[f] * st.w[f] * x[st.nb[f]];
        }
        y[c] = acc;
      }
    });
  }
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return deterministic_sum(a.size(), [&](std::size_t i) { return a[i] * b[i]; });
}

// Jacobi-preconditioned CG, warm-started from x. Returns the iteration count.
int pcg(const Operator& A, const std::vector<double>& b, std::vector<double>& x, double tol, int max_iter) {
  const std::size_t U = b.size();
  const double bnorm = std::sqrt(dot(b, b));
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return 0;
  }
  std::vector<double> r(U);
  std::vector<double> z(U);
  std::vector<double> p(U);
  std::vector<double> Ap(U);
  A.apply(x, Ap);
  for (std::size_t i = 0; i < U; ++i) r[i] = b[i] - Ap[i];
  for (std::size_t i = 0; i < U; ++i) z[i] = r[i] / A.diag[i];
  p = z;
  double rz = dot(r, z);
  std::vector<double> history;
  for (int it = 0; it < max_iter; ++it) {
    const double rnorm = std::sqrt(dot(r, r)) / bnorm;
    if (it % 50 == 0) history.push_back(rnorm);
    if (rnorm <= tol) return it;
    A.apply(p, Ap);
    const double alpha = rz / dot(p, Ap);
    parallel_for(U, 4096, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        x[i] += alpha * p[i];
        r[i] -= alpha * Ap[i];
        z[i] = r[i] / A.diag[i];
      }
    });
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    parallel_for(U, 4096, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) p[i] = z[i] + beta * p[i];
    });
  }
  throw ConvergenceError("conjugate gradients did not reach the residual tolerance in " +
                             std::to_string(max_iter) + " iterations",
                         history);
}

void validate(const EllipticProblem& prob) {
  if (!(prob.p > 1.0)) throw DomainError("p-Laplace solve requires p > 1");
  if (prob.p > 4.0) throw ParameterError("p-Laplace solve supports p in (1, 4]");
  if (!prob.domain.lattice || !prob.f.lattice) throw ParameterError("elliptic problem: missing domain or f");
  if (prob.domain.lattice->spec().to_json() != prob.f.lattice->spec().to_json()) {
    throw ParameterError("elliptic problem: domain and f live on different grids");
  }
  if (!prob.domain.is_boolean()) throw PreconditionError("elliptic problem: domain must be a boolean set");
  if (!prob.domain.support_interior()) {
    throw PreconditionError("elliptic problem: domain touches the window boundary");
  }
  if (grid_measure(prob.domain) <= 0.0) throw PreconditionError("elliptic problem: empty domain");
}

GridFunction to_grid(const EllipticProblem& prob, const Stencil& st, const std::vector<double>& x) {
  GridFunction u(prob.domain.lattice);
  for (std::size_t c = 0; c < st.cell.size(); ++c) u.values[st.cell[c]] = std::max(0.0, x[c]);
  return u;
}

}  // namespace

SolveResult solve_weighted_plaplace(const EllipticProblem& prob) {
  validate(prob);
  const Stencil st = build_stencil(prob);
  const std::size_t U = st.cell.size();
  const auto& opt = prob.solver;
  SolveResult res;
  std::vector<double> ones(U * st.dirs, 1.0);
  std::vector<double> x(U, 0.0);
  {
    const Operator A(st, ones);
    res.linear_iterations += pcg(A, st.rhs, x, opt.residual_tol, opt.max_iter);
  }
  if (prob.p != 2.0) {
    std::vector<double> g;
    cell_gradients(st, x, g);
    double scale = 0.0;
    for (std::size_t c = 0; c < U; ++c) {
      scale = std::max(scale, std::sqrt(g[3 * c] * g[3 * c] + g[3 * c + 1] * g[3 * c + 1] + g[3 * c + 2] * g[3 * c + 2]));
    }
    res.epsilon = opt.eps_rel * std::max(scale, 1e-300);
    std::vector<double> k;
    std::vector<double> y;
    bool converged = false;
    double last = 1.0;
    for (int it = 0; it < opt.max_picard; ++it) {
      face_coefficients(st, x, prob.p, res.epsilon, k);
      const Operator A(st, k);
      y = x;
      // Inner solves only as tight as the outer iteration needs.
      const double inner = std::max(opt.residual_tol, std::min(1e-4, 1e-2 * last));
      res.linear_iterations += pcg(A, st.rhs, y, inner, opt.max_iter);
      double change = 0.0;
      double top = 0.0;
      for (std::size_t c = 0; c < U; ++c) {
        const double nx = (1.0 - opt.damping) * x[c] + opt.damping * y[c];
        change = std::max(change, std::abs(nx - x[c]));
        top = std::max(top, std::abs(nx));
        x[c] = nx;
      }
      const double rel = top > 0.0 ? change / top : 0.0;
      res.history.push_back(rel);
      last = rel;
      res.picard_iterations = it + 1;
      if (rel < opt.picard_tol) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw ConvergenceError("p-Laplace fixed point did not converge in " + std::to_string(opt.max_picard) +
                                 " iterations",
                             res.history);
    }
  }
  res.u = to_grid(prob, st, x);
  return res;
}

double RadialBound::operator()(double q) const {
  if (q >= total_mass || s.empty()) return 0.0;
  if (q <= s.front()) return v.front();
  const auto it = std::upper_bound(s.begin(), s.end(), q);
  const std::size_t k = static_cast<std::size_t>(it - s.begin());
  const double t = (q - s[k - 1]) / (s[k] - s[k - 1]);
  return v[k - 1] + t * (v[k] - v[k - 1]);
}

namespace {

// Composite trapezoid over the nodes, the first panel [0, s₁] by the
// small-s power law g ~ s^e.
double trapezoid(const std::vector<double>& s, const std::vector<double>& g, double e) {
  KahanSum acc;
  acc += g[1] * s[1] / (1.0 + e);
  for (std::size_t k = 1; k + 1 < s.size(); ++k) acc += 0.5 * (g[k] + g[k + 1]) * (s[k + 1] - s[k]);
  return acc.value();
}

}  // namespace

double RadialBound::grad_norm(double q) const {
  if (s.size() < 3) return 0.0;
  std::vector<double> gq(grad.size());
  for (std::size_t k = 0; k < grad.size(); ++k) gq[k] = std::pow(grad[k], q);
  // |∇v| ~ s^{1/(p-1) + (1-p')(n-1)/n} = s^{exponent + (n-1)/n}.
  const double e_grad = q * (exponent + isoperimetric_power);
  return std::pow(trapezoid(s, gq, std::max(e_grad, -0.5)), 1.0 / q);
}

RadialBound radial_bound_v(const EllipticProblem& prob) {
  validate(prob);
  const Lattice& lat = *prob.domain.lattice;
  const RadialDensity& d = lat.radial_density();
  const int n = d.n();
  RadialBound rb;
  rb.p = prob.p;
  rb.p_prime = prob.p / (prob.p - 1.0);
  rb.isoperimetric_power = (n - 1.0) / n;
  rb.exponent = 1.0 / (prob.p - 1.0) - rb.p_prime * rb.isoperimetric_power;
  if (rb.exponent <= -1.0) {
    throw QuadratureError("radial bound: integrand ~ s^" + std::to_string(rb.exponent) +
                              " near s = 0 is not integrable",
                          std::numeric_limits<double>::infinity());
  }
  GridFunction fd(prob.domain.lattice);
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (prob.f.values[i] < 0.0) throw PreconditionError("radial bound: f must be nonnegative");
    fd.values[i] = prob.domain.occ[i] * prob.f.values[i];
  }
  rb.f_tilde = layer_profile(fd);
  const double M = grid_measure(prob.domain);
  rb.total_mass = M;

  constexpr int kUniform = 4000;
  constexpr int kGraded = 40;
  std::vector<double> s;
  for (int k = 0; k <= kUniform; ++k) s.push_back(M * k / kUniform);
  const double s_lo = 1e-10 * M;
  const double s_hi = M / kUniform;
  for (int j = 0; j < kGraded; ++j) s.push_back(s_lo * std::pow(s_hi / s_lo, static_cast<double>(j) / kGraded));
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  s.back() = M;

  // F(s) = ∫₀ˢ f̃ by one sweep over the nodes.
  std::vector<double> F(s.size(), 0.0);
  {
    const auto& val = rb.f_tilde.values;
    const auto& cum = rb.f_tilde.cumulative;
    std::size_t k = 0;
    double prev_cum = 0.0;
    double acc = 0.0;
    for (std::size_t q = 0; q < s.size(); ++q) {
      while (k < val.size() && cum[k] <= s[q]) {
        acc += (cum[k] - prev_cum) * val[k];
        prev_cum = cum[k];
        ++k;
      }
      F[q] = acc + (k < val.size() ? (s[q] - prev_cum) * val[k] : 0.0);
    }
  }
  const double inv = 1.0 / (prob.p - 1.0);
  std::vector<double> g(s.size(), 0.0);
  rb.grad.assign(s.size(), 0.0);
  for (std::size_t q = 1; q < s.size(); ++q) {
    const double I = d.profile(s[q]);
    const double Fp = std::pow(F[q], inv);
    g[q] = std::pow(I, -rb.p_prime) * Fp;
    rb.grad[q] = std::pow(I, 1.0 - rb.p_prime) * Fp;
  }
  rb.v.assign(s.size(), 0.0);
  for (std::size_t q = s.size() - 1; q-- > 1;) {
    rb.v[q] = rb.v[q + 1] + 0.5 * (g[q] + g[q + 1]) * (s[q + 1] - s[q]);
  }
  rb.v[0] = rb.v[1] + g[1] * s[1] / (1.0 + rb.exponent);
  rb.s = std::move(s);
  return rb;
}

double gradient_norm(const EllipticProblem& prob, const GridFunction& u, double q) {
  const Stencil st = build_stencil(prob);
  std::vector<double> x(st.cell.size());
  for (std::size_t c = 0; c < st.cell.size(); ++c) x[c] = u.values[st.cell[c]];
  std::vector<double> g;
  cell_gradients(st, x, g);
  const Lattice& lat = *prob.domain.lattice;
  const double sum = deterministic_sum(st.cell.size(), [&](std::size_t c) {
    const double m2 = g[3 * c] * g[3 * c] + g[3 * c + 1] * g[3 * c + 1] + g[3 * c + 2] * g[3 * c + 2];
    return std::pow(m2, 0.5 * q) * lat.cell_mass(st.cell[c]);
  });
  return std::pow(sum, 1.0 / q);
}

ComparisonReport compare_with(const EllipticProblem& prob, const SolveResult& sol,
                              const std::vector<double>& qs, double rel_tol) {
  for (double q : qs) {
    if (!(q >= 1.0) || !(q < prob.p)) {
      throw ParameterError("compare: gradient exponents must satisfy 1 <= q < p (got q = " + std::to_string(q) +
                           ", p = " + std::to_string(prob.p) + ")");
    }
  }
  const Lattice& lat = *prob.domain.lattice;
  const RadialDensity& d = lat.radial_density();
  const RadialBound rb = radial_bound_v(prob);
  const GridFunction us = schwarz_symmetrize_fn(sol.u);
  const double vmax = rb.v.front();
  double min_gap = std::numeric_limits<double>::infinity();
  double max_abs = 0.0;
  for (std::size_t idx = 0; idx < lat.size(); ++idx) {
    const auto x = lat.position(idx);
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    const double s = r < d.H_inverse(rb.total_mass) ? d.H(r) : rb.total_mass;
    const double vv = rb(s);
    min_gap = std::min(min_gap, vv - us.values[idx]);
    max_abs = std::max(max_abs, std::abs(vv - us.values[idx]));
  }
  if (vmax == 0.0 && min_gap == std::numeric_limits<double>::infinity()) min_gap = 0.0;
  auto rep = ComparisonReport::make("compare", min_gap, 0.0, rel_tol * vmax);
  Json grads = Json::array();
  bool grads_ok = true;
  for (double q : qs) {
    const double nu = gradient_norm(prob, sol.u, q);
    const double nv = rb.grad_norm(q);
    const bool ok = nu <= (1.0 + rel_tol) * nv;
    grads_ok = grads_ok && ok;
    grads.push_back({{"q", q}, {"grad_u", nu}, {"grad_v", nv}, {"ratio", nv > 0.0 ? nu / nv : 0.0}, {"passed", ok}});
  }
  rep.passed = rep.passed && grads_ok;
  rep.metadata["grid"] = lat.spec().to_json();
  rep.metadata["density"] = lat.density_json();
  rep.metadata["p"] = prob.p;
  rep.metadata["epsilon"] = sol.epsilon;
  rep.metadata["max_v"] = vmax;
  rep.metadata["max_excess"] = -min_gap;
  rep.metadata["max_abs_diff"] = max_abs;
  rep.metadata["gradient"] = grads;
  rep.metadata["linear_iterations"] = sol.linear_iterations;
  rep.metadata["picard_iterations"] = sol.picard_iterations;
  return rep;
}

ComparisonReport compare(const EllipticProblem& prob, const std::vector<double>& qs, double rel_tol) {
  return compare_with(prob, solve_weighted_plaplace(prob), qs, rel_tol);
}

}  // namespace murearr
