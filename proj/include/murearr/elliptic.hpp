// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "murearr/grid.hpp"
#include "murearr/rearrangefn.hpp"
#include "murearr/report.hpp"
#include "murearr/shapes.hpp"

namespace murearr {

struct SolverOptions {
  double residual_tol = 1e-10;  ///< relative residual of each linear solve
  int max_iter = 20000;         ///< CG iterations per linear solve
  double picard_tol = 1e-7;     ///< relative change between fixed-point iterates (p != 2)
  int max_picard = 400;
  double damping = 0.5;
  /// Regularization ε = eps_rel · scale, scale = max |∇u| of the p = 2 start.
  double eps_rel = 1e-8;
};

/// -div(φ |∇u|^{p-2} ∇u) = f φ in Ω, u = 0 on ∂Ω, with φ the lattice weight.
struct EllipticProblem {
  GridSet domain;              ///< boolean, support interior to the window
  std::optional<Shape> shape;  ///< exact boundary; without it the boundary is the staircase
  double p = 2.0;
  GridFunction f;  ///< on the same lattice, >= 0
  SolverOptions solver;
};

struct SolveResult {
  GridFunction u;
  int linear_iterations = 0;
  int picard_iterations = 0;
  double epsilon = 0.0;
  std::vector<double> history;  ///< relative change per fixed-point step (p != 2)
};

/// Cell-centered finite volumes with face weights φ(face midpoint); Dirichlet
/// cells use a ghost value linear through the boundary point (fraction θ of
/// the cell width, from `shape`, or 1/2 on the staircase). p = 2: Jacobi-PCG.
/// p != 2: damped fixed point on the coefficient (|∇u|² + ε²)^{(p-2)/2}.
SolveResult solve_weighted_plaplace(const EllipticProblem& prob);

/// Tabulated v(s) = ∫_s^M I(r)^{-p'} (∫₀^r f̃)^{1/(p-1)} dr on a graded s-grid.
struct RadialBound {
  std::vector<double> s;
  std::vector<double> v;
  std::vector<double> grad;  ///< |∇v| = I(s)^{1-p'} F(s)^{1/(p-1)} at the nodes
  LayerProfile f_tilde;
  double p = 2.0;
  double p_prime = 2.0;
  double total_mass = 0.0;
  double exponent = 0.0;  ///< small-s exponent 1/(p-1) - p'(n-1)/n of the integrand
  double isoperimetric_power = 0.5;  ///< (n-1)/n

  /// Linear interpolation in s; 0 for s >= total_mass.
  double operator()(double s) const;
  /// ‖∇v‖_{q,μ} over Ω⋆.
  double grad_norm(double q) const;
};

RadialBound radial_bound_v(const EllipticProblem& prob);

/// ‖∇u‖_{q,μ} over the domain cells (boundary slopes from the ghost values).
double gradient_norm(const EllipticProblem& prob, const GridFunction& u, double q);

/// u⋆ <= v(H(|x|)) + rel_tol max v on every cell (lhs = min(v - u⋆), rhs = 0),
/// with ‖∇u‖_q <= (1 + rel_tol) ‖∇v‖_q for each q in `qs` under "gradient".
/// Every q must satisfy 1 <= q < p.
ComparisonReport compare(const EllipticProblem& prob, const std::vector<double>& qs, double rel_tol = 0.02);

/// As compare(), reusing a solution computed earlier.
ComparisonReport compare_with(const EllipticProblem& prob, const SolveResult& sol,
                              const std::vector<double>& qs, double rel_tol = 0.02);

}  // namespace murearr
