// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
#pragma once

#include "pdscale/metric.hpp"
#include "pdscale/problem.hpp"

namespace pdscale {

// Largest singular value of A by power iteration on the smaller Gram matrix,
// deterministic all-ones start.  Zero matrix returns 0.
double spectral_norm(const Matrix& A, double tol = 1e-10);

// The inner subproblem shared by all outer solvers:
//
//   minimize  f(x) + smooth(x)
//             + (prox_weight/2) * ||x - center||_M^2
//             + (penalty_weight/2) * ||A x - target||^2
//             + <linear, x>
//
// where f is accessed through `prox_part` and `smooth` is an optional extra
// differentiable term (used by outer loops that do not linearize it).
// Pointer members are non-owning and must outlive the solve.
struct CompositeSubproblem {
  const ProxOracle* prox_part = nullptr;
  const SmoothOracle* smooth = nullptr;

  Metric metric;            // M
  double prox_weight = 0.0; // >= 0
  Vector center;            // prox center (required when prox_weight > 0)

  double penalty_weight = 0.0;  // >= 0
  const Matrix* A = nullptr;    // required when penalty_weight > 0
  Vector target;

  Vector linear;  // linear term; empty means zero

  // Caller-provided caches; computed on demand when < 0 / empty.
  double a_norm_sq = -1.0;        // ||A||_2^2
  const Matrix* gram = nullptr;   // A'A, used by the exact path

  double smooth_value(const Vector& x) const;
  Vector smooth_gradient(const Vector& x) const;
  double value(const Vector& x) const;  // prox part + smooth part
  double lipschitz() const;

  // True when every term is quadratic, so the minimizer solves one SPD
  // linear system.
  bool exactly_solvable() const;
  Vector solve_exact() const;
};

// Stopping rule for the inner loop.  `tol` bounds the squared relative step
// ||x_j - x_{j-1}||^2 / max(||x_{j-1}||, 1); when eps_target > 0 the solve
// additionally continues until the subgradient residual bound eps_bound is
// <= eps_target (used by energy diagnostics that need certified accuracy).
struct InnerStop {
  double tol = 1e-8;
  int max_iter = 100;
  double eps_target = 0.0;
};

struct InnerReport {
  Vector x;
  int iterations = 0;
  double rel_change = 0.0;
  // || L*(y - x_out) + grad_q(x_out) - grad_q(y) || for the accepted prox
  // step; bounds the distance of 0 from the subdifferential at x_out.
  double eps_bound = 0.0;
};

// Accelerated proximal gradient on the subproblem, warm started at x0.
// Returns the best-objective iterate encountered (including x0).
InnerReport fista(const CompositeSubproblem& sub, const Vector& x0,
                  const InnerStop& stop);

// Per-outer-iteration tolerance tol0 / k^decay (decay 0 keeps it constant).
struct InnerSchedule {
  double tol0 = 1e-8;
  double decay = 2.1;
  int max_iter = 100;
  double eps_target = 0.0;

  InnerStop at(int k) const;
};

}  // namespace pdscale
