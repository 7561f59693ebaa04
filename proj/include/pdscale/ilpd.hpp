// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdscale/fipd.hpp"
#include "pdscale/inner.hpp"
#include "pdscale/metric.hpp"
#include "pdscale/problem.hpp"
#include "pdscale/state.hpp"

namespace pdscale {

// Linearized variant for composite objectives f1 + f2: the smooth term f2
// enters each step only through its gradient at an extrapolated anchor, the
// scaling coefficient beta is constant, and the momentum offset is fixed at
// 2.  With grad_f2 == 0 the iteration coincides with the full-prox solver at
// theta = 2.
//
// Accelerated-rate hypotheses: 2 <= 1/delta <= alpha - 1 and
// M >= beta * L(f2) * Id (checked before running when strict_metric_check).
struct IlpdConfig {
  double alpha = 4.0;
  double delta = 0.5;
  double beta = 1.0;
  Metric metric;
  InnerSchedule inner;
  int max_outer = 1000;
  double stop_res = 1e-8;
  bool strict_metric_check = true;
  bool quadratic_exact_step = true;
  std::optional<SaddleCertificate> certificate;

  void validate(const ProblemSpec& p) const;
  std::vector<std::string> hypothesis_notes() const;
};

// Two extrapolation points per step:
//   prox center    x_bar = x_k + (k-2)/(k+alpha-2)   * (x_k - x_{k-1})
//   gradient anchor x_hat = x_k + (k-2)/(k+1/delta-1) * (x_k - x_{k-1})
// both clamped to coefficient 0 for k <= 2.
struct ExtrapolatedPair {
  Vector x_bar;
  Vector x_hat;
};

ExtrapolatedPair ilpd_extrapolate(const IterateState& s, const IlpdConfig& cfg);

// Subproblem coefficients (same roles as the full-prox solver):
//   penalty_weight = beta*k*(delta*k - delta + 1)
//   penalty_target = (delta*(k-1)*A x_k + b) / (delta*k - delta + 1)
//   prox_weight    = (k+alpha-2)/(beta*k)
StepCoeffs ilpd_step_coeffs(const IterateState& s, const IlpdConfig& cfg,
                            const LinearConstraint& c);

// One outer iteration; the f1-prox subproblem carries the linear term
// A'lam_k + grad_f2(x_hat), and the multiplier update is
//   lam_{k+1} = lam_k + beta*k*(A x_{k+1} - b + delta*(k-1)*A*(x_{k+1}-x_k)).
StepOutcome ilpd_step(const ProblemSpec& p, const IterateState& s,
                      const IlpdConfig& cfg, SolverWorkspace* ws = nullptr);

RunResult ilpd_run(const ProblemSpec& p, const IlpdConfig& cfg,
                   const Vector& x0, const Vector& lam0);

// Lyapunov diagnostic, defined for k >= 1:
//   E_k = beta*k*(k-1)*(L(x_k, lam*) - L(x*, lam*))
//       + 0.5*||u_k||_M^2 + (alpha*delta-delta-1)/(2*delta^2)*||x_k-x*||_M^2
//       + 1/(2*delta)*||lam_k-lam*||^2,
//   u_k = (1/delta)*(x_k-x*) + (k-2)*(x_k-x_{k-1}).
double ilpd_energy(const ProblemSpec& p, const IterateState& s,
                   const IlpdConfig& cfg, const SaddleCertificate& cert);

}  // namespace pdscale
