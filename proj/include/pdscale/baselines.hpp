// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
#pragma once

#include <optional>

#include "pdscale/inner.hpp"
#include "pdscale/metric.hpp"
#include "pdscale/problem.hpp"
#include "pdscale/state.hpp"

namespace pdscale {

// Classical augmented Lagrangian baseline:
//   x_{k+1} = argmin f(x) + (sigma/2)*||A x - b||^2 + <A'lam_k, x>
//   lam_{k+1} = lam_k + sigma*(A x_{k+1} - b)
// The full objective enters the subproblem (a smooth second term is kept).
struct AlmConfig {
  double sigma = 1.0;
  InnerSchedule inner;
  int max_outer = 1000;
  double stop_res = 1e-8;
  bool quadratic_exact_step = true;
  std::optional<SaddleCertificate> certificate;

  void validate(const ProblemSpec& p) const;
};

StepOutcome alm_step(const ProblemSpec& p, const IterateState& s,
                     const AlmConfig& cfg, SolverWorkspace* ws = nullptr);
RunResult alm_run(const ProblemSpec& p, const AlmConfig& cfg, const Vector& x0,
                  const Vector& lam0);

// Linearized augmented Lagrangian baseline for composite objectives: f2 is
// replaced by its gradient at x_k and a proximity term 0.5*||x-x_k||_P^2 is
// added (P PSD, possibly zero):
//   x_{k+1} = argmin f1(x) + <grad_f2(x_k) + A'lam_k, x>
//             + (sigma/2)*||A x - b||^2 + 0.5*||x - x_k||_P^2
//   lam_{k+1} = lam_k + sigma*(A x_{k+1} - b)
// With grad_f2 == 0 and P == 0 this reduces to alm_step on f1 alone.
struct LinAlmConfig {
  double sigma = 1.0;
  Metric p_metric = Metric::scaled_identity(0.0);  // P
  InnerSchedule inner;
  int max_outer = 1000;
  double stop_res = 1e-8;
  bool quadratic_exact_step = true;
  std::optional<SaddleCertificate> certificate;

  void validate(const ProblemSpec& p) const;
};

StepOutcome lin_alm_step(const ProblemSpec& p, const IterateState& s,
                         const LinAlmConfig& cfg, SolverWorkspace* ws = nullptr);
RunResult lin_alm_run(const ProblemSpec& p, const LinAlmConfig& cfg,
                      const Vector& x0, const Vector& lam0);

}  // namespace pdscale
