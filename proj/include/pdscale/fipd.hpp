// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdscale/inner.hpp"
#include "pdscale/metric.hpp"
#include "pdscale/problem.hpp"
#include "pdscale/state.hpp"
#include "pdscale/trace.hpp"

namespace pdscale {

// How the scaling coefficient beta_k evolves across outer iterations.
//   Recurrence : beta_{k+1} = beta_k for k <= theta-2, else k/(k+2-theta)*beta_k
//                (requires theta >= 2; constant when theta == 2, grows like
//                k^(theta-2) otherwise).
//   Constant   : beta_{k+1} = beta_k.
//   Checked    : user-supplied sequence values[j] = beta_{j+1}, validated
//                against the admissible growth inequality
//                beta_{k+1} <= k*(k+1-theta+1/delta) /
//                             ((k+1)*(k+2-theta)) * beta_k   for all k >= k1.
struct BetaSchedule {
  enum class Mode { Recurrence, Constant, Checked };
  Mode mode = Mode::Recurrence;
  std::vector<double> values;  // Checked only; values[j] = beta_{j+1}, values[0] = beta_1
  int k1 = 1;                  // Checked only; must be >= max(theta-1, 1)
};

// Inertial primal-dual solver with time-dependent scaling (full prox of the
// objective in every step).  Parameter roles:
//   alpha  : inertial damping strength (> 0)
//   delta  : dual extrapolation weight (> 0)
//   theta  : momentum offset; 2 keeps beta constant under Recurrence,
//            larger values let beta grow
//   beta0  : initial scaling coefficient (> 0)
struct FipdConfig {
  double alpha = 3.0;
  double delta = 0.5;
  double theta = 2.0;
  double beta0 = 1.0;
  BetaSchedule schedule;
  Metric metric;
  InnerSchedule inner;
  int max_outer = 1000;
  double stop_res = 1e-8;
  // Solve steps by one dense factorization when the objective is a known
  // quadratic (exact subproblem solves).
  bool quadratic_exact_step = true;
  // Optional saddle certificate: fills the lagrangian_gap trace column.
  std::optional<SaddleCertificate> certificate;

  // Hard requirements; throws InvalidInputError.
  void validate(const ProblemSpec& p) const;
  // Accelerated-rate hypothesis violations (informative, not fatal):
  // theta <= 1/delta <= alpha - 1 and, for Recurrence, theta >= 2.
  std::vector<std::string> hypothesis_notes() const;
};

// Momentum point x_k + c*(x_k - x_{k-1}) with c = (k-theta)/(k+alpha-theta),
// clamped to c = 0 while k < theta (early iterations where the raw
// coefficient would be negative).
Vector fipd_extrapolate(const IterateState& s, const FipdConfig& cfg);

// Coefficients of the k-th subproblem.
//   penalty_weight : weight of the constraint penalty (grows with k*beta_k)
//   penalty_target : moving target blending A x_k with b
//   prox_weight    : weight of the proximity term (k+alpha-theta)/(k*beta_k)
struct StepCoeffs {
  double penalty_weight = 0.0;
  Vector penalty_target;
  double prox_weight = 0.0;
};

StepCoeffs fipd_step_coeffs(const IterateState& s, const FipdConfig& cfg,
                            const LinearConstraint& c);

// beta_{k+1} from beta_k under cfg.schedule (see BetaSchedule).
double fipd_update_beta(int k, double beta, const FipdConfig& cfg);

// One outer iteration: extrapolate, solve the subproblem (exactly for known
// quadratics, otherwise inexactly by fista at tolerance inner.at(k)), then
// update the multiplier
//   lam_{k+1} = lam_k + k*beta_k*(A x_{k+1} - b + delta*(k+1-theta)*A*(x_{k+1}-x_k)).
StepOutcome fipd_step(const ProblemSpec& p, const IterateState& s,
                      const FipdConfig& cfg, SolverWorkspace* ws = nullptr);

// Full loop from (x0, lam0); the first trace record describes the initial
// iterate k = 1.  Stops when feasibility <= stop_res (converged) or after
// max_outer records (returns the best-feasibility iterate, converged=false).
RunResult fipd_run(const ProblemSpec& p, const FipdConfig& cfg,
                   const Vector& x0, const Vector& lam0);

// Lyapunov diagnostic for a verified certificate; defined for
// k >= max(theta-1, 1):
//   E_k = k*(k+1-theta)*beta_k * (L(x_k, lam*) - L(x*, lam*))
//       + 0.5*||u_k||_M^2 + (alpha*delta-delta-1)/(2*delta^2)*||x_k-x*||_M^2
//       + 1/(2*delta)*||lam_k-lam*||^2,
//   u_k = (1/delta)*(x_k-x*) + (k-theta)*(x_k-x_{k-1}).
double fipd_energy(const ProblemSpec& p, const IterateState& s,
                   const FipdConfig& cfg, const SaddleCertificate& cert);

// Residual of the second-order difference identity satisfied by exact-solve
// runs on smooth objectives:
//   x_{k+1} - 2x_k + x_{k-1} + ((alpha-theta)/k)*(x_{k+1}-x_k)
//     + (theta/k)*(x_k-x_{k-1}) + beta_k*(grad_f(x_{k+1}) + A'lam_{k+1}).
// `before` is the state at k, `after` the state produced by fipd_step.
Vector fipd_discretization_residual(const ProblemSpec& p,
                                    const IterateState& before,
                                    const IterateState& after,
                                    const FipdConfig& cfg);

}  // namespace pdscale
