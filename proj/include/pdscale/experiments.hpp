// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
//
// Seeded benchmark-instance generators, recovery metrics, and log-log rate
// fitting. Generators are pure functions of their spec (including the seed):
// repeated calls produce bit-identical instances.
#ifndef PDSCALE_EXPERIMENTS_HPP
#define PDSCALE_EXPERIMENTS_HPP

#include <cstdint>
#include <vector>

#include "pdscale/common.hpp"
#include "pdscale/fipd.hpp"
#include "pdscale/ilpd.hpp"
#include "pdscale/problem.hpp"
#include "pdscale/trace.hpp"

namespace pdscale {

// Sparse-recovery family: min ||x||_1 + (tau/2)||x||^2  s.t.  A x = b with
// A Gaussian, a ground-truth signal supported on round(nonzero_fraction * n)
// uniformly chosen coordinates with N(0, 4) values, and b = A x* + noise
// rescaled to noise_norm. Desk scale is 150 x 300; the published runs use
// 1500 x 3000.
struct L1L2Spec {
  Index m = 150;
  Index n = 300;
  double tau = 0.5;
  double nonzero_fraction = 0.9;
  double noise_norm = 1e-5;
  std::uint64_t seed = 0;

  void validate() const;
};

struct GeneratedL1L2 {
  ProblemSpec problem;
  Vector ground_truth;
};

GeneratedL1L2 gen_l1l2(const L1L2Spec& spec);

// Nonnegative QP family: min 0.5 x'Qx + q'x  s.t.  A x = b, x >= 0 with
// Q = 2 H'H (H Gaussian, exactly symmetrized), q Gaussian, A = [B, Id] with
// B Gaussian m x (n-m), and b = A z for an elementwise-|Gaussian| z, so a
// nonnegative feasible point exists by construction. Desk scale is 50 x 100;
// the published runs use 500 x 1000.
struct QpSpec {
  Index m = 50;
  Index n = 100;
  std::uint64_t seed = 0;

  void validate() const;
};

struct GeneratedQp {
  ProblemSpec problem;
  double q_norm;  // spectral norm of Q = the smooth term's curvature bound
};

GeneratedQp gen_qp(const QpSpec& spec);

// Recovery-quality metrics:
//   rel = ||x - x*|| / ||x*||
//   res = ||A x - b||
//   snr = log10( ||x* - mean(x*) 1||^2 / ||x - x*||^2 )
// snr_saturated marks a non-finite snr (e.g. exact recovery). iterations and
// time_s are filled by the caller.
struct MetricsReport {
  double rel = 0.0;
  double res = 0.0;
  double snr = 0.0;
  bool snr_saturated = false;
  int iterations = 0;
  double time_s = 0.0;
};

MetricsReport compute_metrics(const Vector& x, const Vector& ground_truth,
                              const LinearConstraint& constraint);

// Least-squares fit of log(value) against log(k). Nonpositive or non-finite
// values are dropped (counted); fewer than 10 usable points is an error.
struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  int used = 0;
  int dropped = 0;
};

RateFit rate_slope(const std::vector<double>& ks,
                   const std::vector<double>& values, double k_min,
                   double k_max);

enum class TraceQuantity {
  Objective,
  Feasibility,
  LagrangianGap,
  StepNorm,
  DualStep,
};

RateFit rate_slope(const std::vector<TraceRecord>& trace,
                   TraceQuantity quantity, double k_min, double k_max);

// Solver settings used for the sparse-recovery family (theta = 2 and 3 are
// the two published variants): alpha = m, delta = 1/(m-2), metric = (1/n) Id,
// beta0 = 0.05 with the recurrence schedule, stop at res <= 1e-4. The inner
// tolerance decays like 1e-10 / k^2.1 (capped at 300 inner iterations) so the
// subproblem perturbations stay summable as the theory requires.
FipdConfig fipd_l1l2_preset(Index m, Index n, double theta);

// Solver settings for the nonnegative QP family: alpha = 20, delta = 1/18,
// beta = 1, metric = |Q| Id (the tight curvature bound beta * L * Id). Pass
// the generated instance's q_norm. The inner tolerance decays like
// 1e-8 / k^2.1 (capped at 300 inner iterations); see the preset body for why
// beta stays at 1 rather than |Q|.
IlpdConfig ilpd_qp_preset(double q_norm);

}  // namespace pdscale

#endif  // PDSCALE_EXPERIMENTS_HPP
