// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
#pragma once

#include "pdscale/common.hpp"
#include "pdscale/trace.hpp"

namespace pdscale {

// Rolling outer state shared by the primal-dual solvers and the baselines:
// x = x_k, x_prev = x_{k-1}, lam = lambda_k, beta = scaling coefficient in
// force at iteration k (the penalty parameter for the ALM baselines).
// Runs start at k = 1 with x_1 = x_0 and lambda_1 = lambda_0.
struct IterateState {
  int k = 1;
  Vector x;
  Vector x_prev;
  Vector lam;
  double beta = 1.0;
};

// Per-run caches shared across steps.
struct SolverWorkspace {
  double a_norm_sq = -1.0;  // ||A||_2^2
  Matrix gram;              // A'A (exact subproblem path only)
  bool has_gram = false;
};

struct StepOutcome {
  IterateState next;
  TraceRecord record;
};

}  // namespace pdscale
