// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
#pragma once

#include <string>
#include <vector>

#include "pdscale/common.hpp"

namespace pdscale {

// One row per outer iterate.  `lagrangian_gap` is NaN unless the run was
// given a saddle certificate.  `beta` holds the scaling coefficient used to
// produce the iterate (the penalty parameter sigma for the ALM baselines).
struct TraceRecord {
  int k = 0;
  double objective = 0.0;
  double feasibility = 0.0;
  double lagrangian_gap = 0.0;
  double step_norm = 0.0;
  double dual_step = 0.0;
  double beta = 0.0;
  int inner_iters = 0;
  double eps_bound = 0.0;
  double elapsed_s = 0.0;
};

struct RunResult {
  Vector x;
  Vector lam;
  std::vector<TraceRecord> trace;
  bool converged = false;
  int iterations = 0;  // index k of the returned iterate
};

// Writes the fixed schema
//   k,objective,feasibility,gap,step_norm,dual_step,beta,inner_iters,eps_bound,elapsed_s
// with %.17g values.  When zero_elapsed is set the elapsed_s column is
// written as 0 so that reruns are byte-identical (see README on determinism).
void write_trace_csv(const std::string& path,
                     const std::vector<TraceRecord>& trace, bool zero_elapsed);

}  // namespace pdscale
