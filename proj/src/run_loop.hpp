// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
//
// Internal: the outer loop shared by fipd/ilpd/alm runs.  Emits one trace
// record for the initial iterate (k = 1), then one per step; stops on
// feasibility <= stop_res or when max_outer records have been produced.
#pragma once

#include <chrono>
#include <limits>
#include <optional>
#include <utility>

#include "pdscale/problem.hpp"
#include "pdscale/state.hpp"
#include "pdscale/trace.hpp"

namespace pdscale::detail {

inline double gap_or_nan(const ProblemSpec& p, const Vector& x,
                         const std::optional<SaddleCertificate>& cert) {
  if (!cert) return std::numeric_limits<double>::quiet_NaN();
  return lagrangian(p, x, cert->lambda_star) -
         lagrangian(p, cert->x_star, cert->lambda_star);
}

template <typename StepFn>
RunResult run_outer_loop(const ProblemSpec& p, int max_outer, double stop_res,
                         const std::optional<SaddleCertificate>& cert,
                         IterateState init, StepFn&& step) {
  const auto t_start = std::chrono::steady_clock::now();
  const auto elapsed = [&t_start] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t_start)
        .count();
  };

  RunResult out;
  IterateState s = std::move(init);

  TraceRecord first;
  first.k = s.k;
  first.objective = p.objective_value(s.x);
  first.feasibility = p.constraint.residual(s.x).norm();
  first.lagrangian_gap = gap_or_nan(p, s.x, cert);
  first.beta = s.beta;
  first.elapsed_s = elapsed();
  out.trace.push_back(first);

  double best_feas = first.feasibility;
  Vector best_x = s.x;
  Vector best_lam = s.lam;
  int best_k = s.k;

  bool converged = first.feasibility <= stop_res;
  while (!converged && static_cast<int>(out.trace.size()) < max_outer) {
    StepOutcome o = step(s);
    o.record.elapsed_s = elapsed();
    out.trace.push_back(o.record);
    s = std::move(o.next);
    if (o.record.feasibility < best_feas) {
      best_feas = o.record.feasibility;
      best_x = s.x;
      best_lam = s.lam;
      best_k = s.k;
    }
    converged = o.record.feasibility <= stop_res;
  }

  if (converged) {
    out.x = s.x;
    out.lam = s.lam;
    out.iterations = s.k;
    out.converged = true;
  } else {
    out.x = std::move(best_x);
    out.lam = std::move(best_lam);
    out.iterations = best_k;
    out.converged = false;
  }
  return out;
}

}  // namespace pdscale::detail
