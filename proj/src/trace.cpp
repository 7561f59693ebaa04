// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
#include "pdscale/trace.hpp"

#include <fstream>

#include "pdscale/errors.hpp"

namespace pdscale {

void write_trace_csv(const std::string& path,
                     const std::vector<TraceRecord>& trace, bool zero_elapsed) {
  std::ofstream out(path);
  require_input(out.good(), "write_trace_csv: cannot open '" + path + "'");
  out << "k,objective,feasibility,gap,step_norm,dual_step,beta,inner_iters,"
         "eps_bound,elapsed_s\n";
  for (const TraceRecord& r : trace) {
    out << r.k << ',' << fmt_double(r.objective) << ','
        << fmt_double(r.feasibility) << ',' << fmt_double(r.lagrangian_gap)
        << ',' << fmt_double(r.step_norm) << ',' << fmt_double(r.dual_step)
        << ',' << fmt_double(r.beta) << ',' << r.inner_iters << ','
        << fmt_double(r.eps_bound) << ','
        << fmt_double(zero_elapsed ? 0.0 : r.elapsed_s) << '\n';
  }
  require_input(out.good(), "write_trace_csv: write failed for '" + path + "'");
}

}  // namespace pdscale
