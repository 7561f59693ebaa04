// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
//
// Command-line entry point: solve (single problem file), bench (seeded
// experiment families), dynamics (ODE trajectory). Exit codes: 0 success,
// 1 usage/config error, 2 iteration cap reached.
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pdscale/baselines.hpp"
#include "pdscale/config.hpp"
#include "pdscale/dynamics.hpp"
#include "pdscale/errors.hpp"
#include "pdscale/experiments.hpp"
#include "pdscale/fipd.hpp"
#include "pdscale/ilpd.hpp"
#include "pdscale/prox.hpp"
#include "pdscale/trace.hpp"

namespace {

using namespace pdscale;

std::string iso_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void ensure_dir(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  require_input(!ec, "cannot create output directory '" + path + "': " +
                         ec.message());
}

constexpr const char* kSolverNames = "fipd, ilpd, alm, lin-alm";

bool known_solver(const std::string& name) {
  return name == "fipd" || name == "ilpd" || name == "alm" ||
         name == "lin-alm";
}

// Flag overrides shared by solve and bench cells.
struct Overrides {
  int max_iter = 0;       // 0 = keep config value
  double stop_res = -1.0;  // negative = keep config value
};

template <typename Config>
void apply_overrides(const Overrides& ov, Config* cfg) {
  if (ov.max_iter > 0) cfg->max_outer = ov.max_iter;
  if (ov.stop_res >= 0.0) cfg->stop_res = ov.stop_res;
}

RunResult run_named_solver(const std::string& name, const ProblemSpec& p,
                           const ConfigMap& conf, const Overrides& ov,
                           const std::optional<SaddleCertificate>& cert) {
  const Vector x0 = Vector::Zero(p.n());
  const Vector lam0 = Vector::Zero(p.m());
  if (name == "fipd") {
    FipdConfig cfg = build_fipd_config(conf);
    apply_overrides(ov, &cfg);
    cfg.certificate = cert;
    return fipd_run(p, cfg, x0, lam0);
  }
  if (name == "ilpd") {
    IlpdConfig cfg = build_ilpd_config(conf);
    apply_overrides(ov, &cfg);
    cfg.certificate = cert;
    return ilpd_run(p, cfg, x0, lam0);
  }
  if (name == "alm") {
    AlmConfig cfg = build_alm_config(conf);
    apply_overrides(ov, &cfg);
    cfg.certificate = cert;
    return alm_run(p, cfg, x0, lam0);
  }
  if (name == "lin-alm") {
    LinAlmConfig cfg = build_lin_alm_config(conf);
    apply_overrides(ov, &cfg);
    cfg.certificate = cert;
    return lin_alm_run(p, cfg, x0, lam0);
  }
  throw InvalidInputError("unknown solver '" + name + "' (expected one of " +
                          kSolverNames + ")");
}

void write_solution(const std::string& path, const RunResult& r,
                    const ProblemSpec& p) {
  std::ofstream out(path);
  require_input(out.good(), "cannot open '" + path + "'");
  out << "# pdscale solution\n";
  out << "converged = " << (r.converged ? 1 : 0) << "\n";
  out << "iterations = " << r.iterations << "\n";
  out << "objective = " << fmt_double(p.objective_value(r.x)) << "\n";
  out << "feasibility = " << fmt_double(p.constraint.residual(r.x).norm())
      << "\n";
  out << "x =";
  for (Index i = 0; i < r.x.size(); ++i) out << ' ' << fmt_double(r.x[i]);
  out << "\nlambda =";
  for (Index i = 0; i < r.lam.size(); ++i) out << ' ' << fmt_double(r.lam[i]);
  out << "\n";
  require_input(out.good(), "write failed for '" + path + "'");
}

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool timings = false;
  Overrides ov;
  std::vector<std::string> raw_argv;
};

ConfigMap load_config_or_empty(const std::string& path) {
  if (path.empty()) {
    std::istringstream empty;
    return ConfigMap::parse(empty, "<none>");
  }
  return ConfigMap::parse_file(path);
}

RunManifest base_manifest(const std::string& command, const CommonArgs& args) {
  RunManifest m;
  m.command = command;
  m.argv = args.raw_argv;
  m.config_path = args.config_path;
  m.seed = args.seed;
  m.out_dir = args.out_dir;
  m.timestamp = iso_timestamp();
  m.version = kVersion;
  return m;
}

// ---------------------------------------------------------------------------
// solve

int cmd_solve(const CommonArgs& args, const std::string& problem_path,
              const std::string& solver, const std::string& certificate_path) {
  require_input(known_solver(solver), "unknown solver '" + solver +
                                          "' (expected one of " +
                                          kSolverNames + ")");
  const ProblemSpec p = load_problem(problem_path);
  const ConfigMap conf = load_config_or_empty(args.config_path);
  std::optional<SaddleCertificate> cert;
  if (!certificate_path.empty()) cert = load_certificate(certificate_path);

  const RunResult r = run_named_solver(solver, p, conf, args.ov, cert);

  ensure_dir(args.out_dir);
  write_trace_csv(args.out_dir + "/trace.csv", r.trace, !args.timings);
  write_solution(args.out_dir + "/solution.txt", r, p);
  RunManifest m = base_manifest("solve", args);
  m.problem = problem_path;
  m.solvers = {solver};
  m.scale = "-";
  write_manifest(args.out_dir + "/manifest.txt", m);

  std::cout << "solve: solver=" << solver
            << " converged=" << (r.converged ? 1 : 0)
            << " iterations=" << r.iterations
            << " res=" << fmt_double(p.constraint.residual(r.x).norm())
            << "\n";
  return r.converged ? 0 : 2;
}

// ---------------------------------------------------------------------------
// bench

struct BenchCell {
  std::string solver;
  std::string tau_label;  // "-" for the QP family
  double tau = std::nan("");
  int iter = 0;
  double time_s = 0.0;
  double res = std::nan("");
  double rel = std::nan("");
  double snr = std::nan("");
  bool ok = false;
  std::string error;
};

// Fixed per-family settings; only --max-iter/--stop-res override them.
RunResult run_bench_cell(const std::string& solver, const ProblemSpec& p,
                         double q_norm, bool is_l1l2, const Overrides& ov) {
  const Vector x0 = Vector::Zero(p.n());
  const Vector lam0 = Vector::Zero(p.m());
  const Index m = p.m();
  const Index n = p.n();
  if (solver == "fipd") {
    FipdConfig cfg = fipd_l1l2_preset(m, n, 2.0);
    if (!is_l1l2) {
      cfg.stop_res = 1e-6;
      cfg.max_outer = 1000;
    }
    apply_overrides(ov, &cfg);
    return fipd_run(p, cfg, x0, lam0);
  }
  if (solver == "ilpd") {
    IlpdConfig cfg = ilpd_qp_preset(q_norm);  // throws on the prox-only family
    apply_overrides(ov, &cfg);
    return ilpd_run(p, cfg, x0, lam0);
  }
  if (solver == "alm") {
    AlmConfig cfg;
    cfg.sigma = 1.0;
    cfg.inner.tol0 = 1e-8;
    cfg.inner.decay = 0.0;
    cfg.inner.max_iter = 100;
    cfg.stop_res = is_l1l2 ? 1e-4 : 1e-6;
    cfg.max_outer = is_l1l2 ? 200 : 1000;
    apply_overrides(ov, &cfg);
    return alm_run(p, cfg, x0, lam0);
  }
  if (solver == "lin-alm") {
    LinAlmConfig cfg;
    cfg.sigma = 1.0;
    cfg.p_metric = Metric::scaled_identity(q_norm);
    cfg.inner.tol0 = 1e-8;
    cfg.inner.decay = 0.0;
    cfg.inner.max_iter = 100;
    cfg.stop_res = 1e-6;
    cfg.max_outer = 1000;
    apply_overrides(ov, &cfg);
    return lin_alm_run(p, cfg, x0, lam0);
  }
  throw InvalidInputError("unknown solver '" + solver + "' (expected one of " +
                          kSolverNames + ")");
}

int cmd_bench(const CommonArgs& args, const std::string& family,
              const std::string& scale,
              const std::vector<std::string>& solvers) {
  require_input(family == "l1l2" || family == "qp",
                "family must be 'l1l2' or 'qp', got '" + family + "'");
  require_input(scale == "desk" || scale == "paper",
                "scale must be 'desk' or 'paper', got '" + scale + "'");
  require_input(!solvers.empty(), "bench: need at least one --solver");
  for (const std::string& s : solvers)
    require_input(known_solver(s), "unknown solver '" + s +
                                       "' (expected one of " + kSolverNames +
                                       ")");
  const bool is_l1l2 = family == "l1l2";
  const std::vector<std::string> tau_labels =
      is_l1l2 ? std::vector<std::string>{"0.1", "0.5", "1", "1.2"}
              : std::vector<std::string>{"-"};

  ensure_dir(args.out_dir);
  ensure_dir(args.out_dir + "/cells");

  std::vector<BenchCell> cells;
  for (const std::string& solver : solvers) {
    for (const std::string& tau_label : tau_labels) {
      BenchCell cell;
      cell.solver = solver;
      cell.tau_label = tau_label;
      const std::string cell_dir =
          args.out_dir + "/cells/" + solver +
          (is_l1l2 ? "_tau" + tau_label : "");
      ensure_dir(cell_dir);
      try {
        const auto t_start = std::chrono::steady_clock::now();
        if (is_l1l2) {
          L1L2Spec spec;
          spec.m = scale == "desk" ? 150 : 1500;
          spec.n = scale == "desk" ? 300 : 3000;
          spec.tau = std::stod(tau_label);
          spec.seed = args.seed;
          cell.tau = spec.tau;
          const GeneratedL1L2 gen = gen_l1l2(spec);
          const RunResult r =
              run_bench_cell(solver, gen.problem, 0.0, true, args.ov);
          const MetricsReport met = compute_metrics(
              r.x, gen.ground_truth, gen.problem.constraint);
          cell.iter = r.iterations;
          cell.res = met.res;
          cell.rel = met.rel;
          cell.snr = met.snr;
          write_trace_csv(cell_dir + "/trace.csv", r.trace, !args.timings);
        } else {
          QpSpec spec;
          spec.m = scale == "desk" ? 50 : 500;
          spec.n = scale == "desk" ? 100 : 1000;
          spec.seed = args.seed;
          const GeneratedQp gen = gen_qp(spec);
          const RunResult r =
              run_bench_cell(solver, gen.problem, gen.q_norm, false, args.ov);
          cell.iter = r.iterations;
          cell.res = gen.problem.constraint.residual(r.x).norm();
          write_trace_csv(cell_dir + "/trace.csv", r.trace, !args.timings);
        }
        const auto t_end = std::chrono::steady_clock::now();
        cell.time_s =
            args.timings
                ? std::chrono::duration<double>(t_end - t_start).count()
                : 0.0;
        cell.ok = true;
      } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = e.what();
        std::ofstream err(cell_dir + "/error.txt");
        err << e.what() << "\n";
        std::cerr << "bench cell " << solver << " tau=" << tau_label
                  << " failed: " << e.what() << "\n";
      }
      cells.push_back(cell);
    }
  }

  const std::string summary_path = args.out_dir + "/summary.csv";
  std::ofstream out(summary_path);
  require_input(out.good(), "cannot open '" + summary_path + "'");
  out << "solver,tau,iter,time_s,res,rel,snr\n";
  for (const BenchCell& c : cells) {
    out << c.solver << ',' << fmt_double(c.tau) << ',' << c.iter << ','
        << fmt_double(c.time_s) << ',' << fmt_double(c.res) << ','
        << fmt_double(c.rel) << ',' << fmt_double(c.snr) << '\n';
  }
  require_input(out.good(), "write failed for '" + summary_path + "'");

  RunManifest m = base_manifest("bench", args);
  m.problem = family + ":" + scale;
  m.solvers = solvers;
  m.scale = scale;
  write_manifest(args.out_dir + "/manifest.txt", m);

  int failed = 0;
  for (const BenchCell& c : cells)
    if (!c.ok) ++failed;
  std::cout << "bench: " << cells.size() << " cells, " << failed
            << " failed; summary at " << summary_path << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// dynamics

int cmd_dynamics(const CommonArgs& args, const std::string& problem_path,
                 const std::string& certificate_path, bool start_at_cert) {
  const ProblemSpec p = load_problem(problem_path);
  const ConfigMap conf = load_config_or_empty(args.config_path);
  DynamicConfig cfg = build_dynamic_config(conf);
  std::optional<SaddleCertificate> cert;
  if (!certificate_path.empty()) cert = load_certificate(certificate_path);
  cfg.certificate = cert;
  require_input(!start_at_cert || cert.has_value(),
                "--start-at-certificate needs --certificate FILE");

  DynamicState init;
  init.t = cfg.t0;
  if (start_at_cert) {
    init.x = cert->x_star;
    init.lam = cert->lambda_star;
  } else {
    init.x = Vector::Zero(p.n());
    init.lam = Vector::Zero(p.m());
  }
  init.v = Vector::Zero(p.n());

  for (const std::string& note : cfg.hypothesis_notes())
    std::cerr << "note: " << note << "\n";

  const Trajectory traj = integrate(p, cfg, init);

  ensure_dir(args.out_dir);
  write_trajectory_csv(args.out_dir + "/trajectory.csv", traj);

  // Slope report: feasibility decay fit over the tail t >= 10*t0 (power-law
  // scaling predicts an exponent of -(exponent + 2)).
  std::vector<double> ts, feas;
  for (const TrajectoryPoint& pt : traj) {
    ts.push_back(pt.sample.t);
    feas.push_back(pt.sample.feasibility);
  }
  const std::string slopes_path = args.out_dir + "/slopes.txt";
  std::ofstream slopes(slopes_path);
  require_input(slopes.good(), "cannot open '" + slopes_path + "'");
  slopes << "# pdscale dynamics slope report\n";
  slopes << "t_tail_start = " << fmt_double(10.0 * cfg.t0) << "\n";
  if (!cfg.beta_fn)
    slopes << "expected_feasibility_exponent = "
           << fmt_double(-(cfg.power_law.exponent + 2.0)) << "\n";
  try {
    const RateFit fit =
        rate_slope(ts, feas, std::max(10.0 * cfg.t0, 1.0), cfg.t_end);
    slopes << "feasibility_slope = " << fmt_double(fit.slope) << "\n";
    slopes << "points_used = " << fit.used << "\n";
    slopes << "points_dropped = " << fit.dropped << "\n";
  } catch (const std::exception& e) {
    slopes << "feasibility_slope = nan\n";
    slopes << "note = " << e.what() << "\n";
  }
  require_input(slopes.good(), "write failed for '" + slopes_path + "'");

  RunManifest m = base_manifest("dynamics", args);
  m.problem = problem_path;
  m.scale = "-";
  write_manifest(args.out_dir + "/manifest.txt", m);

  std::cout << "dynamics: " << traj.size() << " samples to t = "
            << fmt_double(cfg.t_end) << "; trajectory at " << args.out_dir
            << "/trajectory.csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pdscale: scaled primal-dual solvers for linearly constrained "
               "convex programs"};
  app.require_subcommand(1);

  CommonArgs args;
  for (int i = 0; i < argc; ++i) args.raw_argv.push_back(argv[i]);

  std::string problem_path, solver, family = "l1l2", scale = "desk";
  std::string certificate_path;
  std::vector<std::string> solvers;
  bool start_at_cert = false;

  auto add_common = [&](CLI::App* sub, bool with_config) {
    if (with_config)
      sub->add_option("--config", args.config_path,
                      "key = value configuration file");
    sub->add_option("--out", args.out_dir, "output directory (default .)");
    sub->add_option("--seed", args.seed, "root seed for generated instances");
    sub->add_flag("--timings", args.timings,
                  "record wall-clock times in CSV outputs (off by default so "
                  "reruns are bitwise identical)");
    sub->add_option("--max-iter", args.ov.max_iter,
                    "override the outer iteration cap");
    sub->add_option("--stop-res", args.ov.stop_res,
                    "override the feasibility stopping threshold");
  };

  CLI::App* sc_solve =
      app.add_subcommand("solve", "run one solver on a problem file");
  sc_solve->add_option("--problem", problem_path, "problem file")->required();
  sc_solve->add_option("--solver", solver,
                       std::string("solver name (") + kSolverNames + ")")
      ->required();
  sc_solve->add_option("--certificate", certificate_path,
                       "saddle-point file enabling the gap trace column");
  add_common(sc_solve, true);

  CLI::App* sc_bench = app.add_subcommand(
      "bench", "run solvers on a seeded experiment family");
  sc_bench->add_option("--family", family, "l1l2 or qp")->required();
  sc_bench->add_option("--scale", scale, "desk (default) or paper");
  sc_bench
      ->add_option("--solver", solvers,
                   std::string("solver name, repeatable (") + kSolverNames +
                       ")")
      ->required();
  add_common(sc_bench, false);

  CLI::App* sc_dyn = app.add_subcommand(
      "dynamics", "integrate the inertial primal-dual dynamic");
  sc_dyn->add_option("--problem", problem_path, "problem file (smooth)")
      ->required();
  sc_dyn->add_option("--certificate", certificate_path,
                     "saddle-point file enabling gap/energy columns");
  sc_dyn->add_flag("--start-at-certificate", start_at_cert,
                   "start the trajectory at the certificate's saddle point");
  add_common(sc_dyn, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (sc_solve->parsed())
      return cmd_solve(args, problem_path, solver, certificate_path);
    if (sc_bench->parsed()) return cmd_bench(args, family, scale, solvers);
    if (sc_dyn->parsed())
      return cmd_dynamics(args, problem_path, certificate_path,
                          start_at_cert);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
