// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
#include "pdscale/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pdscale/errors.hpp"
#include "pdscale/prox.hpp"
#include "pdscale/rng.hpp"

namespace pdscale {

namespace {

// Substream ids; fixed so that adding draws to one stream never shifts
// another (documented next to the Rng class).
enum L1L2Stream : std::uint64_t {
  kL1L2Matrix = 0,
  kL1L2Support = 1,
  kL1L2Values = 2,
  kL1L2Noise = 3,
};
enum QpStream : std::uint64_t {
  kQpH = 0,
  kQpLinear = 1,
  kQpB = 2,
  kQpFeasible = 3,
};

// Row-major fill order is part of the reproducibility contract.
Matrix gaussian_matrix(Rng& rng, Index rows, Index cols) {
  Matrix a(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) a(i, j) = rng.normal();
  return a;
}

Vector gaussian_vector(Rng& rng, Index size) {
  Vector v(size);
  for (Index i = 0; i < size; ++i) v[i] = rng.normal();
  return v;
}

}  // namespace

void L1L2Spec::validate() const {
  require_input(m >= 1, "L1L2Spec: m must be >= 1");
  require_input(m <= n, "L1L2Spec: requires m <= n (wide constraint matrix)");
  require_input(std::isfinite(tau) && tau >= 0.0,
                "L1L2Spec: tau must be finite and >= 0");
  require_input(std::isfinite(nonzero_fraction) && nonzero_fraction >= 0.0 &&
                    nonzero_fraction <= 1.0,
                "L1L2Spec: nonzero_fraction must be in [0, 1]");
  require_input(std::isfinite(noise_norm) && noise_norm >= 0.0,
                "L1L2Spec: noise_norm must be finite and >= 0");
}

GeneratedL1L2 gen_l1l2(const L1L2Spec& spec) {
  spec.validate();
  const Rng root(spec.seed);

  Rng mat_rng = root.stream(kL1L2Matrix);
  Matrix a = gaussian_matrix(mat_rng, spec.m, spec.n);

  // Support: partial Fisher-Yates picks round(fraction*n) distinct indices;
  // values are assigned in increasing index order.
  const Index nnz = static_cast<Index>(
      std::llround(spec.nonzero_fraction * static_cast<double>(spec.n)));
  Rng support_rng = root.stream(kL1L2Support);
  std::vector<Index> idx(static_cast<std::size_t>(spec.n));
  std::iota(idx.begin(), idx.end(), Index{0});
  for (Index i = 0; i < nnz; ++i) {
    const Index j =
        i + static_cast<Index>(support_rng.integer(
                static_cast<std::uint64_t>(spec.n - i)));
    std::swap(idx[static_cast<std::size_t>(i)],
              idx[static_cast<std::size_t>(j)]);
  }
  std::sort(idx.begin(), idx.begin() + nnz);

  Rng value_rng = root.stream(kL1L2Values);
  Vector x_star = Vector::Zero(spec.n);
  for (Index i = 0; i < nnz; ++i)
    x_star[idx[static_cast<std::size_t>(i)]] = 2.0 * value_rng.normal();

  Vector omega = Vector::Zero(spec.m);
  if (spec.noise_norm > 0.0) {
    Rng noise_rng = root.stream(kL1L2Noise);
    omega = gaussian_vector(noise_rng, spec.m);
    const double nn = omega.norm();
    require_numeric(nn > 0.0, "gen_l1l2: degenerate zero noise draw");
    omega *= spec.noise_norm / nn;
  }

  Vector b = a * x_star + omega;
  ProblemSpec problem = ProblemSpec::prox_problem(
      LinearConstraint{std::move(a), std::move(b)},
      make_elastic_net_prox(spec.tau));
  return GeneratedL1L2{std::move(problem), std::move(x_star)};
}

void QpSpec::validate() const {
  require_input(m >= 1, "QpSpec: m must be >= 1");
  require_input(n > m, "QpSpec: requires n > m (A = [B, Id] needs n-m > 0)");
}

GeneratedQp gen_qp(const QpSpec& spec) {
  spec.validate();
  const Rng root(spec.seed);

  Rng h_rng = root.stream(kQpH);
  const Matrix h = gaussian_matrix(h_rng, spec.n, spec.n);
  const Matrix s = h.transpose() * h;
  Matrix q_mat = s + s.transpose();  // = 2 H'H, exactly symmetric in floats

  Rng q_rng = root.stream(kQpLinear);
  Vector q_vec = gaussian_vector(q_rng, spec.n);

  Rng b_rng = root.stream(kQpB);
  Matrix a(spec.m, spec.n);
  a.leftCols(spec.n - spec.m) = gaussian_matrix(b_rng, spec.m, spec.n - spec.m);
  a.rightCols(spec.m) = Matrix::Identity(spec.m, spec.m);

  Rng z_rng = root.stream(kQpFeasible);
  Vector z = gaussian_vector(z_rng, spec.n).cwiseAbs();
  Vector b = a * z;

  QuadraticForm form;
  form.Q = std::move(q_mat);
  form.q = std::move(q_vec);
  SmoothOracle f2 = make_quadratic_smooth(std::move(form));
  const double q_norm = f2.lipschitz;

  ProblemSpec problem = ProblemSpec::composite_problem(
      LinearConstraint{std::move(a), std::move(b)}, make_nonneg_prox(),
      std::move(f2));
  return GeneratedQp{std::move(problem), q_norm};
}

MetricsReport compute_metrics(const Vector& x, const Vector& ground_truth,
                              const LinearConstraint& constraint) {
  require_input(x.size() == ground_truth.size(),
                "compute_metrics: x and ground truth dimensions differ");
  require_input(x.size() == constraint.A.cols(),
                "compute_metrics: x does not match constraint width");
  require_input(all_finite(x), "compute_metrics: x has non-finite entries");
  const double truth_norm = ground_truth.norm();
  require_input(truth_norm > 0.0, "compute_metrics: zero-norm ground truth");

  MetricsReport r;
  const double err = (x - ground_truth).norm();
  r.rel = err / truth_norm;
  r.res = constraint.residual(x).norm();
  const double mean =
      ground_truth.sum() / static_cast<double>(ground_truth.size());
  const double centered =
      (ground_truth.array() - mean).matrix().squaredNorm();
  r.snr = std::log10(centered / (err * err));
  r.snr_saturated = !std::isfinite(r.snr);
  return r;
}

RateFit rate_slope(const std::vector<double>& ks,
                   const std::vector<double>& values, double k_min,
                   double k_max) {
  require_input(ks.size() == values.size(),
                "rate_slope: ks and values length mismatch");
  require_input(k_min >= 1.0 && k_max > k_min,
                "rate_slope: need k_max > k_min >= 1");
  std::vector<double> lk, lv;
  int dropped = 0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] < k_min || ks[i] > k_max) continue;
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      ++dropped;
      continue;
    }
    lk.push_back(std::log(ks[i]));
    lv.push_back(std::log(values[i]));
  }
  const int used = static_cast<int>(lk.size());
  require_input(used >= 10,
                "rate_slope: fewer than 10 usable points in range (" +
                    std::to_string(used) + " usable, " +
                    std::to_string(dropped) + " dropped)");
  const double mk = std::accumulate(lk.begin(), lk.end(), 0.0) / used;
  const double mv = std::accumulate(lv.begin(), lv.end(), 0.0) / used;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < used; ++i) {
    sxx += (lk[i] - mk) * (lk[i] - mk);
    sxy += (lk[i] - mk) * (lv[i] - mv);
  }
  require_numeric(sxx > 0.0, "rate_slope: degenerate abscissa (all k equal)");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mv - fit.slope * mk;
  fit.used = used;
  fit.dropped = dropped;
  return fit;
}

RateFit rate_slope(const std::vector<TraceRecord>& trace,
                   TraceQuantity quantity, double k_min, double k_max) {
  std::vector<double> ks, vals;
  ks.reserve(trace.size());
  vals.reserve(trace.size());
  for (const TraceRecord& r : trace) {
    ks.push_back(static_cast<double>(r.k));
    switch (quantity) {
      case TraceQuantity::Objective:
        vals.push_back(r.objective);
        break;
      case TraceQuantity::Feasibility:
        vals.push_back(r.feasibility);
        break;
      case TraceQuantity::LagrangianGap:
        vals.push_back(r.lagrangian_gap);
        break;
      case TraceQuantity::StepNorm:
        vals.push_back(r.step_norm);
        break;
      case TraceQuantity::DualStep:
        vals.push_back(r.dual_step);
        break;
    }
  }
  return rate_slope(ks, vals, k_min, k_max);
}

FipdConfig fipd_l1l2_preset(Index m, Index n, double theta) {
  require_input(m >= 3, "fipd_l1l2_preset: m must be >= 3 (delta = 1/(m-2))");
  require_input(n >= 1, "fipd_l1l2_preset: n must be >= 1");
  require_input(std::isfinite(theta) && theta >= 2.0,
                "fipd_l1l2_preset: theta must be finite and >= 2");
  FipdConfig cfg;
  cfg.alpha = static_cast<double>(m);
  cfg.delta = 1.0 / (static_cast<double>(m) - 2.0);
  cfg.theta = theta;
  cfg.beta0 = 0.05;
  cfg.schedule.mode = BetaSchedule::Mode::Recurrence;
  cfg.metric = Metric::scaled_identity(1.0 / static_cast<double>(n));
  // Decaying inner tolerance: the convergence theory needs the subproblem
  // perturbations to be summable against k, which a constant relative-change
  // threshold does not give (and with a constant threshold the desk-scale
  // runs take ~2-3x more outer iterations).
  cfg.inner.tol0 = 1e-10;
  cfg.inner.decay = 2.1;
  cfg.inner.max_iter = 300;
  cfg.stop_res = 1e-4;
  cfg.max_outer = 200;
  return cfg;
}

IlpdConfig ilpd_qp_preset(double q_norm) {
  require_input(std::isfinite(q_norm) && q_norm > 0.0,
                "ilpd_qp_preset: q_norm must be finite and > 0");
  IlpdConfig cfg;
  cfg.alpha = 20.0;
  cfg.delta = 1.0 / 18.0;
  // beta = 1 with M = L*Id satisfies the metric condition M >= beta*L*Id.
  // Scaling beta up to L instead (with M = L^2*Id) looks equivalent on paper,
  // but the subproblem perturbation is beta times the inner solver's gradient
  // residual, whose attainable floor in double precision already grows like
  // beta * k^2; at beta = ||Q|| the summability requirement on the
  // perturbations becomes unreachable and the objective stalls.
  cfg.beta = 1.0;
  cfg.metric = Metric::scaled_identity(cfg.beta * q_norm);
  cfg.inner.tol0 = 1e-8;
  cfg.inner.decay = 2.1;
  cfg.inner.max_iter = 300;
  cfg.stop_res = 1e-8;
  cfg.max_outer = 500;
  return cfg;
}

}  // namespace pdscale
