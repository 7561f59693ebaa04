// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
#include "pdscale/problem.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <vector>

#include "pdscale/errors.hpp"
#include "pdscale/inner.hpp"
#include "pdscale/prox.hpp"

namespace pdscale {

double QuadraticForm::value(const Vector& x) const {
  if (Q.size() == 0 && q.size() == 0) return c0;  // dimension-free zero form
  require_input(x.size() == q.size(),
                "QuadraticForm::value: x has dimension " +
                    std::to_string(x.size()) + ", form has " +
                    std::to_string(q.size()));
  return 0.5 * x.dot(Q * x) + q.dot(x) + c0;
}

Vector QuadraticForm::gradient(const Vector& x) const {
  if (Q.size() == 0 && q.size() == 0) return Vector::Zero(x.size());
  require_input(x.size() == q.size(),
                "QuadraticForm::gradient: x has dimension " +
                    std::to_string(x.size()) + ", form has " +
                    std::to_string(q.size()));
  return Q * x + q;
}

SmoothOracle make_quadratic_smooth(QuadraticForm form) {
  if (form.Q.size() > 0) {
    require_input(form.Q.rows() == form.Q.cols() &&
                      form.Q.rows() == form.q.size(),
                  "make_quadratic_smooth: inconsistent Q/q dimensions");
    require_input(all_finite(form.Q) && all_finite(form.q),
                  "make_quadratic_smooth: non-finite coefficients");
    const double scale = std::max(1.0, form.Q.cwiseAbs().maxCoeff());
    require_input(
        (form.Q - form.Q.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
        "make_quadratic_smooth: Q is not symmetric");
  }
  SmoothOracle s;
  s.lipschitz = form.Q.size() > 0 ? spectral_norm(form.Q) : 0.0;
  auto shared = std::make_shared<QuadraticForm>(std::move(form));
  s.value = [shared](const Vector& x) { return shared->value(x); };
  s.gradient = [shared](const Vector& x) { return shared->gradient(x); };
  s.quadratic = *shared;
  return s;
}

SmoothOracle make_zero_smooth() {
  SmoothOracle s;
  s.value = [](const Vector&) { return 0.0; };
  s.gradient = [](const Vector& x) { return Vector::Zero(x.size()); };
  s.lipschitz = 0.0;
  s.quadratic = QuadraticForm{};  // zero form
  return s;
}

LinearConstraint::LinearConstraint(Matrix a, Vector rhs)
    : A(std::move(a)), b(std::move(rhs)) {
  require_input(A.rows() >= 1 && A.cols() >= 1,
                "LinearConstraint: A must have at least one row and column");
  require_input(b.size() == A.rows(),
                "LinearConstraint: b has dimension " + std::to_string(b.size()) +
                    ", A has " + std::to_string(A.rows()) + " rows");
  require_input(all_finite(A), "LinearConstraint: A has non-finite entries");
  require_input(all_finite(b), "LinearConstraint: b has non-finite entries");
}

Vector LinearConstraint::residual(const Vector& x) const {
  require_input(x.size() == A.cols(),
                "LinearConstraint::residual: x has dimension " +
                    std::to_string(x.size()) + ", A has " +
                    std::to_string(A.cols()) + " columns");
  return A * x - b;
}

double Objective::value(const Vector& x) const {
  const double v1 = f1.value(x);
  if (!std::isfinite(v1)) return v1;  // indicator outside its domain
  return composite() ? v1 + f2->value(x) : v1;
}

ProblemSpec ProblemSpec::prox_problem(LinearConstraint c, ProxOracle f) {
  require_input(static_cast<bool>(f.value) && static_cast<bool>(f.prox),
                "ProblemSpec: prox oracle must provide value and prox");
  return ProblemSpec{std::move(c), Objective{std::move(f), std::nullopt}};
}

ProblemSpec ProblemSpec::composite_problem(LinearConstraint c, ProxOracle f1,
                                           SmoothOracle f2) {
  require_input(static_cast<bool>(f1.value) && static_cast<bool>(f1.prox),
                "ProblemSpec: prox oracle must provide value and prox");
  require_input(static_cast<bool>(f2.value) && static_cast<bool>(f2.gradient),
                "ProblemSpec: smooth oracle must provide value and gradient");
  require_input(std::isfinite(f2.lipschitz) && f2.lipschitz >= 0.0,
                "ProblemSpec: smooth Lipschitz bound must be finite and >= 0");
  return ProblemSpec{std::move(c),
                     Objective{std::move(f1), std::move(f2)}};
}

const SmoothOracle* ProblemSpec::smooth_full() const {
  if (objective.composite() && objective.f1.is_zero) return &*objective.f2;
  return nullptr;
}

double lagrangian(const ProblemSpec& p, const Vector& x, const Vector& lam) {
  require_input(x.size() == p.n(), "lagrangian: x has dimension " +
                                       std::to_string(x.size()) +
                                       ", problem has n = " +
                                       std::to_string(p.n()));
  require_input(lam.size() == p.m(), "lagrangian: lam has dimension " +
                                         std::to_string(lam.size()) +
                                         ", problem has m = " +
                                         std::to_string(p.m()));
  require_input(all_finite(x), "lagrangian: x has non-finite entries");
  require_input(all_finite(lam), "lagrangian: lam has non-finite entries");
  const double f = p.objective_value(x);
  if (!std::isfinite(f)) return f;
  return f + lam.dot(p.constraint.residual(x));
}

KktResidual kkt_residual(const ProblemSpec& p, const Vector& x,
                         const Vector& lam, double gamma_probe) {
  require_input(std::isfinite(gamma_probe) && gamma_probe > 0.0,
                "kkt_residual: gamma_probe must be finite and > 0");
  require_input(x.size() == p.n() && all_finite(x),
                "kkt_residual: x invalid (dimension or non-finite)");
  require_input(lam.size() == p.m() && all_finite(lam),
                "kkt_residual: lam invalid (dimension or non-finite)");
  KktResidual r;
  r.primal = p.constraint.residual(x).norm();
  Vector drift = p.constraint.A.transpose() * lam;
  if (p.objective.composite()) drift += p.objective.f2->gradient(x);
  const Vector probe = p.objective.f1.prox(x - gamma_probe * drift, gamma_probe);
  r.dual = (x - probe).norm() / gamma_probe;
  return r;
}

bool check_certificate(const ProblemSpec& p, const SaddleCertificate& cert,
                       double tol, double gamma_probe) {
  const KktResidual r =
      kkt_residual(p, cert.x_star, cert.lambda_star, gamma_probe);
  return r.primal <= tol && r.dual <= tol;
}

// ---------------------------------------------------------------------------
// Text serialization.  Layout (all values %.17g, space separated):
//   pdscale-problem v1
//   dims <m> <n>
//   objective prox {zero|l1|nonneg|elastic_net <tau>}
//     | objective composite {zero|l1|nonneg|elastic_net <tau>} quadratic
//   A                      (marker line, then m rows of n values)
//   b                      (marker line, then one row of m values)
//   [Q / q / c0 blocks when composite]
//   end
// ---------------------------------------------------------------------------

namespace {

class LineReader {
 public:
  explicit LineReader(const std::string& path) : path_(path), in_(path) {
    require_input(in_.good(), "load_problem: cannot open '" + path + "'");
  }

  std::string next(const char* what) {
    std::string line;
    while (std::getline(in_, line)) {
      ++lineno_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      return line;
    }
    throw InvalidInputError(path_ + ": unexpected end of file, expected " +
                            std::string(what));
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw InvalidInputError(path_ + ":" + std::to_string(lineno_) + ": " + msg);
  }

  int lineno() const { return lineno_; }

 private:
  std::string path_;
  std::ifstream in_;
  int lineno_ = 0;
};

Vector parse_row(LineReader& r, const std::string& line, Index expect) {
  std::istringstream ss(line);
  Vector v(expect);
  for (Index i = 0; i < expect; ++i) {
    if (!(ss >> v[i]))
      r.fail("expected " + std::to_string(expect) + " numeric fields");
  }
  double extra;
  if (ss >> extra) r.fail("trailing fields beyond " + std::to_string(expect));
  return v;
}

void write_row(std::ofstream& out, const Vector& v) {
  for (Index i = 0; i < v.size(); ++i) {
    if (i) out << ' ';
    out << fmt_double(v[i]);
  }
  out << '\n';
}

std::string separable_token(const SeparableSpec& s) {
  switch (s.kind) {
    case SeparableSpec::Kind::Zero:
      return "zero";
    case SeparableSpec::Kind::L1:
      return "l1";
    case SeparableSpec::Kind::ElasticNet:
      return "elastic_net " + fmt_double(s.tau);
    case SeparableSpec::Kind::Nonneg:
      return "nonneg";
  }
  return "zero";
}

SeparableSpec parse_separable(LineReader& r, std::istringstream& ss) {
  std::string kind;
  if (!(ss >> kind)) r.fail("missing objective kind");
  SeparableSpec s;
  if (kind == "zero") {
    s.kind = SeparableSpec::Kind::Zero;
  } else if (kind == "l1") {
    s.kind = SeparableSpec::Kind::L1;
  } else if (kind == "nonneg") {
    s.kind = SeparableSpec::Kind::Nonneg;
  } else if (kind == "elastic_net") {
    s.kind = SeparableSpec::Kind::ElasticNet;
    if (!(ss >> s.tau)) r.fail("elastic_net requires a tau value");
    if (!(s.tau >= 0.0)) r.fail("elastic_net tau must be >= 0");
  } else {
    r.fail("unknown objective kind '" + kind + "'");
  }
  return s;
}

}  // namespace

void save_problem(const ProblemSpec& p, const std::string& path) {
  require_input(p.objective.f1.separable.has_value(),
                "save_problem: objective is not serializable (f1 lacks a "
                "separable tag)");
  const bool composite = p.objective.composite();
  if (composite)
    require_input(p.objective.f2->quadratic.has_value(),
                  "save_problem: composite objective is not serializable (f2 "
                  "is not a known quadratic)");
  std::ofstream out(path);
  require_input(out.good(), "save_problem: cannot open '" + path + "'");
  out << "pdscale-problem v1\n";
  out << "dims " << p.m() << ' ' << p.n() << '\n';
  out << "objective " << (composite ? "composite " : "prox ")
      << separable_token(*p.objective.f1.separable)
      << (composite ? " quadratic" : "") << '\n';
  out << "A\n";
  for (Index i = 0; i < p.m(); ++i)
    write_row(out, p.constraint.A.row(i).transpose());
  out << "b\n";
  write_row(out, p.constraint.b);
  if (composite) {
    const QuadraticForm& f = *p.objective.f2->quadratic;
    Matrix q_mat = f.Q.size() > 0 ? f.Q : Matrix::Zero(p.n(), p.n());
    Vector q_vec = f.q.size() > 0 ? f.q : Vector::Zero(p.n());
    out << "Q\n";
    for (Index i = 0; i < p.n(); ++i) write_row(out, q_mat.row(i).transpose());
    out << "q\n";
    write_row(out, q_vec);
    out << "c0 " << fmt_double(f.c0) << '\n';
  }
  out << "end\n";
  require_input(out.good(), "save_problem: write failed for '" + path + "'");
}

ProblemSpec load_problem(const std::string& path) {
  LineReader r(path);
  if (r.next("header") != "pdscale-problem v1")
    r.fail("expected header 'pdscale-problem v1'");

  std::istringstream dims(r.next("dims"));
  std::string tok;
  Index m = 0, n = 0;
  if (!(dims >> tok >> m >> n) || tok != "dims" || m < 1 || n < 1)
    r.fail("expected 'dims <m> <n>' with m, n >= 1");

  std::istringstream obj(r.next("objective"));
  std::string objword, family;
  if (!(obj >> objword >> family) || objword != "objective")
    r.fail("expected 'objective prox|composite ...'");
  bool composite = false;
  if (family == "composite")
    composite = true;
  else if (family != "prox")
    r.fail("objective family must be 'prox' or 'composite'");
  const SeparableSpec sep = parse_separable(r, obj);
  if (composite) {
    std::string quadword;
    if (!(obj >> quadword) || quadword != "quadratic")
      r.fail("composite objective must end with 'quadratic'");
  }

  if (r.next("A marker") != "A") r.fail("expected marker line 'A'");
  Matrix a(m, n);
  for (Index i = 0; i < m; ++i)
    a.row(i) = parse_row(r, r.next("A row"), n).transpose();
  if (r.next("b marker") != "b") r.fail("expected marker line 'b'");
  Vector b = parse_row(r, r.next("b row"), m);

  ProxOracle f1 = make_prox(sep);

  if (!composite) {
    if (r.next("end") != "end") r.fail("expected trailer 'end'");
    return ProblemSpec::prox_problem(LinearConstraint(a, b), std::move(f1));
  }

  if (r.next("Q marker") != "Q") r.fail("expected marker line 'Q'");
  Matrix q_mat(n, n);
  for (Index i = 0; i < n; ++i)
    q_mat.row(i) = parse_row(r, r.next("Q row"), n).transpose();
  if (r.next("q marker") != "q") r.fail("expected marker line 'q'");
  Vector q_vec = parse_row(r, r.next("q row"), n);
  std::istringstream c0line(r.next("c0"));
  double c0 = 0.0;
  if (!(c0line >> tok >> c0) || tok != "c0") r.fail("expected 'c0 <value>'");
  if (r.next("end") != "end") r.fail("expected trailer 'end'");

  return ProblemSpec::composite_problem(
      LinearConstraint(a, b), std::move(f1),
      make_quadratic_smooth(QuadraticForm{std::move(q_mat), std::move(q_vec),
                                          c0}));
}

void save_certificate(const SaddleCertificate& cert, const std::string& path) {
  std::ofstream out(path);
  require_input(out.good(), "save_certificate: cannot open '" + path + "'");
  out << "pdscale-certificate v1\n";
  out << "x_star\n";
  write_row(out, cert.x_star);
  out << "lambda_star\n";
  write_row(out, cert.lambda_star);
  out << "end\n";
}

SaddleCertificate load_certificate(const std::string& path) {
  LineReader r(path);
  if (r.next("header") != "pdscale-certificate v1")
    r.fail("expected header 'pdscale-certificate v1'");
  if (r.next("x_star marker") != "x_star") r.fail("expected 'x_star'");
  std::istringstream xs(r.next("x_star row"));
  std::vector<double> xv;
  double val;
  while (xs >> val) xv.push_back(val);
  if (xv.empty()) r.fail("empty x_star row");
  if (r.next("lambda_star marker") != "lambda_star")
    r.fail("expected 'lambda_star'");
  std::istringstream ls(r.next("lambda_star row"));
  std::vector<double> lv;
  while (ls >> val) lv.push_back(val);
  if (lv.empty()) r.fail("empty lambda_star row");
  if (r.next("end") != "end") r.fail("expected trailer 'end'");
  SaddleCertificate c;
  c.x_star = Eigen::Map<Vector>(xv.data(), static_cast<Index>(xv.size()));
  c.lambda_star = Eigen::Map<Vector>(lv.data(), static_cast<Index>(lv.size()));
  return c;
}

}  // namespace pdscale
