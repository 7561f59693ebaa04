// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
#include "pdscale/prox.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "pdscale/errors.hpp"

namespace pdscale {

namespace {

void check_gamma(double gamma, const char* who) {
  require_input(std::isfinite(gamma) && gamma >= 0.0,
                std::string(who) + ": gamma must be finite and >= 0, got " +
                    fmt_double(gamma));
}

}  // namespace

double soft_threshold(double x, double gamma) {
  check_gamma(gamma, "soft_threshold");
  if (x > gamma) return x - gamma;
  if (x < -gamma) return x + gamma;
  return 0.0;
}

Vector soft_threshold(const Vector& x, double gamma) {
  check_gamma(gamma, "soft_threshold");
  Vector out(x.size());
  for (Index i = 0; i < x.size(); ++i) out[i] = soft_threshold(x[i], gamma);
  return out;
}

Vector prox_elastic_net(const Vector& x, double gamma, double tau) {
  check_gamma(gamma, "prox_elastic_net");
  require_input(std::isfinite(tau) && tau >= 0.0,
                "prox_elastic_net: tau must be finite and >= 0, got " +
                    fmt_double(tau));
  return soft_threshold(x, gamma) / (1.0 + gamma * tau);
}

Vector project_nonneg(const Vector& x) { return x.cwiseMax(0.0); }

ProxOracle make_zero_prox() {
  ProxOracle o;
  o.value = [](const Vector&) { return 0.0; };
  o.prox = [](const Vector& x, double gamma) {
    check_gamma(gamma, "zero prox");
    return x;
  };
  o.is_zero = true;
  o.separable = SeparableSpec{SeparableSpec::Kind::Zero, 0.0};
  return o;
}

ProxOracle make_l1_prox() {
  ProxOracle o;
  o.value = [](const Vector& x) { return x.lpNorm<1>(); };
  o.prox = [](const Vector& x, double gamma) {
    return soft_threshold(x, gamma);
  };
  o.separable = SeparableSpec{SeparableSpec::Kind::L1, 0.0};
  return o;
}

ProxOracle make_elastic_net_prox(double tau) {
  require_input(std::isfinite(tau) && tau >= 0.0,
                "make_elastic_net_prox: tau must be finite and >= 0");
  ProxOracle o;
  o.value = [tau](const Vector& x) {
    return x.lpNorm<1>() + 0.5 * tau * x.squaredNorm();
  };
  o.prox = [tau](const Vector& x, double gamma) {
    return prox_elastic_net(x, gamma, tau);
  };
  o.separable = SeparableSpec{SeparableSpec::Kind::ElasticNet, tau};
  return o;
}

ProxOracle make_nonneg_prox() {
  ProxOracle o;
  o.value = [](const Vector& x) {
    return x.minCoeff() >= 0.0 ? 0.0
                               : std::numeric_limits<double>::infinity();
  };
  o.prox = [](const Vector& x, double gamma) {
    check_gamma(gamma, "nonneg prox");
    return project_nonneg(x);
  };
  o.separable = SeparableSpec{SeparableSpec::Kind::Nonneg, 0.0};
  return o;
}

ProxOracle make_prox(const SeparableSpec& spec) {
  switch (spec.kind) {
    case SeparableSpec::Kind::Zero:
      return make_zero_prox();
    case SeparableSpec::Kind::L1:
      return make_l1_prox();
    case SeparableSpec::Kind::ElasticNet:
      return make_elastic_net_prox(spec.tau);
    case SeparableSpec::Kind::Nonneg:
      return make_nonneg_prox();
  }
  return make_zero_prox();
}

ProxOracle make_quadratic_prox(QuadraticForm form) {
  require_input(form.Q.size() > 0 && form.Q.rows() == form.Q.cols() &&
                    form.Q.rows() == form.q.size(),
                "make_quadratic_prox: inconsistent Q/q dimensions");
  auto shared = std::make_shared<QuadraticForm>(std::move(form));
  ProxOracle o;
  o.value = [shared](const Vector& x) { return shared->value(x); };
  // argmin 0.5 u'Qu + q'u + ||u-x||^2/(2 gamma)  =>  (I + gamma Q) u = x - gamma q
  o.prox = [shared](const Vector& x, double gamma) {
    check_gamma(gamma, "quadratic prox");
    if (gamma == 0.0) return x;
    Matrix h = gamma * shared->Q;
    h.diagonal().array() += 1.0;
    return Vector(h.ldlt().solve(x - gamma * shared->q));
  };
  o.quadratic = *shared;
  return o;
}

}  // namespace pdscale
