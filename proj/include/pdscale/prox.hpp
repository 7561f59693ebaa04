// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
#pragma once

#include "pdscale/problem.hpp"

namespace pdscale {

// prox of gamma*|.| : sign(x) * max(|x| - gamma, 0).  gamma >= 0.
double soft_threshold(double x, double gamma);
Vector soft_threshold(const Vector& x, double gamma);

// prox of gamma*(|.|_1 + 0.5*tau*|.|^2) : soft_threshold(x, gamma)/(1+gamma*tau).
Vector prox_elastic_net(const Vector& x, double gamma, double tau);

// Euclidean projection onto the nonnegative orthant.
Vector project_nonneg(const Vector& x);

// Oracle factory for the separable kinds (value + prox + tags).
ProxOracle make_prox(const SeparableSpec& spec);

// Convenience wrappers.
ProxOracle make_zero_prox();
ProxOracle make_l1_prox();
ProxOracle make_elastic_net_prox(double tau);
ProxOracle make_nonneg_prox();

// Prox oracle for a quadratic f (closed form through a dense solve); used by
// tests that need a smooth f with an exact, nontrivial prox.
ProxOracle make_quadratic_prox(QuadraticForm form);

}  // namespace pdscale
