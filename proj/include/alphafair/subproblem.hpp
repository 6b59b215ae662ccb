// Copyright 2026 The alphafair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ALPHAFAIR_SUBPROBLEM_HPP
#define ALPHAFAIR_SUBPROBLEM_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "alphafair/bounds.hpp"
#include "alphafair/instance.hpp"

namespace alphafair {

/// Proximal step of the negated fairness utility:
/// argmin_x { -w x^(1-a)/(1-a) + (x - v)^2 / (2 lambda) }   (log term at a=1).
///
/// The first-order condition is x^(a+1) - v x^a = lambda w, which has a
/// unique positive root for every real v. Alpha = 1 uses the closed form;
/// otherwise a safeguarded Newton iteration drives the optimality residual
/// below 1e-15 * max(lambda, 1), or collapses its bracket to a few ulps when
/// rounding noise in the residual makes that unreachable.
inline double prox_fair(double w, double alpha, double lambda, double v) {
  if (alpha == 1.0) {
    const double disc = std::sqrt(v * v + 4.0 * lambda * w);
    // conjugate form for v < 0 avoids cancellation
    return v > 0.0 ? (v + disc) * 0.5 : 2.0 * lambda * w / (disc - v);
  }

  // phi(x) = x - v - lambda w x^(-a): increasing and concave on (0, inf)
  const auto phi = [&](double x) { return x - v - lambda * w * std::pow(x, -alpha); };
  const double tol = 1e-15 * std::max(lambda, 1.0);

  double hi = std::max(v, 0.0) + std::pow(lambda * w, 1.0 / (alpha + 1.0)) + 1.0;
  double lo = hi * 0.5;
  while (phi(lo) > 0.0) {
    hi = lo;
    lo *= 0.5;
  }

  // Newton from the right edge converges monotonically for concave phi;
  // bisect whenever a step leaves the bracket.
  double x = hi;
  for (int iter = 0; iter < 200; ++iter) {
    const double fx = phi(x);
    if (std::abs(fx) <= tol) return x;
    if (fx > 0.0)
      hi = x;
    else
      lo = x;
    const double dfx = 1.0 + alpha * lambda * w * std::pow(x, -alpha - 1.0);
    double next = x - fx / dfx;
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return next;
    x = next;
  }
  return x;
}

/// Euclidean projection onto { y : y_r >= floor_r, sum y_r <= capacity }.
///
/// Shifts by the floors, clamps at zero, and if the residual budget is
/// exceeded applies the sort-and-threshold simplex rule. The floors must fit
/// under the capacity (they come from a feasible lower bound).
inline std::vector<double> project_capped_simplex(std::span<const double> values,
                                                  std::span<const double> floors,
                                                  double capacity) {
  const std::size_t n = values.size();
  double budget = capacity;
  for (double f : floors) budget -= f;
  if (budget < -1e-9)
    throw InfeasibleFloorsError(
        "projection floors exceed capacity by " + std::to_string(-budget));
  budget = std::max(budget, 0.0);

  std::vector<double> shifted(n);
  double positive_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    shifted[i] = std::max(values[i] - floors[i], 0.0);
    positive_sum += shifted[i];
  }
  if (positive_sum <= budget) {
    for (std::size_t i = 0; i < n; ++i) shifted[i] += floors[i];
    return shifted;
  }

  // saturated case: project the shifted point onto {z >= 0, sum z = budget}
  std::vector<double> sorted(values.begin(), values.end());
  for (std::size_t i = 0; i < n; ++i) sorted[i] -= floors[i];
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double threshold = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    cumulative += sorted[k];
    const double candidate = (cumulative - budget) / static_cast<double>(k + 1);
    if (k + 1 == n || sorted[k + 1] <= candidate) {
      threshold = candidate;
      break;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    shifted[i] = std::max(values[i] - floors[i] - threshold, 0.0) + floors[i];
  return shifted;
}

/// Reciprocal-penalty initialization lambda0 = 1 / sqrt(sigma * L) together
/// with the moduli it is built from.
struct PenaltyParams {
  double lambda0 = 0.0;
  double sigma = 0.0;      // strong convexity modulus of the negated utility
  double lipschitz = 0.0;  // gradient Lipschitz modulus on { x >= d }
};

/// Curvature moduli of -f over the box d <= x <= b: the negated utility has
/// second derivative a w x^(-a-1), so sigma is attained at the utopia point
/// and L at the lower bound.
inline PenaltyParams penalty_from_bound(const Instance& inst, double alpha,
                                        const BoundVector& bound) {
  require_positive_alpha(alpha);
  if (bound.values.size() != inst.request_count())
    throw std::invalid_argument("penalty_from_bound: bound index set mismatch");
  for (std::size_t r = 0; r < bound.values.size(); ++r)
    if (!(bound.values[r] > 0.0))
      throw std::invalid_argument("penalty_from_bound: bound must be strictly positive (request '" +
                                  inst.request(r).id + "')");

  const std::vector<double> b = utopia(inst);
  PenaltyParams params;
  params.sigma = std::numeric_limits<double>::infinity();
  params.lipschitz = 0.0;
  for (std::size_t r = 0; r < inst.request_count(); ++r) {
    const double w = inst.weight(r);
    params.sigma = std::min(params.sigma, alpha * w * std::pow(b[r], -alpha - 1.0));
    params.lipschitz =
        std::max(params.lipschitz, alpha * w * std::pow(bound.values[r], -alpha - 1.0));
  }
  params.lambda0 = 1.0 / std::sqrt(params.sigma * params.lipschitz);
  return params;
}

/// Residual-balancing configuration: every `interval` iterations, adjust by
/// tau whenever one residual exceeds mu times the other. The spacing keeps
/// the uninformative cold-start transient from rewriting a deliberate
/// initialization; at interval 1 the test runs on every iteration.
struct RbConfig {
  double mu = 10.0;
  double tau = 2.0;
  int interval = 50;
  bool enabled = true;
};

/// One residual-balancing update of the reciprocal penalty. A dominating
/// primal residual calls for a larger penalty, i.e. a smaller lambda.
inline double residual_balance(double lambda, double primal_norm,
                               double dual_norm, const RbConfig& rb) {
  if (primal_norm > rb.mu * dual_norm) return lambda / rb.tau;
  if (dual_norm > rb.mu * primal_norm) return lambda * rb.tau;
  return lambda;
}

}  // namespace alphafair

#endif  // ALPHAFAIR_SUBPROBLEM_HPP
