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

#ifndef ALPHAFAIR_ORACLE_HPP
#define ALPHAFAIR_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "alphafair/bounds.hpp"
#include "alphafair/instance.hpp"

// High-accuracy reference solutions and optimality certificates. Everything
// here is deliberately independent of the ADMM code path: the reference
// solver runs dual coordinate ascent with per-link bisection, so agreement
// between the two is a genuine cross-check.

namespace alphafair {

namespace detail {

/// x(nu) = (w / nu)^(1/alpha), the stationarity-optimal allocation under an
/// aggregated route dual nu.
inline double dual_allocation(double w, double nu, double alpha) {
  if (!(nu > 0.0)) return std::numeric_limits<double>::infinity();
  if (alpha == 1.0) return w / nu;
  if (alpha == 2.0) return std::sqrt(w / nu);
  if (alpha == 0.5) {
    const double t = w / nu;
    return t * t;
  }
  if (alpha == 4.0) return std::sqrt(std::sqrt(w / nu));
  return std::pow(w / nu, 1.0 / alpha);
}

}  // namespace detail

/// Closed single-link case: x_r = (w_r / nu)^(1/alpha) with nu > 0 the
/// unique root of sum_r x_r(nu) = capacity, found by bisection.
inline std::vector<double> waterfill_single_link(std::span<const double> weights,
                                                 double alpha, double capacity) {
  require_positive_alpha(alpha);
  if (!(capacity > 0.0) || !std::isfinite(capacity))
    throw UnboundedError("water-filling requires a finite positive capacity");
  for (double w : weights)
    if (!(w > 0.0)) throw std::invalid_argument("water-filling: weights must be positive");

  const auto filled = [&](double nu) {
    double total = 0.0;
    for (double w : weights) total += detail::dual_allocation(w, nu, alpha);
    return total;
  };

  double lo = 1.0;
  double hi = 1.0;
  while (filled(lo) < capacity) lo *= 0.5;   // smaller nu fills more
  while (filled(hi) > capacity) hi *= 2.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-13 * lo; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (filled(mid) > capacity)
      lo = mid;
    else
      hi = mid;
  }

  const double nu = 0.5 * (lo + hi);
  std::vector<double> x(weights.size());
  for (std::size_t r = 0; r < x.size(); ++r)
    x[r] = detail::dual_allocation(weights[r], nu, alpha);
  return x;
}

/// Reference solution of the fairness problem by cyclic dual ascent:
/// for each link in turn, re-solve its dual by bisection so that the link
/// is either exactly saturated or priced at zero. Terminates when primal
/// feasibility and complementary slackness are both below tolerance.
inline std::vector<double> solve_reference(const Instance& inst, double alpha,
                                           double tolerance = 1e-8,
                                           int max_sweeps = 20000) {
  require_positive_alpha(alpha);
  const std::size_t links = inst.link_count();
  const std::size_t requests = inst.request_count();

  for (std::size_t r = 0; r < requests; ++r) {
    bool bounded = false;
    for (std::size_t j : inst.route(r)) bounded = bounded || std::isfinite(inst.capacity(j));
    if (!bounded)
      throw UnboundedError("no finite-capacity link on the route of request '" +
                           inst.request(r).id + "'; the objective has no maximizer");
  }

  // mu_j ~ marginal utility at a plausible operating point
  std::vector<double> mu(links);
  for (std::size_t j = 0; j < links; ++j) {
    double weight_sum = 0.0;
    for (std::size_t r : inst.link_requests(j)) weight_sum += inst.weight(r);
    mu[j] = std::isfinite(inst.capacity(j))
                ? weight_sum * std::pow(inst.capacity(j), -alpha)
                : 0.0;
  }

  std::vector<double> nu(requests);
  const auto refresh_route_duals = [&] {
    for (std::size_t r = 0; r < requests; ++r) {
      nu[r] = 0.0;
      for (std::size_t j : inst.route(r)) nu[r] += mu[j];
    }
  };

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    refresh_route_duals();
    for (std::size_t j = 0; j < links; ++j) {
      const double cap = inst.capacity(j);
      if (!std::isfinite(cap)) continue;  // never binds; its dual stays zero
      const auto& members = inst.link_requests(j);
      if (members.empty()) continue;

      // load on link j as a function of its own dual, other duals fixed
      const auto load = [&](double own) {
        double total = 0.0;
        for (std::size_t r : members)
          total += detail::dual_allocation(inst.weight(r), nu[r] - mu[j] + own,
                                           alpha);
        return total;
      };

      double next = 0.0;
      if (load(0.0) > cap) {
        double lo = 0.0;
        double hi = std::max(mu[j], 1e-12);
        while (load(hi) > cap) hi *= 2.0;
        for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (load(mid) > cap)
            lo = mid;
          else
            hi = mid;
        }
        next = 0.5 * (lo + hi);
      }
      for (std::size_t r : members) nu[r] += next - mu[j];
      mu[j] = next;
    }

    refresh_route_duals();
    double worst = 0.0;
    for (std::size_t j = 0; j < links; ++j) {
      if (!std::isfinite(inst.capacity(j))) continue;
      double load = 0.0;
      for (std::size_t r : inst.link_requests(j))
        load += detail::dual_allocation(inst.weight(r), nu[r], alpha);
      worst = std::max(worst, load - inst.capacity(j));                 // feasibility
      worst = std::max(worst, mu[j] * (inst.capacity(j) - load));       // slackness
    }
    if (worst <= tolerance) {
      std::vector<double> x(requests);
      for (std::size_t r = 0; r < requests; ++r)
        x[r] = detail::dual_allocation(inst.weight(r), nu[r], alpha);
      return x;
    }
  }
  throw NonConvergedError("reference solver: tolerance " + std::to_string(tolerance) +
                          " not reached within " + std::to_string(max_sweeps) +
                          " sweeps");
}

/// Optimality certificate for an allocation x.
struct KktReport {
  bool satisfied = false;
  double max_violation = 0.0;
  std::vector<double> link_duals;
};

/// Fits nonnegative link duals to the stationarity system
/// sum_{j in J_r} mu_j = w_r x_r^(-alpha) by least squares (projected cyclic
/// coordinate descent), then reports the worst stationarity gap and
/// complementary-slackness product. Only saturated links may carry a dual:
/// on a route mixing a bottleneck with slack links the unrestricted fit is
/// degenerate and can park part of the bottleneck's dual on the slack links,
/// which matches the gradients but fakes a slackness violation. Rejects
/// nonpositive or infeasible x.
inline KktReport verify_kkt(const Instance& inst, double alpha,
                            std::span<const double> x, double tolerance) {
  require_positive_alpha(alpha);
  if (x.size() != inst.request_count())
    throw std::invalid_argument("verify_kkt: allocation size mismatch");
  for (std::size_t r = 0; r < x.size(); ++r)
    if (!(x[r] > 0.0))
      throw std::invalid_argument("verify_kkt: allocation must be strictly positive (request '" +
                                  inst.request(r).id + "')");
  std::vector<double> load(inst.link_count());
  for (std::size_t j = 0; j < inst.link_count(); ++j) {
    load[j] = inst.link_load(j, x);
    if (load[j] > inst.capacity(j) + tolerance)
      throw std::invalid_argument("verify_kkt: allocation infeasible at link '" +
                                  inst.link(j).id + "'");
  }

  std::vector<double> gradient(x.size());
  for (std::size_t r = 0; r < x.size(); ++r)
    gradient[r] = inst.weight(r) * std::pow(x[r], -alpha);

  std::vector<char> active(inst.link_count(), 0);
  for (std::size_t j = 0; j < inst.link_count(); ++j)
    active[j] = std::isfinite(inst.capacity(j)) &&
                inst.capacity(j) - load[j] <=
                    tolerance * std::max(1.0, inst.capacity(j));

  // least-squares duals: minimize sum_r (nu_r - g_r)^2 over mu >= 0,
  // restricted to the saturated links
  std::vector<double> mu(inst.link_count(), 0.0);
  std::vector<double> nu(x.size(), 0.0);
  for (int sweep = 0; sweep < 20000; ++sweep) {
    double shift = 0.0;
    for (std::size_t j = 0; j < inst.link_count(); ++j) {
      if (!active[j]) continue;
      const auto& members = inst.link_requests(j);
      if (members.empty()) continue;
      double slope = 0.0;
      for (std::size_t r : members) slope += gradient[r] - nu[r];
      const double updated =
          std::max(0.0, mu[j] + slope / static_cast<double>(members.size()));
      const double delta = updated - mu[j];
      if (delta != 0.0) {
        for (std::size_t r : members) nu[r] += delta;
        mu[j] = updated;
        shift = std::max(shift, std::abs(delta));
      }
    }
    if (shift <= 1e-14) break;
  }

  KktReport report;
  double stationarity = 0.0;
  for (std::size_t r = 0; r < x.size(); ++r)
    stationarity = std::max(stationarity, std::abs(gradient[r] - nu[r]));
  double slackness = 0.0;
  for (std::size_t j = 0; j < inst.link_count(); ++j) {
    if (!active[j]) continue;  // mu is zero there, and uncapped slack is inf
    slackness = std::max(slackness,
                         mu[j] * std::max(inst.capacity(j) - load[j], 0.0));
  }

  report.max_violation = std::max(stationarity, slackness);
  report.satisfied = report.max_violation <= tolerance;
  report.link_duals = std::move(mu);
  return report;
}

/// The problem restricted to the competitors of r0: requests outside R^{r0}
/// are pinned at their optimal shares, capacities outside the route of r0
/// are reduced accordingly, and links serving no remaining request drop out.
inline Instance restricted_problem(const Instance& inst,
                                   std::span<const double> x_star,
                                   std::size_t r0, double feas_tol = 1e-9) {
  if (r0 >= inst.request_count())
    throw std::invalid_argument("restricted_problem: r0 out of range");
  if (x_star.size() != inst.request_count())
    throw std::invalid_argument("restricted_problem: allocation size mismatch");

  const auto& kept_requests = inst.neighbors(r0);
  std::vector<char> keep(inst.request_count(), 0);
  for (std::size_t s : kept_requests) keep[s] = 1;
  const auto& route0 = inst.route(r0);

  std::vector<Link> links;
  for (std::size_t j = 0; j < inst.link_count(); ++j) {
    bool serves_kept = false;
    for (std::size_t r : inst.link_requests(j)) serves_kept = serves_kept || keep[r];
    if (!serves_kept) continue;  // trivial constraint, removed

    double residual = inst.capacity(j);
    if (!std::binary_search(route0.begin(), route0.end(), j)) {
      for (std::size_t r : inst.link_requests(j))
        if (!keep[r]) residual -= x_star[r];
      if (residual < -feas_tol)
        throw std::invalid_argument("restricted_problem: x_star overfills link '" +
                                    inst.link(j).id + "'");
      if (!(residual > 0.0))
        throw std::invalid_argument("restricted_problem: no residual capacity on link '" +
                                    inst.link(j).id + "'");
    }
    links.push_back({inst.link(j).id, residual});
  }

  std::vector<Request> requests;
  for (std::size_t s : kept_requests) requests.push_back(inst.request(s));
  return build_instance(std::move(links), std::move(requests));
}

/// Checks the restriction property: re-solving the restricted problem at r0
/// must reproduce the full optimum on the competitors of r0.
inline bool check_restriction_lemma(const Instance& inst, double alpha,
                                    std::size_t r0, double tolerance) {
  const double solver_tol = std::min(1e-8, tolerance * 1e-2);
  const std::vector<double> full = solve_reference(inst, alpha, solver_tol);
  const Instance reduced = restricted_problem(inst, full, r0);
  const std::vector<double> local = solve_reference(reduced, alpha, solver_tol);

  for (std::size_t i = 0; i < reduced.request_count(); ++i) {
    const auto original = inst.find_request(reduced.request(i).id);
    if (std::abs(local[i] - full[*original]) > tolerance) return false;
  }
  return true;
}

}  // namespace alphafair

#endif  // ALPHAFAIR_ORACLE_HPP
