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

#ifndef ALPHAFAIR_FDADMM_HPP
#define ALPHAFAIR_FDADMM_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#if defined(ALPHAFAIR_NO_PARALLEL)
#else
#include <execution>
#endif

#include "alphafair/bounds.hpp"
#include "alphafair/partition.hpp"
#include "alphafair/subproblem.hpp"

namespace alphafair {

enum class PenaltyMode { local_bound, soa_bound, fixed };

struct SolverConfig {
  double alpha = 1.0;
  double tolerance = 1e-2;
  int max_iterations = 100000;
  PenaltyMode penalty_mode = PenaltyMode::local_bound;
  double fixed_lambda0 = 0.0;  // reciprocal penalty when penalty_mode == fixed
  RbConfig rb;
  std::optional<BoundVector> bound_override;
  bool projection_floors = true;  // restrict the link projection from below by d
  bool parallel = false;          // run domain steps concurrently
};

/// All FD-ADMM iterates. Per-domain vectors are indexed by the position of
/// the request in domain_requests[p]; per-link vectors by its position in
/// link_requests(j).
struct SolverState {
  std::vector<std::vector<double>> x;  // per domain, over R_p
  std::vector<std::vector<double>> v;  // per domain duals, over R_p
  std::vector<std::vector<double>> y;  // per link, over R_j
  std::vector<std::vector<double>> u;  // per link duals, over R_j
  std::vector<double> z;               // consensus, over R
  double lambda = 0.0;                 // current reciprocal penalty
  int iteration = 0;
};

struct IterationRecord {
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double lambda = 0.0;
  double objective = 0.0;
};

/// Per-iteration benchmark record of the run.
struct Trace {
  std::vector<IterationRecord> iterations;
};

struct SolveResult {
  std::vector<double> allocation;  // consensus z after the final iteration
  Trace trace;
  bool converged = false;
  int iterations = 0;
  double lambda0 = 0.0;        // initial reciprocal penalty actually used
  std::vector<double> bound;   // lower bound d used for floors and penalty
  double primal_residual = 0.0;
  double dual_residual = 0.0;
};

/// Cold start at the known-feasible lower bound: every copy of every
/// variable equals d and all duals are zero.
inline SolverState init_state(const Instance& inst, const DomainPartition& part,
                              std::span<const double> bound, double lambda0) {
  SolverState state;
  state.lambda = lambda0;
  state.z.assign(bound.begin(), bound.end());
  state.x.resize(part.domain_count());
  state.v.resize(part.domain_count());
  for (std::size_t p = 0; p < part.domain_count(); ++p) {
    const auto& members = part.domain_requests[p];
    state.x[p].resize(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) state.x[p][i] = bound[members[i]];
    state.v[p].assign(members.size(), 0.0);
  }
  state.y.resize(inst.link_count());
  state.u.resize(inst.link_count());
  for (std::size_t j = 0; j < inst.link_count(); ++j) {
    const auto& members = inst.link_requests(j);
    state.y[j].resize(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) state.y[j][i] = bound[members[i]];
    state.u[j].assign(members.size(), 0.0);
  }
  return state;
}

/// Consensus averaging: z_r <- (sum of y copies + sum of x copies) /
/// (|J_r| + |I_r|), links then domains, ascending index order.
inline void master_step(SolverState& state, const Instance& inst,
                        const DomainPartition& part) {
  for (std::size_t r = 0; r < inst.request_count(); ++r) {
    double total = 0.0;
    std::size_t copies = 0;
    for (std::size_t j : inst.route(r)) {
      const auto& members = inst.link_requests(j);
      const std::size_t pos =
          std::lower_bound(members.begin(), members.end(), r) - members.begin();
      total += state.y[j][pos];
      ++copies;
    }
    for (std::size_t p : part.request_domains[r]) {
      total += state.x[p][part.request_pos[p][r]];
      ++copies;
    }
    state.z[r] = total / static_cast<double>(copies);
  }
}

/// One full pass of a domain: per-link dual ascent and projection, then
/// per-request dual ascent and proximal update. The objective split across
/// domains enters as the effective weight w_r / |I_r|.
inline void domain_step(SolverState& state, const Instance& inst,
                        const DomainPartition& part, std::size_t p, double alpha,
                        std::span<const double> floors) {
  std::vector<double> point, link_floors;
  for (std::size_t j : part.domain_links[p]) {
    const auto& members = inst.link_requests(j);
    auto& u = state.u[j];
    auto& y = state.y[j];
    point.resize(members.size());
    link_floors.resize(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      u[i] += y[i] - state.z[members[i]];
      point[i] = state.z[members[i]] - u[i];
      link_floors[i] = floors.empty() ? 0.0 : floors[members[i]];
    }
    y = project_capped_simplex(point, link_floors, inst.capacity(j));
  }

  const auto& members = part.domain_requests[p];
  auto& x = state.x[p];
  auto& v = state.v[p];
  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::size_t r = members[i];
    v[i] += x[i] - state.z[r];
    const double split_weight =
        inst.weight(r) / static_cast<double>(part.request_domains[r].size());
    x[i] = prox_fair(split_weight, alpha, state.lambda, state.z[r] - v[i]);
  }
}

/// Consensus-form residuals. Primal: Euclidean norm of all copy gaps
/// against the current z. Dual: (1/lambda) times the norm of the z change,
/// counted once per copy of each coordinate.
inline std::pair<double, double> residuals(const SolverState& state,
                                           const Instance& inst,
                                           const DomainPartition& part,
                                           std::span<const double> z_prev) {
  double primal_sq = 0.0;
  for (std::size_t j = 0; j < inst.link_count(); ++j) {
    const auto& members = inst.link_requests(j);
    for (std::size_t i = 0; i < members.size(); ++i) {
      const double gap = state.y[j][i] - state.z[members[i]];
      primal_sq += gap * gap;
    }
  }
  for (std::size_t p = 0; p < part.domain_count(); ++p) {
    const auto& members = part.domain_requests[p];
    for (std::size_t i = 0; i < members.size(); ++i) {
      const double gap = state.x[p][i] - state.z[members[i]];
      primal_sq += gap * gap;
    }
  }

  double dual_sq = 0.0;
  for (std::size_t r = 0; r < inst.request_count(); ++r) {
    const double delta = state.z[r] - z_prev[r];
    const double copies = static_cast<double>(inst.route(r).size() +
                                              part.request_domains[r].size());
    dual_sq += copies * delta * delta;
  }
  return {std::sqrt(primal_sq), std::sqrt(dual_sq) / state.lambda};
}

/// Fast Distributed ADMM. Initializes the lower bound and the reciprocal
/// penalty according to the configured mode, then alternates domain steps
/// with consensus averaging until both residual norms fall below the
/// tolerance. Hitting max_iterations leaves converged = false; the trace is
/// returned either way.
inline SolveResult solve(const Instance& inst, const DomainPartition& part,
                         const SolverConfig& config) {
  require_positive_alpha(config.alpha);
  if (!(config.tolerance > 0.0))
    throw std::invalid_argument("solver: tolerance must be positive");
  if (config.max_iterations < 1)
    throw std::invalid_argument("solver: max_iterations must be at least 1");
  if (config.penalty_mode == PenaltyMode::fixed && !(config.fixed_lambda0 > 0.0))
    throw std::invalid_argument("solver: fixed lambda0 must be positive");
  if (config.rb.interval < 1)
    throw std::invalid_argument("solver: rb interval must be at least 1");

  BoundVector bound =
      config.bound_override.has_value()
          ? *config.bound_override
          : (config.penalty_mode == PenaltyMode::soa_bound
                 ? soa_bound(inst, config.alpha)
                 : theorem_bound(inst, config.alpha));
  const double lambda0 =
      config.penalty_mode == PenaltyMode::fixed
          ? config.fixed_lambda0
          : penalty_from_bound(inst, config.alpha, bound).lambda0;

  SolverState state = init_state(inst, part, bound.values, lambda0);
  const std::span<const double> floors =
      config.projection_floors ? std::span<const double>(bound.values)
                               : std::span<const double>();

  std::vector<std::size_t> domain_ids(part.domain_count());
  for (std::size_t p = 0; p < domain_ids.size(); ++p) domain_ids[p] = p;

  SolveResult result;
  result.lambda0 = lambda0;
  std::vector<double> z_prev(state.z.size());
  std::vector<double> weights(inst.request_count());
  for (std::size_t r = 0; r < weights.size(); ++r) weights[r] = inst.weight(r);
  double primal = 0.0;
  double dual = 0.0;

  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    if (iter > 1 && config.rb.enabled &&
        (iter - 1) % config.rb.interval == 0) {
      const double lambda_old = state.lambda;
      state.lambda = residual_balance(state.lambda, primal, dual, config.rb);
      if (state.lambda != lambda_old) {
        // u and v store lambda-scaled multipliers; rescale them so a penalty
        // change leaves the underlying multipliers fixed.
        const double rescale = state.lambda / lambda_old;
        for (auto& u : state.u)
          for (double& value : u) value *= rescale;
        for (auto& v : state.v)
          for (double& value : v) value *= rescale;
      }
    }

    const auto run_domain = [&](std::size_t p) {
      domain_step(state, inst, part, p, config.alpha, floors);
    };
#if defined(ALPHAFAIR_NO_PARALLEL)
    for (std::size_t p : domain_ids) run_domain(p);
#else
    if (config.parallel && part.domain_count() > 1)
      std::for_each(std::execution::par, domain_ids.begin(), domain_ids.end(),
                    run_domain);
    else
      for (std::size_t p : domain_ids) run_domain(p);
#endif

    // Averaging runs after the domain pass so the dual residual reflects the
    // z movement that absorbed it; measuring around the no-op averaging at a
    // consistent cold start would report a zero dual norm on iteration one.
    z_prev = state.z;
    master_step(state, inst, part);

    std::tie(primal, dual) = residuals(state, inst, part, z_prev);
    state.iteration = iter;

    result.trace.iterations.push_back(
        {primal, dual, state.lambda,
         alpha_utility(weights, state.z, config.alpha)});

    if (primal < config.tolerance && dual < config.tolerance) {
      result.converged = true;
      break;
    }
  }

  result.iterations = state.iteration;
  result.primal_residual = primal;
  result.dual_residual = dual;

  // clamp the reported allocation to the box [d, b]
  const std::vector<double> box_top = utopia(inst);
  result.allocation = state.z;
  for (std::size_t r = 0; r < result.allocation.size(); ++r)
    result.allocation[r] =
        std::clamp(result.allocation[r], bound.values[r], box_top[r]);
  result.bound = std::move(bound.values);
  return result;
}

}  // namespace alphafair

#endif  // ALPHAFAIR_FDADMM_HPP
