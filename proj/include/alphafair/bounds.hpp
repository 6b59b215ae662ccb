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

#ifndef ALPHAFAIR_BOUNDS_HPP
#define ALPHAFAIR_BOUNDS_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "alphafair/instance.hpp"

namespace alphafair {

enum class BoundKind { local, soa };

/// A per-request lower bound on the alpha-fair optimum, tagged with the
/// fairness parameter and the bound family it came from.
struct BoundVector {
  double alpha = 0.0;
  BoundKind kind = BoundKind::local;
  std::vector<double> values;
};

/// Utopia point b_r: the allocation a request would get alone in the
/// network, i.e. the minimum capacity along its route.
inline std::vector<double> utopia(const Instance& inst) {
  std::vector<double> b(inst.request_count());
  for (std::size_t r = 0; r < inst.request_count(); ++r) {
    double mincap = inst.capacity(inst.route(r).front());
    for (std::size_t j : inst.route(r)) mincap = std::min(mincap, inst.capacity(j));
    b[r] = mincap;
  }
  return b;
}

/// Local midpoint p_r = w_r b_r / sum of weights over the requests that
/// compete with r for some link (r included).
inline std::vector<double> local_midpoint(const Instance& inst) {
  const std::vector<double> b = utopia(inst);
  std::vector<double> p(inst.request_count());
  for (std::size_t r = 0; r < inst.request_count(); ++r) {
    double weight_sum = 0.0;
    for (std::size_t s : inst.neighbors(r)) weight_sum += inst.weight(s);
    p[r] = inst.weight(r) * b[r] / weight_sum;
  }
  return p;
}

namespace detail {

inline void require_finite_capacities(const Instance& inst) {
  for (const Link& l : inst.links())
    if (!std::isfinite(l.capacity))
      throw std::invalid_argument("bound formulas require finite capacities (link '" +
                                  l.id + "')");
}

}  // namespace detail

/// The alpha >= 1 branch of the local bound:
/// d_r = p_{r0}^(1 - 1/alpha) * p_r^(1/alpha), with r0 the request of
/// minimum local midpoint (lowest index on ties).
inline std::vector<double> theorem_bound_high_branch(const Instance& inst,
                                                     double alpha) {
  std::vector<double> p = local_midpoint(inst);
  const double p_r0 = *std::min_element(p.begin(), p.end());
  const double inv_alpha = 1.0 / alpha;
  const double scale = std::pow(p_r0, 1.0 - inv_alpha);
  for (double& value : p) value = scale * std::pow(value, inv_alpha);
  return p;
}

/// The 0 < alpha <= 1 branch of the local bound:
/// d_r = (w_r b_r / sum_{s in R^r} w_s b_s^(1-alpha))^(1/alpha).
inline std::vector<double> theorem_bound_low_branch(const Instance& inst,
                                                    double alpha) {
  const std::vector<double> b = utopia(inst);
  std::vector<double> d(inst.request_count());
  for (std::size_t r = 0; r < inst.request_count(); ++r) {
    double denom = 0.0;
    for (std::size_t s : inst.neighbors(r))
      denom += inst.weight(s) * std::pow(b[s], 1.0 - alpha);
    d[r] = std::pow(inst.weight(r) * b[r] / denom, 1.0 / alpha);
  }
  return d;
}

/// Local-midpoint lower bound on the alpha-fair optimum. Both branches
/// reduce to the local midpoint at alpha = 1.
inline BoundVector theorem_bound(const Instance& inst, double alpha) {
  require_positive_alpha(alpha);
  detail::require_finite_capacities(inst);
  return BoundVector{alpha, BoundKind::local,
                     alpha >= 1.0 ? theorem_bound_high_branch(inst, alpha)
                                  : theorem_bound_low_branch(inst, alpha)};
}

/// State-of-the-art comparison bound, built from the global quantities
/// w_max, M = min(|R|, |J|), c_min and c_max. At alpha = 1 the printed
/// 0 < alpha <= 1 branch applies.
inline BoundVector soa_bound(const Instance& inst, double alpha) {
  require_positive_alpha(alpha);
  detail::require_finite_capacities(inst);

  double w_max = 0.0;
  for (const Request& q : inst.requests()) w_max = std::max(w_max, q.weight);
  double c_min = inst.capacity(0);
  double c_max = inst.capacity(0);
  for (const Link& l : inst.links()) {
    c_min = std::min(c_min, l.capacity);
    c_max = std::max(c_max, l.capacity);
  }
  const double m_cap =
      static_cast<double>(std::min(inst.request_count(), inst.link_count()));
  const double inv_alpha = 1.0 / alpha;

  BoundVector bound{alpha, BoundKind::soa,
                    std::vector<double>(inst.request_count())};
  for (std::size_t r = 0; r < inst.request_count(); ++r) {
    double share = inst.capacity(inst.route(r).front()) /
                   static_cast<double>(inst.link_requests(inst.route(r).front()).size());
    for (std::size_t j : inst.route(r))
      share = std::min(share, inst.capacity(j) /
                                  static_cast<double>(inst.link_requests(j).size()));
    const double weight_ratio = inst.weight(r) / (w_max * m_cap);
    bound.values[r] =
        alpha <= 1.0
            ? std::pow(weight_ratio * share, inv_alpha) *
                  std::pow(c_max, 1.0 - inv_alpha)
            : std::pow(weight_ratio, inv_alpha) * share *
                  std::pow(c_min / c_max, 1.0 - inv_alpha);
  }
  return bound;
}

/// Head-to-head comparison of the local bound d against the SoA bound m:
/// score = share of requests with d_r strictly above m_r (ties count
/// against d), plus the min/avg/max of the ratios d_r / m_r.
struct BoundComparison {
  double alpha = 0.0;
  double score = 0.0;
  double ratio_min = 0.0;
  double ratio_avg = 0.0;
  double ratio_max = 0.0;
};

inline BoundComparison compare_bounds(const BoundVector& local,
                                      const BoundVector& soa) {
  if (local.values.size() != soa.values.size())
    throw std::invalid_argument("compare_bounds: mismatched index sets");
  if (local.alpha != soa.alpha)
    throw std::invalid_argument("compare_bounds: bounds computed for different alpha");
  if (local.values.empty())
    throw std::invalid_argument("compare_bounds: empty bound vectors");

  BoundComparison cmp;
  cmp.alpha = local.alpha;
  double ratio_sum = 0.0;
  std::size_t wins = 0;
  cmp.ratio_min = local.values[0] / soa.values[0];
  cmp.ratio_max = cmp.ratio_min;
  for (std::size_t r = 0; r < local.values.size(); ++r) {
    const double ratio = local.values[r] / soa.values[r];
    cmp.ratio_min = std::min(cmp.ratio_min, ratio);
    cmp.ratio_max = std::max(cmp.ratio_max, ratio);
    ratio_sum += ratio;
    if (local.values[r] > soa.values[r]) ++wins;
  }
  cmp.ratio_avg = ratio_sum / static_cast<double>(local.values.size());
  cmp.score = static_cast<double>(wins) / static_cast<double>(local.values.size());
  return cmp;
}

}  // namespace alphafair

#endif  // ALPHAFAIR_BOUNDS_HPP
