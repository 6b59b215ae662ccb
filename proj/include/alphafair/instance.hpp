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

#ifndef ALPHAFAIR_INSTANCE_HPP
#define ALPHAFAIR_INSTANCE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "alphafair/common.hpp"

namespace alphafair {

/// A capacitated resource. Capacity is in bandwidth units and must be
/// positive; +infinity is accepted (an effectively uncapacitated link) but
/// such links cannot be serialized and make the fairness problem degenerate.
struct Link {
  std::string id;
  double capacity = 0.0;
};

/// A connection request: a route (set of link ids) and a positive weight.
struct Request {
  std::string id;
  double weight = 0.0;
  std::vector<std::string> route;
};

/// Immutable model of the capacitated network and its request set.
///
/// Links and requests are stored in ascending id order and addressed by
/// dense index everywhere else in the library; every derived collection
/// (per-link request sets, per-request neighbor sets) is sorted ascending
/// so that floating-point reductions are order-deterministic.
class Instance {
 public:
  Instance() = default;

  std::size_t link_count() const { return links_.size(); }
  std::size_t request_count() const { return requests_.size(); }

  const Link& link(std::size_t j) const { return links_[j]; }
  const Request& request(std::size_t r) const { return requests_[r]; }
  double capacity(std::size_t j) const { return links_[j].capacity; }
  double weight(std::size_t r) const { return requests_[r].weight; }

  const std::vector<Link>& links() const { return links_; }
  const std::vector<Request>& requests() const { return requests_; }

  /// J_r: link indices on the route of request r, ascending.
  const std::vector<std::size_t>& route(std::size_t r) const {
    return route_links_[r];
  }
  /// R_j: request indices whose route contains link j, ascending.
  const std::vector<std::size_t>& link_requests(std::size_t j) const {
    return link_requests_[j];
  }
  /// R^r: requests sharing at least one link with r (always contains r).
  const std::vector<std::size_t>& neighbors(std::size_t r) const {
    return neighbor_requests_[r];
  }

  std::optional<std::size_t> find_link(std::string_view id) const {
    auto it = link_index_.find(std::string(id));
    if (it == link_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> find_request(std::string_view id) const {
    auto it = request_index_.find(std::string(id));
    if (it == request_index_.end()) return std::nullopt;
    return it->second;
  }

  /// Sum of x over the requests crossing link j.
  double link_load(std::size_t j, std::span<const double> x) const {
    double load = 0.0;
    for (std::size_t r : link_requests_[j]) load += x[r];
    return load;
  }

  friend Instance build_instance(std::vector<Link> links,
                                 std::vector<Request> requests);

 private:
  std::vector<Link> links_;
  std::vector<Request> requests_;
  std::vector<std::vector<std::size_t>> route_links_;
  std::vector<std::vector<std::size_t>> link_requests_;
  std::vector<std::vector<std::size_t>> neighbor_requests_;
  std::unordered_map<std::string, std::size_t> link_index_;
  std::unordered_map<std::string, std::size_t> request_index_;
};

/// Validates the raw model data and populates all derived sets.
///
/// Collections are reordered ascending by id. Routes are treated as sets:
/// duplicate link ids within one route collapse. Throws ValidationError with
/// the offending id on empty routes, unknown link ids, duplicate ids, and
/// nonpositive (or NaN) capacities and weights.
inline Instance build_instance(std::vector<Link> links,
                               std::vector<Request> requests) {
  Instance inst;
  std::sort(links.begin(), links.end(),
            [](const Link& a, const Link& b) { return a.id < b.id; });
  std::sort(requests.begin(), requests.end(),
            [](const Request& a, const Request& b) { return a.id < b.id; });

  for (std::size_t j = 0; j < links.size(); ++j) {
    const Link& l = links[j];
    if (l.id.empty()) throw ValidationError("link with empty id");
    if (std::isnan(l.capacity) || !(l.capacity > 0.0))
      throw ValidationError("link '" + l.id + "': capacity must be positive, got " +
                            std::to_string(l.capacity));
    if (!inst.link_index_.emplace(l.id, j).second)
      throw ValidationError("duplicate link id '" + l.id + "'");
  }

  inst.route_links_.resize(requests.size());
  inst.link_requests_.resize(links.size());
  for (std::size_t r = 0; r < requests.size(); ++r) {
    Request& q = requests[r];
    if (q.id.empty()) throw ValidationError("request with empty id");
    if (!std::isfinite(q.weight) || !(q.weight > 0.0))
      throw ValidationError("request '" + q.id + "': weight must be positive, got " +
                            std::to_string(q.weight));
    if (!inst.request_index_.emplace(q.id, r).second)
      throw ValidationError("duplicate request id '" + q.id + "'");
    if (q.route.empty())
      throw ValidationError("request '" + q.id + "': empty route");

    std::vector<std::size_t>& route = inst.route_links_[r];
    for (const std::string& link_id : q.route) {
      auto it = inst.link_index_.find(link_id);
      if (it == inst.link_index_.end())
        throw ValidationError("request '" + q.id + "': unknown link id '" +
                              link_id + "'");
      route.push_back(it->second);
    }
    std::sort(route.begin(), route.end());
    route.erase(std::unique(route.begin(), route.end()), route.end());
    // keep the stored route in canonical (ascending id) order too
    q.route.clear();
    for (std::size_t j : route) q.route.push_back(links[j].id);
    for (std::size_t j : route) inst.link_requests_[j].push_back(r);
  }

  // R^r as the union of R_j over the route; r itself is always a member.
  inst.neighbor_requests_.resize(requests.size());
  std::vector<char> mark(requests.size(), 0);
  for (std::size_t r = 0; r < requests.size(); ++r) {
    std::vector<std::size_t>& nbrs = inst.neighbor_requests_[r];
    for (std::size_t j : inst.route_links_[r])
      for (std::size_t s : inst.link_requests_[j])
        if (!mark[s]) {
          mark[s] = 1;
          nbrs.push_back(s);
        }
    std::sort(nbrs.begin(), nbrs.end());
    for (std::size_t s : nbrs) mark[s] = 0;
  }

  inst.links_ = std::move(links);
  inst.requests_ = std::move(requests);
  return inst;
}

}  // namespace alphafair

#endif  // ALPHAFAIR_INSTANCE_HPP
