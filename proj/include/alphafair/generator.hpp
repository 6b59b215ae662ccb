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

#ifndef ALPHAFAIR_GENERATOR_HPP
#define ALPHAFAIR_GENERATOR_HPP

#include <cstdint>
#include <deque>
#include <random>
#include <string>
#include <vector>

#include "alphafair/instance.hpp"

namespace alphafair {

/// Deterministic uniform draws on top of mt19937_64.
///
/// The standard distributions are implementation-defined, so we map raw
/// engine output ourselves; the generated stream is then identical on every
/// platform for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n), rejection-sampled to avoid modulo bias.
  std::size_t below(std::size_t n) {
    const std::uint64_t m = static_cast<std::uint64_t>(n);
    const std::uint64_t threshold = (0ull - m) % m;
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= threshold) return static_cast<std::size_t>(x % m);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Parameters of the random benchmark instances: a Barabasi-Albert graph,
/// shortest-path routes between uniform endpoint pairs, and weights and
/// capacities drawn from intervals with endpoint ratios delta_w and delta_c.
struct GeneratorConfig {
  int node_count = 100;
  int attachment = 4;
  int request_count = 1000;
  double delta_w = 1.0;  // weights drawn uniformly from [delta_w, 1]
  double delta_c = 1.0;  // capacities drawn uniformly from [delta_c, 1] * capacity_scale
  double capacity_scale = 1.0;
  std::uint64_t seed = 0;
};

inline void validate(const GeneratorConfig& cfg) {
  if (cfg.attachment < 1)
    throw ValidationError("generator: attachment must be >= 1");
  if (cfg.node_count <= cfg.attachment)
    throw ValidationError("generator: nodeCount must exceed attachment");
  if (cfg.request_count < 1)
    throw ValidationError("generator: requestCount must be >= 1");
  if (!(cfg.delta_w > 0.0) || cfg.delta_w > 1.0)
    throw ValidationError("generator: deltaW must lie in (0, 1]");
  if (!(cfg.delta_c > 0.0) || cfg.delta_c > 1.0)
    throw ValidationError("generator: deltaC must lie in (0, 1]");
  if (!(cfg.capacity_scale > 0.0))
    throw ValidationError("generator: capacityScale must be positive");
}

namespace detail {

/// Barabasi-Albert preferential attachment, seeded with a clique on
/// (attachment + 1) nodes. Returns the undirected edge list sorted by
/// (min endpoint, max endpoint).
inline std::vector<std::pair<int, int>> barabasi_albert_edges(int n, int m,
                                                              Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  // each appended endpoint gives its node one unit of attachment probability
  std::vector<int> targets;

  for (int u = 0; u < m + 1; ++u)
    for (int v = u + 1; v < m + 1; ++v) {
      edges.emplace_back(u, v);
      targets.push_back(u);
      targets.push_back(v);
    }

  std::vector<int> chosen;
  for (int t = m + 1; t < n; ++t) {
    chosen.clear();
    while (static_cast<int>(chosen.size()) < m) {
      const int candidate = targets[rng.below(targets.size())];
      bool duplicate = false;
      for (int c : chosen) duplicate = duplicate || (c == candidate);
      if (!duplicate) chosen.push_back(candidate);
    }
    for (int c : chosen) {
      edges.emplace_back(std::min(t, c), std::max(t, c));
      targets.push_back(c);
      targets.push_back(t);
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

/// BFS shortest path with neighbors visited in ascending node id; the parent
/// of a node is its first discoverer, which makes the path deterministic.
/// Returns the node sequence src..dst, or empty if unreachable.
inline std::vector<int> bfs_path(const std::vector<std::vector<int>>& adj,
                                 int src, int dst) {
  if (src == dst) return {src};
  std::vector<int> parent(adj.size(), -1);
  std::deque<int> queue{src};
  parent[src] = src;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : adj[u]) {
      if (parent[v] >= 0) continue;
      parent[v] = u;
      if (v == dst) {
        std::vector<int> path{dst};
        for (int w = dst; w != src; w = parent[w]) path.push_back(parent[w]);
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(v);
    }
  }
  return {};
}

inline std::string padded_id(char prefix, std::size_t index, std::size_t count) {
  std::size_t digits = 1;
  for (std::size_t c = count; c > 10; c /= 10) ++digits;
  std::string num = std::to_string(index);
  std::string out(1, prefix);
  out.append(digits > num.size() ? digits - num.size() : 0, '0');
  out += num;
  return out;
}

}  // namespace detail

/// Random instance generation. A pure function of the config: the same seed
/// produces a bit-identical instance on every run.
inline Instance generate_instance(const GeneratorConfig& cfg) {
  validate(cfg);
  Rng rng(cfg.seed);

  const auto edges =
      detail::barabasi_albert_edges(cfg.node_count, cfg.attachment, rng);

  std::vector<std::vector<int>> adj(cfg.node_count);
  // edge index doubles as the link index; ids follow the sorted edge order
  std::vector<std::vector<std::pair<int, std::size_t>>> edge_of(cfg.node_count);
  std::vector<Link> links(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [u, v] = edges[e];
    adj[u].push_back(v);
    adj[v].push_back(u);
    edge_of[u].emplace_back(v, e);
    edge_of[v].emplace_back(u, e);
    links[e].id = detail::padded_id('e', e, edges.size());
    links[e].capacity = rng.uniform(cfg.delta_c, 1.0) * cfg.capacity_scale;
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
  for (auto& nbrs : edge_of) std::sort(nbrs.begin(), nbrs.end());

  std::vector<Request> requests(cfg.request_count);
  for (int k = 0; k < cfg.request_count; ++k) {
    std::vector<int> path;
    int attempts = 0;
    while (path.size() < 2) {
      if (++attempts > 100)
        throw ValidationError(
            "generator: no connected endpoint pair found; the graph "
            "construction is broken");
      const int src = static_cast<int>(rng.below(cfg.node_count));
      const int dst = static_cast<int>(rng.below(cfg.node_count));
      if (src == dst) continue;
      path = detail::bfs_path(adj, src, dst);
    }
    Request& q = requests[k];
    q.id = detail::padded_id('r', k, requests.size());
    q.weight = rng.uniform(cfg.delta_w, 1.0);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      const int u = path[i];
      const int v = path[i + 1];
      const auto& nbrs = edge_of[u];
      const auto it = std::lower_bound(
          nbrs.begin(), nbrs.end(), std::make_pair(v, std::size_t{0}));
      q.route.push_back(links[it->second].id);
    }
  }
  return build_instance(std::move(links), std::move(requests));
}

}  // namespace alphafair

#endif  // ALPHAFAIR_GENERATOR_HPP
