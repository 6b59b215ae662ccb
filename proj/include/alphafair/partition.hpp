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

#ifndef ALPHAFAIR_PARTITION_HPP
#define ALPHAFAIR_PARTITION_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "alphafair/instance.hpp"

namespace alphafair {

enum class PartitionStrategy { single, per_link, chunks };

struct PartitionSpec {
  PartitionStrategy strategy = PartitionStrategy::single;
  std::size_t chunk_count = 0;  // used by chunks only

  static PartitionSpec single() { return {PartitionStrategy::single, 0}; }
  static PartitionSpec per_link() { return {PartitionStrategy::per_link, 0}; }
  static PartitionSpec chunks(std::size_t count) {
    return {PartitionStrategy::chunks, count};
  }
};

/// A split of the links into P disjoint domains, with the derived
/// request/domain memberships used by the consensus iteration:
///   domain_requests[p] = requests crossing domain p (R_p),
///   request_domains[r] = domains crossed by request r (I_r).
struct DomainPartition {
  std::vector<std::vector<std::size_t>> domain_links;     // J_p
  std::vector<std::vector<std::size_t>> domain_requests;  // R_p
  std::vector<std::vector<std::size_t>> request_domains;  // I_r

  // position of request r inside domain_requests[p], addressed as
  // request_pos[p][r]; same shape for link membership in instance order
  std::vector<std::vector<std::size_t>> request_pos;

  std::size_t domain_count() const { return domain_links.size(); }
};

/// Builds a partition by strategy: one domain, one domain per link, or P
/// contiguous id-ordered chunks of links.
inline DomainPartition partition(const Instance& inst, const PartitionSpec& spec) {
  const std::size_t link_count = inst.link_count();
  DomainPartition part;

  switch (spec.strategy) {
    case PartitionStrategy::single: {
      part.domain_links.emplace_back(link_count);
      for (std::size_t j = 0; j < link_count; ++j) part.domain_links[0][j] = j;
      break;
    }
    case PartitionStrategy::per_link: {
      part.domain_links.resize(link_count);
      for (std::size_t j = 0; j < link_count; ++j) part.domain_links[j] = {j};
      break;
    }
    case PartitionStrategy::chunks: {
      const std::size_t count = spec.chunk_count;
      if (count < 1 || count > link_count)
        throw ValidationError("partition: chunk count " + std::to_string(count) +
                              " not in [1, " + std::to_string(link_count) + "]");
      part.domain_links.resize(count);
      for (std::size_t p = 0; p < count; ++p) {
        const std::size_t begin = p * link_count / count;
        const std::size_t end = (p + 1) * link_count / count;
        for (std::size_t j = begin; j < end; ++j) part.domain_links[p].push_back(j);
      }
      break;
    }
  }

  const std::size_t domains = part.domain_links.size();
  part.domain_requests.resize(domains);
  part.request_domains.resize(inst.request_count());
  part.request_pos.resize(domains);
  std::vector<char> mark(inst.request_count(), 0);
  for (std::size_t p = 0; p < domains; ++p) {
    auto& members = part.domain_requests[p];
    for (std::size_t j : part.domain_links[p])
      for (std::size_t r : inst.link_requests(j))
        if (!mark[r]) {
          mark[r] = 1;
          members.push_back(r);
        }
    std::sort(members.begin(), members.end());
    part.request_pos[p].assign(inst.request_count(), 0);
    for (std::size_t pos = 0; pos < members.size(); ++pos) {
      mark[members[pos]] = 0;
      part.request_domains[members[pos]].push_back(p);
      part.request_pos[p][members[pos]] = pos;
    }
  }
  return part;
}

}  // namespace alphafair

#endif  // ALPHAFAIR_PARTITION_HPP
