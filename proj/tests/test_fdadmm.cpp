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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "alphafair/fdadmm.hpp"
#include "alphafair/generator.hpp"
#include "alphafair/oracle.hpp"
#include "support.hpp"

using namespace alphafair;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

/// One full iteration record of the scalar transcription below.
struct TranscriptStep {
  double z1, z2, z3;
  double lambda;
  double primal, dual;
};

/// The consensus iteration on the two-link fixture, written out variable by
/// variable for a single domain holding both links. Uses the enumeration
/// projection and the closed-form proximal step, nothing from the solver.
std::vector<TranscriptStep> transcribe_e1(int iterations) {
  const double d1 = 0.5, d2 = 1.0 / 3.0, d3 = 5.0;

  const double sigma = std::min({std::pow(1.0, -2.0), std::pow(1.0, -2.0),
                                 std::pow(10.0, -2.0)});
  const double lipschitz = std::max({std::pow(d1, -2.0), std::pow(d2, -2.0),
                                     std::pow(d3, -2.0)});
  double lambda = 1.0 / std::sqrt(sigma * lipschitz);

  double z1 = d1, z2 = d2, z3 = d3;
  double y11 = d1, y12 = d2, u11 = 0.0, u12 = 0.0;  // link j1 copies (r1, r2)
  double y22 = d2, y23 = d3, u22 = 0.0, u23 = 0.0;  // link j2 copies (r2, r3)
  double x1 = d1, x2 = d2, x3 = d3, v1 = 0.0, v2 = 0.0, v3 = 0.0;
  double primal = 0.0, dual = 0.0;

  const auto prox1 = [](double lam, double v) {
    const double disc = std::sqrt(v * v + 4.0 * lam);
    return v > 0.0 ? (v + disc) * 0.5 : 2.0 * lam / (disc - v);
  };

  std::vector<TranscriptStep> steps;
  for (int iter = 1; iter <= iterations; ++iter) {
    if (iter > 1) {
      double factor = 1.0;
      if (primal > 10.0 * dual)
        factor = 0.5;
      else if (dual > 10.0 * primal)
        factor = 2.0;
      lambda *= factor;
      // scaled duals track lambda so the multipliers they encode stay put
      u11 *= factor;
      u12 *= factor;
      u22 *= factor;
      u23 *= factor;
      v1 *= factor;
      v2 *= factor;
      v3 *= factor;
    }

    u11 += y11 - z1;
    u12 += y12 - z2;
    const auto pj1 = testsupport::project_by_enumeration(
        {z1 - u11, z2 - u12}, {d1, d2}, 1.0);
    y11 = pj1[0];
    y12 = pj1[1];

    u22 += y22 - z2;
    u23 += y23 - z3;
    const auto pj2 = testsupport::project_by_enumeration(
        {z2 - u22, z3 - u23}, {d2, d3}, 10.0);
    y22 = pj2[0];
    y23 = pj2[1];

    v1 += x1 - z1;
    x1 = prox1(lambda, z1 - v1);
    v2 += x2 - z2;
    x2 = prox1(lambda, z2 - v2);
    v3 += x3 - z3;
    x3 = prox1(lambda, z3 - v3);

    const double zp1 = z1, zp2 = z2, zp3 = z3;
    z1 = (y11 + x1) / 2.0;
    z2 = (y12 + y22 + x2) / 3.0;
    z3 = (y23 + x3) / 2.0;

    const double primal_sq = (y11 - z1) * (y11 - z1) + (y12 - z2) * (y12 - z2) +
                             (y22 - z2) * (y22 - z2) + (y23 - z3) * (y23 - z3) +
                             (x1 - z1) * (x1 - z1) + (x2 - z2) * (x2 - z2) +
                             (x3 - z3) * (x3 - z3);
    const double dual_sq = 2.0 * (z1 - zp1) * (z1 - zp1) +
                           3.0 * (z2 - zp2) * (z2 - zp2) +
                           2.0 * (z3 - zp3) * (z3 - zp3);
    primal = std::sqrt(primal_sq);
    dual = std::sqrt(dual_sq) / lambda;
    steps.push_back({z1, z2, z3, lambda, primal, dual});
  }
  return steps;
}

}  // namespace

TEST_CASE("partition shapes on the two-link fixture") {
  const Instance e1 = testsupport::make_e1();

  const DomainPartition whole = partition(e1, PartitionSpec::single());
  REQUIRE(whole.domain_count() == 1);
  CHECK(whole.domain_links[0] == std::vector<std::size_t>{0, 1});
  CHECK(whole.domain_requests[0] == std::vector<std::size_t>{0, 1, 2});
  CHECK(whole.request_domains[1] == std::vector<std::size_t>{0});
  CHECK(whole.request_pos[0][2] == 2);

  const DomainPartition links = partition(e1, PartitionSpec::per_link());
  REQUIRE(links.domain_count() == 2);
  CHECK(links.domain_links[0] == std::vector<std::size_t>{0});
  CHECK(links.domain_links[1] == std::vector<std::size_t>{1});
  CHECK(links.domain_requests[0] == std::vector<std::size_t>{0, 1});
  CHECK(links.domain_requests[1] == std::vector<std::size_t>{1, 2});
  CHECK(links.request_domains[0] == std::vector<std::size_t>{0});
  CHECK(links.request_domains[1] == std::vector<std::size_t>{0, 1});
  CHECK(links.request_domains[2] == std::vector<std::size_t>{1});
  CHECK(links.request_pos[1][1] == 0);
  CHECK(links.request_pos[1][2] == 1);

  CHECK(partition(e1, PartitionSpec::chunks(1)).domain_links ==
        whole.domain_links);
  CHECK(partition(e1, PartitionSpec::chunks(2)).domain_links ==
        links.domain_links);
  CHECK_THROWS_AS(partition(e1, PartitionSpec::chunks(0)), ValidationError);
  CHECK_THROWS_AS(partition(e1, PartitionSpec::chunks(3)), ValidationError);
}

TEST_CASE("partition is a disjoint cover with consistent memberships") {
  GeneratorConfig cfg;
  cfg.node_count = 15;
  cfg.attachment = 2;
  cfg.request_count = 30;
  cfg.seed = 17;
  const Instance inst = generate_instance(cfg);

  for (std::size_t count : {std::size_t{1}, std::size_t{4}, inst.link_count()}) {
    const DomainPartition part = partition(inst, PartitionSpec::chunks(count));
    REQUIRE(part.domain_count() == count);

    std::vector<int> seen(inst.link_count(), 0);
    for (const auto& links : part.domain_links)
      for (std::size_t j : links) ++seen[j];
    CHECK(std::count(seen.begin(), seen.end(), 1) ==
          static_cast<long>(inst.link_count()));

    for (std::size_t p = 0; p < count; ++p)
      for (std::size_t pos = 0; pos < part.domain_requests[p].size(); ++pos) {
        const std::size_t r = part.domain_requests[p][pos];
        CHECK(part.request_pos[p][r] == pos);
        const auto& doms = part.request_domains[r];
        CHECK(std::find(doms.begin(), doms.end(), p) != doms.end());
      }

    for (std::size_t r = 0; r < inst.request_count(); ++r) {
      CHECK_FALSE(part.request_domains[r].empty());
      for (std::size_t p : part.request_domains[r]) {
        const auto& members = part.domain_requests[p];
        CHECK(std::binary_search(members.begin(), members.end(), r));
      }
    }
  }
}

TEST_CASE("solver replays the scalar transcription on the fixture") {
  const Instance e1 = testsupport::make_e1();
  const DomainPartition part = partition(e1, PartitionSpec::single());
  const int steps = 8;
  const std::vector<TranscriptStep> expected = transcribe_e1(steps);

  SolverConfig config;
  config.alpha = 1.0;
  config.tolerance = 1e-300;  // never met: exercise exactly `steps` iterations
  config.max_iterations = steps;
  config.rb.interval = 1;  // the transcription balances on every iteration
  const SolveResult result = solve(e1, part, config);

  REQUIRE_FALSE(result.converged);
  REQUIRE(result.iterations == steps);
  REQUIRE(result.trace.iterations.size() == static_cast<std::size_t>(steps));
  CHECK_THAT(result.lambda0, WithinRel(10.0 / 3.0, 1e-12));

  for (int i = 0; i < steps; ++i) {
    const IterationRecord& got = result.trace.iterations[i];
    const TranscriptStep& want = expected[i];
    INFO("iteration " << i + 1);
    CHECK_THAT(got.lambda, WithinRel(want.lambda, 1e-9));
    CHECK_THAT(got.primal_residual, WithinAbs(want.primal, 1e-9));
    CHECK_THAT(got.dual_residual, WithinAbs(want.dual, 1e-9));
  }

  const TranscriptStep& last = expected.back();
  CHECK_THAT(result.allocation[0],
             WithinAbs(std::clamp(last.z1, 0.5, 1.0), 1e-9));
  CHECK_THAT(result.allocation[1],
             WithinAbs(std::clamp(last.z2, 1.0 / 3.0, 1.0), 1e-9));
  CHECK_THAT(result.allocation[2],
             WithinAbs(std::clamp(last.z3, 5.0, 10.0), 1e-9));
}

TEST_CASE("manual stepping matches the packaged loop") {
  const Instance e1 = testsupport::make_e1();
  const DomainPartition part = partition(e1, PartitionSpec::single());
  const BoundVector bound = theorem_bound(e1, 1.0);
  const double lambda0 = penalty_from_bound(e1, 1.0, bound).lambda0;

  SolverState state = init_state(e1, part, bound.values, lambda0);
  CHECK(state.z == bound.values);
  CHECK(state.x[0] == bound.values);

  // the cold start is a fixed point of the averaging step
  master_step(state, e1, part);
  CHECK(state.z == bound.values);

  domain_step(state, e1, part, 0, 1.0, bound.values);
  // y stays put on the first pass: the start point is already feasible
  CHECK(state.y[0] == std::vector<double>{0.5, 1.0 / 3.0});
  CHECK(state.y[1] == std::vector<double>{1.0 / 3.0, 5.0});

  std::vector<double> z_prev = state.z;
  master_step(state, e1, part);
  const auto [primal, dual] = residuals(state, e1, part, z_prev);
  CHECK(primal > 0.0);
  CHECK(dual > 0.0);

  const std::vector<TranscriptStep> expected = transcribe_e1(1);
  CHECK_THAT(primal, WithinAbs(expected[0].primal, 1e-12));
  CHECK_THAT(dual, WithinAbs(expected[0].dual, 1e-12));
  CHECK_THAT(state.z[0], WithinAbs(expected[0].z1, 1e-12));
  CHECK_THAT(state.z[1], WithinAbs(expected[0].z2, 1e-12));
  CHECK_THAT(state.z[2], WithinAbs(expected[0].z3, 1e-12));
}

TEST_CASE("solver reaches the fixture optimum") {
  const Instance e1 = testsupport::make_e1();

  SolverConfig config;
  config.alpha = 1.0;
  config.tolerance = 1e-6;
  for (PartitionSpec spec : {PartitionSpec::single(), PartitionSpec::per_link(),
                             PartitionSpec::chunks(2)}) {
    const SolveResult result = solve(e1, partition(e1, spec), config);
    REQUIRE(result.converged);
    CHECK(result.iterations > 0);
    CHECK(result.primal_residual < 1e-6);
    CHECK(result.dual_residual < 1e-6);
    CHECK_THAT(result.allocation[0], WithinAbs(testsupport::kE1X1, 1e-3));
    CHECK_THAT(result.allocation[1], WithinAbs(testsupport::kE1X2, 1e-3));
    CHECK_THAT(result.allocation[2], WithinAbs(testsupport::kE1X3, 1e-3));
    CHECK(result.trace.iterations.size() ==
          static_cast<std::size_t>(result.iterations));
  }
}

TEST_CASE("penalty modes on the fixture") {
  const Instance e1 = testsupport::make_e1();
  const DomainPartition part = partition(e1, PartitionSpec::per_link());

  SolverConfig config;
  config.alpha = 1.0;
  config.tolerance = 1e-6;

  config.penalty_mode = PenaltyMode::soa_bound;
  const SolveResult mb = solve(e1, part, config);
  REQUIRE(mb.converged);
  CHECK_THAT(mb.lambda0, WithinRel(2.5, 1e-12));  // 1/sqrt(0.01 * 16)
  CHECK_THAT(mb.allocation[0], WithinAbs(testsupport::kE1X1, 1e-3));
  CHECK(mb.bound == std::vector<double>{0.25, 0.25, 2.5});

  config.penalty_mode = PenaltyMode::fixed;
  config.fixed_lambda0 = 100.0;
  const SolveResult fixed = solve(e1, part, config);
  REQUIRE(fixed.converged);
  CHECK(fixed.lambda0 == 100.0);
  CHECK_THAT(fixed.allocation[1], WithinAbs(testsupport::kE1X2, 1e-3));

  config.penalty_mode = PenaltyMode::local_bound;
  config.bound_override = soa_bound(e1, 1.0);
  const SolveResult overridden = solve(e1, part, config);
  REQUIRE(overridden.converged);
  CHECK(overridden.bound == std::vector<double>{0.25, 0.25, 2.5});
  CHECK_THAT(overridden.lambda0, WithinRel(2.5, 1e-12));
}

TEST_CASE("a wildly oversized fixed penalty still converges, only slower") {
  const Instance e1 = testsupport::make_e1();
  const DomainPartition part = partition(e1, PartitionSpec::per_link());

  SolverConfig config;
  config.alpha = 1.0;
  config.tolerance = 1e-2;
  const SolveResult lb = solve(e1, part, config);

  config.penalty_mode = PenaltyMode::fixed;
  config.fixed_lambda0 = 1e6;
  const SolveResult fixed = solve(e1, part, config);

  REQUIRE(lb.converged);
  REQUIRE(fixed.converged);
  CHECK(fixed.iterations >= lb.iterations);
}

TEST_CASE("solver works without projection floors") {
  const Instance e1 = testsupport::make_e1();
  SolverConfig config;
  config.alpha = 1.0;
  config.tolerance = 1e-6;
  config.projection_floors = false;
  const SolveResult result = solve(e1, partition(e1, PartitionSpec::per_link()), config);
  REQUIRE(result.converged);
  CHECK_THAT(result.allocation[0], WithinAbs(testsupport::kE1X1, 2e-3));
  CHECK_THAT(result.allocation[2], WithinAbs(testsupport::kE1X3, 2e-3));
}

TEST_CASE("solver handles other fairness exponents") {
  const Instance e1 = testsupport::make_e1();
  const DomainPartition part = partition(e1, PartitionSpec::per_link());
  for (double alpha : {0.5, 2.0}) {
    SolverConfig config;
    config.alpha = alpha;
    config.tolerance = 1e-6;
    const SolveResult result = solve(e1, part, config);
    REQUIRE(result.converged);
    const std::vector<double> reference = solve_reference(e1, alpha, 1e-10);
    for (std::size_t r = 0; r < reference.size(); ++r)
      CHECK_THAT(result.allocation[r], WithinAbs(reference[r], 2e-3));
  }
}

TEST_CASE("parallel domain steps change nothing") {
  GeneratorConfig cfg;
  cfg.node_count = 15;
  cfg.attachment = 2;
  cfg.request_count = 40;
  cfg.delta_w = 0.5;
  cfg.delta_c = 0.5;
  cfg.seed = 29;
  const Instance inst = generate_instance(cfg);
  const DomainPartition part = partition(inst, PartitionSpec::chunks(6));

  SolverConfig config;
  config.alpha = 1.0;
  config.tolerance = 1e-3;
  config.parallel = false;
  const SolveResult serial = solve(inst, part, config);
  config.parallel = true;
  const SolveResult parallel_a = solve(inst, part, config);
  const SolveResult parallel_b = solve(inst, part, config);

  REQUIRE(serial.converged);
  CHECK(serial.iterations == parallel_a.iterations);
  CHECK(serial.allocation == parallel_a.allocation);
  CHECK(parallel_a.allocation == parallel_b.allocation);
  CHECK(parallel_a.iterations == parallel_b.iterations);
}

TEST_CASE("iteration cap reports honestly") {
  const Instance e1 = testsupport::make_e1();
  SolverConfig config;
  config.alpha = 1.0;
  config.tolerance = 1e-300;
  config.max_iterations = 2;
  const SolveResult result = solve(e1, partition(e1, PartitionSpec::per_link()), config);
  CHECK_FALSE(result.converged);
  CHECK(result.iterations == 2);
  const std::vector<double> top = utopia(e1);
  for (std::size_t r = 0; r < result.allocation.size(); ++r) {
    CHECK(result.allocation[r] >= result.bound[r]);
    CHECK(result.allocation[r] <= top[r]);
  }
}

TEST_CASE("solver rejects invalid configurations") {
  const Instance e1 = testsupport::make_e1();
  const DomainPartition part = partition(e1, PartitionSpec::single());
  SolverConfig config;

  config.alpha = 0.0;
  CHECK_THROWS_AS(solve(e1, part, config), std::invalid_argument);
  config = {};
  config.tolerance = 0.0;
  CHECK_THROWS_AS(solve(e1, part, config), std::invalid_argument);
  config = {};
  config.max_iterations = 0;
  CHECK_THROWS_AS(solve(e1, part, config), std::invalid_argument);
  config = {};
  config.penalty_mode = PenaltyMode::fixed;
  config.fixed_lambda0 = 0.0;
  CHECK_THROWS_AS(solve(e1, part, config), std::invalid_argument);
  config = {};
  config.rb.interval = 0;
  CHECK_THROWS_AS(solve(e1, part, config), std::invalid_argument);
}
