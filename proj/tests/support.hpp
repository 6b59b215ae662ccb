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

#ifndef ALPHAFAIR_TESTS_SUPPORT_HPP
#define ALPHAFAIR_TESTS_SUPPORT_HPP

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#ifdef ALPHAFAIR_CLI_PATH
#include <sys/wait.h>
#endif

#include "alphafair/instance.hpp"

// Hand-checked fixtures and brute-force oracles. Everything here recomputes
// results by the most naive route available so that library outputs are
// compared against genuinely independent arithmetic.

namespace testsupport {

/// Two links in series: j1 (capacity 1) carries r1 and r2, j2 (capacity 10)
/// carries r2 and r3, unit weights throughout.
inline alphafair::Instance make_e1() {
  return alphafair::build_instance(
      {{"j1", 1.0}, {"j2", 10.0}},
      {{"r1", 1.0, {"j1"}}, {"r2", 1.0, {"j1", "j2"}}, {"r3", 1.0, {"j2"}}});
}

// Proportional-fair optimum of the fixture: both links saturate, and the
// middle share solves 3 t^2 - 22 t + 10 = 0, so t = (11 - sqrt(91)) / 3.
inline const double kE1X2 = (11.0 - std::sqrt(91.0)) / 3.0;
inline const double kE1X1 = 1.0 - kE1X2;
inline const double kE1X3 = 10.0 - kE1X2;

/// Root of x^(a+1) - v x^a = lambda w by plain bisection. Dividing by x^a
/// gives the equivalent strictly increasing form x - v - lambda w x^(-a),
/// which stays well conditioned when v is large and negative. Bisection runs
/// in log space: the root is positive but can be arbitrarily many orders of
/// magnitude below the upper bound max(v,0) + (lambda w)^(1/(a+1)) + 1.
inline double prox_by_bisection(double w, double alpha, double lambda, double v) {
  double lo = std::numeric_limits<double>::min();
  double hi = std::max(v, 0.0) + std::pow(lambda * w, 1.0 / (alpha + 1.0)) + 1.0;
  const auto residual = [&](double x) {
    return x - v - lambda * w * std::pow(x, -alpha);
  };
  for (int i = 0; i < 400; ++i) {
    const double mid = std::sqrt(lo) * std::sqrt(hi);  // geometric midpoint
    if (residual(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return std::sqrt(lo) * std::sqrt(hi);
}

/// Projection onto {y >= floors, sum(y) <= capacity} by exhausting every
/// active set (intended for 3 or fewer coordinates): either the clamped
/// point is feasible, or the budget binds with some subset pinned at its
/// floor and the rest sharing one shift. Picks the feasible candidate
/// closest to the input.
inline std::vector<double> project_by_enumeration(const std::vector<double>& values,
                                                  const std::vector<double>& floors,
                                                  double capacity) {
  const std::size_t n = values.size();
  if (n > 20) throw std::invalid_argument("enumeration oracle is exponential");

  std::vector<std::vector<double>> candidates;
  std::vector<double> clamped(n);
  for (std::size_t i = 0; i < n; ++i) clamped[i] = std::max(values[i], floors[i]);
  candidates.push_back(clamped);

  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    double fixed_sum = 0.0;
    double free_sum = 0.0;
    std::size_t free_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) {
        fixed_sum += floors[i];
      } else {
        free_sum += values[i];
        ++free_count;
      }
    }
    if (free_count == 0) continue;
    const double shift = (free_sum + fixed_sum - capacity) / static_cast<double>(free_count);
    std::vector<double> candidate(n);
    for (std::size_t i = 0; i < n; ++i)
      candidate[i] = (mask & (std::size_t{1} << i)) ? floors[i] : values[i] - shift;
    candidates.push_back(std::move(candidate));
  }

  const std::vector<double>* best = nullptr;
  double best_cost = std::numeric_limits<double>::infinity();
  for (const std::vector<double>& candidate : candidates) {
    double total = 0.0;
    bool feasible = true;
    double cost = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      feasible = feasible && candidate[i] >= floors[i] - 1e-12;
      total += candidate[i];
      cost += (candidate[i] - values[i]) * (candidate[i] - values[i]);
    }
    if (!feasible || total > capacity + 1e-12) continue;
    if (cost < best_cost) {
      best_cost = cost;
      best = &candidate;
    }
  }
  if (best == nullptr) throw std::runtime_error("oracle: no feasible candidate");
  return *best;
}

/// Neighborhood sets recomputed by the definition: s is a neighbor of r when
/// their routes share a link (every request neighbors itself).
inline std::vector<std::vector<std::size_t>> neighbors_by_definition(
    const alphafair::Instance& inst) {
  std::vector<std::vector<std::size_t>> out(inst.request_count());
  for (std::size_t r = 0; r < inst.request_count(); ++r)
    for (std::size_t s = 0; s < inst.request_count(); ++s) {
      bool shares = false;
      for (std::size_t j : inst.route(r))
        for (std::size_t k : inst.route(s)) shares = shares || (j == k);
      if (shares) out[r].push_back(s);
    }
  return out;
}

#ifdef ALPHAFAIR_CLI_PATH
struct CliResult {
  int status = -1;
  std::string output;  // stdout and stderr interleaved
};

/// Runs the packaged command-line binary and captures its exit code and
/// combined output.
inline CliResult run_cli(const std::string& args) {
  const std::string command = std::string(ALPHAFAIR_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed");
  CliResult result;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = std::fread(buffer, 1, sizeof(buffer), pipe)) > 0)
    result.output.append(buffer, got);
  const int raw = ::pclose(pipe);
  result.status = (raw >= 0 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
  return result;
}

/// First value after `label:` in the CLI's line-oriented output.
inline std::string cli_field(const std::string& output, const std::string& label) {
  const std::string needle = label + ": ";
  const std::size_t at = output.find(needle);
  if (at == std::string::npos) throw std::runtime_error("missing field " + label);
  const std::size_t end = output.find('\n', at);
  return output.substr(at + needle.size(), end - at - needle.size());
}
#endif  // ALPHAFAIR_CLI_PATH

}  // namespace testsupport

#endif  // ALPHAFAIR_TESTS_SUPPORT_HPP
