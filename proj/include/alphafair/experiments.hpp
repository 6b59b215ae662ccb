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

#ifndef ALPHAFAIR_EXPERIMENTS_HPP
#define ALPHAFAIR_EXPERIMENTS_HPP

#include <array>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#if !defined(ALPHAFAIR_NO_PARALLEL)
#include <execution>
#endif

#include "alphafair/bounds.hpp"
#include "alphafair/fdadmm.hpp"
#include "alphafair/generator.hpp"
#include "alphafair/instance.hpp"
#include "alphafair/partition.hpp"

// Batch drivers behind the `bound-sweep` and `admm-bench` commands. Cell
// seeds are derived from the base seed and the cell coordinates, so reruns
// see identical instances, and so do all alphas (sweep) or penalty variants
// (bench) within one cell.

namespace alphafair {

namespace detail {

/// splitmix64-style mix of the base seed with two cell coordinates.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = base;
  z += 0x9e3779b97f4a7c15ull * (a + 1);
  z += 0x517cc1b727220a95ull * (b + 1);
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

/// Shortest round-trip decimal form, locale independent.
inline std::string format_number(double value) {
  std::array<char, 40> buffer;
  const auto out = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), out.ptr);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Bound-quality sweep
// ---------------------------------------------------------------------------

struct SweepSpec {
  std::vector<double> alphas{1.0};
  std::vector<double> delta_ws{1.0};
  std::vector<double> delta_cs{1.0};
  int instances_per_cell = 10;
  GeneratorConfig base;  // delta_w / delta_c / seed fields are overridden per cell
};

struct SweepRow {
  double alpha = 0.0;
  double delta_w = 0.0;
  double delta_c = 0.0;
  std::string instance;  // cell index, or "mean" for the aggregate row
  double score = 0.0;
  double ratio_min = 0.0;
  double ratio_avg = 0.0;
  double ratio_max = 0.0;
};

/// Generates `instances_per_cell` instances for every (delta_w, delta_c)
/// pair, compares the request-local bound against the uniform one for every
/// alpha on those same instances, and appends one "mean" row per cell whose
/// metric columns are the arithmetic means of the per-instance rows.
inline std::vector<SweepRow> run_bound_sweep(const SweepSpec& spec) {
  if (spec.instances_per_cell < 1)
    throw ValidationError("sweep: instances_per_cell must be at least 1");
  if (spec.alphas.empty() || spec.delta_ws.empty() || spec.delta_cs.empty())
    throw ValidationError("sweep: alpha and heterogeneity grids must be nonempty");
  for (double a : spec.alphas) require_positive_alpha(a);

  const std::size_t na = spec.alphas.size();
  const std::size_t nw = spec.delta_ws.size();
  const std::size_t nc = spec.delta_cs.size();
  const std::size_t ni = static_cast<std::size_t>(spec.instances_per_cell);

  std::vector<BoundComparison> cmp(na * nw * nc * ni);
  const auto slot = [&](std::size_t a, std::size_t w, std::size_t c, std::size_t i) -> BoundComparison& {
    return cmp[((a * nw + w) * nc + c) * ni + i];
  };

  for (std::size_t w = 0; w < nw; ++w)
    for (std::size_t c = 0; c < nc; ++c)
      for (std::size_t i = 0; i < ni; ++i) {
        GeneratorConfig cfg = spec.base;
        cfg.delta_w = spec.delta_ws[w];
        cfg.delta_c = spec.delta_cs[c];
        cfg.seed = detail::mix_seed(spec.base.seed, w * nc + c, i);
        const Instance inst = generate_instance(cfg);
        for (std::size_t a = 0; a < na; ++a)
          slot(a, w, c, i) = compare_bounds(theorem_bound(inst, spec.alphas[a]),
                                            soa_bound(inst, spec.alphas[a]));
      }

  std::vector<SweepRow> rows;
  rows.reserve(na * nw * nc * (ni + 1));
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t w = 0; w < nw; ++w)
      for (std::size_t c = 0; c < nc; ++c) {
        SweepRow mean{spec.alphas[a], spec.delta_ws[w], spec.delta_cs[c],
                      "mean", 0.0, 0.0, 0.0, 0.0};
        for (std::size_t i = 0; i < ni; ++i) {
          const BoundComparison& one = slot(a, w, c, i);
          rows.push_back({spec.alphas[a], spec.delta_ws[w], spec.delta_cs[c],
                          std::to_string(i), one.score, one.ratio_min,
                          one.ratio_avg, one.ratio_max});
          mean.score += one.score;
          mean.ratio_min += one.ratio_min;
          mean.ratio_avg += one.ratio_avg;
          mean.ratio_max += one.ratio_max;
        }
        const double n = static_cast<double>(ni);
        mean.score /= n;
        mean.ratio_min /= n;
        mean.ratio_avg /= n;
        mean.ratio_max /= n;
        rows.push_back(std::move(mean));
      }
  return rows;
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "alpha,delta_w,delta_c,instance,score,ratio_min,ratio_avg,ratio_max\n";
  for (const SweepRow& row : rows) {
    out << detail::format_number(row.alpha) << ',' << detail::format_number(row.delta_w)
        << ',' << detail::format_number(row.delta_c) << ',' << row.instance << ','
        << detail::format_number(row.score) << ',' << detail::format_number(row.ratio_min)
        << ',' << detail::format_number(row.ratio_avg) << ','
        << detail::format_number(row.ratio_max) << '\n';
  }
}

inline void save_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  write_sweep_csv(out, rows);
}

// ---------------------------------------------------------------------------
// Convergence benchmark
// ---------------------------------------------------------------------------

struct BenchVariant {
  std::string name;
  PenaltyMode penalty_mode = PenaltyMode::local_bound;
  double fixed_lambda0 = 0.0;
  bool rb = true;
};

struct BenchSpec {
  double alpha = 1.0;
  double tolerance = 1e-2;
  int max_iterations = 100000;
  std::vector<std::size_t> request_counts{50, 100, 200, 400, 800};
  int instances_per_cell = 10;
  GeneratorConfig base;  // request_count / seed fields are overridden per cell
  PartitionSpec partition = PartitionSpec::per_link();
  std::vector<BenchVariant> variants;
  bool parallel = true;
};

struct BenchRow {
  std::string variant;
  std::size_t requests = 0;
  std::string instance;  // cell index, or "mean" for the aggregate row
  double iterations = 0.0;
  double lambda0 = 0.0;
  bool converged = false;
};

/// Runs every variant on the same per-cell instances and appends one "mean"
/// row per (variant, request count) group; its iteration and lambda0 columns
/// are arithmetic means and its converged flag is the conjunction. Runs that
/// hit the iteration cap are recorded with converged=0, never dropped. Row
/// order is deterministic: variants in declaration order, sizes in
/// declaration order, then instances.
inline std::vector<BenchRow> run_admm_bench(const BenchSpec& spec) {
  if (spec.variants.empty()) throw ValidationError("bench: no variants given");
  if (spec.instances_per_cell < 1)
    throw ValidationError("bench: instances_per_cell must be at least 1");
  if (spec.request_counts.empty()) throw ValidationError("bench: no request counts given");
  require_positive_alpha(spec.alpha);

  struct Cell {
    std::size_t size_idx;
    int instance_idx;
    std::vector<SolveResult> results;  // one per variant
  };
  std::vector<Cell> cells;
  for (std::size_t s = 0; s < spec.request_counts.size(); ++s)
    for (int i = 0; i < spec.instances_per_cell; ++i)
      cells.push_back({s, i, {}});

  const auto run_cell = [&](Cell& cell) {
    GeneratorConfig cfg = spec.base;
    cfg.request_count = spec.request_counts[cell.size_idx];
    cfg.seed = detail::mix_seed(spec.base.seed, cfg.request_count,
                                static_cast<std::uint64_t>(cell.instance_idx));
    const Instance inst = generate_instance(cfg);
    const DomainPartition part = partition(inst, spec.partition);
    cell.results.reserve(spec.variants.size());
    for (const BenchVariant& variant : spec.variants) {
      SolverConfig config;
      config.alpha = spec.alpha;
      config.tolerance = spec.tolerance;
      config.max_iterations = spec.max_iterations;
      config.penalty_mode = variant.penalty_mode;
      config.fixed_lambda0 = variant.fixed_lambda0;
      config.rb.enabled = variant.rb;
      config.parallel = spec.parallel;  // domain steps, nested under the cell loop
      cell.results.push_back(solve(inst, part, config));
    }
  };

#if !defined(ALPHAFAIR_NO_PARALLEL)
  if (spec.parallel && cells.size() > 1)
    std::for_each(std::execution::par, cells.begin(), cells.end(), run_cell);
  else
#endif
    std::for_each(cells.begin(), cells.end(), run_cell);

  std::vector<BenchRow> rows;
  for (std::size_t v = 0; v < spec.variants.size(); ++v)
    for (std::size_t s = 0; s < spec.request_counts.size(); ++s) {
      double iteration_sum = 0.0;
      double lambda_sum = 0.0;
      bool all_converged = true;
      for (const Cell& cell : cells) {
        if (cell.size_idx != s) continue;
        const SolveResult& result = cell.results[v];
        rows.push_back({spec.variants[v].name, spec.request_counts[s],
                        std::to_string(cell.instance_idx),
                        static_cast<double>(result.iterations), result.lambda0,
                        result.converged});
        iteration_sum += static_cast<double>(result.iterations);
        lambda_sum += result.lambda0;
        all_converged = all_converged && result.converged;
      }
      const double n = static_cast<double>(spec.instances_per_cell);
      rows.push_back({spec.variants[v].name, spec.request_counts[s], "mean",
                      iteration_sum / n, lambda_sum / n, all_converged});
    }
  return rows;
}

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "variant,requests,instance,iterations,lambda0,converged\n";
  for (const BenchRow& row : rows) {
    out << row.variant << ',' << row.requests << ',' << row.instance << ','
        << detail::format_number(row.iterations) << ','
        << detail::format_number(row.lambda0) << ',' << (row.converged ? 1 : 0)
        << '\n';
  }
}

inline void save_bench_csv(const std::vector<BenchRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  write_bench_csv(out, rows);
}

}  // namespace alphafair

#endif  // ALPHAFAIR_EXPERIMENTS_HPP
