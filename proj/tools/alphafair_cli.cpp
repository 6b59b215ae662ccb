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

#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "alphafair/alphafair.hpp"

namespace {

using namespace alphafair;

PartitionSpec parse_partition(const std::string& text) {
  if (text == "single") return PartitionSpec::single();
  if (text == "per-link") return PartitionSpec::per_link();
  if (text.rfind("chunks:", 0) == 0) {
    const int count = std::stoi(text.substr(7));
    if (count < 1) throw std::runtime_error("--partition chunks:<P> needs P >= 1");
    return PartitionSpec::chunks(static_cast<std::size_t>(count));
  }
  throw std::runtime_error("--partition must be single, per-link, or chunks:<P>");
}

void parse_lambda0(const std::string& text, PenaltyMode& mode, double& fixed) {
  if (text == "lb") {
    mode = PenaltyMode::local_bound;
  } else if (text == "mb") {
    mode = PenaltyMode::soa_bound;
  } else if (text.rfind("fixed:", 0) == 0) {
    mode = PenaltyMode::fixed;
    fixed = std::stod(text.substr(6));
    if (!(fixed > 0.0) || !std::isfinite(fixed))
      throw std::runtime_error("--lambda0 fixed:<v> needs a positive finite v");
  } else {
    throw std::runtime_error("--lambda0 must be lb, mb, or fixed:<v>");
  }
}

BenchVariant parse_variant(const std::string& text, bool rb) {
  BenchVariant variant;
  variant.name = text;
  variant.rb = rb;
  parse_lambda0(text, variant.penalty_mode, variant.fixed_lambda0);
  return variant;
}

const CLI::Validator UnitInterval(
    [](std::string& value) {
      const double v = std::stod(value);
      return (v > 0.0 && v <= 1.0) ? std::string{} : std::string("must lie in (0, 1]");
    },
    "(0,1]");

std::string fmt(double value) { return detail::format_number(value); }

void print_pair_ratio(const char* label, double lo, double hi) {
  std::cout << label << ": " << fmt(hi > 0.0 ? lo / hi : 1.0) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted alpha-fair allocation: bounds, FD-ADMM solver, benchmarks"};
  app.require_subcommand(1);

  // generate -------------------------------------------------------------
  GeneratorConfig gen;
  std::string gen_path;
  auto* cmd_gen = app.add_subcommand("generate", "write a random instance file");
  cmd_gen->add_option("path", gen_path, "output instance file")->required();
  cmd_gen->add_option("--nodes", gen.node_count, "graph node count");
  cmd_gen->add_option("--attach", gen.attachment, "edges attached per new node");
  cmd_gen->add_option("--requests", gen.request_count, "number of requests");
  cmd_gen->add_option("--delta-w", gen.delta_w, "weights drawn from [delta_w, 1]")
      ->check(UnitInterval);
  cmd_gen->add_option("--delta-c", gen.delta_c, "capacities drawn from [delta_c, 1] * scale")
      ->check(UnitInterval);
  cmd_gen->add_option("--capacity-scale", gen.capacity_scale, "capacity multiplier")
      ->check(CLI::PositiveNumber);
  cmd_gen->add_option("--seed", gen.seed, "RNG seed");
  cmd_gen->callback([&] {
    const Instance inst = generate_instance(gen);
    save_instance(inst, gen_path);
    std::cout << "links: " << inst.link_count() << '\n'
              << "requests: " << inst.request_count() << '\n';
    double w_lo = inst.weight(0), w_hi = inst.weight(0);
    for (std::size_t r = 0; r < inst.request_count(); ++r) {
      w_lo = std::min(w_lo, inst.weight(r));
      w_hi = std::max(w_hi, inst.weight(r));
    }
    double c_lo = inst.capacity(0), c_hi = inst.capacity(0);
    for (std::size_t j = 0; j < inst.link_count(); ++j) {
      c_lo = std::min(c_lo, inst.capacity(j));
      c_hi = std::max(c_hi, inst.capacity(j));
    }
    print_pair_ratio("weight_ratio", w_lo, w_hi);
    print_pair_ratio("capacity_ratio", c_lo, c_hi);
    std::cout << "wrote: " << gen_path << '\n';
  });

  // bound-sweep ----------------------------------------------------------
  SweepSpec sweep;
  sweep.alphas = {0.5, 1.0, 2.0};
  std::string sweep_path;
  auto* cmd_sweep = app.add_subcommand("bound-sweep", "compare the two lower bounds over a grid");
  cmd_sweep->add_option("path", sweep_path, "output CSV (stdout when omitted)");
  cmd_sweep->add_option("--alpha", sweep.alphas, "fairness exponents")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  cmd_sweep->add_option("--delta-w", sweep.delta_ws, "weight heterogeneity grid")
      ->delimiter(',')
      ->check(UnitInterval);
  cmd_sweep->add_option("--delta-c", sweep.delta_cs, "capacity heterogeneity grid")
      ->delimiter(',')
      ->check(UnitInterval);
  cmd_sweep->add_option("--instances", sweep.instances_per_cell, "instances per cell")
      ->check(CLI::PositiveNumber);
  cmd_sweep->add_option("--nodes", sweep.base.node_count, "graph node count");
  cmd_sweep->add_option("--attach", sweep.base.attachment, "edges attached per new node");
  cmd_sweep->add_option("--requests", sweep.base.request_count, "requests per instance");
  cmd_sweep->add_option("--capacity-scale", sweep.base.capacity_scale, "capacity multiplier")
      ->check(CLI::PositiveNumber);
  cmd_sweep->add_option("--seed", sweep.base.seed, "RNG seed");
  cmd_sweep->callback([&] {
    const std::vector<SweepRow> rows = run_bound_sweep(sweep);
    if (sweep_path.empty())
      write_sweep_csv(std::cout, rows);
    else
      save_sweep_csv(rows, sweep_path);
  });

  // admm-bench -----------------------------------------------------------
  BenchSpec bench;
  std::string bench_path;
  std::vector<std::string> variant_names{"lb", "mb"};
  std::string bench_partition = "per-link";
  std::string bench_rb = "on";
  bool bench_serial = false;
  auto* cmd_bench = app.add_subcommand("admm-bench", "iteration counts per penalty variant");
  cmd_bench->add_option("path", bench_path, "output CSV (stdout when omitted)");
  cmd_bench->add_option("--alpha", bench.alpha, "fairness exponent")->check(CLI::PositiveNumber);
  cmd_bench->add_option("--tol", bench.tolerance, "residual tolerance")->check(CLI::PositiveNumber);
  cmd_bench->add_option("--max-iter", bench.max_iterations, "iteration cap")
      ->check(CLI::PositiveNumber);
  cmd_bench->add_option("--variants", variant_names, "lb, mb, or fixed:<v> (comma separated)")
      ->delimiter(',');
  cmd_bench->add_option("--sizes", bench.request_counts, "request counts (comma separated)")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  cmd_bench->add_option("--instances", bench.instances_per_cell, "instances per cell")
      ->check(CLI::PositiveNumber);
  cmd_bench->add_option("--partition", bench_partition, "single, per-link, or chunks:<P>");
  cmd_bench->add_option("--rb", bench_rb, "residual balancing")->check(CLI::IsMember({"on", "off"}));
  cmd_bench->add_option("--nodes", bench.base.node_count, "graph node count");
  cmd_bench->add_option("--attach", bench.base.attachment, "edges attached per new node");
  cmd_bench->add_option("--delta-w", bench.base.delta_w, "weights drawn from [delta_w, 1]")
      ->check(UnitInterval);
  cmd_bench->add_option("--delta-c", bench.base.delta_c, "capacities drawn from [delta_c, 1] * scale")
      ->check(UnitInterval);
  cmd_bench->add_option("--capacity-scale", bench.base.capacity_scale, "capacity multiplier")
      ->check(CLI::PositiveNumber);
  cmd_bench->add_option("--seed", bench.base.seed, "RNG seed");
  cmd_bench->add_flag("--serial", bench_serial, "disable cell-level parallelism");
  cmd_bench->callback([&] {
    bench.partition = parse_partition(bench_partition);
    bench.parallel = !bench_serial;
    bench.variants.clear();
    for (const std::string& name : variant_names)
      bench.variants.push_back(parse_variant(name, bench_rb == "on"));
    const std::vector<BenchRow> rows = run_admm_bench(bench);
    if (bench_path.empty())
      write_bench_csv(std::cout, rows);
    else
      save_bench_csv(rows, bench_path);
  });

  // solve ----------------------------------------------------------------
  std::string solve_path;
  SolverConfig solver;
  std::string solve_lambda0 = "lb";
  std::string solve_partition = "per-link";
  std::string solve_rb = "on";
  bool solve_verify = false;
  double kkt_tol = 1e-3;
  auto* cmd_solve = app.add_subcommand("solve", "run FD-ADMM on an instance file");
  cmd_solve->add_option("path", solve_path, "instance file")->required();
  cmd_solve->add_option("--alpha", solver.alpha, "fairness exponent")->check(CLI::PositiveNumber);
  cmd_solve->add_option("--tol", solver.tolerance, "residual tolerance")->check(CLI::PositiveNumber);
  cmd_solve->add_option("--max-iter", solver.max_iterations, "iteration cap")
      ->check(CLI::PositiveNumber);
  cmd_solve->add_option("--lambda0", solve_lambda0, "lb, mb, or fixed:<v>");
  cmd_solve->add_option("--partition", solve_partition, "single, per-link, or chunks:<P>");
  cmd_solve->add_option("--rb", solve_rb, "residual balancing")->check(CLI::IsMember({"on", "off"}));
  cmd_solve->add_flag("--verify", solve_verify, "check optimality conditions on the result");
  cmd_solve->add_option("--kkt-tol", kkt_tol, "verification tolerance")->check(CLI::PositiveNumber);
  cmd_solve->callback([&] {
    const Instance inst = load_instance(solve_path);
    parse_lambda0(solve_lambda0, solver.penalty_mode, solver.fixed_lambda0);
    solver.rb.enabled = (solve_rb == "on");
    const DomainPartition part = partition(inst, parse_partition(solve_partition));
    const SolveResult result = solve(inst, part, solver);

    std::cout << "links: " << inst.link_count() << '\n'
              << "requests: " << inst.request_count() << '\n'
              << "lambda0: " << fmt(result.lambda0) << '\n'
              << "iterations: " << result.iterations << '\n'
              << "converged: " << (result.converged ? "yes" : "no") << '\n'
              << "primal_residual: " << fmt(result.primal_residual) << '\n'
              << "dual_residual: " << fmt(result.dual_residual) << '\n';
    std::vector<double> weights(inst.request_count());
    for (std::size_t r = 0; r < weights.size(); ++r) weights[r] = inst.weight(r);
    std::cout << "objective: " << fmt(alpha_utility(weights, result.allocation, solver.alpha))
              << '\n';
    std::cout << "allocation:\n";
    for (std::size_t r = 0; r < inst.request_count(); ++r)
      std::cout << inst.request(r).id << ' ' << fmt(result.allocation[r]) << '\n';

    bool failed = !result.converged;
    if (solve_verify) {
      const KktReport report = verify_kkt(inst, solver.alpha, result.allocation, kkt_tol);
      std::cout << "kkt_max_violation: " << fmt(report.max_violation) << '\n'
                << "kkt: " << (report.satisfied ? "satisfied" : "violated") << '\n';
      failed = failed || !report.satisfied;
    }
    if (failed) throw std::runtime_error(result.converged ? "optimality check failed"
                                                          : "iteration cap reached");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
