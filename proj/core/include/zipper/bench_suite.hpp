// Test problems with known global minima and a seeded harness that runs
// SAEC repeatedly on each (problem, dimension) cell.

#ifndef ZIPPER_BENCH_SUITE_HPP_
#define ZIPPER_BENCH_SUITE_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "optimizer.hpp"

namespace zipper {

struct TestProblem {
  std::string name;
  std::size_t dimension;
  double lower;             // same box on every coordinate
  double upper;
  double optimum;           // known global minimum value
  double tolerance;         // success: f <= optimum + tolerance
  double required_rate;     // fraction of runs that must succeed
  std::function<double(std::span<const double>)> f;

  Objective objective() const;
};

double sphere(std::span<const double> x);
double rosenbrock(std::span<const double> x);
double rastrigin(std::span<const double> x);
double ackley(std::span<const double> x);
double griewank(std::span<const double> x);
double schwefel_226(std::span<const double> x);
/// Reduced-unit LJ cluster energy of the flat 3N vector.
double lj_cluster_reduced(std::span<const double> x);

/// Names accepted by make_problem.
const std::vector<std::string>& classic_problem_names();

/// LJ-cluster problems ignore `dimension` and use 3N. Throws ConfigError for
/// unknown names.
TestProblem make_problem(const std::string& name, std::size_t dimension);

/// Operator settings used for the classic suite: large population, uniform
/// crossover, one-coordinate mutation, independent restart epochs until the
/// budget (2e5 evaluations) runs out.
OptimizerConfig benchmark_config();

struct BenchmarkCell {
  std::string problem;
  std::size_t dim = 0;
  std::size_t runs = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  double required_rate = 0.0;
  double target = 0.0;       // optimum + tolerance
  double best = 0.0;         // best value over all runs
  double median_evals = 0.0;
  bool passed = false;
};

struct BenchmarkReport {
  std::string suite;
  std::uint64_t seed = 0;
  OptimizerConfig config;
  std::vector<BenchmarkCell> cells;
  bool all_passed = false;
};

/// Runs `runs` independent seeded optimizations per cell. Run r of a cell
/// uses a seed derived from (cfg.seed, problem, dim, r), and stops at the
/// problem's target. `problems` empty = whole suite. `threads` 0 = hardware
/// concurrency; results do not depend on it.
BenchmarkReport run_benchmark(const std::string& suite, const std::vector<std::size_t>& dims,
                              std::size_t runs, const OptimizerConfig& cfg,
                              const std::vector<std::string>& problems = {},
                              unsigned threads = 0);

} // namespace zipper

#endif
