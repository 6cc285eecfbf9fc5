// Simulated-annealing evolutionary computation (SAEC) for box-bounded global
// minimization, and a projected steepest-descent refiner.
//
// One SAEC generation, at temperature T:
//   1. every parent x spawns `offspring_per_parent` children
//        y = clamp(x' + N(0, s^2)),  s_j = step_scale * (hi_j - lo_j) * T / T0
//      x' is x, or with probability `crossover_rate` a uniform crossover of x
//      with a random population member. Each coordinate is perturbed with
//      probability `mutation_rate` (one random coordinate always is).
//   2. a child is accepted when f(y) <= f(x) or U(0,1) < exp(-(f(y) - f(x)) / T)
//   3. the best `population_size` of parents + accepted children survive
//   4. T <- cooling_factor * T
// After `stagnation_window` generations in which the population's best value
// has not dropped by more than stagnation_tolerance * |best|, the population
// is re-drawn uniformly and T reset to T0, up to `restarts` times. The global
// best is always kept in the result; `restart_keeps_best` also seeds it into
// the new population. Each restart draws from its own generator stream
// derived from `seed`, so a run is a pure function of (objective, config).

#ifndef ZIPPER_OPTIMIZER_HPP_
#define ZIPPER_OPTIMIZER_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace zipper {

struct Objective {
  std::size_t dimension = 0;
  std::function<double(std::span<const double>)> evaluate;
  /// Optional; writes df/dx into the second argument.
  std::function<void(std::span<const double>, std::span<double>)> gradient;
  std::vector<double> lower;
  std::vector<double> upper;
  /// Optional point placed in the first SAEC population.
  std::vector<double> start;

  /// Throws ConfigError on inconsistent sizes or lo >= hi.
  void validate() const;
};

struct OptimizerConfig {
  std::size_t population_size = 20;
  std::size_t offspring_per_parent = 5;
  /// Unset: spread (max - min) of the first population's values.
  std::optional<double> initial_temperature;
  double cooling_factor = 0.95;
  double step_scale = 0.1;
  std::size_t max_evaluations = 200000;
  std::size_t stagnation_window = 50;
  double stagnation_tolerance = 0.0;
  std::size_t restarts = 5;
  bool restart_keeps_best = true;
  double crossover_rate = 0.0;
  double mutation_rate = 1.0;
  std::uint64_t seed = 0x5eed5eedULL;
  /// Stop with Termination::tolerance once best_value <= target_value.
  std::optional<double> target_value;

  void validate() const;
};

enum class Termination { budget, stagnation, tolerance };

std::string to_string(Termination t);

struct TracePoint {
  std::size_t evaluations;
  double best_value;
  bool operator==(const TracePoint&) const = default;
};

struct OptimizationResult {
  std::vector<double> best_point;
  double best_value = 0.0;
  std::size_t evaluations_used = 0;
  std::vector<TracePoint> trace;   // best-so-far, non-increasing
  Termination terminated_by = Termination::budget;
  std::size_t generations = 0;     // SAEC generations or refiner iterations
  std::size_t restarts_used = 0;

  bool operator==(const OptimizationResult&) const = default;
};

OptimizationResult minimize_saec(const Objective& obj, const OptimizerConfig& cfg);

/// Steepest descent with Armijo backtracking (c = 1e-4, step halving),
/// projected onto the bounds. Stops when |grad| <= tol (tolerance), after
/// max_iters iterations (budget) or when no descent step exists (stagnation).
OptimizationResult local_refine(const Objective& obj, std::span<const double> x0, double tol,
                                std::size_t max_iters);

/// SplitMix64 mixing step used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t x);

} // namespace zipper

#endif
