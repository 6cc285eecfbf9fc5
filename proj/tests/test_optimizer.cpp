#include <gtest/gtest.h>

#include <cmath>

#include "zipper/bench_suite.hpp"
#include "zipper/error.hpp"
#include "zipper/optimizer.hpp"

using namespace zipper;

namespace {

Objective sphere_objective(std::size_t n, double lo = -5, double hi = 5) {
  Objective o;
  o.dimension = n;
  o.evaluate = [](std::span<const double> x) { return sphere(x); };
  o.gradient = [](std::span<const double> x, std::span<double> g) {
    for (std::size_t i = 0; i < x.size(); ++i)
      g[i] = 2 * x[i];
  };
  o.lower.assign(n, lo);
  o.upper.assign(n, hi);
  return o;
}

} // namespace

TEST(Saec, SameSeedSameResult) {
  OptimizerConfig cfg;
  cfg.max_evaluations = 5000;
  auto a = minimize_saec(sphere_objective(4), cfg);
  auto b = minimize_saec(sphere_objective(4), cfg);
  EXPECT_EQ(a, b);
  cfg.seed += 1;
  EXPECT_NE(minimize_saec(sphere_objective(4), cfg).best_point, a.best_point);
}

TEST(Saec, TraceIsMonotoneAndWithinBudget) {
  OptimizerConfig cfg;
  cfg.max_evaluations = 3000;
  auto r = minimize_saec(sphere_objective(3), cfg);
  EXPECT_LE(r.evaluations_used, cfg.max_evaluations);
  ASSERT_FALSE(r.trace.empty());
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    EXPECT_LE(r.trace[i].best_value, r.trace[i - 1].best_value);
    EXPECT_GE(r.trace[i].evaluations, r.trace[i - 1].evaluations);
  }
  EXPECT_EQ(r.trace.back().best_value, r.best_value);
}

TEST(Saec, StaysInsideBounds) {
  OptimizerConfig cfg = benchmark_config();
  cfg.max_evaluations = 5000;
  Objective o = sphere_objective(5, 1.0, 2.0);  // optimum on the lower face
  auto r = minimize_saec(o, cfg);
  for (double v : r.best_point) {
    EXPECT_GE(v, 1.0);
    EXPECT_LE(v, 2.0);
  }
  EXPECT_NEAR(r.best_value, 5.0, 1e-2);
}

TEST(Saec, TargetStopsEarly) {
  OptimizerConfig cfg;
  cfg.target_value = 1e-2;
  auto r = minimize_saec(sphere_objective(2), cfg);
  EXPECT_EQ(r.terminated_by, Termination::tolerance);
  EXPECT_LE(r.best_value, 1e-2);
  EXPECT_LT(r.evaluations_used, cfg.max_evaluations);
}

TEST(Saec, StartPointIsInTheFirstPopulation) {
  Objective o = sphere_objective(3);
  o.start = {0, 0, 0};
  OptimizerConfig cfg;
  cfg.max_evaluations = 200;
  EXPECT_EQ(minimize_saec(o, cfg).best_value, 0.0);
}

TEST(Saec, StagnationRestartsAreCounted) {
  Objective o = sphere_objective(2);
  o.evaluate = [](std::span<const double>) { return 1.0; };
  OptimizerConfig cfg;
  cfg.stagnation_window = 5;
  cfg.restarts = 3;
  auto r = minimize_saec(o, cfg);
  EXPECT_EQ(r.restarts_used, 3u);
  EXPECT_EQ(r.terminated_by, Termination::stagnation);
}

TEST(Saec, NanObjectiveIsEvaluationError) {
  Objective o = sphere_objective(2);
  o.evaluate = [](std::span<const double> x) { return x[0] > 0 ? NAN : 1.0; };
  try {
    minimize_saec(o, OptimizerConfig{});
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    ASSERT_EQ(e.point.size(), 2u);
    EXPECT_GT(e.point[0], 0.0);
  }
}

TEST(Saec, ConfigValidation) {
  auto bad = [](auto mutate) {
    OptimizerConfig c;
    mutate(c);
    return c;
  };
  Objective o = sphere_objective(2);
  EXPECT_THROW(minimize_saec(o, bad([](auto& c) { c.population_size = 0; })), ConfigError);
  EXPECT_THROW(minimize_saec(o, bad([](auto& c) { c.cooling_factor = 1.0; })), ConfigError);
  EXPECT_THROW(minimize_saec(o, bad([](auto& c) { c.step_scale = 0; })), ConfigError);
  EXPECT_THROW(minimize_saec(o, bad([](auto& c) { c.crossover_rate = 1.5; })), ConfigError);
  EXPECT_THROW(minimize_saec(o, bad([](auto& c) { c.stagnation_tolerance = -1; })),
               ConfigError);
  Objective wrong = o;
  wrong.upper[0] = wrong.lower[0];
  EXPECT_THROW(minimize_saec(wrong, OptimizerConfig{}), ConfigError);
}

TEST(Refine, ConvergesOnQuadratic) {
  Objective o = sphere_objective(3);
  std::vector<double> x0{3, -2, 1};
  auto r = local_refine(o, x0, 1e-10, 1000);
  EXPECT_EQ(r.terminated_by, Termination::tolerance);
  for (double v : r.best_point)
    EXPECT_NEAR(v, 0.0, 1e-10);
}

TEST(Refine, ProjectsOntoBounds) {
  Objective o = sphere_objective(2, 1.0, 3.0);
  std::vector<double> x0{2.5, 2.5};
  auto r = local_refine(o, x0, 1e-10, 1000);
  EXPECT_DOUBLE_EQ(r.best_point[0], 1.0);
  EXPECT_DOUBLE_EQ(r.best_point[1], 1.0);
}

TEST(Refine, NeedsGradient) {
  Objective o = sphere_objective(2);
  o.gradient = nullptr;
  std::vector<double> x0{1, 1};
  EXPECT_THROW(local_refine(o, x0, 1e-8, 10), ConfigError);
}

TEST(Seeds, MixSeedSpreads) {
  EXPECT_NE(mix_seed(0), mix_seed(1));
  EXPECT_EQ(mix_seed(42), mix_seed(42));
}
