#include "zipper/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>

#include "zipper/error.hpp"

namespace zipper {

namespace {

struct Member {
  std::vector<double> x;
  double f;
};

// Counts evaluations and turns objective failures into EvaluationError.
class Evaluator {
public:
  Evaluator(const Objective& obj, std::size_t budget) : obj_(obj), budget_(budget) {}

  bool exhausted() const { return used_ >= budget_; }
  std::size_t used() const { return used_; }

  double operator()(const std::vector<double>& x) {
    ++used_;
    double f;
    try {
      f = obj_.evaluate(x);
    } catch (const std::exception& e) {
      throw EvaluationError(std::string("objective failed: ") + e.what(), x);
    }
    if (std::isnan(f))
      throw EvaluationError("objective returned NaN", x);
    return f;
  }

private:
  const Objective& obj_;
  std::size_t budget_;
  std::size_t used_ = 0;
};

void clamp_into(std::vector<double>& x, const Objective& obj) {
  for (std::size_t j = 0; j < x.size(); ++j)
    x[j] = std::clamp(x[j], obj.lower[j], obj.upper[j]);
}

bool by_value(const Member& a, const Member& b) { return a.f < b.f; }

} // namespace

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::budget: return "budget";
    case Termination::stagnation: return "stagnation";
    case Termination::tolerance: return "tolerance";
  }
  return "unknown";
}

void Objective::validate() const {
  if (dimension < 1)
    throw ConfigError("objective dimension must be >= 1");
  if (!evaluate)
    throw ConfigError("objective has no evaluate function");
  if (lower.size() != dimension || upper.size() != dimension)
    throw ConfigError("bounds must have one entry per coordinate");
  for (std::size_t j = 0; j < dimension; ++j)
    if (!(lower[j] < upper[j]) || !std::isfinite(lower[j]) || !std::isfinite(upper[j]))
      throw ConfigError("bound " + std::to_string(j) + " must satisfy lo < hi");
  if (!start.empty() && start.size() != dimension)
    throw ConfigError("start point has wrong dimension");
}

void OptimizerConfig::validate() const {
  if (population_size < 1)
    throw ConfigError("population_size must be >= 1");
  if (offspring_per_parent < 1)
    throw ConfigError("offspring_per_parent must be >= 1");
  if (initial_temperature && !(*initial_temperature > 0.0 && std::isfinite(*initial_temperature)))
    throw ConfigError("initial_temperature must be > 0");
  if (!(cooling_factor > 0.0 && cooling_factor < 1.0))
    throw ConfigError("cooling_factor must lie in (0, 1)");
  if (!(step_scale > 0.0 && std::isfinite(step_scale)))
    throw ConfigError("step_scale must be > 0");
  if (max_evaluations < population_size)
    throw ConfigError("max_evaluations must be >= population_size");
  if (stagnation_window < 1)
    throw ConfigError("stagnation_window must be >= 1");
  if (!(stagnation_tolerance >= 0.0 && std::isfinite(stagnation_tolerance)))
    throw ConfigError("stagnation_tolerance must be >= 0");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0))
    throw ConfigError("crossover_rate must lie in [0, 1]");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0))
    throw ConfigError("mutation_rate must lie in [0, 1]");
  if (target_value && std::isnan(*target_value))
    throw ConfigError("target_value must not be NaN");
}

OptimizationResult minimize_saec(const Objective& obj, const OptimizerConfig& cfg) {
  obj.validate();
  cfg.validate();
  const std::size_t n = obj.dimension;
  Evaluator eval(obj, cfg.max_evaluations);
  OptimizationResult res;
  res.best_value = std::numeric_limits<double>::infinity();

  auto record = [&](const Member& m) {
    if (m.f < res.best_value) {
      res.best_value = m.f;
      res.best_point = m.x;
      res.trace.push_back({eval.used(), m.f});
    }
  };
  auto reached_target = [&] { return cfg.target_value && res.best_value <= *cfg.target_value; };

  std::size_t restart = 0;
  std::mt19937_64 rng(mix_seed(cfg.seed));
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto index_below = [&](std::size_t k) {
    return std::min(k - 1, static_cast<std::size_t>(unit(rng) * static_cast<double>(k)));
  };

  // Fresh population: the seed point (start, or the global best on restarts
  // when configured) followed by uniform draws. Stops early when the budget
  // runs out or the target is hit.
  auto populate = [&](std::vector<Member>& pop) {
    pop.clear();
    if (restart == 0 && !obj.start.empty()) {
      std::vector<double> x = obj.start;
      clamp_into(x, obj);
      Member m{x, eval(x)};
      record(m);
      pop.push_back(std::move(m));
    } else if (restart > 0 && cfg.restart_keeps_best) {
      pop.push_back({res.best_point, res.best_value});
    }
    while (pop.size() < cfg.population_size && !eval.exhausted() && !reached_target()) {
      std::vector<double> x(n);
      for (std::size_t j = 0; j < n; ++j)
        x[j] = obj.lower[j] + unit(rng) * (obj.upper[j] - obj.lower[j]);
      Member m{x, eval(x)};
      record(m);
      pop.push_back(std::move(m));
    }
    std::stable_sort(pop.begin(), pop.end(), by_value);
  };
  auto pop_best = [](const std::vector<Member>& pop) {
    return pop.empty() ? std::numeric_limits<double>::infinity() : pop.front().f;
  };

  std::vector<Member> pop;
  populate(pop);

  double t0 = 1.0;
  if (cfg.initial_temperature) {
    t0 = *cfg.initial_temperature;
  } else {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const Member& m : pop)
      if (std::isfinite(m.f)) {
        lo = std::min(lo, m.f);
        hi = std::max(hi, m.f);
      }
    if (hi > lo && std::isfinite(hi - lo))
      t0 = hi - lo;
  }
  double temp = t0;
  // Stagnation is judged on the population's own best, so an epoch started
  // without the global best is not cut short for failing to beat it at once.
  double ref = pop_best(pop);
  std::size_t stale = 0;
  std::vector<double> sd(n);
  std::vector<Member> pool;

  for (;;) {
    if (reached_target()) {
      res.terminated_by = Termination::tolerance;
      break;
    }
    if (eval.exhausted() || pop.empty()) {
      res.terminated_by = Termination::budget;
      break;
    }
    for (std::size_t j = 0; j < n; ++j)
      sd[j] = cfg.step_scale * (obj.upper[j] - obj.lower[j]) * (temp / t0);
    pool = pop;
    bool stop = false;
    for (const Member& parent : pop) {
      for (std::size_t k = 0; k < cfg.offspring_per_parent; ++k) {
        if (eval.exhausted() || reached_target()) {
          stop = true;
          break;
        }
        std::vector<double> y(parent.x);
        if (cfg.crossover_rate > 0.0 && pop.size() > 1 && unit(rng) < cfg.crossover_rate) {
          const Member& mate = pop[index_below(pop.size())];
          for (std::size_t j = 0; j < n; ++j)
            if (unit(rng) < 0.5)
              y[j] = mate.x[j];
        }
        if (cfg.mutation_rate >= 1.0) {
          for (std::size_t j = 0; j < n; ++j)
            y[j] += sd[j] * gauss(rng);
        } else {
          std::size_t forced = index_below(n);
          for (std::size_t j = 0; j < n; ++j)
            if (j == forced || unit(rng) < cfg.mutation_rate)
              y[j] += sd[j] * gauss(rng);
        }
        clamp_into(y, obj);
        Member child{std::move(y), 0.0};
        child.f = eval(child.x);
        record(child);
        double delta = child.f - parent.f;
        if (delta <= 0.0 || unit(rng) < std::exp(-delta / temp))
          pool.push_back(std::move(child));
      }
      if (stop)
        break;
    }
    std::stable_sort(pool.begin(), pool.end(), by_value);
    if (pool.size() > cfg.population_size)
      pool.resize(cfg.population_size);
    pop.swap(pool);
    ++res.generations;
    temp = std::max(temp * cfg.cooling_factor, std::numeric_limits<double>::min());
    if (stop)
      continue;  // loop head reports budget or tolerance

    double cur = pop_best(pop);
    if (cur < ref - cfg.stagnation_tolerance * std::fabs(ref)) {
      ref = cur;
      stale = 0;
    } else {
      ++stale;
    }
    if (stale >= cfg.stagnation_window) {
      if (restart >= cfg.restarts) {
        res.terminated_by = Termination::stagnation;
        break;
      }
      ++restart;
      ++res.restarts_used;
      rng.seed(mix_seed(cfg.seed ^ mix_seed(restart)));
      gauss.reset();
      populate(pop);
      temp = t0;
      stale = 0;
      ref = pop_best(pop);
    }
  }
  res.evaluations_used = eval.used();
  return res;
}

OptimizationResult local_refine(const Objective& obj, std::span<const double> x0, double tol,
                                std::size_t max_iters) {
  obj.validate();
  if (!obj.gradient)
    throw ConfigError("local_refine needs an objective gradient");
  if (x0.size() != obj.dimension)
    throw ConfigError("start point has wrong dimension");
  for (std::size_t j = 0; j < x0.size(); ++j)
    if (!(x0[j] >= obj.lower[j] && x0[j] <= obj.upper[j]))
      throw ConfigError("start point lies outside the bounds");

  const std::size_t n = obj.dimension;
  constexpr double kArmijo = 1e-4;
  std::vector<double> x(x0.begin(), x0.end());
  std::vector<double> g(n), trial(n);
  std::size_t evals = 0;

  auto value_at = [&](const std::vector<double>& p, const std::vector<double>& last_good) {
    ++evals;
    double f;
    try {
      f = obj.evaluate(p);
    } catch (const std::exception& e) {
      throw RefinementError(std::string("objective failed: ") + e.what(), last_good);
    }
    if (!std::isfinite(f))
      throw RefinementError("non-finite objective value", last_good);
    return f;
  };
  auto gradient_at = [&](const std::vector<double>& p) {
    obj.gradient(p, g);
    for (double v : g)
      if (!std::isfinite(v))
        throw RefinementError("non-finite gradient", p);
  };

  OptimizationResult res;
  double f = value_at(x, x);
  gradient_at(x);
  res.trace.push_back({evals, f});
  double step = 1.0;

  for (;;) {
    double gnorm = 0.0;
    for (double v : g)
      gnorm += v * v;
    gnorm = std::sqrt(gnorm);
    if (gnorm <= tol) {
      res.terminated_by = Termination::tolerance;
      break;
    }
    if (res.generations >= max_iters) {
      res.terminated_by = Termination::budget;
      break;
    }
    bool accepted = false;
    double a = step;
    double ft = f;
    for (int k = 0; k < 80; ++k) {
      double slope = 0.0;
      bool moved = false;
      for (std::size_t j = 0; j < n; ++j) {
        trial[j] = std::clamp(x[j] - a * g[j], obj.lower[j], obj.upper[j]);
        slope += g[j] * (trial[j] - x[j]);
        moved = moved || trial[j] != x[j];
      }
      if (!moved)
        break;
      if (slope < 0.0) {
        ft = value_at(trial, x);
        if (ft <= f + kArmijo * slope && ft < f) {
          accepted = true;
          break;
        }
      }
      a *= 0.5;
    }
    if (!accepted) {
      res.terminated_by = Termination::stagnation;
      break;
    }
    x.swap(trial);
    f = ft;
    gradient_at(x);
    ++res.generations;
    step = std::min(a * 2.0, 1e6);
    res.trace.push_back({evals, f});
  }
  res.best_point = x;
  res.best_value = f;
  res.evaluations_used = evals;
  return res;
}

} // namespace zipper
