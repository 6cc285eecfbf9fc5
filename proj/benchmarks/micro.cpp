#include <benchmark/benchmark.h>

#include <random>

#include "zipper/bench_suite.hpp"
#include "zipper/energetics.hpp"
#include "zipper/optimizer.hpp"
#include "zipper/pdb.hpp"

using namespace zipper;

namespace {

std::vector<double> cluster(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> x;
  while (x.size() < 3 * n) {
    double p[3] = {u(rng), u(rng), u(rng)};
    bool ok = true;
    for (std::size_t j = 0; j < x.size(); j += 3) {
      double dx = p[0] - x[j], dy = p[1] - x[j + 1], dz = p[2] - x[j + 2];
      ok = ok && dx * dx + dy * dy + dz * dz > 0.64;
    }
    if (ok)
      x.insert(x.end(), p, p + 3);
  }
  return x;
}

void BM_LjEnergy(benchmark::State& st) {
  auto x = cluster(static_cast<std::size_t>(st.range(0)));
  LJParams p(1, 1);
  for (auto _ : st)
    benchmark::DoNotOptimize(lj_cluster_energy(x, p));
}
BENCHMARK(BM_LjEnergy)->Arg(4)->Arg(16)->Arg(64);

void BM_LjEnergyGradient(benchmark::State& st) {
  auto x = cluster(static_cast<std::size_t>(st.range(0)));
  std::vector<double> g(x.size());
  LJParams p(1, 1);
  for (auto _ : st)
    benchmark::DoNotOptimize(lj_cluster_energy_gradient(x, p, std::nullopt, g));
}
BENCHMARK(BM_LjEnergyGradient)->Arg(4)->Arg(16)->Arg(64);

void BM_SaecSphere(benchmark::State& st) {
  Objective o = make_problem("sphere", static_cast<std::size_t>(st.range(0))).objective();
  OptimizerConfig cfg;
  cfg.max_evaluations = 20000;
  for (auto _ : st)
    benchmark::DoNotOptimize(minimize_saec(o, cfg).best_value);
}
BENCHMARK(BM_SaecSphere)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_PdbParseWrite(benchmark::State& st) {
  const std::string text = write_pdb(read_pdb_file(ZIPPER_TEST_DATA_DIR "/gymlgs_template.pdb"));
  for (auto _ : st)
    benchmark::DoNotOptimize(write_pdb(parse_pdb(text)));
  st.SetBytesProcessed(static_cast<std::int64_t>(st.iterations() * text.size()));
}
BENCHMARK(BM_PdbParseWrite);

} // namespace

BENCHMARK_MAIN();
