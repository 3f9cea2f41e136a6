#include <benchmark/benchmark.h>

#include <random>

#include "hddist/boxplot.hpp"
#include "hddist/distance.hpp"
#include "hddist/parallel.hpp"
#include "hddist/reference.hpp"
#include "hddist/standardise.hpp"

using namespace hddist;

namespace {

DataMatrix make_data(std::size_t n, std::size_t p) {
  std::mt19937_64 gen(12345);
  std::student_t_distribution<double> t(4.0);
  std::vector<double> v(n * p);
  for (auto& x : v) x = t(gen);
  return DataMatrix::from_columns(n, p, std::move(v));
}

AggregationOrder order_arg(std::int64_t q) { return q == 0 ? AggregationOrder::infinity() : AggregationOrder(double(q)); }

// args: n, p, q (0 = inf)
void BM_pairwise_parallel(benchmark::State& st) {
  const auto x = make_data(st.range(0), st.range(1));
  const auto q = order_arg(st.range(2));
  for (auto _ : st) benchmark::DoNotOptimize(pairwise(x, q));
  st.counters["threads"] = thread_count();
}

void BM_pairwise_serial(benchmark::State& st) {
  const auto x = make_data(st.range(0), st.range(1));
  const auto q = order_arg(st.range(2));
  for (auto _ : st) benchmark::DoNotOptimize(reference::pairwise_serial(x, q));
}

void BM_mad_fit_parallel(benchmark::State& st) {
  const auto x = make_data(st.range(0), st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(fit_linear_scaling(x, StandardisationMethod::mad));
}

void BM_mad_fit_serial(benchmark::State& st) {
  const auto x = make_data(st.range(0), st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(reference::fit_linear_scaling_serial(x, StandardisationMethod::mad));
}

void BM_boxplot_parallel(benchmark::State& st) {
  const auto x = make_data(st.range(0), st.range(1));
  for (auto _ : st) {
    const auto params = fit_boxplot(x);
    benchmark::DoNotOptimize(apply_boxplot(x, params, false));
  }
}

void BM_boxplot_serial(benchmark::State& st) {
  const auto x = make_data(st.range(0), st.range(1));
  for (auto _ : st) {
    const auto params = reference::fit_boxplot_serial(x);
    benchmark::DoNotOptimize(reference::apply_boxplot_serial(x, params, false));
  }
}

}  // namespace

BENCHMARK(BM_pairwise_parallel)->Args({100, 2000, 1})->Args({100, 2000, 3})->Args({200, 1000, 0})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pairwise_serial)->Args({100, 2000, 1})->Args({100, 2000, 3})->Args({200, 1000, 0})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mad_fit_parallel)->Args({100, 2000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mad_fit_serial)->Args({100, 2000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_boxplot_parallel)->Args({100, 2000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_boxplot_serial)->Args({100, 2000})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
