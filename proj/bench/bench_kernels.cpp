#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "lovespec/kernels.hpp"

namespace k = lovespec::kernels;

namespace {

std::vector<double> samples(std::size_t n, double dk) {
  std::vector<double> a(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = dk * static_cast<double>(i);
    a[i] = -1.0 / (1.0 + t * t) + 0.1 * std::cos(2.0 * t) / (1.0 + t * t);
  }
  return a;
}

std::vector<double> kernel(std::size_t n) {
  std::vector<double> g(n * n);
  const double dx = 1.0 / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double x = dx * static_cast<double>(i);
      const double y = dx * static_cast<double>(j);
      g[i * n + j] = 0.5 * (std::exp(x + y) + std::exp(std::abs(x - y)));
    }
  }
  return g;
}

void BM_filon_parallel(benchmark::State& st) {
  const auto a = samples(8000, 0.025);
  const auto count = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(k::filon_cosine(a, 0.025, count, 1.0 / count));
}

void BM_filon_serial(benchmark::State& st) {
  const auto a = samples(8000, 0.025);
  const auto count = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(k::filon_cosine_serial(a, 0.025, count, 1.0 / count));
}

void BM_gl_rows_parallel(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto g = kernel(n);
  for (auto _ : st) benchmark::DoNotOptimize(k::solve_gl_rows(g, n, 1.0 / (n - 1)));
}

void BM_gl_rows_serial(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto g = kernel(n);
  for (auto _ : st) benchmark::DoNotOptimize(k::solve_gl_rows_serial(g, n, 1.0 / (n - 1)));
}

}  // namespace

BENCHMARK(BM_filon_parallel)->Arg(1001)->Arg(4001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_filon_serial)->Arg(1001)->Arg(4001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gl_rows_parallel)->Arg(101)->Arg(201)->Arg(401)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gl_rows_serial)->Arg(101)->Arg(201)->Arg(401)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  k::apply_thread_environment();
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
