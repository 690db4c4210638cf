#include <benchmark/benchmark.h>

#include <cmath>

#include "spheredpp/likelihood.hpp"
#include "spheredpp/models.hpp"
#include "spheredpp/sampler.hpp"
#include "spheredpp/spectra.hpp"

using namespace spheredpp;

namespace {

void BM_InvertPsi(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto psi = [](double s) { return multiquadric_psi(1.0, 0.5, s); };
  for (auto _ : state) benchmark::DoNotOptimize(d_schoenberg_from_psi(psi, Dimension(2), n));
}
BENCHMARK(BM_InvertPsi)->Arg(16)->Arg(64)->Arg(256);

void BM_SchoenbergToD(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> w(n + 1);
  for (int l = 0; l <= n; ++l) w[l] = std::pow(0.5, l + 1);
  const SchoenbergSeq beta(w, std::pow(0.5, n + 1));
  for (auto _ : state) benchmark::DoNotOptimize(schoenberg_to_d(beta, Dimension(3), n));
}
BENCHMARK(BM_SchoenbergToD)->Arg(32)->Arg(128)->Arg(512);

void BM_SampleProjection(benchmark::State& state) {
  const auto spec = most_repulsive_spectrum(static_cast<int>(state.range(0)), Dimension(2));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(sample_dpp(spec, seed++));
}
BENCHMARK(BM_SampleProjection)->Arg(25)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_SampleMultiquadric(benchmark::State& state) {
  // delta chosen so that eta sits at half of eta_max
  const double eta = static_cast<double>(state.range(0));
  const IsotropicModel m{Multiquadric{1.0, multiquadric_delta_for_eta_max(1.0, 2.0 * eta)},
                         Dimension(2), Mode::Kernel, eta};
  const auto spec = kernel_spectrum(m);
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(sample_dpp(spec, seed++));
}
BENCHMARK(BM_SampleMultiquadric)->Arg(3)->Arg(30)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_NewtonMle(benchmark::State& state) {
  const IsotropicModel m{Multiquadric{1.0, 0.5}, Dimension(2), Mode::Density, 40.0};
  const auto pattern = sample_dpp(m, 99).pattern;
  const auto spec = scaled_fit_spec(m.family, m.dim);
  for (auto _ : state) benchmark::DoNotOptimize(newton_mle(pattern, spec));
}
BENCHMARK(BM_NewtonMle)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
