/*
 * This code is part of gsteer.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <benchmark/benchmark.h>

#include <numbers>

#include "gsteer/classical.hpp"
#include "gsteer/criterion.hpp"
#include "gsteer/oscillator.hpp"
#include "gsteer/sampler.hpp"

using namespace gsteer;

static void BM_QuantumPredictions(benchmark::State& state) {
  const auto p = bmv::BmvParams::from_k(1e-2, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bmv::quantum_predictions(p));
  }
}
BENCHMARK(BM_QuantumPredictions);

static void BM_ClassicalVisibilities(benchmark::State& state) {
  const auto p = bmv::BmvParams::from_k(1e-2, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(classical::classical_visibilities(p));
  }
}
BENCHMARK(BM_ClassicalVisibilities);

static void BM_EvaluateCriterion(benchmark::State& state) {
  const auto p = bmv::BmvParams::from_k(1e-3, 1.0);
  const criterion::DeviceModel device{1e-4, 1e6, 86400.0, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(criterion::evaluate_criterion(p, device));
  }
}
BENCHMARK(BM_EvaluateCriterion);

static void BM_ThermalQuadrature(benchmark::State& state) {
  const osc::OscillatorParams p{1.0, 0.05, std::numbers::pi, 0.1,
                                static_cast<double>(state.range(0)) / 100.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(osc::thermal_visibility(p));
  }
}
BENCHMARK(BM_ThermalQuadrature)->Arg(10)->Arg(50)->Arg(100);

static void BM_SampleShots(benchmark::State& state) {
  const auto p = bmv::BmvParams::from_k(1e-2, 1.0);
  const criterion::DeviceModel device{1e-4, 1e6, 86400.0, 0.5};
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        mc::sample_and_estimate(mc::ModelSpec{}, p, device, n, 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleShots)->Arg(100000);

BENCHMARK_MAIN();
