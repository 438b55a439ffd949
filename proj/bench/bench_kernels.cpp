// Copyright 2026 The Ambiset Authors
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

// Serial reference against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include <vector>

#include "ambiset/ambiguity_distance.hpp"
#include "ambiset/convergence_lab.hpp"
#include "ambiset/transport.hpp"

namespace {

using namespace ambiset;

SpacePtr line(std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(i) / static_cast<double>(n);
  return share(line_space(x));
}

std::vector<DiscreteMeasure> measures(const SpacePtr& s, std::size_t count, Rng& rng) {
  std::vector<DiscreteMeasure> out;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<double> w(s->size());
    double total = 0.0;
    for (double& x : w) total += x = rng.uniform();
    for (double& x : w) x /= total;
    out.emplace_back(s, std::move(w));
  }
  return out;
}

Exec policy(const benchmark::State& state) {
  return state.range(0) == 0 ? Exec::kSerial : Exec::kParallel;
}

void BM_PairwiseWasserstein(benchmark::State& state) {
  Rng rng(7);
  const auto s = line(static_cast<std::size_t>(state.range(1)));
  const auto a = measures(s, 16, rng);
  const auto b = measures(s, 16, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pairwise_wasserstein(a, b, 2.0, policy(state)));
  }
}
BENCHMARK(BM_PairwiseWasserstein)
    ->ArgNames({"parallel", "points"})
    ->ArgsProduct({{0, 1}, {8, 32}});

void BM_DirectedDistance(benchmark::State& state) {
  Rng rng(11);
  const auto s = line(static_cast<std::size_t>(state.range(1)));
  const AmbiguitySet src(s, measures(s, 8, rng), false);
  const AmbiguitySet dst(s, measures(s, 8, rng), true);
  DistanceOptions options;
  options.exec = policy(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(directed_distance(src, dst, 1.0, options));
  }
}
BENCHMARK(BM_DirectedDistance)
    ->ArgNames({"parallel", "points"})
    ->ArgsProduct({{0, 1}, {8, 24}});

void BM_DistanceTrace(benchmark::State& state) {
  FamilyOptions o;
  o.terms = static_cast<std::size_t>(state.range(1));
  o.grid = 100;
  const auto seq = make_family(Family::kRandomPerturbation, o);
  for (auto _ : state) {
    benchmark::DoNotOptimize(distance_trace(seq, 1.0, policy(state)));
  }
}
BENCHMARK(BM_DistanceTrace)
    ->ArgNames({"parallel", "terms"})
    ->ArgsProduct({{0, 1}, {20, 50}})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
