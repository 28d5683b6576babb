// Copyright 2026 The dynsetcover Authors
//
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


// Wall-clock throughput of both engines on random churn, plus the oracles.
// Per-step logical operation counts are reported as a counter alongside.

#include <benchmark/benchmark.h>

#include <memory>

#include "dsc/engine_f.hpp"
#include "dsc/engine_logn.hpp"
#include "dsc/instance.hpp"
#include "dsc/oracle.hpp"

namespace {

dsc::Instance Churn(std::int32_t universe, std::int32_t freq, std::int64_t steps) {
  dsc::WorkloadParams p;
  p.universe_size = universe;
  p.num_sets = universe / 5;
  p.freq = freq;
  p.steps = steps;
  p.pattern = dsc::Pattern::kRandomChurn;
  p.seed = 11;
  return dsc::GenerateWorkload(p);
}

template <class Engine>
void BM_Stream(benchmark::State& state) {
  const auto universe = static_cast<std::int32_t>(state.range(0));
  const dsc::Instance inst = Churn(universe, 5, 2000);
  auto sys = std::make_shared<const dsc::SetSystem>(inst.system);
  std::uint64_t max_ops = 0;
  for (auto _ : state) {
    Engine engine(sys);
    for (const dsc::Update& u : inst.stream) {
      const dsc::StepReport r = engine.Step(u);
      max_ops = std::max(max_ops, r.ds_ops.total());
    }
    benchmark::DoNotOptimize(engine.OutputSize());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(inst.stream.size()));
  state.counters["max_ds_ops"] = static_cast<double>(max_ops);
}

BENCHMARK_TEMPLATE(BM_Stream, dsc::LogNEngine)
    ->Arg(250)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_Stream, dsc::FEngine)
    ->Arg(250)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_ExactOpt(benchmark::State& state) {
  const auto n = static_cast<std::int32_t>(state.range(0));
  dsc::WorkloadParams p;
  p.universe_size = n;
  p.num_sets = n / 2;
  p.freq = 3;
  p.steps = n;
  p.pattern = dsc::Pattern::kInsertOnly;
  p.seed = 5;
  const dsc::Instance inst = dsc::GenerateWorkload(p);
  std::vector<dsc::ElementId> live(n);
  for (dsc::ElementId e = 0; e < n; ++e) live[e] = e;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dsc::ExactOpt(inst.system, live).size);
  }
}
BENCHMARK(BM_ExactOpt)->Arg(10)->Arg(20)->Arg(30)->Arg(40)->Unit(benchmark::kMicrosecond);

void BM_OfflineGreedy(benchmark::State& state) {
  const auto n = static_cast<std::int32_t>(state.range(0));
  const dsc::Instance inst = Churn(n, 5, 1);
  std::vector<dsc::ElementId> live(n);
  for (dsc::ElementId e = 0; e < n; ++e) live[e] = e;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        dsc::OfflineGreedy(inst.system, live, inst.system.max_level()).size());
  }
}
BENCHMARK(BM_OfflineGreedy)->Arg(200)->Arg(2000)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
