// Copyright 2026 The ACARS Audit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernels against their OpenMP counterparts on the demo
// corpus. Run with --benchmark_filter to pick a kernel.

#include <benchmark/benchmark.h>

#include "acars_audit/pipeline.hpp"
#include "synth.hpp"

namespace {

using namespace acars_audit;

struct Demo {
  pipeline::Context ctx;
  std::vector<ingest::AcarsRecord> records;
  std::vector<audit::MessageOutcome> outcomes;
};

const Demo& demo() {
  static const Demo d = [] {
    const auto fleet = synth::demo_fleet();
    Demo x{synth::make_context(fleet.aircraft, fleet.blocks, fleet.ofc_list),
           synth::demo_corpus(fleet), {}};
    x.outcomes = pipeline::analyze_serial(x.records, x.ctx);
    return x;
  }();
  return d;
}

void BM_AnalyzeSerial(benchmark::State& state) {
  const auto& d = demo();
  for (auto _ : state) benchmark::DoNotOptimize(pipeline::analyze_serial(d.records, d.ctx));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d.records.size()));
}

void BM_AnalyzeParallel(benchmark::State& state) {
  const auto& d = demo();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pipeline::analyze_parallel(d.records, d.ctx, threads));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d.records.size()));
}

void BM_GradeSerial(benchmark::State& state) {
  const auto& d = demo();
  for (auto _ : state) benchmark::DoNotOptimize(pipeline::grade_serial(d.outcomes, d.ctx));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d.outcomes.size()));
}

void BM_GradeParallel(benchmark::State& state) {
  const auto& d = demo();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pipeline::grade_parallel(d.outcomes, d.ctx, threads));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d.outcomes.size()));
}

BENCHMARK(BM_AnalyzeSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnalyzeParallel)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GradeSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GradeParallel)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
