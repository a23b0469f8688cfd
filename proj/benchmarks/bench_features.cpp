// Copyright 2026 The stgabor Authors.
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

#include <benchmark/benchmark.h>

#include "stgabor/features.hpp"
#include "stgabor/stimuli.hpp"

namespace {

using namespace stgabor;

// A 4-speed x 8-direction bank over a 64x64x16 moving bar; arg = threads.
void BM_ExtractFeatures(benchmark::State& state) {
  StimulusSpec spec;
  const auto video = render(spec);
  BankConfig bank;
  bank.speeds = speed_range(0.5, 2.0, 0.5);
  bank.directions = evenly_spaced_directions(8);
  ConvolutionOptions opts;
  opts.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_features(video, bank, opts));
  }
  state.counters["filters"] = static_cast<double>(bank.size());
}

BENCHMARK(BM_ExtractFeatures)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
