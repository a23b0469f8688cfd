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

#include <random>

#include "stgabor/convolve.hpp"
#include "stgabor/kernel.hpp"

namespace {

using namespace stgabor;

Volume noise(Extent e, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Volume v(e);
  for (double& x : v.data()) x = dist(rng);
  return v;
}

// Args: video side, filter speed (x4). The kernel is the default-support
// Gabor for that speed, so larger speeds mean larger kernels.
void run_backend(benchmark::State& state, Backend backend) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const double speed = static_cast<double>(state.range(1)) / 4.0;
  const auto video = noise({side, side, 16}, 1);
  const auto p = derive_params(speed, 0.0, 0.0, EnvelopeMode::kMoving);
  const auto kernel = sample_kernel(p, default_support(p));
  ConvolutionOptions opts;
  opts.backend = backend;
  for (auto _ : state) {
    benchmark::DoNotOptimize(convolve(video, kernel, opts));
  }
  state.counters["kernel_voxels"] = static_cast<double>(kernel.size());
}

void BM_ConvolveDirect(benchmark::State& state) {
  run_backend(state, Backend::kDirect);
}
void BM_ConvolveSpectral(benchmark::State& state) {
  run_backend(state, Backend::kSpectral);
}

BENCHMARK(BM_ConvolveDirect)
    ->ArgsProduct({{32, 64}, {2, 4, 8}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvolveSpectral)
    ->ArgsProduct({{32, 64}, {2, 4, 8}})
    ->Unit(benchmark::kMillisecond);

}  // namespace
