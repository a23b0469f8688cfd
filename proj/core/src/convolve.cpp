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

#include "stgabor/convolve.hpp"

#include <algorithm>

#include "stgabor/error.hpp"
#include "parallel.hpp"

namespace stgabor {
namespace {

Extent max_extent(std::span<const Volume> kernels) {
  Extent m{0, 0, 0};
  for (const auto& k : kernels) {
    m.width = std::max(m.width, k.width());
    m.height = std::max(m.height, k.height());
    m.frames = std::max(m.frames, k.frames());
  }
  return m;
}

}  // namespace

namespace detail {

Volume convolve_direct(const Volume& video, const Volume& kernel) {
  Volume out(video.extent(), video.origin());
  const long W = static_cast<long>(video.width());
  const long H = static_cast<long>(video.height());
  const long T = static_cast<long>(video.frames());
  const Origin ko = kernel.origin();
  auto in = video.data();
  auto dst = out.data();

  // Fixed order per output voxel: kt, ky, kx ascending.
  for (long t = 0; t < T; ++t) {
    for (long kt = 0; kt < static_cast<long>(kernel.frames()); ++kt) {
      const long st = t + ko.t - kt;
      if (st < 0 || st >= T) continue;
      for (long y = 0; y < H; ++y) {
        double* out_row = &dst[static_cast<std::size_t>((t * H + y) * W)];
        for (long ky = 0; ky < static_cast<long>(kernel.height()); ++ky) {
          const long sy = y + ko.y - ky;
          if (sy < 0 || sy >= H) continue;
          const double* in_row = &in[static_cast<std::size_t>((st * H + sy) * W)];
          for (long kx = 0; kx < static_cast<long>(kernel.width()); ++kx) {
            const double g = kernel.at(static_cast<std::size_t>(kx),
                                       static_cast<std::size_t>(ky),
                                       static_cast<std::size_t>(kt));
            if (g == 0.0) continue;
            // Source column sx = x + shift must fall inside [0, W).
            const long shift = ko.x - kx;
            const long x0 = std::max(0L, -shift);
            const long x1 = std::min(W, W - shift);
            for (long x = x0; x < x1; ++x) {
              out_row[x] += g * in_row[x + shift];
            }
          }
        }
      }
    }
  }
  if (!out.all_finite()) throw NumericError("convolution produced non-finite output");
  return out;
}

}  // namespace detail

Backend resolve_backend(const ConvolutionOptions& opts, const Extent& video,
                        const Extent& kernel) {
  if (opts.backend != Backend::kAuto) return opts.backend;
  const double work = static_cast<double>(video.voxels()) *
                      static_cast<double>(kernel.voxels());
  return work > kSpectralThreshold ? Backend::kSpectral : Backend::kDirect;
}

Volume convolve(const Volume& video, const Volume& kernel,
                const ConvolutionOptions& opts) {
  require_valid(video, "video");
  require_valid(kernel, "kernel");
  if (resolve_backend(opts, video.extent(), kernel.extent()) ==
      Backend::kDirect) {
    return detail::convolve_direct(video, kernel);
  }
  return SpectralConvolver(video, kernel.extent()).convolve(kernel);
}

std::vector<Volume> convolve_bank(const Volume& video,
                                  std::span<const Volume> kernels,
                                  const ConvolutionOptions& opts) {
  if (kernels.empty()) throw InvalidInput("kernel bank is empty");
  require_valid(video, "video");
  for (const auto& k : kernels) require_valid(k, "kernel");

  const Extent largest = max_extent(kernels);
  std::vector<Volume> out(kernels.size());
  if (resolve_backend(opts, video.extent(), largest) == Backend::kDirect) {
    detail::parallel_for(kernels.size(), opts.threads, [&](std::size_t i) {
      out[i] = detail::convolve_direct(video, kernels[i]);
    });
    return out;
  }
  const SpectralConvolver spectral(video, largest);
  detail::parallel_for(kernels.size(), opts.threads, [&](std::size_t i) {
    out[i] = spectral.convolve(kernels[i]);
  });
  return out;
}

}  // namespace stgabor
