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

#ifndef STGABOR_CONVOLVE_HPP_
#define STGABOR_CONVOLVE_HPP_

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "stgabor/volume.hpp"

namespace stgabor {

enum class Backend { kDirect, kSpectral, kAuto };

// Only zero padding is implemented. The field exists so option files written
// today stay valid when other policies are added.
enum class Boundary { kZeroPad };

enum class OutputExtent { kSameAsInput };

// `kAuto` switches to the spectral backend once kernel voxels times video
// voxels exceeds this many multiply-adds.
inline constexpr double kSpectralThreshold = 1 << 22;

struct ConvolutionOptions {
  Backend backend = Backend::kAuto;
  Boundary boundary = Boundary::kZeroPad;
  OutputExtent output_extent = OutputExtent::kSameAsInput;
  // Worker threads for bank convolution. Results do not depend on it.
  unsigned threads = 1;
};

// Backend that `opts` resolves to for this pair of extents.
Backend resolve_backend(const ConvolutionOptions& opts, const Extent& video,
                        const Extent& kernel);

// r(x,y,t) = sum_{x',y',t'} g(x',y',t') I(x-x', y-y', t-t'), evaluated for
// every grid point of `video`. Kernel coordinates are taken relative to the
// kernel's origin, the video is zero outside its grid, and the result has the
// video's extent and origin. Accumulation is always in double precision.
//
// Throws InvalidInput for empty volumes and NumericError for non-finite
// inputs or outputs.
Volume convolve(const Volume& video, const Volume& kernel,
                const ConvolutionOptions& opts = {});

// Same as mapping convolve() over `kernels`. With the spectral backend the
// video is transformed once and the spectrum shared by every kernel.
std::vector<Volume> convolve_bank(const Volume& video,
                                  std::span<const Volume> kernels,
                                  const ConvolutionOptions& opts = {});

// Holds the forward transform of one video, padded so that any kernel no
// larger than `max_kernel` convolves without wrap-around. convolve() is const
// and may be called from several threads at once.
class SpectralConvolver {
 public:
  SpectralConvolver(const Volume& video, const Extent& max_kernel);
  ~SpectralConvolver();
  SpectralConvolver(SpectralConvolver&&) noexcept;
  SpectralConvolver& operator=(SpectralConvolver&&) noexcept;
  SpectralConvolver(const SpectralConvolver&) = delete;
  SpectralConvolver& operator=(const SpectralConvolver&) = delete;

  const Extent& padded_extent() const;

  // Throws InvalidInput if `kernel` exceeds the extent given at construction.
  Volume convolve(const Volume& kernel) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

namespace detail {

// Plain spatial-domain convolution; the reference the spectral path is
// checked against.
Volume convolve_direct(const Volume& video, const Volume& kernel);

// Smallest n' >= n whose only prime factors are 2, 3, 5 and 7.
std::size_t fft_friendly_size(std::size_t n);

}  // namespace detail

}  // namespace stgabor

#endif  // STGABOR_CONVOLVE_HPP_
