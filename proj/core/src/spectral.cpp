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

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <string>

#include "stgabor/convolve.hpp"
#include "stgabor/error.hpp"

namespace stgabor {
namespace {

// FFTW's planner is not re-entrant; execution with new-array functions is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
using RealBuffer = std::unique_ptr<double[], FftwFree>;
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

RealBuffer alloc_real(std::size_t n) {
  auto* p = fftw_alloc_real(n);
  if (p == nullptr) throw std::bad_alloc();
  return RealBuffer(p);
}

ComplexBuffer alloc_complex(std::size_t n) {
  auto* p = fftw_alloc_complex(n);
  if (p == nullptr) throw std::bad_alloc();
  return ComplexBuffer(p);
}

// Copies `src` into the zero-initialised padded buffer starting at grid 0.
void scatter(const Volume& src, const Extent& padded, double* dst) {
  std::fill(dst, dst + padded.voxels(), 0.0);
  for (std::size_t t = 0; t < src.frames(); ++t) {
    for (std::size_t y = 0; y < src.height(); ++y) {
      const double* row = &src.data()[src.index(0, y, t)];
      std::copy(row, row + src.width(),
                dst + (t * padded.height + y) * padded.width);
    }
  }
}

}  // namespace

namespace detail {

std::size_t fft_friendly_size(std::size_t n) {
  if (n <= 1) return 1;
  for (std::size_t candidate = n;; ++candidate) {
    std::size_t m = candidate;
    for (std::size_t p : {2u, 3u, 5u, 7u}) {
      while (m % p == 0) m /= p;
    }
    if (m == 1) return candidate;
  }
}

}  // namespace detail

struct SpectralConvolver::Impl {
  Extent video;
  Origin video_origin;
  Extent max_kernel;
  Extent padded;
  std::size_t spectrum_size = 0;
  ComplexBuffer video_spectrum;
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    if (forward != nullptr) fftw_destroy_plan(forward);
    if (inverse != nullptr) fftw_destroy_plan(inverse);
  }
};

SpectralConvolver::SpectralConvolver(const Volume& video,
                                     const Extent& max_kernel)
    : impl_(std::make_unique<Impl>()) {
  require_valid(video, "video");
  if (max_kernel.voxels() == 0) throw InvalidInput("kernel extent is empty");
  auto& im = *impl_;
  im.video = video.extent();
  im.video_origin = video.origin();
  im.max_kernel = max_kernel;
  im.padded = {detail::fft_friendly_size(video.width() + max_kernel.width - 1),
               detail::fft_friendly_size(video.height() + max_kernel.height - 1),
               detail::fft_friendly_size(video.frames() + max_kernel.frames - 1)};
  im.spectrum_size = im.padded.frames * im.padded.height *
                     (im.padded.width / 2 + 1);

  auto real = alloc_real(im.padded.voxels());
  im.video_spectrum = alloc_complex(im.spectrum_size);
  const int n0 = static_cast<int>(im.padded.frames);
  const int n1 = static_cast<int>(im.padded.height);
  const int n2 = static_cast<int>(im.padded.width);
  {
    std::lock_guard lock(planner_mutex());
    im.forward = fftw_plan_dft_r2c_3d(n0, n1, n2, real.get(),
                                      im.video_spectrum.get(), FFTW_ESTIMATE);
    im.inverse = fftw_plan_dft_c2r_3d(n0, n1, n2, im.video_spectrum.get(),
                                      real.get(), FFTW_ESTIMATE);
  }
  if (im.forward == nullptr || im.inverse == nullptr) {
    throw NumericError("failed to create FFT plan");
  }
  scatter(video, im.padded, real.get());
  fftw_execute_dft_r2c(im.forward, real.get(), im.video_spectrum.get());
}

SpectralConvolver::~SpectralConvolver() = default;
SpectralConvolver::SpectralConvolver(SpectralConvolver&&) noexcept = default;
SpectralConvolver& SpectralConvolver::operator=(SpectralConvolver&&) noexcept =
    default;

const Extent& SpectralConvolver::padded_extent() const { return impl_->padded; }

Volume SpectralConvolver::convolve(const Volume& kernel) const {
  require_valid(kernel, "kernel");
  const auto& im = *impl_;
  if (kernel.width() > im.max_kernel.width ||
      kernel.height() > im.max_kernel.height ||
      kernel.frames() > im.max_kernel.frames) {
    throw InvalidInput("kernel exceeds the extent the spectrum was padded for");
  }

  auto real = alloc_real(im.padded.voxels());
  auto spectrum = alloc_complex(im.spectrum_size);
  scatter(kernel, im.padded, real.get());
  fftw_execute_dft_r2c(im.forward, real.get(), spectrum.get());

  const double scale = 1.0 / static_cast<double>(im.padded.voxels());
  for (std::size_t i = 0; i < im.spectrum_size; ++i) {
    const std::complex<double> a(im.video_spectrum[i][0],
                                 im.video_spectrum[i][1]);
    const std::complex<double> b(spectrum[i][0], spectrum[i][1]);
    const std::complex<double> p = a * b * scale;
    spectrum[i][0] = p.real();
    spectrum[i][1] = p.imag();
  }
  fftw_execute_dft_c2r(im.inverse, spectrum.get(), real.get());

  // Full linear convolution index n maps to output x = n - kernel origin.
  Volume out(im.video, im.video_origin);
  const Origin ko = kernel.origin();
  for (std::size_t t = 0; t < out.frames(); ++t) {
    for (std::size_t y = 0; y < out.height(); ++y) {
      const long pt = static_cast<long>(t) + ko.t;
      const long py = static_cast<long>(y) + ko.y;
      for (std::size_t x = 0; x < out.width(); ++x) {
        const long px = static_cast<long>(x) + ko.x;
        if (pt < 0 || py < 0 || px < 0 ||
            pt >= static_cast<long>(im.padded.frames) ||
            py >= static_cast<long>(im.padded.height) ||
            px >= static_cast<long>(im.padded.width)) {
          continue;
        }
        out.at(x, y, t) = real[(static_cast<std::size_t>(pt) * im.padded.height +
                                static_cast<std::size_t>(py)) *
                                   im.padded.width +
                               static_cast<std::size_t>(px)];
      }
    }
  }
  if (!out.all_finite()) throw NumericError("convolution produced non-finite output");
  return out;
}

}  // namespace stgabor
