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

#ifndef STGABOR_TESTS_TEST_UTIL_HPP_
#define STGABOR_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "stgabor/volume.hpp"

namespace stgabor::testing {

inline Volume random_volume(Extent extent, std::mt19937_64& rng,
                            Origin origin = {}) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Volume v(extent, origin);
  for (double& x : v.data()) x = dist(rng);
  return v;
}

// max |a - b| / max |b|.
inline double relative_linf(const Volume& a, const Volume& b) {
  double diff = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a.data()[i] - b.data()[i]));
    scale = std::max(scale, std::abs(b.data()[i]));
  }
  return scale > 0.0 ? diff / scale : diff;
}

// Literal six-loop convolution over signed coordinates; shares no code with
// the library's backends.
inline Volume brute_force_convolve(const Volume& video, const Volume& kernel) {
  Volume out(video.extent(), video.origin());
  const auto ko = kernel.origin();
  for (long t = 0; t < static_cast<long>(video.frames()); ++t)
    for (long y = 0; y < static_cast<long>(video.height()); ++y)
      for (long x = 0; x < static_cast<long>(video.width()); ++x) {
        long double acc = 0.0L;
        for (long kt = 0; kt < static_cast<long>(kernel.frames()); ++kt)
          for (long ky = 0; ky < static_cast<long>(kernel.height()); ++ky)
            for (long kx = 0; kx < static_cast<long>(kernel.width()); ++kx) {
              const long dx = kx - ko.x;
              const long dy = ky - ko.y;
              const long dt = kt - ko.t;
              acc += static_cast<long double>(
                         kernel.at(static_cast<std::size_t>(kx),
                                   static_cast<std::size_t>(ky),
                                   static_cast<std::size_t>(kt))) *
                     video.sample(x - dx, y - dy, t - dt);
            }
        out.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y),
               static_cast<std::size_t>(t)) = static_cast<double>(acc);
      }
  return out;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("stgabor-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

}  // namespace stgabor::testing

#endif  // STGABOR_TESTS_TEST_UTIL_HPP_
