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

#ifndef STGABOR_VOLUME_HPP_
#define STGABOR_VOLUME_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace stgabor {

struct Extent {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t frames = 0;

  std::size_t voxels() const { return width * height * frames; }
  bool operator==(const Extent&) const = default;
};

// Grid index of the (x=0, y=0, t=0) sample. Videos use (0,0,0); kernels are
// spatially centred and temporally causal, so a kernel with half-width h has
// origin (h, h, 0).
struct Origin {
  long x = 0;
  long y = 0;
  long t = 0;

  bool operator==(const Origin&) const = default;
};

// Dense real-valued (x, y, t) grid. Storage is x-fastest:
// index = (t * height + y) * width + x.
class Volume {
 public:
  Volume() = default;
  explicit Volume(Extent extent, Origin origin = {});
  Volume(Extent extent, std::vector<double> data, Origin origin = {});

  const Extent& extent() const { return extent_; }
  const Origin& origin() const { return origin_; }
  void set_origin(Origin origin) { origin_ = origin; }

  std::size_t width() const { return extent_.width; }
  std::size_t height() const { return extent_.height; }
  std::size_t frames() const { return extent_.frames; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::size_t index(std::size_t x, std::size_t y, std::size_t t) const {
    return (t * extent_.height + y) * extent_.width + x;
  }
  double& at(std::size_t x, std::size_t y, std::size_t t) {
    return data_[index(x, y, t)];
  }
  double at(std::size_t x, std::size_t y, std::size_t t) const {
    return data_[index(x, y, t)];
  }

  // Sample at signed coordinates relative to the origin. Out-of-grid
  // coordinates read as zero.
  double sample(long x, long y, long t) const;

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  std::span<const double> frame(std::size_t t) const;

  bool all_finite() const;

 private:
  Extent extent_;
  Origin origin_;
  std::vector<double> data_;
};

// Throws InvalidInput when the volume is empty and NumericError when any
// value is NaN or Inf. `what` names the offending argument in the message.
void require_valid(const Volume& volume, const char* what);

}  // namespace stgabor

#endif  // STGABOR_VOLUME_HPP_
