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

#include "stgabor/volume.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stgabor/error.hpp"

namespace stgabor {

Volume::Volume(Extent extent, Origin origin)
    : extent_(extent), origin_(origin), data_(extent.voxels(), 0.0) {}

Volume::Volume(Extent extent, std::vector<double> data, Origin origin)
    : extent_(extent), origin_(origin), data_(std::move(data)) {
  if (data_.size() != extent_.voxels()) {
    throw InvalidInput("volume data holds " + std::to_string(data_.size()) +
                       " values but extent requires " +
                       std::to_string(extent_.voxels()));
  }
}

double Volume::sample(long x, long y, long t) const {
  const long gx = x + origin_.x;
  const long gy = y + origin_.y;
  const long gt = t + origin_.t;
  if (gx < 0 || gy < 0 || gt < 0 || gx >= static_cast<long>(width()) ||
      gy >= static_cast<long>(height()) || gt >= static_cast<long>(frames())) {
    return 0.0;
  }
  return at(static_cast<std::size_t>(gx), static_cast<std::size_t>(gy),
            static_cast<std::size_t>(gt));
}

std::span<const double> Volume::frame(std::size_t t) const {
  const std::size_t plane = extent_.width * extent_.height;
  return std::span<const double>(data_).subspan(t * plane, plane);
}

bool Volume::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

void require_valid(const Volume& volume, const char* what) {
  if (volume.empty() || volume.extent().voxels() == 0) {
    throw InvalidInput(std::string(what) + ": empty volume");
  }
  if (!volume.all_finite()) {
    throw NumericError(std::string(what) + ": non-finite value");
  }
}

}  // namespace stgabor
