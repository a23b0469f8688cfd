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

#ifndef STGABOR_TESTS_GRATING_PROBE_HPP_
#define STGABOR_TESTS_GRATING_PROBE_HPP_

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "stgabor/features.hpp"
#include "stgabor/kernel.hpp"
#include "stgabor/stimuli.hpp"

namespace stgabor::testing {

// Flatness of a filter's quadrature response to its matched drifting grating,
// measured on the interior voxels the kernel support never lets the zero
// padding reach.
struct GratingProbe {
  // Coefficient of variation over time of the interior frame means.
  double temporal_cv = 0.0;
  // Coefficient of variation over all interior voxels.
  double voxel_cv = 0.0;
  // ||R(phase + pi/2) - R(phase)||_2 / ||R(phase)||_2 over the interior.
  double phase_shift_l2 = 0.0;
  // max |R(phase + pi/2) - R(phase)| / max R(phase) over the interior.
  double phase_shift_linf = 0.0;
};

inline GratingProbe probe_matched_grating(double speed, double theta,
                                          EnvelopeMode envelope,
                                          Extent extent = {64, 64, 16}) {
  const auto params = derive_params(speed, theta, 0.0, envelope);
  const auto support = default_support(params);
  StimulusSpec spec;
  spec.kind = StimulusKind::kGrating;
  spec.direction = theta;
  spec.speed = speed;
  spec.extent = extent;
  const auto r0 = quadrature_response(render(spec), params);
  spec.grating_phase = std::numbers::pi / 2;
  const auto r1 = quadrature_response(render(spec), params);

  const std::size_t h = static_cast<std::size_t>(support.spatial_halfwidth);
  const std::size_t t0 = static_cast<std::size_t>(support.temporal_length - 1);
  std::vector<double> frame_means;
  double sum = 0, sum_sq = 0, diff_sq = 0, max_diff = 0, max_r = 0;
  std::size_t n = 0;
  for (std::size_t t = t0; t < extent.frames; ++t) {
    double frame_sum = 0;
    std::size_t frame_n = 0;
    for (std::size_t y = h; y + h < extent.height; ++y)
      for (std::size_t x = h; x + h < extent.width; ++x) {
        const double a = r0.at(x, y, t);
        const double d = r1.at(x, y, t) - a;
        frame_sum += a;
        ++frame_n;
        sum += a;
        sum_sq += a * a;
        diff_sq += d * d;
        max_diff = std::max(max_diff, std::abs(d));
        max_r = std::max(max_r, a);
        ++n;
      }
    frame_means.push_back(frame_sum / static_cast<double>(frame_n));
  }
  auto cv = [](const std::vector<double>& xs) {
    double m = 0, s = 0;
    for (double x : xs) m += x;
    m /= static_cast<double>(xs.size());
    for (double x : xs) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(xs.size())) / m;
  };
  GratingProbe probe;
  probe.temporal_cv = cv(frame_means);
  const double mean = sum / static_cast<double>(n);
  probe.voxel_cv =
      std::sqrt(std::max(0.0, sum_sq / static_cast<double>(n) - mean * mean)) /
      mean;
  probe.phase_shift_l2 = std::sqrt(diff_sq / sum_sq);
  probe.phase_shift_linf = max_diff / max_r;
  return probe;
}

}  // namespace stgabor::testing

#endif  // STGABOR_TESTS_GRATING_PROBE_HPP_
