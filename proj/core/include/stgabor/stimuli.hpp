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

#ifndef STGABOR_STIMULI_HPP_
#define STGABOR_STIMULI_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "stgabor/convolve.hpp"
#include "stgabor/kernel.hpp"
#include "stgabor/volume.hpp"

namespace stgabor {

enum class StimulusKind { kBar, kEdge, kGrating };

// Which side of a moving edge carries the foreground level, measured along
// the rotated axis xr of the stimulus direction.
enum class EdgePolarity { kNegativeSide, kPositiveSide };

// Synthetic drifting pattern. Direction and speed follow the filter
// convention: a stimulus of direction theta and speed v is a function of
// (xr + v t), the same coordinate a filter of that direction and speed is
// tuned to. In grid terms the pattern translates by -v (cos theta, sin theta)
// pixels per frame.
//
// Bars and edges are centred on the frame: the bar centre (or edge boundary)
// passes through the frame centre at the middle frame, t = (T-1)/2. Nothing
// wraps around; the pattern enters and leaves the frame. Sub-pixel positions
// use the area of each pixel's footprint along xr covered by the pattern.
//
// Gratings are I = background + (foreground - background)
//   * cos(2 pi / wavelength * (xr + v t) + phase), xr from grid coordinates.
struct StimulusSpec {
  StimulusKind kind = StimulusKind::kBar;
  double direction = 0.0;  // radians
  double speed = 1.0;      // pixels/frame
  double bar_width = 2.0;  // pixels
  EdgePolarity polarity = EdgePolarity::kNegativeSide;
  // nullopt matches the wavelength a filter of this speed uses.
  std::optional<double> grating_wavelength;
  double grating_phase = 0.0;  // radians
  Extent extent{64, 64, 16};
  double foreground = 1.0;
  double background = 0.0;
};

// Throws InvalidParameter for a non-positive extent, negative speed,
// non-positive bar width or a grating wavelength below 2 pixels.
void validate(const StimulusSpec& spec);

Volume render(const StimulusSpec& spec);

enum class TuningAxis { kDirection, kSpeed };

struct TuningSample {
  double parameter = 0.0;
  double energy = 0.0;
};

struct TuningCurve {
  TuningAxis axis = TuningAxis::kDirection;
  std::vector<TuningSample> samples;

  // Index of the largest energy; the first one on ties.
  std::size_t argmax() const;
  double peak_parameter() const { return samples.at(argmax()).parameter; }
  // max energy / mean energy. Higher means sharper tuning.
  double peak_to_mean() const;
};

// Energy of the quadrature response to a bar stimulus for a filter of speed
// `filter_speed` at each direction in `directions` (strictly increasing).
TuningCurve direction_tuning(double filter_speed,
                             std::span<const double> directions,
                             const StimulusSpec& spec,
                             EnvelopeMode envelope = EnvelopeMode::kMoving,
                             const ConvolutionOptions& opts = {});

// Energy of the quadrature response to an edge stimulus for filters of
// direction `filter_direction` at each speed in `speeds` (strictly
// increasing).
TuningCurve speed_tuning(double filter_direction, std::span<const double> speeds,
                         const StimulusSpec& spec,
                         EnvelopeMode envelope = EnvelopeMode::kMoving,
                         const ConvolutionOptions& opts = {});

}  // namespace stgabor

#endif  // STGABOR_STIMULI_HPP_
