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

#include "stgabor/stimuli.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "stgabor/error.hpp"
#include "stgabor/features.hpp"

namespace stgabor {
namespace {

// Length of [a0, a1] intersected with [b0, b1].
double overlap(double a0, double a1, double b0, double b1) {
  return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

void require_increasing(std::span<const double> values, const char* what) {
  if (values.empty()) throw InvalidParameter(std::string(what) + " is empty");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) {
      throw InvalidParameter(std::string(what) + " must be strictly increasing");
    }
  }
}

}  // namespace

void validate(const StimulusSpec& spec) {
  if (spec.extent.voxels() == 0) {
    throw InvalidParameter("stimulus extent must be positive");
  }
  if (!std::isfinite(spec.speed) || spec.speed < 0.0) {
    throw InvalidParameter("stimulus speed must be >= 0");
  }
  if (!std::isfinite(spec.direction)) {
    throw InvalidParameter("stimulus direction must be finite");
  }
  if (!std::isfinite(spec.foreground) || !std::isfinite(spec.background)) {
    throw InvalidParameter("stimulus contrast levels must be finite");
  }
  if (spec.kind == StimulusKind::kBar &&
      !(std::isfinite(spec.bar_width) && spec.bar_width > 0.0)) {
    throw InvalidParameter("bar width must be > 0");
  }
  if (spec.kind == StimulusKind::kGrating && spec.grating_wavelength &&
      !(*spec.grating_wavelength >= 2.0)) {
    throw InvalidParameter("grating wavelength must be >= 2 pixels");
  }
}

Volume render(const StimulusSpec& spec) {
  validate(spec);
  Volume video(spec.extent);
  const double c = std::cos(spec.direction);
  const double s = std::sin(spec.direction);
  const double contrast = spec.foreground - spec.background;

  if (spec.kind == StimulusKind::kGrating) {
    const double wavelength =
        spec.grating_wavelength.value_or(wavelength_for_speed(spec.speed));
    const double k = 2.0 * std::numbers::pi / wavelength;
    for (std::size_t t = 0; t < video.frames(); ++t) {
      for (std::size_t y = 0; y < video.height(); ++y) {
        for (std::size_t x = 0; x < video.width(); ++x) {
          const double xr = static_cast<double>(x) * c + static_cast<double>(y) * s;
          video.at(x, y, t) =
              spec.background +
              contrast * std::cos(k * (xr + spec.speed * static_cast<double>(t)) +
                                  spec.grating_phase);
        }
      }
    }
    return video;
  }

  const double cx = (static_cast<double>(video.width()) - 1.0) / 2.0;
  const double cy = (static_cast<double>(video.height()) - 1.0) / 2.0;
  const double tc = (static_cast<double>(video.frames()) - 1.0) / 2.0;
  const double half = spec.bar_width / 2.0;
  for (std::size_t t = 0; t < video.frames(); ++t) {
    const double drift = spec.speed * (static_cast<double>(t) - tc);
    for (std::size_t y = 0; y < video.height(); ++y) {
      for (std::size_t x = 0; x < video.width(); ++x) {
        const double xr = (static_cast<double>(x) - cx) * c +
                          (static_cast<double>(y) - cy) * s;
        const double p = xr + drift;  // pattern coordinate
        double coverage = 0.0;
        if (spec.kind == StimulusKind::kBar) {
          coverage = overlap(p - 0.5, p + 0.5, -half, half);
        } else if (spec.polarity == EdgePolarity::kNegativeSide) {
          coverage = std::clamp(0.5 - p, 0.0, 1.0);
        } else {
          coverage = std::clamp(0.5 + p, 0.0, 1.0);
        }
        video.at(x, y, t) = spec.background + contrast * coverage;
      }
    }
  }
  return video;
}

std::size_t TuningCurve::argmax() const {
  if (samples.empty()) throw InvalidInput("tuning curve is empty");
  std::size_t best = 0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].energy > samples[best].energy) best = i;
  }
  return best;
}

double TuningCurve::peak_to_mean() const {
  if (samples.empty()) throw InvalidInput("tuning curve is empty");
  double sum = 0.0;
  for (const auto& s : samples) sum += s.energy;
  const double mean = sum / static_cast<double>(samples.size());
  return mean > 0.0 ? samples[argmax()].energy / mean : 0.0;
}

TuningCurve direction_tuning(double filter_speed,
                             std::span<const double> directions,
                             const StimulusSpec& spec, EnvelopeMode envelope,
                             const ConvolutionOptions& opts) {
  if (spec.kind != StimulusKind::kBar) {
    throw InvalidParameter("direction tuning expects a bar stimulus");
  }
  require_increasing(directions, "directions");
  const Volume video = render(spec);
  TuningCurve curve{TuningAxis::kDirection, {}};
  for (double theta : directions) {
    const auto params = derive_params(filter_speed, theta, 0.0, envelope);
    curve.samples.push_back(
        {theta, energy(quadrature_response(video, params, opts))});
  }
  return curve;
}

TuningCurve speed_tuning(double filter_direction, std::span<const double> speeds,
                         const StimulusSpec& spec, EnvelopeMode envelope,
                         const ConvolutionOptions& opts) {
  if (spec.kind != StimulusKind::kEdge) {
    throw InvalidParameter("speed tuning expects an edge stimulus");
  }
  require_increasing(speeds, "speeds");
  const Volume video = render(spec);
  TuningCurve curve{TuningAxis::kSpeed, {}};
  for (double v : speeds) {
    const auto params = derive_params(v, filter_direction, 0.0, envelope);
    curve.samples.push_back({v, energy(quadrature_response(video, params, opts))});
  }
  return curve;
}

}  // namespace stgabor
