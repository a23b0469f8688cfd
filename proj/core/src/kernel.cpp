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

#include "stgabor/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stgabor/error.hpp"

namespace stgabor {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidParameter(message);
}

}  // namespace

double wavelength_for_speed(double speed) {
  return kBaseWavelength * std::sqrt(1.0 + speed * speed);
}

double normalize_angle(double radians) {
  double wrapped = std::fmod(radians, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  // fmod of a value just below 0 can round up to exactly 2 pi.
  if (wrapped >= kTwoPi) wrapped = 0.0;
  return wrapped;
}

FilterParams derive_params(double speed, double theta, double phase,
                           EnvelopeMode mode) {
  require(std::isfinite(speed) && speed >= 0.0,
          "speed must be finite and non-negative, got " + std::to_string(speed));
  require(std::isfinite(theta), "theta must be finite");
  require(std::isfinite(phase) && phase >= -kPi && phase <= kPi,
          "phase must lie in [-pi, pi]");
  FilterParams p;
  p.speed = speed;
  p.theta = normalize_angle(theta);
  p.phase = phase;
  p.envelope_speed = mode == EnvelopeMode::kMoving ? speed : 0.0;
  p.gamma = kDefaultAspect;
  p.wavelength = wavelength_for_speed(speed);
  p.sigma = kSigmaPerWavelength * p.wavelength;
  p.temporal_mean = kTemporalMean;
  p.temporal_std = kTemporalStdDev;
  return p;
}

void validate(const FilterParams& p) {
  require(std::isfinite(p.speed) && p.speed >= 0.0, "speed must be >= 0");
  require(std::isfinite(p.envelope_speed) && p.envelope_speed >= 0.0,
          "envelope speed must be >= 0");
  require(std::isfinite(p.theta) && p.theta >= 0.0 && p.theta < kTwoPi,
          "theta must lie in [0, 2 pi)");
  require(std::isfinite(p.phase) && p.phase >= -kPi && p.phase <= kPi,
          "phase must lie in [-pi, pi]");
  require(std::isfinite(p.gamma) && p.gamma > 0.0, "gamma must be > 0");
  require(std::isfinite(p.sigma) && p.sigma > 0.0, "sigma must be > 0");
  require(std::isfinite(p.wavelength) && p.wavelength > 0.0,
          "wavelength must be > 0");
  require(std::isfinite(p.temporal_mean), "temporal mean must be finite");
  require(std::isfinite(p.temporal_std) && p.temporal_std > 0.0,
          "tau must be > 0");
}

void validate(const KernelSupport& s) {
  require(s.spatial_halfwidth >= 1, "spatial half-width must be >= 1");
  require(s.temporal_length >= 1, "temporal length must be >= 1");
}

KernelSupport default_support(const FilterParams& p) {
  KernelSupport s;
  s.spatial_halfwidth =
      static_cast<long>(std::ceil(3.0 * p.sigma / std::min(1.0, p.gamma)));
  s.temporal_length =
      static_cast<long>(std::ceil(p.temporal_mean + 2.5 * p.temporal_std)) + 1;
  s.spatial_halfwidth = std::max(s.spatial_halfwidth, 1L);
  s.temporal_length = std::max(s.temporal_length, 1L);
  return s;
}

double kernel_amplitude_bound(const FilterParams& p) {
  return p.gamma / (kTwoPi * p.sigma * p.sigma) /
         std::sqrt(kTwoPi * p.temporal_std);
}

double evaluate_kernel(const FilterParams& p, double x, double y, double t) {
  const double c = std::cos(p.theta);
  const double s = std::sin(p.theta);
  const double xr = x * c + y * s;
  const double yr = -x * s + y * c;
  const double shifted = xr + p.envelope_speed * t;
  const double two_sigma_sq = 2.0 * p.sigma * p.sigma;
  const double spatial =
      p.gamma / (kPi * two_sigma_sq) *
      std::exp(-(shifted * shifted + p.gamma * p.gamma * yr * yr) /
               two_sigma_sq);
  const double carrier =
      std::cos(kTwoPi / p.wavelength * (xr + p.speed * t) + p.phase);
  const double dt = t - p.temporal_mean;
  const double temporal =
      std::exp(-dt * dt / (2.0 * p.temporal_std * p.temporal_std)) /
      std::sqrt(kTwoPi * p.temporal_std);
  return spatial * carrier * temporal;
}

Volume sample_kernel(const FilterParams& params, const KernelSupport& support) {
  validate(params);
  validate(support);
  const long h = support.spatial_halfwidth;
  const auto side = static_cast<std::size_t>(2 * h + 1);
  Volume kernel({side, side, static_cast<std::size_t>(support.temporal_length)},
                Origin{h, h, 0});
  for (std::size_t t = 0; t < kernel.frames(); ++t) {
    for (std::size_t gy = 0; gy < side; ++gy) {
      for (std::size_t gx = 0; gx < side; ++gx) {
        const double value = evaluate_kernel(
            params, static_cast<double>(static_cast<long>(gx) - h),
            static_cast<double>(static_cast<long>(gy) - h),
            static_cast<double>(t));
        if (!std::isfinite(value)) {
          throw NumericError("kernel sample is not finite");
        }
        kernel.at(gx, gy, t) = value;
      }
    }
  }
  return kernel;
}

}  // namespace stgabor
