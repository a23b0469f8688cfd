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

#ifndef STGABOR_KERNEL_HPP_
#define STGABOR_KERNEL_HPP_

#include <numbers>

#include "stgabor/volume.hpp"

namespace stgabor {

enum class EnvelopeMode {
  kStationary,  // envelope centre fixed, v_c = 0
  kMoving,      // envelope centre drifts with the carrier, v_c = v
};

inline constexpr double kBaseWavelength = 2.0;     // lambda_0
inline constexpr double kDefaultAspect = 0.5;      // gamma
inline constexpr double kTemporalMean = 1.75;      // frames
inline constexpr double kTemporalStdDev = 2.75;    // frames
inline constexpr double kSigmaPerWavelength = 0.56;

// Parameters of one spatiotemporal Gabor filter
//
//   g(x,y,t) = gamma / (2 pi sigma^2)
//              * exp(-((xr + vc t)^2 + gamma^2 yr^2) / (2 sigma^2))
//              * cos(2 pi / lambda * (xr + v t) + phi)
//              * 1 / sqrt(2 pi tau) * exp(-(t - mu_t)^2 / (2 tau^2))
//
// with xr = x cos(theta) + y sin(theta), yr = -x sin(theta) + y cos(theta).
// The carrier is constant along xr = -v t, so a filter of direction theta
// responds to patterns that are functions of (xr + v t).
struct FilterParams {
  double speed = 0.0;        // v, pixels/frame
  double theta = 0.0;        // radians, [0, 2 pi)
  double phase = 0.0;        // phi, radians, [-pi, pi]
  double envelope_speed = 0.0;  // v_c, pixels/frame
  double gamma = kDefaultAspect;
  double sigma = kSigmaPerWavelength * kBaseWavelength;
  double wavelength = kBaseWavelength;  // lambda, pixels
  double temporal_mean = kTemporalMean;    // mu_t
  double temporal_std = kTemporalStdDev;   // tau
};

// lambda_0 * sqrt(1 + v^2).
double wavelength_for_speed(double speed);

// Wraps an angle into [0, 2 pi).
double normalize_angle(double radians);

// Builds the parameter set for (v, theta, phi) with every relation fixed:
// lambda = 2 sqrt(1 + v^2), sigma = 0.56 lambda, gamma = 0.5,
// mu_t = 1.75, tau = 2.75 and v_c = 0 or v depending on `mode`.
// Throws InvalidParameter for negative or non-finite v.
FilterParams derive_params(double speed, double theta, double phase,
                           EnvelopeMode mode);

// Throws InvalidParameter when gamma, sigma, tau or lambda are not strictly
// positive, v or v_c are negative, phi lies outside [-pi, pi] or any field is
// non-finite.
void validate(const FilterParams& params);

struct KernelSupport {
  long spatial_halfwidth = 1;  // grid spans [-h, h] in x and y
  long temporal_length = 1;    // grid spans t = 0 .. temporal_length - 1

  bool operator==(const KernelSupport&) const = default;
};

void validate(const KernelSupport& support);

// Spatial half-width ceil(3 sigma / min(1, gamma)); temporal length
// ceil(mu_t + 2.5 tau) + 1.
KernelSupport default_support(const FilterParams& params);

// Evaluates g at one signed grid coordinate.
double evaluate_kernel(const FilterParams& params, double x, double y,
                       double t);

// Samples g on the integer grid described by `support`. The returned volume
// has extent (2h+1, 2h+1, T) and origin (h, h, 0). Throws NumericError if any
// sample is non-finite.
Volume sample_kernel(const FilterParams& params, const KernelSupport& support);

// Peak magnitude of the kernel's constant factors: gamma / (2 pi sigma^2) /
// sqrt(2 pi tau). No sample of the kernel exceeds it.
double kernel_amplitude_bound(const FilterParams& params);

}  // namespace stgabor

#endif  // STGABOR_KERNEL_HPP_
