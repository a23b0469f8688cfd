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

#ifndef STGABOR_FEATURES_HPP_
#define STGABOR_FEATURES_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stgabor/convolve.hpp"
#include "stgabor/kernel.hpp"
#include "stgabor/volume.hpp"

namespace stgabor {

enum class EnergyNormalization {
  kNone,      // raw sum of R^2 over the volume
  kPerVoxel,  // sum divided by W * H * T
};

// A bank is the cross product speeds x directions. Feature (i, j), speed i and
// direction j, lives at index i * directions.size() + j.
struct BankConfig {
  std::vector<double> speeds;
  std::vector<double> directions;
  EnvelopeMode envelope = EnvelopeMode::kMoving;
  std::optional<KernelSupport> support;  // nullopt: default_support per filter
  EnergyNormalization normalization = EnergyNormalization::kNone;

  std::size_t size() const { return speeds.size() * directions.size(); }
  std::size_t index(std::size_t speed_i, std::size_t direction_j) const {
    return speed_i * directions.size() + direction_j;
  }
};

// Throws InvalidParameter unless speeds and directions are non-empty,
// strictly increasing, speeds >= 0 and directions within [0, 2 pi).
void validate(const BankConfig& bank);

// Stable 16-hex-digit hash of everything in the config that affects feature
// values. Two feature vectors are comparable only if their fingerprints match.
std::string fingerprint(const BankConfig& bank);

// 64-bit FNV-1a of `canonical` as 16 lowercase hex digits.
std::string hash_text(std::string_view canonical);

// Column names "v=<speed>;theta=<radians>" in feature order.
std::vector<std::string> feature_names(const BankConfig& bank);

// {2 pi k / count : k = 0 .. count-1}.
std::vector<double> evenly_spaced_directions(std::size_t count);

// first, first + step, ..., last (inclusive, within 1e-9 of a step). Values
// are rounded to 1e-9 so that 0.1 + 14 * 0.1 reads back as 1.5.
std::vector<double> speed_range(double first, double last, double step);

struct FeatureVector {
  std::vector<double> values;
  std::string fingerprint;

  std::size_t size() const { return values.size(); }
};

// R(x,y,t) = sqrt(r0^2 + r1^2) with r0 the response to the filter at
// params.phase and r1 to the same filter at params.phase - pi/2 (wrapped into
// [-pi, pi]). `support` defaults to default_support(params).
Volume quadrature_response(const Volume& video, const FilterParams& params,
                           const ConvolutionOptions& opts = {},
                           std::optional<KernelSupport> support = std::nullopt);

// sum over all voxels of R^2.
double energy(const Volume& response);

// Energies E(v_i, theta_j) over the bank, in bank order. Deterministic for a
// fixed video and config regardless of opts.threads.
FeatureVector extract_features(const Volume& video, const BankConfig& bank,
                               const ConvolutionOptions& opts = {});

}  // namespace stgabor

#endif  // STGABOR_FEATURES_HPP_
