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

#include "stgabor/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "parallel.hpp"
#include "stgabor/error.hpp"

namespace stgabor {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string shortest(double value) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

double quadrature_phase(double phase) {
  double q = phase - std::numbers::pi / 2.0;
  if (q < -std::numbers::pi) q += kTwoPi;
  return q;
}

KernelSupport support_for(const FilterParams& p,
                          const std::optional<KernelSupport>& override) {
  return override ? *override : default_support(p);
}

struct QuadraturePair {
  Volume even;
  Volume odd;
};

QuadraturePair quadrature_kernels(const FilterParams& params,
                         const std::optional<KernelSupport>& support) {
  FilterParams odd = params;
  odd.phase = quadrature_phase(params.phase);
  const KernelSupport s = support_for(params, support);
  return {sample_kernel(params, s), sample_kernel(odd, s)};
}

Volume magnitude(const Volume& r0, const Volume& r1) {
  Volume out(r0.extent(), r0.origin());
  auto a = r0.data();
  auto b = r1.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = std::sqrt(a[i] * a[i] + b[i] * b[i]);
  }
  return out;
}

template <typename Seq>
void require_increasing(const Seq& values, const char* what) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) {
      throw InvalidParameter(std::string(what) + " must be strictly increasing");
    }
  }
}

}  // namespace

void validate(const BankConfig& bank) {
  if (bank.speeds.empty()) throw InvalidParameter("bank has no speeds");
  if (bank.directions.empty()) throw InvalidParameter("bank has no directions");
  for (double v : bank.speeds) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidParameter("bank speeds must be finite and >= 0");
    }
  }
  for (double d : bank.directions) {
    if (!std::isfinite(d) || d < 0.0 || d >= kTwoPi) {
      throw InvalidParameter("bank directions must lie in [0, 2 pi)");
    }
  }
  require_increasing(bank.speeds, "bank speeds");
  require_increasing(bank.directions, "bank directions");
  if (bank.support) validate(*bank.support);
}

std::string fingerprint(const BankConfig& bank) {
  std::ostringstream canon;
  canon << "stgabor-bank-v1|speeds=";
  for (double v : bank.speeds) canon << shortest(v) << ',';
  canon << "|directions=";
  for (double d : bank.directions) canon << shortest(d) << ',';
  canon << "|envelope="
        << (bank.envelope == EnvelopeMode::kMoving ? "moving" : "stationary");
  canon << "|support=";
  if (bank.support) {
    canon << bank.support->spatial_halfwidth << 'x'
          << bank.support->temporal_length;
  } else {
    canon << "default";
  }
  canon << "|normalize="
        << (bank.normalization == EnergyNormalization::kPerVoxel ? "per-voxel"
                                                                 : "none");

  return hash_text(canon.str());
}

std::string hash_text(std::string_view canonical) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

std::vector<std::string> feature_names(const BankConfig& bank) {
  std::vector<std::string> names;
  names.reserve(bank.size());
  for (double v : bank.speeds) {
    for (double d : bank.directions) {
      names.push_back("v=" + shortest(v) + ";theta=" + shortest(d));
    }
  }
  return names;
}

std::vector<double> evenly_spaced_directions(std::size_t count) {
  if (count == 0) throw InvalidParameter("direction count must be >= 1");
  std::vector<double> dirs(count);
  for (std::size_t k = 0; k < count; ++k) {
    dirs[k] = kTwoPi * static_cast<double>(k) / static_cast<double>(count);
  }
  return dirs;
}

std::vector<double> speed_range(double first, double last, double step) {
  if (!std::isfinite(first) || !std::isfinite(last) || !std::isfinite(step)) {
    throw InvalidParameter("speed range must be finite");
  }
  if (first < 0.0) throw InvalidParameter("speed range must start at >= 0");
  if (last < first) throw InvalidParameter("speed range end precedes start");
  if (last == first) return {first};
  if (!(step > 0.0)) throw InvalidParameter("speed step must be > 0");
  const double span = (last - first) / step;
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> speeds(count);
  for (std::size_t i = 0; i < count; ++i) {
    speeds[i] = std::round((first + static_cast<double>(i) * step) * 1e9) / 1e9;
  }
  return speeds;
}

Volume quadrature_response(const Volume& video, const FilterParams& params,
                           const ConvolutionOptions& opts,
                           std::optional<KernelSupport> support) {
  validate(params);
  const QuadraturePair pair = quadrature_kernels(params, support);
  const Volume kernels[] = {pair.even, pair.odd};
  const auto responses = convolve_bank(video, kernels, opts);
  return magnitude(responses[0], responses[1]);
}

double energy(const Volume& response) {
  double sum = 0.0;
  for (double r : response.data()) sum += r * r;
  return sum;
}

FeatureVector extract_features(const Volume& video, const BankConfig& bank,
                               const ConvolutionOptions& opts) {
  validate(bank);
  require_valid(video, "video");

  std::vector<FilterParams> filters;
  filters.reserve(bank.size());
  Extent largest{0, 0, 0};
  for (double v : bank.speeds) {
    for (double d : bank.directions) {
      filters.push_back(derive_params(v, d, 0.0, bank.envelope));
      const KernelSupport s = support_for(filters.back(), bank.support);
      const auto side = static_cast<std::size_t>(2 * s.spatial_halfwidth + 1);
      largest.width = std::max(largest.width, side);
      largest.height = std::max(largest.height, side);
      largest.frames = std::max(largest.frames,
                                static_cast<std::size_t>(s.temporal_length));
    }
  }

  const double scale =
      bank.normalization == EnergyNormalization::kPerVoxel
          ? 1.0 / static_cast<double>(video.extent().voxels())
          : 1.0;

  FeatureVector features;
  features.fingerprint = fingerprint(bank);
  features.values.assign(filters.size(), 0.0);

  const bool spectral = resolve_backend(opts, video.extent(), largest) ==
                        Backend::kSpectral;
  std::optional<SpectralConvolver> shared;
  if (spectral) shared.emplace(video, largest);

  detail::parallel_for(filters.size(), opts.threads, [&](std::size_t i) {
    const QuadraturePair pair = quadrature_kernels(filters[i], bank.support);
    Volume r0 = spectral ? shared->convolve(pair.even)
                         : detail::convolve_direct(video, pair.even);
    Volume r1 = spectral ? shared->convolve(pair.odd)
                         : detail::convolve_direct(video, pair.odd);
    features.values[i] = energy(magnitude(r0, r1)) * scale;
  });
  return features;
}

}  // namespace stgabor
