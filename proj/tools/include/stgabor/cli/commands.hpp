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

#ifndef STGABOR_CLI_COMMANDS_HPP_
#define STGABOR_CLI_COMMANDS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stgabor/classify.hpp"
#include "stgabor/convolve.hpp"
#include "stgabor/features.hpp"
#include "stgabor/io.hpp"
#include "stgabor/kernel.hpp"
#include "stgabor/stimuli.hpp"

namespace stgabor::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitNumeric = 3,
};

// Bank as written on the command line: either an explicit speed list or an
// inclusive range with a step, plus a direction count.
struct BankSpec {
  std::vector<double> speeds;  // wins over the range when non-empty
  double speed_min = 0.5;
  double speed_max = 2.0;
  double speed_step = 0.25;
  std::size_t direction_count = 8;
  EnvelopeMode envelope = EnvelopeMode::kMoving;
  EnergyNormalization normalization = EnergyNormalization::kNone;
  std::optional<KernelSupport> support;
};

// Expands speeds and Theta = {2 pi k / m}. Direction counts other than 4 and
// 8 are accepted but 4 and 8 are the reference banks.
BankConfig expand(const BankSpec& spec);

// "# key=value" lines describing a bank, used in every output header.
std::vector<std::string> describe(const BankConfig& bank);

struct RunConfig {
  BankSpec bank;
  ConvolutionOptions convolution;
  ClassifierOptions classifier;
  VideoCrop crop;
  std::filesystem::path manifest;
  std::filesystem::path features;
  std::filesystem::path confusion;
  std::uint64_t seed = 0;
  std::size_t folds = 10;
  unsigned jobs = 1;
  bool overwrite = false;
};

struct ExtractSummary {
  std::size_t computed = 0;
  std::size_t skipped = 0;
  std::vector<std::string> failures;  // "path: reason"
};

// Writes one feature row per manifest entry to config.features. Rows already
// present under the same fingerprint are kept and not recomputed; when every
// row is present the file is left untouched. Rows land in manifest order
// whatever config.jobs is. Per-video failures are collected, not thrown.
// Throws IncompatibleFeatures when an existing file has another fingerprint
// and config.overwrite is false.
ExtractSummary cmd_extract(const RunConfig& config, std::ostream& log);

// Cross-validates the feature table at config.features, prints a summary
// with the "mean(std)" rate to `out` and writes the confusion matrix to
// config.confusion when set.
CvReport cmd_classify(const RunConfig& config, std::ostream& out);

struct TuneConfig {
  TuningAxis axis = TuningAxis::kDirection;
  StimulusSpec stimulus;
  double filter_speed = 1.0;      // direction axis
  double filter_direction = 0.0;  // speed axis
  std::size_t direction_count = 8;
  std::vector<double> speeds{0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0};
  EnvelopeMode envelope = EnvelopeMode::kMoving;
  ConvolutionOptions convolution;
};

TuningCurve cmd_tune(const TuneConfig& config, std::ostream& csv);

struct KernelConfig {
  double speed = 1.0;
  double theta = 0.0;
  double phase = 0.0;
  EnvelopeMode envelope = EnvelopeMode::kMoving;
  std::optional<KernelSupport> support;
  std::filesystem::path output;  // optional .stv file
};

// Writes the kernel to config.output (if set) and its frames as text slices
// to `slices`.
Volume cmd_kernel(const KernelConfig& config, std::ostream& slices);

struct ConvolveConfig {
  std::filesystem::path video;
  VideoCrop crop;
  double speed = 1.0;
  double theta = 0.0;
  double phase = 0.0;
  EnvelopeMode envelope = EnvelopeMode::kMoving;
  bool quadrature = false;  // write R instead of r
  ConvolutionOptions convolution;
  std::filesystem::path output;
};

Volume cmd_convolve(const ConvolveConfig& config, std::ostream& log);

// Parses argv, dispatches, and maps exceptions onto ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stgabor::cli

#endif  // STGABOR_CLI_COMMANDS_HPP_
