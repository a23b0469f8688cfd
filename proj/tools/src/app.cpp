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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

#include "stgabor/cli/commands.hpp"
#include "stgabor/error.hpp"

namespace stgabor::cli {
namespace {

const std::map<std::string, EnvelopeMode> kEnvelopes{
    {"moving", EnvelopeMode::kMoving}, {"stationary", EnvelopeMode::kStationary}};
const std::map<std::string, Backend> kBackends{{"auto", Backend::kAuto},
                                               {"direct", Backend::kDirect},
                                               {"spectral", Backend::kSpectral}};
const std::map<std::string, EnergyNormalization> kNormalizations{
    {"none", EnergyNormalization::kNone},
    {"per-voxel", EnergyNormalization::kPerVoxel}};
const std::map<std::string, Metric> kMetrics{{"euclidean", Metric::kEuclidean},
                                             {"manhattan", Metric::kManhattan}};
const std::map<std::string, TuningAxis> kAxes{{"direction", TuningAxis::kDirection},
                                              {"speed", TuningAxis::kSpeed}};

constexpr const char* kFooter = R"(
Options may also come from a flat key=value file given with --config.
Keys are long option names; options of a subcommand take its name as a
prefix, e.g.

  extract.speed-min=0.1
  extract.speed-max=1.5
  extract.speed-step=0.1
  extract.directions=8

Command-line flags override the file, which overrides built-in defaults.

Exit codes: 0 success, 1 usage, 2 data error, 3 numeric error.)";

// Raw option strings converted after parsing.
struct Pending {
  std::vector<std::size_t> crop;    // x,y,w,h
  std::vector<std::size_t> frames;  // t,count
  std::string support;              // "HxT"
  std::string extent;               // "WxHxT"
};

std::optional<KernelSupport> parse_support(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto x = text.find('x');
  if (x == std::string::npos) {
    throw InvalidParameter("support must look like HALFWIDTHxFRAMES, got " + text);
  }
  KernelSupport s{std::stol(text.substr(0, x)), std::stol(text.substr(x + 1))};
  validate(s);
  return s;
}

Extent parse_extent(const std::string& text) {
  Extent e;
  char sep1 = 0;
  char sep2 = 0;
  std::istringstream in(text);
  if (!(in >> e.width >> sep1 >> e.height >> sep2 >> e.frames) || sep1 != 'x' ||
      sep2 != 'x' || e.voxels() == 0) {
    throw InvalidParameter("extent must look like WxHxT, got " + text);
  }
  return e;
}

VideoCrop make_crop(const Pending& p) {
  VideoCrop c;
  if (!p.crop.empty()) {
    c.x = p.crop[0];
    c.y = p.crop[1];
    c.width = p.crop[2];
    c.height = p.crop[3];
  }
  if (!p.frames.empty()) {
    c.t = p.frames[0];
    c.frames = p.frames[1];
  }
  return c;
}

void add_crop_options(CLI::App* cmd, Pending& p) {
  cmd->add_option("--crop", p.crop, "Spatial crop x,y,width,height (0 = to edge)")
      ->delimiter(',')
      ->expected(4);
  cmd->add_option("--frames", p.frames, "Temporal crop first,count (0 = to end)")
      ->delimiter(',')
      ->expected(2);
}

void add_convolution_options(CLI::App* cmd, ConvolutionOptions& opts) {
  cmd->add_option("--backend", opts.backend, "Convolution backend")
      ->transform(CLI::CheckedTransformer(kBackends, CLI::ignore_case).description(""))
      ->option_text("auto|direct|spectral")
      ->capture_default_str();
  cmd->add_option("--threads", opts.threads,
                  "Worker threads per video (results do not depend on it)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_bank_options(CLI::App* cmd, BankSpec& bank, Pending& p) {
  cmd->add_option("--speeds", bank.speeds,
                  "Explicit comma-separated speeds (overrides the range)")
      ->delimiter(',');
  cmd->add_option("--speed-min", bank.speed_min, "First speed, pixels/frame")
      ->capture_default_str();
  cmd->add_option("--speed-max", bank.speed_max, "Last speed, inclusive")
      ->capture_default_str();
  cmd->add_option("--speed-step", bank.speed_step, "Speed step")
      ->capture_default_str();
  cmd->add_option("--directions", bank.direction_count,
                  "Direction count: 4 or 8 evenly spaced over [0, 2 pi)")
      ->check(CLI::IsMember({4, 8}))
      ->capture_default_str();
  cmd->add_option("--envelope", bank.envelope, "Envelope mode")
      ->transform(CLI::CheckedTransformer(kEnvelopes, CLI::ignore_case).description(""))
      ->option_text("moving|stationary")
      ->capture_default_str();
  cmd->add_option("--normalize", bank.normalization,
                  "Energy normalisation (per-voxel divides by W*H*T)")
      ->transform(CLI::CheckedTransformer(kNormalizations, CLI::ignore_case).description(""))
      ->option_text("none|per-voxel")
      ->capture_default_str();
  cmd->add_option("--support", p.support,
                  "Kernel support override HALFWIDTHxFRAMES (default per filter)");
}

void add_filter_options(CLI::App* cmd, double& speed, double& theta,
                        double& phase, EnvelopeMode& envelope) {
  cmd->add_option("--v", speed, "Filter speed, pixels/frame")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--theta", theta, "Filter direction, radians")
      ->capture_default_str();
  cmd->add_option("--phi", phase, "Carrier phase, radians in [-pi, pi]")
      ->capture_default_str();
  cmd->add_option("--envelope", envelope, "Envelope mode")
      ->transform(CLI::CheckedTransformer(kEnvelopes, CLI::ignore_case).description(""))
      ->option_text("moving|stationary")
      ->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spatiotemporal Gabor filter banks for dynamic texture recognition",
               "stgabor"};
  app.footer(kFooter);
  app.set_config("--config", "", "Read options from a key=value file");
  app.require_subcommand(1);

  Pending pending;
  RunConfig run_config;
  TuneConfig tune;
  KernelConfig kernel;
  ConvolveConfig conv;
  std::string tune_out;
  std::string kernel_slices;

  auto* extract = app.add_subcommand("extract", "Compute feature vectors for a manifest");
  extract->add_option("--manifest", run_config.manifest, "CSV of path,label")
      ->required();
  extract->add_option("--features", run_config.features, "Output feature CSV")
      ->required();
  extract->add_option("--jobs", run_config.jobs, "Videos processed in parallel")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  extract->add_flag("--overwrite", run_config.overwrite,
                    "Replace a feature file written with another configuration");
  add_bank_options(extract, run_config.bank, pending);
  add_convolution_options(extract, run_config.convolution);
  add_crop_options(extract, pending);

  auto* classify = app.add_subcommand("classify", "1-NN cross-validation of a feature CSV");
  classify->add_option("--features", run_config.features, "Feature CSV")->required();
  classify->add_option("--folds", run_config.folds, "Number of folds")
      ->capture_default_str();
  classify->add_option("--seed", run_config.seed, "Fold assignment seed")
      ->capture_default_str();
  classify->add_option("--confusion", run_config.confusion,
                       "Write the confusion matrix CSV here");
  classify->add_option("--metric", run_config.classifier.metric, "Distance")
      ->transform(CLI::CheckedTransformer(kMetrics, CLI::ignore_case).description(""))
      ->option_text("euclidean|manhattan")
      ->capture_default_str();
  classify->add_flag("--zscore", run_config.classifier.zscore,
                     "Standardise features using training folds only");

  auto* tune_cmd = app.add_subcommand("tune", "Direction or speed tuning curve");
  tune_cmd->add_option("--axis", tune.axis, "direction (bar) or speed (edge)")
      ->transform(CLI::CheckedTransformer(kAxes, CLI::ignore_case).description(""))
      ->option_text("direction|speed")
      ->capture_default_str();
  tune_cmd->add_option("--stimulus-direction", tune.stimulus.direction,
                       "Stimulus direction, radians")
      ->capture_default_str();
  tune_cmd->add_option("--stimulus-speed", tune.stimulus.speed,
                       "Stimulus speed, pixels/frame")
      ->capture_default_str();
  tune_cmd->add_option("--bar-width", tune.stimulus.bar_width, "Bar width, pixels")
      ->capture_default_str();
  tune_cmd->add_option("--extent", pending.extent, "Stimulus size WxHxT")
      ->default_str("64x64x16");
  tune_cmd->add_option("--filter-speed", tune.filter_speed,
                       "Filter speed for the direction axis")
      ->capture_default_str();
  tune_cmd->add_option("--filter-direction", tune.filter_direction,
                       "Filter direction for the speed axis")
      ->capture_default_str();
  tune_cmd->add_option("--directions", tune.direction_count,
                       "Filter directions for the direction axis")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  tune_cmd->add_option("--speeds", tune.speeds, "Filter speeds for the speed axis")
      ->delimiter(',');
  tune_cmd->add_option("--envelope", tune.envelope, "Envelope mode")
      ->transform(CLI::CheckedTransformer(kEnvelopes, CLI::ignore_case).description(""))
      ->option_text("moving|stationary")
      ->capture_default_str();
  tune_cmd->add_option("--out", tune_out, "CSV output (default stdout)");
  add_convolution_options(tune_cmd, tune.convolution);

  auto* kernel_cmd = app.add_subcommand("kernel", "Sample one kernel");
  add_filter_options(kernel_cmd, kernel.speed, kernel.theta, kernel.phase,
                     kernel.envelope);
  kernel_cmd->add_option("--support", pending.support, "Support HALFWIDTHxFRAMES");
  kernel_cmd->add_option("--out", kernel.output, "Write the kernel as .stv");
  kernel_cmd->add_option("--slices", kernel_slices,
                         "Write per-frame text slices here (default stdout)");

  auto* conv_cmd = app.add_subcommand("convolve", "Convolve one video with one filter");
  conv_cmd->add_option("--video", conv.video, "Frame directory, .stv or image")
      ->required();
  add_filter_options(conv_cmd, conv.speed, conv.theta, conv.phase, conv.envelope);
  conv_cmd->add_flag("--quadrature", conv.quadrature,
                     "Write the phase-insensitive response instead");
  conv_cmd->add_option("--out", conv.output, "Output .stv")->required();
  add_convolution_options(conv_cmd, conv.convolution);
  add_crop_options(conv_cmd, pending);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (extract->parsed()) {
      run_config.bank.support = parse_support(pending.support);
      run_config.crop = make_crop(pending);
      const auto summary = cmd_extract(run_config, err);
      out << "computed " << summary.computed << ", kept " << summary.skipped
          << ", failed " << summary.failures.size() << "\n";
      for (const auto& f : summary.failures) err << "failed: " << f << "\n";
      return summary.failures.empty() ? kExitOk : kExitData;
    }
    if (classify->parsed()) {
      cmd_classify(run_config, out);
      return kExitOk;
    }
    if (tune_cmd->parsed()) {
      if (!pending.extent.empty()) tune.stimulus.extent = parse_extent(pending.extent);
      if (tune_out.empty()) {
        cmd_tune(tune, out);
      } else {
        std::ofstream csv(tune_out, std::ios::trunc);
        if (!csv) throw Error("cannot open " + tune_out);
        cmd_tune(tune, csv);
      }
      return kExitOk;
    }
    if (kernel_cmd->parsed()) {
      kernel.support = parse_support(pending.support);
      if (kernel_slices.empty()) {
        cmd_kernel(kernel, out);
      } else {
        std::ofstream slices(kernel_slices, std::ios::trunc);
        if (!slices) throw Error("cannot open " + kernel_slices);
        cmd_kernel(kernel, slices);
      }
      return kExitOk;
    }
    if (conv_cmd->parsed()) {
      conv.crop = make_crop(pending);
      cmd_convolve(conv, err);
      return kExitOk;
    }
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace stgabor::cli
