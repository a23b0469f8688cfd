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

#include "stgabor/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "stgabor/error.hpp"
#include "stgabor/tables.hpp"

namespace stgabor::cli {
namespace {

namespace fs = std::filesystem;

const char* envelope_name(EnvelopeMode m) {
  return m == EnvelopeMode::kMoving ? "moving" : "stationary";
}

std::string join_numbers(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_number(values[i]);
  }
  return out;
}

std::string describe(const VideoCrop& c) {
  if (c.is_identity()) return "none";
  std::ostringstream s;
  s << c.x << ',' << c.y << ',' << c.width << ',' << c.height << ';' << c.t
    << ',' << c.frames;
  return s.str();
}

// Writes finished rows in manifest order as soon as every earlier row is
// done, so a partially written file is always a prefix of the final one.
class OrderedRowWriter {
 public:
  OrderedRowWriter(std::ofstream& out, std::size_t count)
      : out_(out), rows_(count), done_(count, false) {}

  void finish(std::size_t index, std::optional<std::string> row) {
    std::lock_guard lock(mutex_);
    rows_[index] = std::move(row);
    done_[index] = true;
    while (next_ < done_.size() && done_[next_]) {
      if (rows_[next_]) out_ << *rows_[next_];
      rows_[next_].reset();
      ++next_;
    }
    out_.flush();
  }

 private:
  std::ofstream& out_;
  std::vector<std::optional<std::string>> rows_;
  std::vector<bool> done_;
  std::size_t next_ = 0;
  std::mutex mutex_;
};

void write_slices(const Volume& kernel, std::ostream& out) {
  char buf[32];
  for (std::size_t t = 0; t < kernel.frames(); ++t) {
    out << "# t=" << t << "\n";
    for (std::size_t y = 0; y < kernel.height(); ++y) {
      for (std::size_t x = 0; x < kernel.width(); ++x) {
        std::snprintf(buf, sizeof(buf), "%.9g", kernel.at(x, y, t));
        out << (x ? " " : "") << buf;
      }
      out << "\n";
    }
  }
}

}  // namespace

BankConfig expand(const BankSpec& spec) {
  if (spec.direction_count != 4 && spec.direction_count != 8) {
    throw InvalidParameter("direction count must be 4 or 8, got " +
                           std::to_string(spec.direction_count));
  }
  BankConfig bank;
  bank.speeds = spec.speeds.empty()
                    ? speed_range(spec.speed_min, spec.speed_max, spec.speed_step)
                    : spec.speeds;
  bank.directions = evenly_spaced_directions(spec.direction_count);
  bank.envelope = spec.envelope;
  bank.normalization = spec.normalization;
  bank.support = spec.support;
  validate(bank);
  return bank;
}

std::vector<std::string> describe(const BankConfig& bank) {
  std::vector<std::string> lines;
  lines.push_back("bank.speeds=" + join_numbers(bank.speeds));
  lines.push_back("bank.directions=" + join_numbers(bank.directions));
  lines.push_back(std::string("bank.envelope=") + envelope_name(bank.envelope));
  lines.push_back(std::string("bank.normalize=") +
                  (bank.normalization == EnergyNormalization::kPerVoxel
                       ? "per-voxel"
                       : "none"));
  lines.push_back(
      "bank.support=" +
      (bank.support ? std::to_string(bank.support->spatial_halfwidth) + "x" +
                          std::to_string(bank.support->temporal_length)
                    : std::string("default")));
  return lines;
}

ExtractSummary cmd_extract(const RunConfig& config, std::ostream& log) {
  const BankConfig bank = expand(config.bank);
  FeatureTable header;
  header.fingerprint = fingerprint(bank);
  header.columns = feature_names(bank);
  header.metadata = describe(bank);
  header.metadata.push_back("crop=" + describe(config.crop));

  const auto entries = read_manifest(config.manifest);
  {
    std::map<std::string, std::size_t> seen;
    for (const auto& e : entries) {
      auto [it, fresh] = seen.emplace(e.path.string(), e.line);
      if (!fresh) {
        throw FormatError(config.manifest.string() + ":" +
                          std::to_string(e.line) + ": " + e.path.string() +
                          " already listed on line " + std::to_string(it->second));
      }
    }
  }

  std::set<std::string> present;
  const bool resume = fs::exists(config.features) && !config.overwrite;
  if (resume) {
    const FeatureTable existing = read_feature_table(config.features);
    if (existing.fingerprint != header.fingerprint ||
        existing.metadata != header.metadata) {
      throw IncompatibleFeatures(
          config.features.string() + " was written with fingerprint " +
          existing.fingerprint + " but this run has " + header.fingerprint +
          "; pass --overwrite to replace it");
    }
    for (const auto& row : existing.rows) present.insert(row.path);
  }

  std::vector<const ManifestEntry*> todo;
  for (const auto& e : entries) {
    if (!present.contains(e.path.string())) todo.push_back(&e);
  }
  ExtractSummary summary;
  summary.skipped = entries.size() - todo.size();
  if (todo.empty() && resume) {
    log << "all " << entries.size() << " rows present; nothing to do\n";
    return summary;
  }

  std::ofstream out(config.features,
                    resume ? std::ios::app : std::ios::trunc | std::ios::out);
  if (!out) throw Error("cannot open " + config.features.string());
  if (!resume) {
    out << format_feature_header(header);
    out.flush();
  }

  OrderedRowWriter writer(out, todo.size());
  std::mutex log_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < todo.size(); i = next++) {
      const ManifestEntry& e = *todo[i];
      try {
        const Volume video = load_video_path(e.path, config.crop);
        const FeatureVector f = extract_features(video, bank, config.convolution);
        writer.finish(i, format_feature_row({e.path.string(), e.label, f.values}));
        std::lock_guard lock(log_mutex);
        ++summary.computed;
        log << "ok " << e.path.string() << "\n";
      } catch (const std::exception& ex) {
        writer.finish(i, std::nullopt);
        std::lock_guard lock(log_mutex);
        summary.failures.push_back(e.path.string() + ": " + ex.what());
        log << "error " << e.path.string() << ": " << ex.what() << "\n";
      }
    }
  };
  const unsigned jobs =
      static_cast<unsigned>(std::min<std::size_t>(std::max(config.jobs, 1u), todo.size()));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  return summary;
}

CvReport cmd_classify(const RunConfig& config, std::ostream& out) {
  const FeatureTable table = read_feature_table(config.features);
  const LabeledDataset data = to_dataset(table);
  const CvReport report =
      cross_validate(data, config.folds, config.seed, config.classifier);

  out << "features    : " << config.features.string() << " (" << data.size()
      << " videos, " << report.classes.size() << " classes, "
      << table.columns.size() << " features)\n";
  out << "fingerprint : " << table.fingerprint << "\n";
  out << "folds       : " << report.folds
      << (report.stratified ? " stratified" : " unstratified") << ", seed "
      << report.seed << ", metric "
      << (report.metric == Metric::kEuclidean ? "euclidean" : "manhattan")
      << ", z-score " << (report.zscore ? "on" : "off") << "\n";
  out << "fold rates  :";
  char buf[32];
  for (double a : report.fold_accuracies) {
    std::snprintf(buf, sizeof(buf), " %.2f", 100.0 * a);
    out << buf;
  }
  out << "\n";
  for (const auto& w : report.warnings) out << "warning     : " << w << "\n";
  out << "rate        : " << format_rate(report) << "\n";

  if (!config.confusion.empty()) {
    std::ofstream csv(config.confusion, std::ios::trunc);
    if (!csv) throw Error("cannot open " + config.confusion.string());
    csv << "# fingerprint=" << table.fingerprint << "\n"
        << "# folds=" << report.folds << "\n"
        << "# seed=" << report.seed << "\n"
        << "# stratified=" << (report.stratified ? "true" : "false") << "\n"
        << "# ties=lowest-source\n";
    write_confusion_csv(csv, report);
  }
  return report;
}

TuningCurve cmd_tune(const TuneConfig& config, std::ostream& csv) {
  StimulusSpec stimulus = config.stimulus;
  TuningCurve curve;
  std::vector<std::string> meta;
  const auto& s = stimulus;
  if (config.axis == TuningAxis::kDirection) {
    stimulus.kind = StimulusKind::kBar;
    const auto directions = evenly_spaced_directions(config.direction_count);
    curve = direction_tuning(config.filter_speed, directions, stimulus,
                             config.envelope, config.convolution);
    meta.push_back("filter.speed=" + format_number(config.filter_speed));
  } else {
    stimulus.kind = StimulusKind::kEdge;
    curve = speed_tuning(config.filter_direction, config.speeds, stimulus,
                         config.envelope, config.convolution);
    meta.push_back("filter.direction=" + format_number(config.filter_direction));
  }
  meta.push_back(std::string("filter.envelope=") + envelope_name(config.envelope));
  meta.push_back(std::string("stimulus.kind=") +
                 (s.kind == StimulusKind::kBar ? "bar" : "edge"));
  meta.push_back("stimulus.direction=" + format_number(s.direction));
  meta.push_back("stimulus.speed=" + format_number(s.speed));
  if (s.kind == StimulusKind::kBar) {
    meta.push_back("stimulus.bar_width=" + format_number(s.bar_width));
  } else {
    meta.push_back(std::string("stimulus.polarity=") +
                   (s.polarity == EdgePolarity::kNegativeSide ? "negative"
                                                              : "positive"));
  }
  meta.push_back("stimulus.extent=" + std::to_string(s.extent.width) + "x" +
                 std::to_string(s.extent.height) + "x" +
                 std::to_string(s.extent.frames));
  meta.push_back("stimulus.foreground=" + format_number(s.foreground));
  meta.push_back("stimulus.background=" + format_number(s.background));
  std::string canonical;
  for (const auto& m : meta) canonical += m + "|";
  meta.insert(meta.begin(), "fingerprint=" + hash_text(canonical));
  write_tuning_csv(csv, curve, meta);
  return curve;
}

Volume cmd_kernel(const KernelConfig& config, std::ostream& slices) {
  const FilterParams params =
      derive_params(config.speed, config.theta, config.phase, config.envelope);
  const KernelSupport support = config.support.value_or(default_support(params));
  const Volume kernel = sample_kernel(params, support);
  if (!config.output.empty()) save_volume(kernel, config.output);

  std::ostringstream canonical;
  canonical << "v=" << format_number(params.speed)
            << " theta=" << format_number(params.theta)
            << " phi=" << format_number(params.phase)
            << " envelope=" << envelope_name(config.envelope)
            << " lambda=" << format_number(params.wavelength)
            << " sigma=" << format_number(params.sigma)
            << " halfwidth=" << support.spatial_halfwidth
            << " frames=" << support.temporal_length;
  slices << "# kernel " << canonical.str() << "\n";
  slices << "# fingerprint=" << hash_text(canonical.str()) << "\n";
  write_slices(kernel, slices);
  return kernel;
}

Volume cmd_convolve(const ConvolveConfig& config, std::ostream& log) {
  const Volume video = load_video_path(config.video, config.crop);
  const FilterParams params =
      derive_params(config.speed, config.theta, config.phase, config.envelope);
  Volume result;
  if (config.quadrature) {
    result = quadrature_response(video, params, config.convolution);
  } else {
    result = convolve(video, sample_kernel(params, default_support(params)),
                      config.convolution);
  }
  if (!config.output.empty()) save_volume(result, config.output);
  log << "video " << video.width() << "x" << video.height() << "x"
      << video.frames() << ", energy " << format_number(energy(result)) << "\n";
  return result;
}

}  // namespace stgabor::cli
