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

#include "stgabor/classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <random>

#include "stgabor/error.hpp"

namespace stgabor {
namespace {

using Row = std::vector<double>;

double distance(const Row& a, const Row& b, Metric metric) {
  double sum = 0.0;
  if (metric == Metric::kManhattan) {
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
    return sum;
  }
  // Squared Euclidean orders neighbours the same way.
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

// Index into `rows` of the nearest neighbour of `query`.
std::size_t nearest(const std::vector<const Row*>& rows,
                    const std::vector<const std::string*>& sources,
                    const Row& query, Metric metric) {
  std::size_t best = 0;
  double best_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double d = distance(*rows[i], query, metric);
    if (d < best_distance ||
        (d == best_distance && *sources[i] < *sources[best])) {
      best = i;
      best_distance = d;
    }
  }
  return best;
}

// Fisher-Yates on top of mt19937_64, whose output sequence is fixed by the
// standard; std::shuffle's is not.
void shuffle(std::vector<std::size_t>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

struct Standardizer {
  Row mean;
  Row scale;

  static Standardizer fit(const std::vector<const Row*>& rows) {
    const std::size_t dims = rows.front()->size();
    Standardizer z{Row(dims, 0.0), Row(dims, 1.0)};
    for (const Row* r : rows) {
      for (std::size_t d = 0; d < dims; ++d) z.mean[d] += (*r)[d];
    }
    for (double& m : z.mean) m /= static_cast<double>(rows.size());
    Row var(dims, 0.0);
    for (const Row* r : rows) {
      for (std::size_t d = 0; d < dims; ++d) {
        const double dev = (*r)[d] - z.mean[d];
        var[d] += dev * dev;
      }
    }
    for (std::size_t d = 0; d < dims; ++d) {
      const double sd = std::sqrt(var[d] / static_cast<double>(rows.size()));
      z.scale[d] = sd > 0.0 ? 1.0 / sd : 1.0;  // constant features stay put
    }
    return z;
  }

  Row apply(const Row& r) const {
    Row out(r.size());
    for (std::size_t d = 0; d < r.size(); ++d) {
      out[d] = (r[d] - mean[d]) * scale[d];
    }
    return out;
  }
};

}  // namespace

std::vector<std::string> LabeledDataset::classes() const {
  std::vector<std::string> labels;
  for (const auto& item : items) labels.push_back(item.label);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

void validate(const LabeledDataset& data) {
  if (data.items.empty()) throw InvalidInput("dataset is empty");
  const auto& first = data.items.front().features;
  for (const auto& item : data.items) {
    if (item.features.fingerprint != first.fingerprint) {
      throw IncompatibleFeatures("dataset mixes bank fingerprints " +
                                 first.fingerprint + " and " +
                                 item.features.fingerprint);
    }
    if (item.features.size() != first.size()) {
      throw IncompatibleFeatures("dataset mixes feature lengths");
    }
  }
  if (data.classes().size() < 2) {
    throw InvalidInput("dataset needs at least two classes");
  }
}

std::string knn_predict(const LabeledDataset& train, const FeatureVector& query,
                        Metric metric) {
  if (train.items.empty()) throw InvalidInput("training set is empty");
  std::vector<const Row*> rows;
  std::vector<const std::string*> sources;
  rows.reserve(train.size());
  sources.reserve(train.size());
  for (const auto& item : train.items) {
    if (item.features.fingerprint != query.fingerprint) {
      throw IncompatibleFeatures("query fingerprint " + query.fingerprint +
                                 " does not match training fingerprint " +
                                 item.features.fingerprint);
    }
    if (item.features.size() != query.size()) {
      throw IncompatibleFeatures("query length does not match training set");
    }
    rows.push_back(&item.features.values);
    sources.push_back(&item.source);
  }
  return train.items[nearest(rows, sources, query.values, metric)].label;
}

FoldPlan assign_folds(const LabeledDataset& data, std::size_t folds,
                      std::uint64_t seed) {
  if (folds < 2 || folds > data.size()) {
    throw InvalidParameter("fold count must lie in [2, " +
                           std::to_string(data.size()) + "], got " +
                           std::to_string(folds));
  }
  std::map<std::string, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < data.size(); ++i) {
    by_class[data.items[i].label].push_back(i);
  }
  FoldPlan plan;
  plan.stratified = std::all_of(by_class.begin(), by_class.end(),
                                [&](const auto& kv) {
                                  return kv.second.size() >= folds;
                                });
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::size_t>> groups;
  if (plan.stratified) {
    for (auto& [label, members] : by_class) groups.push_back(members);
  } else {
    std::vector<std::size_t> all(data.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    groups.push_back(std::move(all));
  }
  plan.fold_of.assign(data.size(), 0);
  std::size_t dealt = 0;
  for (auto& group : groups) {
    shuffle(group, rng);
    for (std::size_t idx : group) plan.fold_of[idx] = dealt++ % folds;
  }
  return plan;
}

CvReport cross_validate(const LabeledDataset& data, std::size_t folds,
                        std::uint64_t seed, const ClassifierOptions& opts) {
  validate(data);
  const FoldPlan plan = assign_folds(data, folds, seed);

  CvReport report;
  report.folds = folds;
  report.seed = seed;
  report.stratified = plan.stratified;
  report.metric = opts.metric;
  report.zscore = opts.zscore;
  report.classes = data.classes();
  report.confusion.assign(report.classes.size(),
                          std::vector<std::size_t>(report.classes.size(), 0));
  if (!plan.stratified) {
    report.warnings.push_back(
        "some class has fewer items than folds; folds are not stratified");
  }
  auto class_index = [&](const std::string& label) {
    return static_cast<std::size_t>(
        std::lower_bound(report.classes.begin(), report.classes.end(), label) -
        report.classes.begin());
  };

  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<const Row*> train_rows;
    std::vector<const std::string*> train_sources;
    std::vector<std::size_t> train_index;
    std::vector<std::size_t> test_index;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (plan.fold_of[i] == f) {
        test_index.push_back(i);
      } else {
        train_rows.push_back(&data.items[i].features.values);
        train_sources.push_back(&data.items[i].source);
        train_index.push_back(i);
      }
    }

    std::vector<Row> standardized;
    std::optional<Standardizer> z;
    if (opts.zscore) {
      z = Standardizer::fit(train_rows);
      standardized.reserve(train_rows.size());
      for (const Row* r : train_rows) standardized.push_back(z->apply(*r));
      for (std::size_t i = 0; i < train_rows.size(); ++i) {
        train_rows[i] = &standardized[i];
      }
    }

    std::size_t correct = 0;
    for (std::size_t i : test_index) {
      const Row& raw = data.items[i].features.values;
      const Row query = z ? z->apply(raw) : raw;
      const std::size_t hit =
          nearest(train_rows, train_sources, query, opts.metric);
      const std::string& predicted = data.items[train_index[hit]].label;
      correct += predicted == data.items[i].label;
      ++report.confusion[class_index(data.items[i].label)]
                        [class_index(predicted)];
    }
    report.fold_accuracies.push_back(static_cast<double>(correct) /
                                     static_cast<double>(test_index.size()));
  }

  double sum = 0.0;
  for (double a : report.fold_accuracies) sum += a;
  report.mean_accuracy = sum / static_cast<double>(folds);
  double ss = 0.0;
  for (double a : report.fold_accuracies) {
    ss += (a - report.mean_accuracy) * (a - report.mean_accuracy);
  }
  report.std_dev = std::sqrt(ss / static_cast<double>(folds - 1));
  return report;
}

std::string format_rate(const CvReport& report) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f(%.2f)", 100.0 * report.mean_accuracy,
                100.0 * report.std_dev);
  return buf;
}

}  // namespace stgabor
