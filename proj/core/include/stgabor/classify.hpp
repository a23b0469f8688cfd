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

#ifndef STGABOR_CLASSIFY_HPP_
#define STGABOR_CLASSIFY_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "stgabor/features.hpp"

namespace stgabor {

struct LabeledItem {
  FeatureVector features;
  std::string label;
  std::string source;  // e.g. the video path; orders ties
};

struct LabeledDataset {
  std::vector<LabeledItem> items;

  std::size_t size() const { return items.size(); }
  // Distinct labels in lexicographic order.
  std::vector<std::string> classes() const;
};

// Throws IncompatibleFeatures when fingerprints or lengths differ and
// InvalidInput when the dataset has fewer than two classes.
void validate(const LabeledDataset& data);

enum class Metric { kEuclidean, kManhattan };

struct ClassifierOptions {
  Metric metric = Metric::kEuclidean;
  // Standardise each feature with mean and deviation fitted on the training
  // part of every fold.
  bool zscore = false;
};

// Label of the nearest training vector. Equal distances resolve to the item
// with the lexicographically smallest source, then the earliest item.
// Throws IncompatibleFeatures on fingerprint or length mismatch and
// InvalidInput for an empty training set.
std::string knn_predict(const LabeledDataset& train, const FeatureVector& query,
                        Metric metric = Metric::kEuclidean);

struct FoldPlan {
  std::vector<std::size_t> fold_of;  // fold index per dataset item
  bool stratified = true;
};

// Seeded fold assignment. When every class has at least `folds` items the
// assignment is stratified: items are shuffled within each class and dealt
// round-robin, continuing the deal across classes, so fold sizes and per-class
// counts per fold each differ by at most one. Otherwise all items are
// shuffled together and dealt the same way.
FoldPlan assign_folds(const LabeledDataset& data, std::size_t folds,
                      std::uint64_t seed);

struct CvReport {
  std::size_t folds = 0;
  std::uint64_t seed = 0;
  bool stratified = true;
  Metric metric = Metric::kEuclidean;
  bool zscore = false;
  std::vector<double> fold_accuracies;
  double mean_accuracy = 0.0;
  double std_dev = 0.0;  // sample standard deviation over folds
  std::vector<std::string> classes;
  // confusion[true][predicted], class order as in `classes`.
  std::vector<std::vector<std::size_t>> confusion;
  std::vector<std::string> warnings;
};

// k-fold cross-validation of the 1-nearest-neighbour classifier.
// Throws InvalidParameter unless 2 <= folds <= data.size().
CvReport cross_validate(const LabeledDataset& data, std::size_t folds,
                        std::uint64_t seed, const ClassifierOptions& opts = {});

// "mean(std)" in percent with two decimals, e.g. "91.50(5.20)".
std::string format_rate(const CvReport& report);

}  // namespace stgabor

#endif  // STGABOR_CLASSIFY_HPP_
