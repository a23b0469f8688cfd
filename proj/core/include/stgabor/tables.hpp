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

#ifndef STGABOR_TABLES_HPP_
#define STGABOR_TABLES_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stgabor/classify.hpp"
#include "stgabor/stimuli.hpp"

namespace stgabor {

// RFC 4180 field splitting: fields may be double-quoted, "" escapes a quote.
// Throws FormatError on an unterminated quote.
std::vector<std::string> split_csv_line(std::string_view line);
std::string join_csv(std::span<const std::string> fields);

// Shortest decimal form that parses back to the same double.
std::string format_number(double value);
// Throws FormatError unless the whole string is a finite number.
double parse_number(std::string_view text);

// Manifest: one `path,label` pair per line. A leading "path,label" header,
// blank lines and lines starting with '#' are skipped. Relative paths resolve
// against the manifest's directory.
struct ManifestEntry {
  std::filesystem::path path;
  std::string label;
  std::size_t line = 0;
};

// Throws FormatError whose message starts with "<file>:<line>:".
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);

// Feature CSV:
//
//   # stgabor features
//   # fingerprint=<16 hex digits>
//   # <key>=<value>            (free-form metadata, any number)
//   path,label,v=0.5;theta=0,v=0.5;theta=1.5707963267948966,...
//   clips/a,fire,1234.5,...
struct FeatureRow {
  std::string path;
  std::string label;
  std::vector<double> values;
};

struct FeatureTable {
  std::string fingerprint;
  std::vector<std::string> columns;   // energy column names
  std::vector<std::string> metadata;  // "key=value" comment lines
  std::vector<FeatureRow> rows;
};

// Comment lines and the column header, newline-terminated.
std::string format_feature_header(const FeatureTable& table);
std::string format_feature_row(const FeatureRow& row);
void write_feature_table(std::ostream& out, const FeatureTable& table);

// Throws FormatError for a missing fingerprint, a malformed header or a row
// whose width differs from the header.
FeatureTable read_feature_table(const std::filesystem::path& path);

// Rows become items with source = path and the table fingerprint.
LabeledDataset to_dataset(const FeatureTable& table);

// Two columns, "<theta|speed>,energy", preceded by "# key=value" lines.
void write_tuning_csv(std::ostream& out, const TuningCurve& curve,
                      std::span<const std::string> metadata = {});

// Rows are true classes, columns predicted classes.
void write_confusion_csv(std::ostream& out, const CvReport& report);

}  // namespace stgabor

#endif  // STGABOR_TABLES_HPP_
