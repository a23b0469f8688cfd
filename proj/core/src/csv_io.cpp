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

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

#include "stgabor/error.hpp"
#include "stgabor/tables.hpp"

namespace stgabor {
namespace {

namespace fs = std::filesystem;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::string quote_if_needed(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

constexpr std::string_view kFingerprintKey = "fingerprint=";

}  // namespace

std::vector<std::string> split_csv_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw FormatError("unterminated quote in CSV line");
  return fields;
}

std::string join_csv(std::span<const std::string> fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += quote_if_needed(fields[i]);
  }
  return out;
}

std::string format_number(double value) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

double parse_number(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw FormatError("not a finite number: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<ManifestEntry> read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path.string() + ": cannot open manifest");
  const fs::path base = path.parent_path();
  std::vector<ManifestEntry> entries;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto where = path.string() + ":" + std::to_string(number) + ": ";
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::vector<std::string> fields;
    try {
      fields = split_csv_line(body);
    } catch (const FormatError& e) {
      throw FormatError(where + e.what());
    }
    if (fields.size() != 2) {
      throw FormatError(where + "expected 'path,label', found " +
                        std::to_string(fields.size()) + " fields");
    }
    const std::string p(trim(fields[0]));
    const std::string label(trim(fields[1]));
    if (entries.empty() && p == "path" && label == "label") continue;
    if (p.empty()) throw FormatError(where + "empty path");
    if (label.empty()) throw FormatError(where + "empty label");
    fs::path resolved(p);
    if (resolved.is_relative()) resolved = base / resolved;
    entries.push_back({resolved, label, number});
  }
  return entries;
}

std::string format_feature_header(const FeatureTable& table) {
  std::string out = "# stgabor features\n# ";
  out += kFingerprintKey;
  out += table.fingerprint + "\n";
  for (const auto& m : table.metadata) out += "# " + m + "\n";
  std::vector<std::string> header{"path", "label"};
  header.insert(header.end(), table.columns.begin(), table.columns.end());
  out += join_csv(header) + "\n";
  return out;
}

std::string format_feature_row(const FeatureRow& row) {
  std::vector<std::string> fields{row.path, row.label};
  for (double v : row.values) fields.push_back(format_number(v));
  return join_csv(fields) + "\n";
}

void write_feature_table(std::ostream& out, const FeatureTable& table) {
  out << format_feature_header(table);
  for (const auto& row : table.rows) out << format_feature_row(row);
}

FeatureTable read_feature_table(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path.string() + ": cannot open feature table");
  FeatureTable table;
  bool have_header = false;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto where = path.string() + ":" + std::to_string(number) + ": ";
    const auto body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '#') {
      if (have_header) continue;
      auto comment = trim(body.substr(1));
      if (comment.starts_with(kFingerprintKey)) {
        table.fingerprint = std::string(comment.substr(kFingerprintKey.size()));
      } else if (comment.find('=') != std::string_view::npos) {
        table.metadata.emplace_back(comment);
      }
      continue;
    }
    std::vector<std::string> fields;
    try {
      fields = split_csv_line(body);
    } catch (const FormatError& e) {
      throw FormatError(where + e.what());
    }
    if (!have_header) {
      if (fields.size() < 3 || fields[0] != "path" || fields[1] != "label") {
        throw FormatError(where + "expected header 'path,label,<features>...'");
      }
      table.columns.assign(fields.begin() + 2, fields.end());
      have_header = true;
      continue;
    }
    if (fields.size() != table.columns.size() + 2) {
      throw FormatError(where + "row has " + std::to_string(fields.size()) +
                        " fields, header has " +
                        std::to_string(table.columns.size() + 2));
    }
    FeatureRow row{fields[0], fields[1], {}};
    row.values.reserve(table.columns.size());
    for (std::size_t i = 2; i < fields.size(); ++i) {
      try {
        row.values.push_back(parse_number(fields[i]));
      } catch (const FormatError& e) {
        throw FormatError(where + e.what());
      }
    }
    table.rows.push_back(std::move(row));
  }
  if (table.fingerprint.empty()) {
    throw FormatError(path.string() + ": missing '# fingerprint=' line");
  }
  if (!have_header) throw FormatError(path.string() + ": missing header row");
  return table;
}

LabeledDataset to_dataset(const FeatureTable& table) {
  LabeledDataset data;
  data.items.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    data.items.push_back({{row.values, table.fingerprint}, row.label, row.path});
  }
  return data;
}

void write_tuning_csv(std::ostream& out, const TuningCurve& curve,
                      std::span<const std::string> metadata) {
  out << "# axis="
      << (curve.axis == TuningAxis::kDirection ? "direction" : "speed") << "\n";
  for (const auto& m : metadata) out << "# " << m << "\n";
  out << (curve.axis == TuningAxis::kDirection ? "theta" : "speed")
      << ",energy\n";
  for (const auto& s : curve.samples) {
    out << format_number(s.parameter) << ',' << format_number(s.energy) << "\n";
  }
}

void write_confusion_csv(std::ostream& out, const CvReport& report) {
  std::vector<std::string> header{"true\\predicted"};
  header.insert(header.end(), report.classes.begin(), report.classes.end());
  out << join_csv(header) << "\n";
  for (std::size_t i = 0; i < report.classes.size(); ++i) {
    out << quote_if_needed(report.classes[i]);
    for (std::size_t count : report.confusion[i]) out << ',' << count;
    out << "\n";
  }
}

}  // namespace stgabor
