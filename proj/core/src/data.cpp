// Copyright 2026 The ldpfreq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ldpfreq/data.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <json.hpp>

#include "ldpfreq/rng.hpp"
#include "ldpfreq/tally.hpp"

namespace ldpfreq {

FrequencyVector Dataset::true_distribution() const {
  return ldpfreq::true_distribution(values, domain);
}

ColumnSelector parse_column_selector(const std::string& text) {
  if (!text.empty() && std::all_of(text.begin(), text.end(),
                                   [](unsigned char c) { return std::isdigit(c); })) {
    return static_cast<uint32_t>(std::stoul(text));
  }
  return text;
}

namespace {

std::string trim_copy(const std::string& s) {
  size_t begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  size_t end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

// RFC-4180-style record reader: quoted fields may contain the delimiter,
// doubled quotes, and embedded newlines. Returns false at end of input.
bool read_record(std::istream& in, char delimiter, std::vector<std::string>& fields) {
  fields.clear();
  if (in.peek() == std::char_traits<char>::eof()) return false;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (int ci = in.get(); ; ci = in.get()) {
    if (ci == std::char_traits<char>::eof()) {
      if (!any && field.empty() && fields.empty()) return false;
      fields.push_back(std::move(field));
      return true;
    }
    any = true;
    const char c = static_cast<char>(ci);
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          field.push_back('"');
          in.get();
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == delimiter) {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      fields.push_back(std::move(field));
      return true;
    } else if (c == '\r') {
      if (in.peek() == '\n') in.get();
      fields.push_back(std::move(field));
      return true;
    } else {
      field.push_back(c);
    }
  }
}

}  // namespace

Dataset ingest_csv(const std::filesystem::path& path, const ColumnSelector& column,
                   const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound("cannot open " + path.string());

  std::vector<std::string> fields;
  uint32_t column_index = 0;
  std::string attribute;

  if (options.has_header) {
    if (!read_record(in, options.delimiter, fields)) {
      throw EmptyColumn("file has no rows: " + path.string());
    }
    if (options.trim) {
      for (std::string& f : fields) f = trim_copy(f);
    }
    if (const auto* name = std::get_if<std::string>(&column)) {
      auto it = std::find(fields.begin(), fields.end(), *name);
      if (it == fields.end()) {
        throw ColumnNotFound("no column named '" + *name + "' in " + path.string());
      }
      column_index = static_cast<uint32_t>(it - fields.begin());
      attribute = *name;
    } else {
      column_index = std::get<uint32_t>(column);
      if (column_index >= fields.size()) {
        throw ColumnNotFound("column index " + std::to_string(column_index) +
                             " out of range (" + std::to_string(fields.size()) + " columns)");
      }
      attribute = fields[column_index];
    }
  } else {
    if (const auto* name = std::get_if<std::string>(&column)) {
      throw ColumnNotFound("column '" + *name +
                           "' requested by name but the file has no header row");
    }
    column_index = std::get<uint32_t>(column);
    attribute = "col" + std::to_string(column_index);
  }

  const size_t expected_fields = options.has_header ? fields.size() : 0;
  std::vector<std::string> cells;
  size_t row_number = options.has_header ? 1 : 0;
  while (read_record(in, options.delimiter, fields)) {
    ++row_number;
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    if (expected_fields != 0 && fields.size() != expected_fields) {
      throw RaggedRow("row " + std::to_string(row_number) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(expected_fields) + " in " + path.string());
    }
    if (column_index >= fields.size()) {
      throw RaggedRow("row " + std::to_string(row_number) + " has no column " +
                      std::to_string(column_index) + " in " + path.string());
    }
    cells.push_back(options.trim ? trim_copy(fields[column_index]) : fields[column_index]);
  }
  if (cells.empty()) throw EmptyColumn("no data rows in " + path.string());

  std::map<std::string, uint32_t> category_index;  // lexicographic order
  for (const std::string& cell : cells) category_index.emplace(cell, 0);
  std::vector<std::string> labels;
  labels.reserve(category_index.size());
  for (auto& [label, index] : category_index) {
    index = static_cast<uint32_t>(labels.size());
    labels.push_back(label);
  }

  Dataset dataset;
  dataset.name = path.stem().string();
  dataset.attribute = attribute;
  const auto d = static_cast<uint32_t>(labels.size());
  dataset.domain = Domain(d, std::move(labels));
  dataset.values.reserve(cells.size());
  for (const std::string& cell : cells) dataset.values.push_back(category_index[cell]);
  return dataset;
}

// --- synthetic -----------------------------------------------------------------

double SyntheticSpec::default_rho(uint32_t d) {
  return std::min(2.0 / d, 0.5);
}

FrequencyVector truncated_geometric(uint32_t d, double rho) {
  if (d < 2 || !(rho > 0.0 && rho < 1.0)) {
    throw InvalidSpec("truncated geometric needs d >= 2 and rho in (0, 1)");
  }
  FrequencyVector f(d);
  double weight = 1.0;
  double sum = 0.0;
  for (uint32_t i = 0; i < d; ++i) {
    f[i] = weight;
    sum += weight;
    weight *= 1.0 - rho;
  }
  for (double& x : f) x /= sum;
  return f;
}

Dataset generate_synthetic(const SyntheticSpec& spec) {
  if (spec.n < 1) throw InvalidSpec("synthetic dataset needs n >= 1");
  const FrequencyVector f = truncated_geometric(spec.d, spec.rho);

  // Inverse-CDF sampling on the fixed uniform stream keeps draws identical
  // across platforms.
  std::vector<double> cdf(spec.d);
  double acc = 0.0;
  for (uint32_t i = 0; i < spec.d; ++i) {
    acc += f[i];
    cdf[i] = acc;
  }
  cdf.back() = 1.0;

  Dataset dataset;
  dataset.name = spec.name;
  dataset.attribute = "synthetic(d=" + std::to_string(spec.d) + ")";
  dataset.domain = Domain(spec.d);
  dataset.values.reserve(spec.n);
  SeededRng rng(spec.seed);
  for (uint64_t i = 0; i < spec.n; ++i) {
    const double u = rng.uniform01();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    dataset.values.push_back(static_cast<uint32_t>(it - cdf.begin()));
  }
  return dataset;
}

// --- canonical files ----------------------------------------------------------------

void write_dataset(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  nlohmann::json header = {
      {"name", dataset.name},
      {"attribute", dataset.attribute},
      {"n", dataset.n()},
      {"d", dataset.domain.size()},
  };
  if (dataset.domain.labels()) {
    header["labels"] = *dataset.domain.labels();
  } else {
    header["labels"] = nullptr;
  }
  out << header.dump() << '\n';
  for (uint32_t v : dataset.values) out << v << '\n';
  if (!out) throw IoError("short write to " + path.string());
}

Dataset read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw InvalidSpec("dataset file is empty: " + path.string());

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidSpec("bad dataset header in " + path.string() + ": " + e.what());
  }

  Dataset dataset;
  dataset.name = header.value("name", path.stem().string());
  dataset.attribute = header.value("attribute", "");
  const auto d = header.at("d").get<uint32_t>();
  if (!header.at("labels").is_null()) {
    dataset.domain = Domain(d, header.at("labels").get<std::vector<std::string>>());
  } else {
    dataset.domain = Domain(d);
  }

  const auto n = header.at("n").get<uint64_t>();
  dataset.values.reserve(n);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto v = static_cast<uint32_t>(std::stoul(line));
    if (v >= d) {
      throw InvalidSpec("value " + line + " out of domain in " + path.string());
    }
    dataset.values.push_back(v);
  }
  if (dataset.values.size() != n) {
    throw InvalidSpec("dataset header says n = " + std::to_string(n) + " but file has " +
                      std::to_string(dataset.values.size()) + " values");
  }
  return dataset;
}

// --- metadata table ---------------------------------------------------------------------

std::vector<DatasetInfoRow> dataset_sizes_table(std::span<const Dataset> datasets) {
  std::vector<DatasetInfoRow> rows;
  rows.reserve(datasets.size());
  for (const Dataset& ds : datasets) {
    rows.push_back({ds.name, ds.attribute, ds.n(), ds.domain.size()});
  }
  return rows;
}

std::string format_sizes_table(std::span<const DatasetInfoRow> rows) {
  size_t name_w = 7, attr_w = 9;
  for (const auto& row : rows) {
    name_w = std::max(name_w, row.name.size());
    attr_w = std::max(attr_w, row.attribute.size());
  }
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(name_w)) << "dataset" << "  "
      << std::setw(static_cast<int>(attr_w)) << "attribute" << "  " << std::setw(12) << "n"
      << "d" << '\n';
  for (const auto& row : rows) {
    out << std::left << std::setw(static_cast<int>(name_w)) << row.name << "  "
        << std::setw(static_cast<int>(attr_w)) << row.attribute << "  " << std::setw(12)
        << row.n << row.d << '\n';
  }
  return out.str();
}

}  // namespace ldpfreq
