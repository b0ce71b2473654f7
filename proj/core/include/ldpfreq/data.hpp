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

#ifndef LDPFREQ_DATA_HPP_
#define LDPFREQ_DATA_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ldpfreq/types.hpp"

namespace ldpfreq {

// One categorical column: every row encoded as an index into the domain.
struct Dataset {
  std::string name;
  std::string attribute;
  Domain domain{2};
  std::vector<uint32_t> values;

  uint64_t n() const { return values.size(); }
  FrequencyVector true_distribution() const;
};

struct CsvOptions {
  char delimiter = ',';
  bool has_header = false;
  bool trim = true;
};

// Column selector: header name or 0-based index.
using ColumnSelector = std::variant<uint32_t, std::string>;

// Parses "3" as index 3 and anything else as a column name.
ColumnSelector parse_column_selector(const std::string& text);

// Encodes one CSV column as a categorical dataset. Distinct trimmed cell
// values, sorted lexicographically, become categories 0..d-1; rows map to
// their category index in order. The missing-value token "?" is a category
// like any other. RFC-4180 quoting is honored (quoted fields may contain the
// delimiter, doubled quotes, and newlines).
Dataset ingest_csv(const std::filesystem::path& path, const ColumnSelector& column,
                   const CsvOptions& options = {});

// --- Synthetic data -------------------------------------------------------

// Truncated geometric shape: weights (1-rho)^i over i in [0, d), renormalized.
struct SyntheticSpec {
  std::string name = "synthetic";
  uint64_t n = 0;
  uint32_t d = 0;
  double rho = 0;  // in (0, 1)
  uint64_t seed = 0;

  // 2/d, clamped to at most 1/2 so the ratio stays inside (0, 1) at small d.
  static double default_rho(uint32_t d);
};

FrequencyVector truncated_geometric(uint32_t d, double rho);

// Draws n i.i.d. values from the truncated geometric distribution. Identical
// specs produce identical datasets.
Dataset generate_synthetic(const SyntheticSpec& spec);

// --- Canonical dataset files ------------------------------------------------
//
// Line 1: JSON header {"name", "attribute", "n", "d", "labels"}.
// Lines 2..n+1: one decimal value index per line. Bit-exact across platforms.

void write_dataset(const Dataset& dataset, const std::filesystem::path& path);
Dataset read_dataset(const std::filesystem::path& path);

// --- Metadata table -----------------------------------------------------------

struct DatasetInfoRow {
  std::string name;
  std::string attribute;
  uint64_t n = 0;
  uint32_t d = 0;
};

std::vector<DatasetInfoRow> dataset_sizes_table(std::span<const Dataset> datasets);
std::string format_sizes_table(std::span<const DatasetInfoRow> rows);

}  // namespace ldpfreq

#endif  // LDPFREQ_DATA_HPP_
