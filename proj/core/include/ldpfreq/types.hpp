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

#ifndef LDPFREQ_TYPES_HPP_
#define LDPFREQ_TYPES_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ldpfreq/error.hpp"

namespace ldpfreq {

// Validated privacy budget epsilon (nats). Strictly positive and finite.
class PrivacyBudget {
 public:
  explicit PrivacyBudget(double epsilon);
  double epsilon() const { return epsilon_; }

 private:
  double epsilon_;
};

// Throws NonPositiveEpsilon for raw <= 0, NaN, or infinite.
PrivacyBudget validate_budget(double raw);

// Categorical value domain of size d >= 2. Labels, when present, are unique
// and index-aligned. All indices are 0-based.
class Domain {
 public:
  explicit Domain(uint32_t size);
  Domain(uint32_t size, std::vector<std::string> labels);

  uint32_t size() const { return size_; }
  const std::optional<std::vector<std::string>>& labels() const { return labels_; }

  // Label for index, or the decimal index when the domain is unlabeled.
  std::string label(uint32_t index) const;

 private:
  uint32_t size_;
  std::optional<std::vector<std::string>> labels_;
};

// --- Privatized reports -----------------------------------------------------

struct ValueReport {
  uint32_t index;
  friend bool operator==(const ValueReport&, const ValueReport&) = default;
};

// Strictly increasing indices, all < d.
struct SubsetReport {
  std::vector<uint32_t> indices;
  friend bool operator==(const SubsetReport&, const SubsetReport&) = default;
};

// One bit per domain value; length exactly d.
struct BitVectorReport {
  std::vector<uint8_t> bits;
  friend bool operator==(const BitVectorReport&, const BitVectorReport&) = default;
};

// Index into the extended domain [0, d') used by the Hadamard mechanism.
struct ExtendedValueReport {
  uint32_t index;
  friend bool operator==(const ExtendedValueReport&, const ExtendedValueReport&) = default;
};

using Report = std::variant<ValueReport, SubsetReport, BitVectorReport, ExtendedValueReport>;

enum class ReportKind { value, subset, bit_vector, extended_value };

ReportKind kind_of(const Report& report);
std::string to_string(ReportKind kind);

// Canonical one-line serialization: value and extended-value reports as
// decimal integers, subsets as comma-joined integers, bit vectors as 0/1
// strings. Used for report files and as audit atom keys.
std::string report_to_string(const Report& report);
Report report_from_string(const std::string& line, ReportKind kind);

// --- Frequencies and tallies ------------------------------------------------

// Length-d vector of proportions. True distributions live on the simplex;
// estimates are unconstrained (unbiased estimators may leave [0, 1]).
using FrequencyVector = std::vector<double>;

bool on_simplex(const FrequencyVector& f, double tol = 1e-9);

// Clamps negatives to zero and renormalizes. Optional post-processing only;
// estimators return raw values.
FrequencyVector project_to_simplex(FrequencyVector f);

// Per-index occurrence counts over `n` reports of a single kind.
struct TallyVector {
  std::vector<uint64_t> counts;
  uint64_t n = 0;
  ReportKind kind = ReportKind::value;

  uint32_t width() const { return static_cast<uint32_t>(counts.size()); }
};

}  // namespace ldpfreq

#endif  // LDPFREQ_TYPES_HPP_
