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

#include "ldpfreq/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace ldpfreq {

PrivacyBudget::PrivacyBudget(double epsilon) : epsilon_(epsilon) {
  if (!std::isfinite(epsilon) || epsilon <= 0.0) {
    throw NonPositiveEpsilon("epsilon must be positive and finite, got " +
                             std::to_string(epsilon));
  }
}

PrivacyBudget validate_budget(double raw) { return PrivacyBudget(raw); }

Domain::Domain(uint32_t size) : size_(size) {
  if (size < 2) {
    throw InvalidDomain("domain needs at least 2 categories, got " + std::to_string(size));
  }
}

Domain::Domain(uint32_t size, std::vector<std::string> labels) : Domain(size) {
  if (labels.size() != size) {
    throw InvalidDomain("expected " + std::to_string(size) + " labels, got " +
                        std::to_string(labels.size()));
  }
  std::unordered_set<std::string> seen;
  for (const auto& label : labels) {
    if (!seen.insert(label).second) {
      throw InvalidDomain("duplicate label: " + label);
    }
  }
  labels_ = std::move(labels);
}

std::string Domain::label(uint32_t index) const {
  if (index >= size_) {
    throw IndexOutOfDomain("index " + std::to_string(index) + " >= d = " +
                           std::to_string(size_));
  }
  if (labels_) return (*labels_)[index];
  return std::to_string(index);
}

ReportKind kind_of(const Report& report) {
  return static_cast<ReportKind>(report.index());
}

std::string to_string(ReportKind kind) {
  switch (kind) {
    case ReportKind::value: return "value";
    case ReportKind::subset: return "subset";
    case ReportKind::bit_vector: return "bit_vector";
    case ReportKind::extended_value: return "extended_value";
  }
  return "unknown";
}

std::string report_to_string(const Report& report) {
  return std::visit(
      [](const auto& r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ValueReport> ||
                      std::is_same_v<T, ExtendedValueReport>) {
          return std::to_string(r.index);
        } else if constexpr (std::is_same_v<T, SubsetReport>) {
          std::string out;
          for (size_t i = 0; i < r.indices.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(r.indices[i]);
          }
          return out;
        } else {
          std::string out(r.bits.size(), '0');
          for (size_t i = 0; i < r.bits.size(); ++i) {
            if (r.bits[i]) out[i] = '1';
          }
          return out;
        }
      },
      report);
}

namespace {

uint32_t parse_index(const std::string& text) {
  size_t pos = 0;
  unsigned long value = std::stoul(text, &pos);
  if (pos != text.size()) throw InvalidSpec("trailing characters in report: " + text);
  return static_cast<uint32_t>(value);
}

}  // namespace

Report report_from_string(const std::string& line, ReportKind kind) {
  switch (kind) {
    case ReportKind::value:
      return ValueReport{parse_index(line)};
    case ReportKind::extended_value:
      return ExtendedValueReport{parse_index(line)};
    case ReportKind::subset: {
      SubsetReport r;
      size_t start = 0;
      while (start <= line.size()) {
        size_t comma = line.find(',', start);
        if (comma == std::string::npos) comma = line.size();
        r.indices.push_back(parse_index(line.substr(start, comma - start)));
        start = comma + 1;
        if (comma == line.size()) break;
      }
      if (!std::is_sorted(r.indices.begin(), r.indices.end()) ||
          std::adjacent_find(r.indices.begin(), r.indices.end()) != r.indices.end()) {
        throw InvalidSpec("subset report indices must be strictly increasing: " + line);
      }
      return r;
    }
    case ReportKind::bit_vector: {
      BitVectorReport r;
      r.bits.reserve(line.size());
      for (char c : line) {
        if (c != '0' && c != '1') throw InvalidSpec("bit-vector report must be 0/1: " + line);
        r.bits.push_back(c == '1');
      }
      return r;
    }
  }
  throw InvalidSpec("unknown report kind");
}

bool on_simplex(const FrequencyVector& f, double tol) {
  double sum = 0.0;
  for (double x : f) {
    if (!(x >= 0.0 && x <= 1.0)) return false;
    sum += x;
  }
  return std::abs(sum - 1.0) <= tol;
}

FrequencyVector project_to_simplex(FrequencyVector f) {
  double sum = 0.0;
  for (double& x : f) {
    if (x < 0.0) x = 0.0;
    sum += x;
  }
  if (sum <= 0.0) {
    std::fill(f.begin(), f.end(), f.empty() ? 0.0 : 1.0 / static_cast<double>(f.size()));
    return f;
  }
  for (double& x : f) x /= sum;
  return f;
}

}  // namespace ldpfreq
