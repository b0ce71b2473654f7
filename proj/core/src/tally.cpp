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

#include "ldpfreq/tally.hpp"

#include <string>

namespace ldpfreq {

TallyAccumulator::TallyAccumulator(ReportKind kind, uint32_t width) {
  tally_.kind = kind;
  tally_.counts.assign(width, 0);
  tally_.n = 0;
}

void TallyAccumulator::add(const Report& report) {
  if (kind_of(report) != tally_.kind) {
    throw MixedReportKinds("expected " + to_string(tally_.kind) + " report, got " +
                           to_string(kind_of(report)));
  }
  const uint32_t width = tally_.width();
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ValueReport> ||
                      std::is_same_v<T, ExtendedValueReport>) {
          if (r.index >= width) {
            throw DomainMismatch("report index " + std::to_string(r.index) +
                                 " >= width " + std::to_string(width));
          }
          ++tally_.counts[r.index];
        } else if constexpr (std::is_same_v<T, SubsetReport>) {
          for (uint32_t idx : r.indices) {
            if (idx >= width) {
              throw DomainMismatch("subset index " + std::to_string(idx) + " >= width " +
                                   std::to_string(width));
            }
            ++tally_.counts[idx];
          }
        } else {
          if (r.bits.size() != width) {
            throw DomainMismatch("bit vector length " + std::to_string(r.bits.size()) +
                                 " != width " + std::to_string(width));
          }
          for (uint32_t j = 0; j < width; ++j) {
            tally_.counts[j] += r.bits[j] ? 1 : 0;
          }
        }
      },
      report);
  ++tally_.n;
}

void TallyAccumulator::merge(const TallyAccumulator& other) {
  if (other.tally_.kind != tally_.kind) {
    throw MixedReportKinds("cannot merge tallies of different report kinds");
  }
  if (other.tally_.width() != tally_.width()) {
    throw DomainMismatch("cannot merge tallies of different widths");
  }
  for (size_t j = 0; j < tally_.counts.size(); ++j) {
    tally_.counts[j] += other.tally_.counts[j];
  }
  tally_.n += other.tally_.n;
}

TallyVector tally(std::span<const Report> reports, uint32_t width) {
  if (reports.empty()) throw EmptyInput("cannot tally an empty report sequence");
  TallyAccumulator acc(kind_of(reports.front()), width);
  for (const Report& report : reports) acc.add(report);
  return std::move(acc).take();
}

TallyVector tally(std::span<const Report> reports, const Domain& domain) {
  return tally(reports, domain.size());
}

FrequencyVector true_distribution(std::span<const uint32_t> values, const Domain& domain) {
  if (values.empty()) throw EmptyInput("cannot compute a distribution of zero values");
  FrequencyVector f(domain.size(), 0.0);
  for (uint32_t v : values) {
    if (v >= domain.size()) {
      throw IndexOutOfDomain("value " + std::to_string(v) + " >= d = " +
                             std::to_string(domain.size()));
    }
    f[v] += 1.0;
  }
  const double n = static_cast<double>(values.size());
  for (double& x : f) x /= n;
  return f;
}

}  // namespace ldpfreq
