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

#ifndef LDPFREQ_TALLY_HPP_
#define LDPFREQ_TALLY_HPP_

#include <cstdint>
#include <span>

#include "ldpfreq/types.hpp"

namespace ldpfreq {

// Streaming tally accumulator. Accepts reports of one kind and counts, per
// index j, how many reports contain / equal / set bit j. Accumulators over
// disjoint report batches merge by elementwise addition, so tallies can be
// built in parallel and combined.
class TallyAccumulator {
 public:
  // `width` is the domain size d, or d' for extended-value reports.
  TallyAccumulator(ReportKind kind, uint32_t width);

  void add(const Report& report);
  void merge(const TallyAccumulator& other);

  const TallyVector& tally() const { return tally_; }
  TallyVector take() && { return std::move(tally_); }

 private:
  TallyVector tally_;
};

// Batch tally of a report sequence. All reports must be of one kind and
// consistent with `width` (indices < width, bit vectors of length width).
TallyVector tally(std::span<const Report> reports, uint32_t width);

// Convenience overload for non-extended reports over a domain.
TallyVector tally(std::span<const Report> reports, const Domain& domain);

// Empirical distribution of raw values: entry j = count(j) / n.
FrequencyVector true_distribution(std::span<const uint32_t> values, const Domain& domain);

}  // namespace ldpfreq

#endif  // LDPFREQ_TALLY_HPP_
