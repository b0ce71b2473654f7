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
//
// Exact epsilon-LDP verification. For enumerable output spaces the auditor
// computes every output probability in closed form and maximizes the ratio
// P[M(v1) = o] / P[M(v2) = o] over all input pairs and output atoms. For
// discrete channels with full support the supremum over output sets equals
// the supremum over atoms: a set's probability is a sum of atom
// probabilities, and a ratio of sums never exceeds the largest atom ratio.

#ifndef LDPFREQ_AUDIT_HPP_
#define LDPFREQ_AUDIT_HPP_

#include <cstdint>
#include <map>
#include <string>

#include "ldpfreq/mechanisms.hpp"

namespace ldpfreq {

struct AuditResult {
  MechanismId mechanism;
  uint32_t d = 0;
  double epsilon = 0;
  double max_ratio = 0;
  // Witness attaining the maximum ratio.
  uint32_t witness_v1 = 0;
  uint32_t witness_v2 = 0;
  std::string witness_output;
  // True when max_ratio is within 1e-6 of e^eps (no budget wasted).
  bool tight = false;
};

enum class AuditMethod {
  // Full output-space enumeration. Limits: value/extended mechanisms d <= 64,
  // subset mechanisms C(d, k) <= 1e6, bit-vector mechanisms d <= 20.
  enumeration,
  // Bit-vector mechanisms only: worst case assembled from the two per-bit
  // channels that differ between inputs. Exact at any d.
  bit_decomposition,
};

// Exact output distribution of one privatize call, keyed by the canonical
// report serialization. Probabilities sum to 1 within 1e-9; every atom has
// positive probability for finite epsilon. Throws OutputSpaceTooLarge beyond
// the enumeration limits.
std::map<std::string, double> output_distribution(const MechanismConfig& cfg, uint32_t v);

AuditResult audit_ldp(const MechanismConfig& cfg,
                      AuditMethod method = AuditMethod::enumeration);

}  // namespace ldpfreq

#endif  // LDPFREQ_AUDIT_HPP_
