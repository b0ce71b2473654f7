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

#include "ldpfreq/audit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace ldpfreq {

namespace {

constexpr uint32_t kMaxValueDomain = 64;     // value / extended-value mechanisms
constexpr uint32_t kMaxBitVectorDomain = 20; // 2^d atoms
constexpr double kMaxSubsetAtoms = 1e6;      // C(d, k) atoms

// C(n, r) as a double, or infinity once it exceeds `cap`.
double binomial(uint32_t n, uint32_t r, double cap) {
  if (r > n) return 0.0;
  r = std::min(r, n - r);
  double c = 1.0;
  for (uint32_t i = 1; i <= r; ++i) {
    c = c * (n - r + i) / i;
    if (c > cap) return std::numeric_limits<double>::infinity();
  }
  return c;
}

// Exact finite output space of one mechanism: shared atom labels plus one
// probability row per input value.
struct EnumeratedChannel {
  std::vector<std::string> atoms;
  std::vector<std::vector<double>> probs;  // [input][atom]
};

EnumeratedChannel enumerate_value_channel(uint32_t d, double p_keep, double p_other) {
  EnumeratedChannel ch;
  ch.atoms.reserve(d);
  for (uint32_t j = 0; j < d; ++j) ch.atoms.push_back(std::to_string(j));
  ch.probs.assign(d, std::vector<double>(d, p_other));
  for (uint32_t v = 0; v < d; ++v) ch.probs[v][v] = p_keep;
  return ch;
}

EnumeratedChannel enumerate_subset_channel(const KsubsetConfig& cfg) {
  const double n_atoms = binomial(cfg.d, cfg.k, kMaxSubsetAtoms);
  if (!std::isfinite(n_atoms)) {
    throw OutputSpaceTooLarge("C(d, k) exceeds the enumeration limit of 1e6 subsets");
  }
  const double with_v = cfg.g_k / binomial(cfg.d - 1, cfg.k - 1, 1e18);
  const double without_v =
      cfg.k == cfg.d ? 0.0 : (1.0 - cfg.g_k) / binomial(cfg.d - 1, cfg.k, 1e18);

  EnumeratedChannel ch;
  ch.probs.assign(cfg.d, {});
  std::vector<uint32_t> combo(cfg.k);
  for (uint32_t i = 0; i < cfg.k; ++i) combo[i] = i;
  std::vector<bool> member(cfg.d);
  for (;;) {
    std::fill(member.begin(), member.end(), false);
    SubsetReport report;
    report.indices = combo;
    for (uint32_t idx : combo) member[idx] = true;
    ch.atoms.push_back(report_to_string(Report{report}));
    for (uint32_t v = 0; v < cfg.d; ++v) {
      ch.probs[v].push_back(member[v] ? with_v : without_v);
    }
    // Next k-combination in lexicographic order.
    uint32_t i = cfg.k;
    while (i > 0 && combo[i - 1] == cfg.d - cfg.k + i - 1) --i;
    if (i == 0) break;
    ++combo[i - 1];
    for (uint32_t j = i; j < cfg.k; ++j) combo[j] = combo[j - 1] + 1;
  }
  return ch;
}

EnumeratedChannel enumerate_bit_channel(uint32_t d, double q, double p) {
  if (d > kMaxBitVectorDomain) {
    throw OutputSpaceTooLarge(
        "bit-vector enumeration is limited to d <= 20 (2^d atoms); use the "
        "per-bit decomposition for larger domains");
  }
  const uint64_t n_atoms = uint64_t{1} << d;
  // Reference row: probability of each mask when every bit is a 0-bit.
  std::vector<double> base(n_atoms);
  base[0] = std::pow(1.0 - p, static_cast<double>(d));
  const double ratio0 = p / (1.0 - p);
  for (uint64_t mask = 1; mask < n_atoms; ++mask) {
    base[mask] = base[mask & (mask - 1)] * ratio0;
  }

  EnumeratedChannel ch;
  ch.atoms.reserve(n_atoms);
  for (uint64_t mask = 0; mask < n_atoms; ++mask) {
    std::string bits(d, '0');
    for (uint32_t j = 0; j < d; ++j) {
      if (mask & (uint64_t{1} << j)) bits[j] = '1';
    }
    ch.atoms.push_back(std::move(bits));
  }
  // Input v swaps the channel of bit v from (p, 1-p) to (q, 1-q).
  const double set_adjust = q / p;
  const double clear_adjust = (1.0 - q) / (1.0 - p);
  ch.probs.assign(d, std::vector<double>(n_atoms));
  for (uint32_t v = 0; v < d; ++v) {
    const uint64_t vbit = uint64_t{1} << v;
    for (uint64_t mask = 0; mask < n_atoms; ++mask) {
      ch.probs[v][mask] = base[mask] * ((mask & vbit) ? set_adjust : clear_adjust);
    }
  }
  return ch;
}

EnumeratedChannel enumerate_hr_channel(const HrConfig& cfg) {
  const double em = std::exp(-cfg.epsilon);
  const double z = cfg.s + (cfg.d_prime - cfg.s) * em;
  const double in_elem = 1.0 / z;
  const double out_elem = em / z;

  EnumeratedChannel ch;
  ch.atoms.reserve(cfg.d_prime);
  for (uint32_t j = 0; j < cfg.d_prime; ++j) ch.atoms.push_back(std::to_string(j));
  ch.probs.assign(cfg.d, std::vector<double>(cfg.d_prime));
  for (uint32_t v = 0; v < cfg.d; ++v) {
    for (uint32_t j = 0; j < cfg.d_prime; ++j) {
      ch.probs[v][j] = hr_in_preference_set(v, j, cfg) ? in_elem : out_elem;
    }
  }
  return ch;
}

EnumeratedChannel enumerate_channel(const MechanismConfig& cfg) {
  switch (cfg.id()) {
    case MechanismId::rr: {
      const double p = cfg.as<RrConfig>().p;
      return enumerate_value_channel(2, p, 1.0 - p);
    }
    case MechanismId::krr: {
      const auto& c = cfg.as<KrrConfig>();
      if (c.d > kMaxValueDomain) {
        throw OutputSpaceTooLarge("value-mechanism enumeration is limited to d <= 64");
      }
      return enumerate_value_channel(c.d, c.p_keep, c.p_other);
    }
    case MechanismId::ksubset:
      return enumerate_subset_channel(cfg.as<KsubsetConfig>());
    case MechanismId::brappor: {
      const auto& c = cfg.as<BrapporConfig>();
      return enumerate_bit_channel(c.d, c.q, c.p);
    }
    case MechanismId::cms: {
      const auto& c = cfg.as<CmsConfig>();
      return enumerate_bit_channel(c.d, 1.0 - c.flip, c.flip);
    }
    case MechanismId::hr: {
      const auto& c = cfg.as<HrConfig>();
      if (c.d > kMaxValueDomain) {
        throw OutputSpaceTooLarge("value-mechanism enumeration is limited to d <= 64");
      }
      return enumerate_hr_channel(c);
    }
  }
  throw InvalidConfig("unknown mechanism");
}

}  // namespace

std::map<std::string, double> output_distribution(const MechanismConfig& cfg, uint32_t v) {
  const uint32_t inputs = cfg.domain_size();
  if (v >= inputs) {
    throw IndexOutOfDomain("value " + std::to_string(v) + " >= d = " + std::to_string(inputs));
  }
  EnumeratedChannel ch = enumerate_channel(cfg);
  std::map<std::string, double> dist;
  for (size_t a = 0; a < ch.atoms.size(); ++a) {
    dist.emplace(std::move(ch.atoms[a]), ch.probs[v][a]);
  }
  return dist;
}

AuditResult audit_ldp(const MechanismConfig& cfg, AuditMethod method) {
  AuditResult result;
  result.mechanism = cfg.id();
  result.d = cfg.domain_size();
  result.epsilon = cfg.epsilon();

  if (method == AuditMethod::bit_decomposition) {
    double q, p;
    switch (cfg.id()) {
      case MechanismId::brappor:
        q = cfg.as<BrapporConfig>().q;
        p = cfg.as<BrapporConfig>().p;
        break;
      case MechanismId::cms:
        q = 1.0 - cfg.as<CmsConfig>().flip;
        p = cfg.as<CmsConfig>().flip;
        break;
      default:
        throw InvalidConfig("per-bit decomposition applies to bit-vector mechanisms only");
    }
    // Two inputs differ in exactly two bit channels; the worst output sets
    // the bit of v1 and clears the bit of v2.
    result.max_ratio = (q / p) * ((1.0 - p) / (1.0 - q));
    result.witness_v1 = 0;
    result.witness_v2 = 1;
    std::string witness(result.d, '0');
    witness[0] = '1';
    result.witness_output = witness;
  } else {
    const EnumeratedChannel ch = enumerate_channel(cfg);
    const uint32_t inputs = cfg.domain_size();
    result.max_ratio = 0.0;
    for (uint32_t v1 = 0; v1 < inputs; ++v1) {
      for (uint32_t v2 = 0; v2 < inputs; ++v2) {
        if (v1 == v2) continue;
        for (size_t a = 0; a < ch.atoms.size(); ++a) {
          const double ratio = ch.probs[v1][a] / ch.probs[v2][a];
          if (ratio > result.max_ratio) {
            result.max_ratio = ratio;
            result.witness_v1 = v1;
            result.witness_v2 = v2;
            result.witness_output = ch.atoms[a];
          }
        }
      }
    }
    if (result.max_ratio == 0.0) {
      // Single input pairless domains cannot occur (d >= 2), but keep the
      // invariant max_ratio >= 1.
      result.max_ratio = 1.0;
    }
  }

  result.tight = std::abs(result.max_ratio - std::exp(result.epsilon)) <= 1e-6;
  return result;
}

}  // namespace ldpfreq
