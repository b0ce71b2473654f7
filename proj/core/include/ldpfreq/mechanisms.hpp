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
// Six locally-differentially-private frequency oracles. Each mechanism is a
// (privatize, estimate) pair: privatize perturbs one user value with explicit
// seeded randomness, estimate inverts the perturbation channel on a tally of
// reports to recover an unbiased frequency vector.

#ifndef LDPFREQ_MECHANISMS_HPP_
#define LDPFREQ_MECHANISMS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ldpfreq/rng.hpp"
#include "ldpfreq/types.hpp"

namespace ldpfreq {

enum class MechanismId { rr, krr, ksubset, brappor, cms, hr };

std::string to_string(MechanismId id);
std::optional<MechanismId> mechanism_from_string(const std::string& name);

// All six mechanism ids, in canonical order.
const std::vector<MechanismId>& all_mechanisms();

// --- Binary randomized response ----------------------------------------------

// Truth-telling probability p in (1/2, 1); epsilon = ln(p / (1-p)).
struct RrConfig {
  double p;

  static RrConfig from_p(double p);
  static RrConfig from_epsilon(PrivacyBudget budget);
  double epsilon() const;
};

// Returns `bit` with probability p, its negation otherwise.
int rr_privatize(int bit, const RrConfig& cfg, SeededRng& rng);

// Inverts the binary channel: (ones_fraction + p - 1) / (2p - 1).
double rr_estimate(double ones_fraction, const RrConfig& cfg);

// --- Generalized randomized response (k-RR) -----------------------------------

struct KrrConfig {
  uint32_t d = 0;
  double epsilon = 0;
  double p_keep = 0;   // e^eps / (e^eps + d - 1)
  double p_other = 0;  // 1 / (e^eps + d - 1)

  static KrrConfig make(uint32_t d, PrivacyBudget budget);
};

ValueReport krr_privatize(uint32_t v, const KrrConfig& cfg, SeededRng& rng);

// Unbiased channel inversion, entrywise (counts[v]/n - p_other) / (p_keep -
// p_other). Coincides with the unconstrained MLE; output sums to exactly 1.
FrequencyVector krr_estimate(const TallyVector& t, const KrrConfig& cfg);

// --- k-subset ------------------------------------------------------------------

struct KsubsetConfig {
  uint32_t d = 0;
  double epsilon = 0;
  uint32_t k = 0;
  double g_k = 0;  // P(v in report | input v)  = k e^eps / (k e^eps + d - k)
  double h_k = 0;  // P(u in report | input v), u != v

  static KsubsetConfig make(uint32_t d, PrivacyBudget budget, uint32_t k);
  // Variance-optimal default k = max(1, round(d / (e^eps + 1))), clamped to [1, d].
  static uint32_t default_k(uint32_t d, PrivacyBudget budget);
  static KsubsetConfig with_default_k(uint32_t d, PrivacyBudget budget);
};

// Two-stage sampler: with probability g_k emits {v} plus a uniform (k-1)-subset
// of the other values, otherwise a uniform k-subset avoiding v. Produces each
// k-subset with the exact target probability without materializing C(d, k) sets.
SubsetReport ksubset_privatize(uint32_t v, const KsubsetConfig& cfg, SeededRng& rng);

// Entrywise (counts[v]/n - h_k) / (g_k - h_k); output sums to exactly 1.
FrequencyVector ksubset_estimate(const TallyVector& t, const KsubsetConfig& cfg);

// --- Basic RAPPOR ----------------------------------------------------------------

// One-hot encoding with per-bit randomized response. A 1-bit stays 1 with
// probability q, a 0-bit becomes 1 with probability p. Defaults give the
// tight budget split q = e^{eps/2}/(e^{eps/2}+1), p = 1 - q, making the
// worst-case two-bit likelihood ratio exactly e^eps.
struct BrapporConfig {
  uint32_t d = 0;
  double epsilon = 0;
  double q = 0;
  double p = 0;

  static BrapporConfig make(uint32_t d, PrivacyBudget budget);
};

BitVectorReport brappor_privatize(uint32_t v, const BrapporConfig& cfg, SeededRng& rng);

// Entrywise (counts[v]/n - p) / (q - p).
FrequencyVector brappor_estimate(const TallyVector& t, const BrapporConfig& cfg);

// --- Count mean sketch (one-hot variant) -------------------------------------------

// One-hot encoding where every bit flips independently with probability
// 1/(e^{eps/2}+1). The per-bit channel equals Basic RAPPOR's with q = 1 - p.
struct CmsConfig {
  uint32_t d = 0;
  double epsilon = 0;
  double flip = 0;      // 1 / (e^{eps/2} + 1)
  double c_debias = 0;  // (e^{eps/2} + 1) / (e^{eps/2} - 1)

  static CmsConfig make(uint32_t d, PrivacyBudget budget);
};

BitVectorReport cms_privatize(uint32_t v, const CmsConfig& cfg, SeededRng& rng);

// Unbiased: entrywise c_debias * (counts[v]/n - 1/2) + 1/2.
FrequencyVector cms_estimate(const TallyVector& t, const CmsConfig& cfg);

// Verbatim variant kept for comparison: count-scale
// c'(v)(c+1)/2 + (c'(v) - n)(c-1)/2 with c = (e^eps + 1)/(e^eps - 1).
// Biased relative to the flip probability above; not used by default.
FrequencyVector cms_estimate_verbatim(const TallyVector& t, const CmsConfig& cfg);

// --- Hadamard response ----------------------------------------------------------------

// Sylvester Hadamard matrix H_m (+1/-1 entries), m a power of two. H H^T = m I.
std::vector<std::vector<int8_t>> hadamard_matrix(uint32_t m);

// Responds with an extended-domain value in [0, d'). The preference set S_v
// holds the +1 columns of Hadamard row v+1 (row 0, all +1, is skipped), so
// |S_v| = d'/2 and |S_u ∩ S_v| = d'/4 for u != v. Defaults: d' = smallest
// power of two >= d+1, s = d'/2. The degenerate configuration d' = d, s = 1
// uses S_v = {v} and reduces to k-RR.
struct HrConfig {
  uint32_t d = 0;
  double epsilon = 0;
  uint32_t d_prime = 0;
  uint32_t s = 0;
  double in_set_prob = 0;   // P(report in S_v | input v)
  double cross_prob = 0;    // P(report in S_v | input u), u != v

  static HrConfig make(uint32_t d, PrivacyBudget budget);
  static HrConfig krr_equivalent(uint32_t d, PrivacyBudget budget);

  bool singleton_sets() const { return s == 1 && d_prime == d; }
};

std::vector<uint32_t> hr_preference_set(uint32_t v, const HrConfig& cfg);
bool hr_in_preference_set(uint32_t v, uint32_t output, const HrConfig& cfg);

// Each element of S_v has probability e^eps / (s e^eps + d' - s), every other
// extended value probability 1 / (s e^eps + d' - s).
ExtendedValueReport hr_privatize(uint32_t v, const HrConfig& cfg, SeededRng& rng);

// From a tally over the extended domain, computes the in-set counts c'(v) and
// inverts the channel. At defaults this is 2(e^eps+1)/(e^eps-1) (c'(v)/n - 1/2).
FrequencyVector hr_estimate(const TallyVector& t, const HrConfig& cfg);

// --- Uniform dispatch -----------------------------------------------------------------

// Optional per-mechanism parameter overrides (CLI flags; defaults otherwise).
struct MechanismOverrides {
  std::optional<uint32_t> k;        // ksubset subset size
  std::optional<uint32_t> d_prime;  // hr extended domain size
  std::optional<uint32_t> s;        // hr preference-set size
};

// One mechanism instance bound to a domain size and budget.
class MechanismConfig {
 public:
  static MechanismConfig make(MechanismId id, uint32_t d, PrivacyBudget budget,
                              const MechanismOverrides& overrides = {});

  MechanismId id() const { return id_; }
  uint32_t domain_size() const;
  double epsilon() const;
  ReportKind report_kind() const;
  // Tally width: d, or d' for the Hadamard mechanism.
  uint32_t tally_width() const;

  Report privatize(uint32_t v, SeededRng& rng) const;
  FrequencyVector estimate(const TallyVector& t) const;

  template <typename T>
  const T& as() const {
    return std::get<T>(params_);
  }

 private:
  MechanismId id_;
  std::variant<RrConfig, KrrConfig, KsubsetConfig, BrapporConfig, CmsConfig, HrConfig> params_;
};

}  // namespace ldpfreq

#endif  // LDPFREQ_MECHANISMS_HPP_
