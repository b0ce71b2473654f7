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

#include "ldpfreq/mechanisms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_set>

namespace ldpfreq {

namespace {

// Probabilities are assembled from e^{-eps} so nothing overflows at large
// budgets, and from expm1 so small budgets keep full precision.
double one_minus_exp_neg(double eps) { return -std::expm1(-eps); }

void check_index(uint32_t v, uint32_t d) {
  if (v >= d) {
    throw IndexOutOfDomain("value " + std::to_string(v) + " >= d = " + std::to_string(d));
  }
}

void check_tally(const TallyVector& t, ReportKind kind, uint32_t width) {
  if (t.kind != kind) {
    throw MixedReportKinds("tally holds " + to_string(t.kind) + " reports, expected " +
                           to_string(kind));
  }
  if (t.width() != width) {
    throw DomainMismatch("tally width " + std::to_string(t.width()) + ", expected " +
                         std::to_string(width));
  }
  if (t.n == 0) throw EmptyTally("tally holds no reports");
}

uint64_t tally_total(const TallyVector& t) {
  uint64_t total = 0;
  for (uint64_t c : t.counts) total += c;
  return total;
}

// Value-style tallies carry exactly one count per report.
void check_count_sum(const TallyVector& t, uint64_t expected) {
  if (tally_total(t) != expected) {
    throw DomainMismatch("tally counts sum to " + std::to_string(tally_total(t)) +
                         ", expected " + std::to_string(expected));
  }
}

// Bit-vector tallies count at most one per report and position.
void check_counts_bounded(const TallyVector& t) {
  for (uint64_t c : t.counts) {
    if (c > t.n) {
      throw DomainMismatch("per-bit count " + std::to_string(c) + " exceeds n = " +
                           std::to_string(t.n));
    }
  }
}

// Draws index v uniformly from [0, d) \ {skip}.
uint32_t uniform_other(uint32_t d, uint32_t skip, SeededRng& rng) {
  uint32_t u = static_cast<uint32_t>(rng.below(d - 1));
  return u + (u >= skip ? 1 : 0);
}

// Uniform t-subset of {0, .., m-1} by Floyd's algorithm; t draws, no rejects.
std::vector<uint32_t> floyd_subset(uint32_t m, uint32_t t, SeededRng& rng) {
  std::unordered_set<uint32_t> chosen;
  chosen.reserve(t);
  for (uint32_t j = m - t; j < m; ++j) {
    uint32_t r = static_cast<uint32_t>(rng.below(j + 1));
    if (!chosen.insert(r).second) chosen.insert(j);
  }
  return {chosen.begin(), chosen.end()};
}

}  // namespace

std::string to_string(MechanismId id) {
  switch (id) {
    case MechanismId::rr: return "rr";
    case MechanismId::krr: return "krr";
    case MechanismId::ksubset: return "ksubset";
    case MechanismId::brappor: return "brappor";
    case MechanismId::cms: return "cms";
    case MechanismId::hr: return "hr";
  }
  return "unknown";
}

std::optional<MechanismId> mechanism_from_string(const std::string& name) {
  for (MechanismId id : all_mechanisms()) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

const std::vector<MechanismId>& all_mechanisms() {
  static const std::vector<MechanismId> ids = {MechanismId::rr,      MechanismId::krr,
                                               MechanismId::ksubset, MechanismId::brappor,
                                               MechanismId::cms,     MechanismId::hr};
  return ids;
}

// --- rr ---------------------------------------------------------------------

RrConfig RrConfig::from_p(double p) {
  if (!std::isfinite(p) || p <= 0.5 || p >= 1.0) {
    throw InvalidConfig("rr truth probability must lie in (1/2, 1), got " + std::to_string(p));
  }
  return RrConfig{p};
}

RrConfig RrConfig::from_epsilon(PrivacyBudget budget) {
  double p = 1.0 / (1.0 + std::exp(-budget.epsilon()));
  // Large budgets round to 1.0; pull back one ulp to keep p inside (1/2, 1).
  if (p >= 1.0) p = std::nextafter(1.0, 0.0);
  return RrConfig{p};
}

double RrConfig::epsilon() const { return std::log(p / (1.0 - p)); }

int rr_privatize(int bit, const RrConfig& cfg, SeededRng& rng) {
  if (bit != 0 && bit != 1) {
    throw IndexOutOfDomain("rr input must be 0 or 1, got " + std::to_string(bit));
  }
  return rng.bernoulli(cfg.p) ? bit : 1 - bit;
}

double rr_estimate(double ones_fraction, const RrConfig& cfg) {
  const double denom = 2.0 * cfg.p - 1.0;
  if (std::abs(denom) < 1e-12) {
    throw DegenerateP("rr channel is non-invertible at p = 1/2");
  }
  return (ones_fraction + cfg.p - 1.0) / denom;
}

// --- krr --------------------------------------------------------------------

KrrConfig KrrConfig::make(uint32_t d, PrivacyBudget budget) {
  if (d < 2) throw InvalidDomain("krr needs d >= 2, got " + std::to_string(d));
  const double eps = budget.epsilon();
  const double em = std::exp(-eps);
  const double z = 1.0 + (d - 1) * em;
  return KrrConfig{d, eps, 1.0 / z, em / z};
}

ValueReport krr_privatize(uint32_t v, const KrrConfig& cfg, SeededRng& rng) {
  check_index(v, cfg.d);
  if (rng.bernoulli(cfg.p_keep)) return ValueReport{v};
  return ValueReport{uniform_other(cfg.d, v, rng)};
}

FrequencyVector krr_estimate(const TallyVector& t, const KrrConfig& cfg) {
  check_tally(t, ReportKind::value, cfg.d);
  check_count_sum(t, t.n);
  const double denom =
      one_minus_exp_neg(cfg.epsilon) / (1.0 + (cfg.d - 1) * std::exp(-cfg.epsilon));
  const double n = static_cast<double>(t.n);
  FrequencyVector f(cfg.d);
  for (uint32_t v = 0; v < cfg.d; ++v) {
    f[v] = (static_cast<double>(t.counts[v]) / n - cfg.p_other) / denom;
  }
  return f;
}

// --- ksubset -----------------------------------------------------------------

KsubsetConfig KsubsetConfig::make(uint32_t d, PrivacyBudget budget, uint32_t k) {
  if (d < 2) throw InvalidDomain("ksubset needs d >= 2, got " + std::to_string(d));
  if (k < 1 || k > d) {
    throw KOutOfRange("k must lie in [1, d]; got k = " + std::to_string(k) +
                      ", d = " + std::to_string(d));
  }
  const double eps = budget.epsilon();
  const double em = std::exp(-eps);
  const double g = k / (k + (d - k) * em);
  const double h = (k - g) / (d - 1);
  return KsubsetConfig{d, eps, k, g, h};
}

uint32_t KsubsetConfig::default_k(uint32_t d, PrivacyBudget budget) {
  const double raw = d / (std::exp(budget.epsilon()) + 1.0);
  const auto k = static_cast<uint32_t>(std::llround(raw));
  return std::clamp<uint32_t>(std::max<uint32_t>(k, 1), 1, d);
}

KsubsetConfig KsubsetConfig::with_default_k(uint32_t d, PrivacyBudget budget) {
  return make(d, budget, default_k(d, budget));
}

SubsetReport ksubset_privatize(uint32_t v, const KsubsetConfig& cfg, SeededRng& rng) {
  check_index(v, cfg.d);
  if (cfg.k == cfg.d) {
    SubsetReport full;
    full.indices.resize(cfg.d);
    for (uint32_t j = 0; j < cfg.d; ++j) full.indices[j] = j;
    return full;
  }
  SubsetReport report;
  const bool include_v = rng.bernoulli(cfg.g_k);
  const uint32_t fill = include_v ? cfg.k - 1 : cfg.k;
  report.indices = floyd_subset(cfg.d - 1, fill, rng);
  for (uint32_t& idx : report.indices) {
    if (idx >= v) ++idx;
  }
  if (include_v) report.indices.push_back(v);
  std::sort(report.indices.begin(), report.indices.end());
  return report;
}

FrequencyVector ksubset_estimate(const TallyVector& t, const KsubsetConfig& cfg) {
  check_tally(t, ReportKind::subset, cfg.d);
  check_count_sum(t, t.n * cfg.k);
  const double em = std::exp(-cfg.epsilon);
  const double denom = cfg.k * (cfg.d - cfg.k) * one_minus_exp_neg(cfg.epsilon) /
                       ((cfg.k + (cfg.d - cfg.k) * em) * (cfg.d - 1));
  if (std::abs(denom) < 1e-12) {
    throw DegenerateChannel("ksubset channel is non-invertible (g_k == h_k at k = d)");
  }
  const double n = static_cast<double>(t.n);
  FrequencyVector f(cfg.d);
  for (uint32_t v = 0; v < cfg.d; ++v) {
    f[v] = (static_cast<double>(t.counts[v]) / n - cfg.h_k) / denom;
  }
  return f;
}

// --- brappor -------------------------------------------------------------------

BrapporConfig BrapporConfig::make(uint32_t d, PrivacyBudget budget) {
  if (d < 2) throw InvalidDomain("brappor needs d >= 2, got " + std::to_string(d));
  const double eps = budget.epsilon();
  const double p = 1.0 / (1.0 + std::exp(eps / 2.0));
  return BrapporConfig{d, eps, 1.0 - p, p};
}

BitVectorReport brappor_privatize(uint32_t v, const BrapporConfig& cfg, SeededRng& rng) {
  check_index(v, cfg.d);
  BitVectorReport report;
  report.bits.resize(cfg.d);
  for (uint32_t j = 0; j < cfg.d; ++j) {
    report.bits[j] = rng.bernoulli(j == v ? cfg.q : cfg.p) ? 1 : 0;
  }
  return report;
}

FrequencyVector brappor_estimate(const TallyVector& t, const BrapporConfig& cfg) {
  check_tally(t, ReportKind::bit_vector, cfg.d);
  check_counts_bounded(t);
  // q - p = (e^{eps/2} - 1) / (e^{eps/2} + 1) = tanh(eps / 4).
  const double denom = std::tanh(cfg.epsilon / 4.0);
  if (std::abs(denom) < 1e-12) {
    throw DegenerateChannel("brappor channel is non-invertible at q == p");
  }
  const double n = static_cast<double>(t.n);
  FrequencyVector f(cfg.d);
  for (uint32_t v = 0; v < cfg.d; ++v) {
    f[v] = (static_cast<double>(t.counts[v]) / n - cfg.p) / denom;
  }
  return f;
}

// --- cms --------------------------------------------------------------------------

CmsConfig CmsConfig::make(uint32_t d, PrivacyBudget budget) {
  if (d < 2) throw InvalidDomain("cms needs d >= 2, got " + std::to_string(d));
  const double eps = budget.epsilon();
  const double flip = 1.0 / (1.0 + std::exp(eps / 2.0));
  const double c_debias = 1.0 + 2.0 / std::expm1(eps / 2.0);
  return CmsConfig{d, eps, flip, c_debias};
}

BitVectorReport cms_privatize(uint32_t v, const CmsConfig& cfg, SeededRng& rng) {
  check_index(v, cfg.d);
  BitVectorReport report;
  report.bits.resize(cfg.d);
  for (uint32_t j = 0; j < cfg.d; ++j) {
    const bool one_hot = (j == v);
    report.bits[j] = (one_hot != rng.bernoulli(cfg.flip)) ? 1 : 0;
  }
  return report;
}

FrequencyVector cms_estimate(const TallyVector& t, const CmsConfig& cfg) {
  check_tally(t, ReportKind::bit_vector, cfg.d);
  check_counts_bounded(t);
  const double n = static_cast<double>(t.n);
  FrequencyVector f(cfg.d);
  for (uint32_t v = 0; v < cfg.d; ++v) {
    f[v] = cfg.c_debias * (static_cast<double>(t.counts[v]) / n - 0.5) + 0.5;
  }
  return f;
}

FrequencyVector cms_estimate_verbatim(const TallyVector& t, const CmsConfig& cfg) {
  check_tally(t, ReportKind::bit_vector, cfg.d);
  check_counts_bounded(t);
  const double c = 1.0 + 2.0 / std::expm1(cfg.epsilon);
  const double n = static_cast<double>(t.n);
  FrequencyVector f(cfg.d);
  for (uint32_t v = 0; v < cfg.d; ++v) {
    const double count = static_cast<double>(t.counts[v]);
    f[v] = count * (c + 1.0) / 2.0 + (count - n) * (c - 1.0) / 2.0;
  }
  return f;
}

// --- hr ---------------------------------------------------------------------------

std::vector<std::vector<int8_t>> hadamard_matrix(uint32_t m) {
  if (m == 0 || !std::has_single_bit(m)) {
    throw NotPowerOfTwo("Hadamard order must be a power of two, got " + std::to_string(m));
  }
  // Sylvester construction; equivalently H[i][j] = (-1)^{popcount(i & j)}.
  std::vector<std::vector<int8_t>> h(m, std::vector<int8_t>(m));
  for (uint32_t i = 0; i < m; ++i) {
    for (uint32_t j = 0; j < m; ++j) {
      h[i][j] = (std::popcount(i & j) % 2 == 0) ? int8_t{1} : int8_t{-1};
    }
  }
  return h;
}

namespace {

HrConfig make_hr(uint32_t d, double eps, uint32_t d_prime, uint32_t s) {
  const double em = std::exp(-eps);
  const uint32_t overlap = (s == 1 && d_prime == d) ? 0 : d_prime / 4;
  const double z = s + (d_prime - s) * em;
  HrConfig cfg;
  cfg.d = d;
  cfg.epsilon = eps;
  cfg.d_prime = d_prime;
  cfg.s = s;
  cfg.in_set_prob = s / z;
  cfg.cross_prob = (overlap + (s - overlap) * em) / z;
  return cfg;
}

}  // namespace

HrConfig HrConfig::make(uint32_t d, PrivacyBudget budget) {
  if (d < 2) throw InvalidDomain("hr needs d >= 2, got " + std::to_string(d));
  const uint32_t d_prime = std::bit_ceil(d + 1);
  return make_hr(d, budget.epsilon(), d_prime, d_prime / 2);
}

HrConfig HrConfig::krr_equivalent(uint32_t d, PrivacyBudget budget) {
  if (d < 2) throw InvalidDomain("hr needs d >= 2, got " + std::to_string(d));
  return make_hr(d, budget.epsilon(), d, 1);
}

bool hr_in_preference_set(uint32_t v, uint32_t output, const HrConfig& cfg) {
  check_index(v, cfg.d);
  if (output >= cfg.d_prime) {
    throw IndexOutOfDomain("extended value " + std::to_string(output) + " >= d' = " +
                           std::to_string(cfg.d_prime));
  }
  if (cfg.singleton_sets()) return output == v;
  // Column j carries +1 in Hadamard row v+1 iff popcount((v+1) & j) is even.
  return std::popcount((v + 1) & output) % 2 == 0;
}

std::vector<uint32_t> hr_preference_set(uint32_t v, const HrConfig& cfg) {
  check_index(v, cfg.d);
  std::vector<uint32_t> set;
  set.reserve(cfg.s);
  for (uint32_t j = 0; j < cfg.d_prime; ++j) {
    if (hr_in_preference_set(v, j, cfg)) set.push_back(j);
  }
  return set;
}

ExtendedValueReport hr_privatize(uint32_t v, const HrConfig& cfg, SeededRng& rng) {
  check_index(v, cfg.d);
  const bool in_set = rng.bernoulli(cfg.in_set_prob);
  if (cfg.singleton_sets()) {
    return ExtendedValueReport{in_set ? v : uniform_other(cfg.d, v, rng)};
  }
  // S_v and its complement each hold half of [0, d'); rejection needs two
  // draws on average.
  for (;;) {
    const auto candidate = static_cast<uint32_t>(rng.below(cfg.d_prime));
    if (hr_in_preference_set(v, candidate, cfg) == in_set) {
      return ExtendedValueReport{candidate};
    }
  }
}

FrequencyVector hr_estimate(const TallyVector& t, const HrConfig& cfg) {
  check_tally(t, ReportKind::extended_value, cfg.d_prime);
  check_count_sum(t, t.n);
  const uint32_t overlap = cfg.singleton_sets() ? 0 : cfg.d_prime / 4;
  const double em = std::exp(-cfg.epsilon);
  const double denom = (cfg.s - overlap) * one_minus_exp_neg(cfg.epsilon) /
                       (cfg.s + (cfg.d_prime - cfg.s) * em);
  const double n = static_cast<double>(t.n);
  FrequencyVector f(cfg.d);
  for (uint32_t v = 0; v < cfg.d; ++v) {
    uint64_t in_set_count = 0;
    for (uint32_t j = 0; j < cfg.d_prime; ++j) {
      if (hr_in_preference_set(v, j, cfg)) in_set_count += t.counts[j];
    }
    f[v] = (static_cast<double>(in_set_count) / n - cfg.cross_prob) / denom;
  }
  return f;
}

// --- dispatch -------------------------------------------------------------------------

MechanismConfig MechanismConfig::make(MechanismId id, uint32_t d, PrivacyBudget budget,
                                      const MechanismOverrides& overrides) {
  if (overrides.k && id != MechanismId::ksubset) {
    throw InvalidConfig("subset size k applies to the ksubset mechanism only");
  }
  if ((overrides.d_prime || overrides.s) && id != MechanismId::hr) {
    throw InvalidConfig("extended-domain overrides apply to the hr mechanism only");
  }
  MechanismConfig cfg;
  cfg.id_ = id;
  switch (id) {
    case MechanismId::rr:
      if (d != 2) throw InvalidConfig("rr handles binary domains only (d = 2)");
      cfg.params_ = RrConfig::from_epsilon(budget);
      break;
    case MechanismId::krr:
      cfg.params_ = KrrConfig::make(d, budget);
      break;
    case MechanismId::ksubset:
      cfg.params_ = overrides.k ? KsubsetConfig::make(d, budget, *overrides.k)
                                : KsubsetConfig::with_default_k(d, budget);
      break;
    case MechanismId::brappor:
      cfg.params_ = BrapporConfig::make(d, budget);
      break;
    case MechanismId::cms:
      cfg.params_ = CmsConfig::make(d, budget);
      break;
    case MechanismId::hr: {
      if (overrides.d_prime || overrides.s) {
        const uint32_t dp = overrides.d_prime.value_or(std::bit_ceil(d + 1));
        const uint32_t s = overrides.s.value_or(dp / 2);
        if (dp == d && s == 1) {
          cfg.params_ = HrConfig::krr_equivalent(d, budget);
        } else if (std::has_single_bit(dp) && dp >= d + 1 && dp <= 4 * d && s == dp / 2) {
          cfg.params_ = make_hr(d, budget.epsilon(), dp, s);
        } else {
          throw InvalidConfig(
              "hr supports d' a power of two in [d+1, 4d] with s = d'/2, or the "
              "degenerate d' = d, s = 1");
        }
      } else {
        cfg.params_ = HrConfig::make(d, budget);
      }
      break;
    }
  }
  return cfg;
}

uint32_t MechanismConfig::domain_size() const {
  return std::visit(
      [](const auto& p) -> uint32_t {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, RrConfig>) {
          return 2;
        } else {
          return p.d;
        }
      },
      params_);
}

double MechanismConfig::epsilon() const {
  return std::visit(
      [](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, RrConfig>) {
          return p.epsilon();
        } else {
          return p.epsilon;
        }
      },
      params_);
}

ReportKind MechanismConfig::report_kind() const {
  switch (id_) {
    case MechanismId::rr:
    case MechanismId::krr: return ReportKind::value;
    case MechanismId::ksubset: return ReportKind::subset;
    case MechanismId::brappor:
    case MechanismId::cms: return ReportKind::bit_vector;
    case MechanismId::hr: return ReportKind::extended_value;
  }
  return ReportKind::value;
}

uint32_t MechanismConfig::tally_width() const {
  if (id_ == MechanismId::hr) return as<HrConfig>().d_prime;
  return domain_size();
}

Report MechanismConfig::privatize(uint32_t v, SeededRng& rng) const {
  switch (id_) {
    case MechanismId::rr: {
      check_index(v, 2);
      return ValueReport{
          static_cast<uint32_t>(rr_privatize(static_cast<int>(v), as<RrConfig>(), rng))};
    }
    case MechanismId::krr: return krr_privatize(v, as<KrrConfig>(), rng);
    case MechanismId::ksubset: return ksubset_privatize(v, as<KsubsetConfig>(), rng);
    case MechanismId::brappor: return brappor_privatize(v, as<BrapporConfig>(), rng);
    case MechanismId::cms: return cms_privatize(v, as<CmsConfig>(), rng);
    case MechanismId::hr: return hr_privatize(v, as<HrConfig>(), rng);
  }
  throw InvalidConfig("unknown mechanism");
}

FrequencyVector MechanismConfig::estimate(const TallyVector& t) const {
  switch (id_) {
    case MechanismId::rr: {
      check_tally(t, ReportKind::value, 2);
      check_count_sum(t, t.n);
      const double ones = static_cast<double>(t.counts[1]) / static_cast<double>(t.n);
      const double f1 = rr_estimate(ones, as<RrConfig>());
      return FrequencyVector{1.0 - f1, f1};
    }
    case MechanismId::krr: return krr_estimate(t, as<KrrConfig>());
    case MechanismId::ksubset: return ksubset_estimate(t, as<KsubsetConfig>());
    case MechanismId::brappor: return brappor_estimate(t, as<BrapporConfig>());
    case MechanismId::cms: return cms_estimate(t, as<CmsConfig>());
    case MechanismId::hr: return hr_estimate(t, as<HrConfig>());
  }
  throw InvalidConfig("unknown mechanism");
}

}  // namespace ldpfreq
