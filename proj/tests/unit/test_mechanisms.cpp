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

#include <doctest.h>

#include <cmath>
#include <numeric>

#include "ldpfreq/audit.hpp"
#include "ldpfreq/mechanisms.hpp"
#include "ldpfreq/tally.hpp"
#include "mc_util.hpp"

using namespace ldpfreq;
using namespace ldpfreq::testutil;

namespace {

TallyVector make_tally(std::vector<uint64_t> counts, uint64_t n, ReportKind kind) {
  TallyVector t;
  t.counts = std::move(counts);
  t.n = n;
  t.kind = kind;
  return t;
}

double sum_of(const FrequencyVector& f) {
  return std::accumulate(f.begin(), f.end(), 0.0);
}

}  // namespace

// --- rr -----------------------------------------------------------------------

TEST_CASE("rr keeps the bit in the no-noise limit") {
  const RrConfig cfg = RrConfig::from_epsilon(validate_budget(50.0));
  SeededRng rng(1);
  for (int i = 0; i < 1000; ++i) {
    CHECK(rr_privatize(1, cfg, rng) == 1);
    CHECK(rr_privatize(0, cfg, rng) == 0);
  }
}

TEST_CASE("rr truth frequency matches p") {
  const RrConfig cfg = RrConfig::from_p(0.75);
  const double freq = empirical_frequency(
      [&](SeededRng& rng) { return rr_privatize(0, cfg, rng) == 0; }, 100000, 21);
  CHECK(std::abs(freq - 0.75) <= three_sigma(0.75, 100000));
}

TEST_CASE("rr is deterministic under a fixed seed") {
  const RrConfig cfg = RrConfig::from_p(0.75);
  std::vector<int> first, second;
  {
    SeededRng rng(7);
    for (int i = 0; i < 100; ++i) first.push_back(rr_privatize(1, cfg, rng));
  }
  {
    SeededRng rng(7);
    for (int i = 0; i < 100; ++i) second.push_back(rr_privatize(1, cfg, rng));
  }
  CHECK(first == second);
}

TEST_CASE("rr estimate inverts the channel") {
  const RrConfig cfg = RrConfig::from_p(0.8);
  CHECK(rr_estimate(cfg.p, cfg) == doctest::Approx(1.0));
  CHECK(rr_estimate(1.0 - cfg.p, cfg) == doctest::Approx(0.0));
  for (double p : {0.6, 0.75, 0.9}) {
    CHECK(rr_estimate(0.5, RrConfig::from_p(p)) == doctest::Approx(0.5));
  }
  CHECK_THROWS_AS(rr_estimate(0.3, RrConfig{0.5}), DegenerateP);
  CHECK_THROWS_AS(RrConfig::from_p(0.5), InvalidConfig);
  CHECK_THROWS_AS(RrConfig::from_p(0.4), InvalidConfig);
  CHECK_THROWS_AS(RrConfig::from_p(1.0), InvalidConfig);
  SeededRng rng(0);
  CHECK_THROWS_AS(rr_privatize(2, RrConfig::from_p(0.75), rng), IndexOutOfDomain);
}

TEST_CASE("rr from a budget equals krr on a binary domain") {
  for (double eps : {0.5, 1.0, 2.0}) {
    const auto budget = validate_budget(eps);
    const auto rr = MechanismConfig::make(MechanismId::rr, 2, budget);
    const auto krr = MechanismConfig::make(MechanismId::krr, 2, budget);
    for (uint32_t v = 0; v < 2; ++v) {
      const auto lhs = output_distribution(rr, v);
      const auto rhs = output_distribution(krr, v);
      for (const auto& [atom, prob] : lhs) {
        CHECK(std::abs(prob - rhs.at(atom)) <= 1e-12);
      }
    }
  }
}

// --- krr -----------------------------------------------------------------------

TEST_CASE("krr config invariants") {
  for (double eps : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    const KrrConfig cfg = KrrConfig::make(6, validate_budget(eps));
    CHECK(cfg.p_keep + 5 * cfg.p_other == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cfg.p_keep / cfg.p_other == doctest::Approx(std::exp(eps)).epsilon(1e-12));
  }
}

TEST_CASE("krr always keeps the value in the no-noise limit") {
  const KrrConfig cfg = KrrConfig::make(5, validate_budget(50.0));
  SeededRng rng(2);
  for (int i = 0; i < 2000; ++i) CHECK(krr_privatize(3, cfg, rng).index == 3);
}

TEST_CASE("krr near-zero budget is near uniform") {
  const KrrConfig cfg = KrrConfig::make(4, validate_budget(1e-9));
  SeededRng rng(5);
  std::vector<uint64_t> counts(4, 0);
  const uint64_t n = 100000;
  for (uint64_t i = 0; i < n; ++i) ++counts[krr_privatize(1, cfg, rng).index];
  for (uint32_t v = 0; v < 4; ++v) {
    CHECK(std::abs(counts[v] / double(n) - 0.25) <= three_sigma(0.25, n));
  }
}

TEST_CASE("krr keep probability at epsilon = ln 3, d = 4") {
  const KrrConfig cfg = KrrConfig::make(4, validate_budget(std::log(3.0)));
  CHECK(cfg.p_keep == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cfg.p_other == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  const uint64_t n = 100000;
  SeededRng rng(9);
  std::vector<uint64_t> counts(4, 0);
  for (uint64_t i = 0; i < n; ++i) ++counts[krr_privatize(2, cfg, rng).index];
  CHECK(std::abs(counts[2] / double(n) - 0.5) <= three_sigma(0.5, n));
  for (uint32_t v : {0u, 1u, 3u}) {
    CHECK(std::abs(counts[v] / double(n) - 1.0 / 6.0) <= three_sigma(1.0 / 6.0, n));
  }
}

TEST_CASE("krr estimate closed form") {
  const KrrConfig cfg = KrrConfig::make(2, validate_budget(std::log(3.0)));
  const FrequencyVector f =
      krr_estimate(make_tally({75, 25}, 100, ReportKind::value), cfg);
  CHECK(f[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("krr estimate fixed point and sum identity") {
  const KrrConfig cfg = KrrConfig::make(5, validate_budget(1.0));
  const FrequencyVector uniform =
      krr_estimate(make_tally({20, 20, 20, 20, 20}, 100, ReportKind::value), cfg);
  for (double x : uniform) CHECK(x == doctest::Approx(0.2).epsilon(1e-12));

  SeededRng rng(13);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<uint64_t> counts(5);
    uint64_t n = 0;
    for (auto& c : counts) {
      c = rng.below(1000);
      n += c;
    }
    if (n == 0) continue;
    const FrequencyVector f = krr_estimate(make_tally(counts, n, ReportKind::value), cfg);
    CHECK(std::abs(sum_of(f) - 1.0) <= 1e-9);
  }

  CHECK_THROWS_AS(krr_estimate(make_tally({0, 0}, 0, ReportKind::value),
                               KrrConfig::make(2, validate_budget(1.0))),
                  EmptyTally);
  SeededRng oob_rng(0);
  CHECK_THROWS_AS(krr_privatize(5, cfg, oob_rng), IndexOutOfDomain);
}

// --- ksubset -----------------------------------------------------------------------

TEST_CASE("ksubset matches the k-RR report distribution at k = 1") {
  for (uint32_t d : {2u, 4u, 6u}) {
    const auto budget = validate_budget(1.0);
    const auto ks = MechanismConfig::make(MechanismId::ksubset, d, budget,
                                          MechanismOverrides{.k = 1});
    const auto krr = MechanismConfig::make(MechanismId::krr, d, budget);
    for (uint32_t v = 0; v < d; ++v) {
      const auto lhs = output_distribution(ks, v);
      const auto rhs = output_distribution(krr, v);
      REQUIRE(lhs.size() == rhs.size());
      for (const auto& [atom, prob] : lhs) {
        REQUIRE(rhs.count(atom) == 1);
        CHECK(std::abs(prob - rhs.at(atom)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("ksubset emits the full set at k = d regardless of budget") {
  const KsubsetConfig cfg = KsubsetConfig::make(4, validate_budget(0.3), 4);
  SeededRng rng(17);
  for (int i = 0; i < 50; ++i) {
    CHECK(ksubset_privatize(2, cfg, rng).indices == std::vector<uint32_t>{0, 1, 2, 3});
  }
}

TEST_CASE("ksubset inclusion probability") {
  const KsubsetConfig cfg = KsubsetConfig::make(4, validate_budget(std::log(3.0)), 2);
  CHECK(cfg.g_k == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(cfg.h_k == doctest::Approx(5.0 / 12.0).epsilon(1e-12));
  const uint64_t n = 100000;
  const double freq = empirical_frequency(
      [&](SeededRng& rng) {
        const SubsetReport r = ksubset_privatize(1, cfg, rng);
        return std::find(r.indices.begin(), r.indices.end(), 1u) != r.indices.end();
      },
      n, 23);
  CHECK(std::abs(freq - 0.75) <= three_sigma(0.75, n));
}

TEST_CASE("ksubset sampler hits the exact per-set probabilities") {
  const auto cfg = MechanismConfig::make(MechanismId::ksubset, 5, validate_budget(1.0),
                                         MechanismOverrides{.k = 2});
  const auto exact = output_distribution(cfg, 3);
  std::map<std::string, uint64_t> observed;
  const uint64_t n = 200000;
  SeededRng rng(29);
  for (uint64_t i = 0; i < n; ++i) {
    ++observed[report_to_string(cfg.privatize(3, rng))];
  }
  for (const auto& [atom, prob] : exact) {
    const double freq = observed[atom] / double(n);
    CHECK(std::abs(freq - prob) <= three_sigma(prob, n));
  }
}

TEST_CASE("ksubset report invariants") {
  const KsubsetConfig cfg = KsubsetConfig::make(9, validate_budget(0.5), 4);
  SeededRng rng(31);
  for (int i = 0; i < 500; ++i) {
    const SubsetReport r = ksubset_privatize(7, cfg, rng);
    REQUIRE(r.indices.size() == 4);
    for (size_t j = 1; j < r.indices.size(); ++j) CHECK(r.indices[j - 1] < r.indices[j]);
    CHECK(r.indices.back() < 9);
  }
  CHECK_THROWS_AS(KsubsetConfig::make(4, validate_budget(1.0), 0), KOutOfRange);
  CHECK_THROWS_AS(KsubsetConfig::make(4, validate_budget(1.0), 5), KOutOfRange);
}

TEST_CASE("ksubset default k follows the variance-optimal rule") {
  CHECK(KsubsetConfig::default_k(100, validate_budget(0.5)) == 38);
  CHECK(KsubsetConfig::default_k(100, validate_budget(2.0)) == 12);
  CHECK(KsubsetConfig::default_k(4, validate_budget(5.0)) == 1);
  CHECK(KsubsetConfig::default_k(2, validate_budget(0.1)) == 1);
}

TEST_CASE("ksubset estimate reduces to krr at k = 1 and sums to one") {
  const auto budget = validate_budget(0.8);
  const KsubsetConfig ks = KsubsetConfig::make(6, budget, 1);
  const KrrConfig krr = KrrConfig::make(6, budget);
  SeededRng rng(37);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<uint64_t> counts(6);
    uint64_t n = 0;
    for (auto& c : counts) {
      c = rng.below(500);
      n += c;
    }
    if (n == 0) continue;
    const FrequencyVector a = ksubset_estimate(make_tally(counts, n, ReportKind::subset), ks);
    const FrequencyVector b = krr_estimate(make_tally(counts, n, ReportKind::value), krr);
    for (uint32_t v = 0; v < 6; ++v) CHECK(std::abs(a[v] - b[v]) <= 1e-9);
    CHECK(std::abs(sum_of(a) - 1.0) <= 1e-9);
  }
}

TEST_CASE("ksubset estimate sums to one on subset tallies") {
  const KsubsetConfig cfg = KsubsetConfig::make(5, validate_budget(1.0), 2);
  SeededRng rng(41);
  for (int rep = 0; rep < 100; ++rep) {
    // A valid subset tally has sum(counts) = n * k.
    const uint64_t n = 1 + rng.below(2000);
    std::vector<uint64_t> counts(5, 0);
    for (uint64_t i = 0; i < n; ++i) {
      const auto first = static_cast<uint32_t>(rng.below(5));
      auto second = static_cast<uint32_t>(rng.below(4));
      if (second >= first) ++second;
      ++counts[first];
      ++counts[second];
    }
    const FrequencyVector f = ksubset_estimate(make_tally(counts, n, ReportKind::subset), cfg);
    CHECK(std::abs(sum_of(f) - 1.0) <= 1e-9);
  }
}

TEST_CASE("ksubset estimate degenerates at k = d") {
  const KsubsetConfig cfg = KsubsetConfig::make(3, validate_budget(1.0), 3);
  CHECK_THROWS_AS(ksubset_estimate(make_tally({5, 5, 5}, 5, ReportKind::subset), cfg),
                  DegenerateChannel);
}

// --- brappor -------------------------------------------------------------------------

TEST_CASE("brappor config invariants") {
  for (double eps : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    const BrapporConfig cfg = BrapporConfig::make(4, validate_budget(eps));
    CHECK(cfg.q == doctest::Approx(1.0 - cfg.p).epsilon(1e-15));
    CHECK(cfg.p > 0.0);
    CHECK(cfg.p < cfg.q);
    const double two_bit_ratio = (cfg.q * (1.0 - cfg.p)) / (cfg.p * (1.0 - cfg.q));
    CHECK(two_bit_ratio == doctest::Approx(std::exp(eps)).epsilon(1e-9));
  }
}

TEST_CASE("brappor one-hot in the no-noise limit") {
  const BrapporConfig cfg = BrapporConfig::make(5, validate_budget(80.0));
  SeededRng rng(43);
  for (int i = 0; i < 200; ++i) {
    const BitVectorReport r = brappor_privatize(3, cfg, rng);
    CHECK(r.bits == std::vector<uint8_t>{0, 0, 0, 1, 0});
  }
}

TEST_CASE("brappor per-bit frequencies at d = 3, eps = 2") {
  const BrapporConfig cfg = BrapporConfig::make(3, validate_budget(2.0));
  CHECK(cfg.q == doctest::Approx(std::exp(1.0) / (std::exp(1.0) + 1.0)).epsilon(1e-12));
  const uint64_t n = 100000;
  SeededRng rng(47);
  std::vector<uint64_t> ones(3, 0);
  for (uint64_t i = 0; i < n; ++i) {
    const BitVectorReport r = brappor_privatize(2, cfg, rng);
    REQUIRE(r.bits.size() == 3);
    for (int j = 0; j < 3; ++j) ones[j] += r.bits[j];
  }
  CHECK(std::abs(ones[0] / double(n) - cfg.p) <= three_sigma(cfg.p, n));
  CHECK(std::abs(ones[1] / double(n) - cfg.p) <= three_sigma(cfg.p, n));
  CHECK(std::abs(ones[2] / double(n) - cfg.q) <= three_sigma(cfg.q, n));
}

TEST_CASE("brappor estimate fixed points") {
  const BrapporConfig cfg = BrapporConfig::make(3, validate_budget(2.0));
  const uint64_t n = 1000000;
  const auto p_count = static_cast<uint64_t>(std::llround(cfg.p * n));
  const auto q_count = static_cast<uint64_t>(std::llround(cfg.q * n));
  const FrequencyVector f =
      brappor_estimate(make_tally({p_count, q_count, n / 2}, n, ReportKind::bit_vector), cfg);
  CHECK(std::abs(f[0] - 0.0) <= 1e-5);
  CHECK(std::abs(f[1] - 1.0) <= 1e-5);
}

TEST_CASE("brappor channel degenerates only at a vanishing budget") {
  // tanh(eps/4) < 1e-12 needs eps below ~4e-12.
  const BrapporConfig tiny = BrapporConfig::make(3, validate_budget(1e-13));
  CHECK_THROWS_AS(
      brappor_estimate(make_tally({1, 1, 1}, 2, ReportKind::bit_vector), tiny),
      DegenerateChannel);
}

TEST_CASE("estimators reject tallies violating their count invariants") {
  const auto budget = validate_budget(1.0);
  // Value tally whose counts do not sum to n.
  CHECK_THROWS_AS(krr_estimate(make_tally({3, 3, 3}, 5, ReportKind::value),
                               KrrConfig::make(3, budget)),
                  DomainMismatch);
  // Subset tally whose counts do not sum to n * k.
  CHECK_THROWS_AS(ksubset_estimate(make_tally({3, 3, 3}, 5, ReportKind::subset),
                                   KsubsetConfig::make(3, budget, 2)),
                  DomainMismatch);
  // Bit-vector tally with a per-position count above n.
  CHECK_THROWS_AS(brappor_estimate(make_tally({6, 1, 1}, 5, ReportKind::bit_vector),
                                   BrapporConfig::make(3, budget)),
                  DomainMismatch);
  CHECK_THROWS_AS(cms_estimate(make_tally({6, 1, 1}, 5, ReportKind::bit_vector),
                               CmsConfig::make(3, budget)),
                  DomainMismatch);
}

TEST_CASE("brappor unbiasedness") {
  const auto cfg = MechanismConfig::make(MechanismId::brappor, 3, validate_budget(1.0));
  const std::vector<uint32_t> values = values_from_counts({50000, 30000, 20000});
  const FrequencyVector truth = {0.5, 0.3, 0.2};
  const TrialMoments m = estimate_moments(cfg, values, 50, 53);
  for (uint32_t v = 0; v < 3; ++v) {
    CHECK(std::abs(m.mean[v] - truth[v]) <= 3.0 * m.stderr_of_mean[v]);
  }
}

// --- cms ---------------------------------------------------------------------------------

TEST_CASE("cms one-hot in the no-noise limit") {
  const CmsConfig cfg = CmsConfig::make(4, validate_budget(80.0));
  CHECK(cfg.flip == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  SeededRng rng(59);
  for (int i = 0; i < 200; ++i) {
    CHECK(cms_privatize(1, cfg, rng).bits == std::vector<uint8_t>{0, 1, 0, 0});
  }
}

TEST_CASE("cms per-bit frequencies at d = 3, eps = 2") {
  const CmsConfig cfg = CmsConfig::make(3, validate_budget(2.0));
  const uint64_t n = 100000;
  SeededRng rng(61);
  std::vector<uint64_t> ones(3, 0);
  for (uint64_t i = 0; i < n; ++i) {
    const BitVectorReport r = cms_privatize(2, cfg, rng);
    for (int j = 0; j < 3; ++j) ones[j] += r.bits[j];
  }
  CHECK(std::abs(ones[0] / double(n) - cfg.flip) <= three_sigma(cfg.flip, n));
  CHECK(std::abs(ones[1] / double(n) - cfg.flip) <= three_sigma(cfg.flip, n));
  CHECK(std::abs(ones[2] / double(n) - (1.0 - cfg.flip)) <=
        three_sigma(1.0 - cfg.flip, n));
}

TEST_CASE("cms channel equals the brappor channel") {
  for (double eps : {0.5, 2.0}) {
    const auto cms = MechanismConfig::make(MechanismId::cms, 3, validate_budget(eps));
    const auto brappor = MechanismConfig::make(MechanismId::brappor, 3, validate_budget(eps));
    for (uint32_t v = 0; v < 3; ++v) {
      const auto lhs = output_distribution(cms, v);
      const auto rhs = output_distribution(brappor, v);
      REQUIRE(lhs.size() == rhs.size());
      for (const auto& [atom, prob] : lhs) {
        CHECK(std::abs(prob - rhs.at(atom)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("cms estimate fixed points") {
  const CmsConfig cfg = CmsConfig::make(3, validate_budget(2.0));
  const FrequencyVector half =
      cms_estimate(make_tally({1, 1, 1}, 2, ReportKind::bit_vector), cfg);
  CHECK(half[0] == doctest::Approx(0.5).epsilon(1e-12));

  const uint64_t n = 1000000;
  const auto keep_count = static_cast<uint64_t>(std::llround((1.0 - cfg.flip) * n));
  const FrequencyVector top =
      cms_estimate(make_tally({keep_count, 0, 0}, n, ReportKind::bit_vector), cfg);
  CHECK(std::abs(top[0] - 1.0) <= 1e-5);
}

TEST_CASE("cms unbiasedness") {
  const auto cfg = MechanismConfig::make(MechanismId::cms, 3, validate_budget(1.0));
  const std::vector<uint32_t> values = values_from_counts({70000, 20000, 10000});
  const FrequencyVector truth = {0.7, 0.2, 0.1};
  const TrialMoments m = estimate_moments(cfg, values, 50, 67);
  for (uint32_t v = 0; v < 3; ++v) {
    CHECK(std::abs(m.mean[v] - truth[v]) <= 3.0 * m.stderr_of_mean[v]);
  }
}

TEST_CASE("cms verbatim estimator matches its count-scale closed form") {
  const CmsConfig cfg = CmsConfig::make(3, validate_budget(1.5));
  const TallyVector t = make_tally({120, 45, 80}, 200, ReportKind::bit_vector);
  const FrequencyVector f = cms_estimate_verbatim(t, cfg);
  const double c = (std::exp(1.5) + 1.0) / (std::exp(1.5) - 1.0);
  for (uint32_t v = 0; v < 3; ++v) {
    const double count = static_cast<double>(t.counts[v]);
    const double expected = count * (c + 1.0) / 2.0 + (count - 200.0) * (c - 1.0) / 2.0;
    CHECK(f[v] == doctest::Approx(expected).epsilon(1e-12));
    // Same algebra as c * (count - n/2) + n/2.
    CHECK(f[v] == doctest::Approx(c * (count - 100.0) + 100.0).epsilon(1e-12));
  }
}

// --- hadamard + hr ------------------------------------------------------------------------

TEST_CASE("hadamard base cases") {
  CHECK(hadamard_matrix(1) == std::vector<std::vector<int8_t>>{{1}});
  CHECK(hadamard_matrix(2) == std::vector<std::vector<int8_t>>{{1, 1}, {1, -1}});
  const auto h4 = hadamard_matrix(4);
  CHECK(h4[0] == std::vector<int8_t>{1, 1, 1, 1});
  CHECK(h4[1] == std::vector<int8_t>{1, -1, 1, -1});
  CHECK(h4[2] == std::vector<int8_t>{1, 1, -1, -1});
  CHECK(h4[3] == std::vector<int8_t>{1, -1, -1, 1});
  CHECK_THROWS_AS(hadamard_matrix(3), NotPowerOfTwo);
  CHECK_THROWS_AS(hadamard_matrix(0), NotPowerOfTwo);
}

TEST_CASE("hadamard rows are orthogonal") {
  for (uint32_t m : {1u, 2u, 4u, 8u, 16u, 32u, 64u, 128u, 256u}) {
    const auto h = hadamard_matrix(m);
    for (uint32_t i = 0; i < m; ++i) {
      for (uint32_t j = i; j < m; ++j) {
        int64_t dot = 0;
        for (uint32_t c = 0; c < m; ++c) dot += int64_t{h[i][c]} * h[j][c];
        CHECK(dot == (i == j ? int64_t{m} : 0));
      }
    }
  }
}

TEST_CASE("hr preference sets from Hadamard rows") {
  const HrConfig cfg = HrConfig::make(3, validate_budget(1.0));
  CHECK(cfg.d_prime == 4);
  CHECK(cfg.s == 2);
  CHECK(hr_preference_set(0, cfg) == std::vector<uint32_t>{0, 2});
  CHECK(hr_preference_set(1, cfg) == std::vector<uint32_t>{0, 1});
  CHECK(hr_preference_set(2, cfg) == std::vector<uint32_t>{0, 3});
  CHECK_THROWS_AS(hr_preference_set(3, cfg), IndexOutOfDomain);
}

TEST_CASE("hr preference sets intersect in d'/4 elements") {
  for (uint32_t d : {3u, 7u, 15u}) {  // d' = 4, 8, 16
    const HrConfig cfg = HrConfig::make(d, validate_budget(1.0));
    for (uint32_t u = 0; u < d; ++u) {
      const auto su = hr_preference_set(u, cfg);
      CHECK(su.size() == cfg.d_prime / 2);
      for (uint32_t v = 0; v < d; ++v) {
        if (u == v) continue;
        const auto sv = hr_preference_set(v, cfg);
        std::vector<uint32_t> both;
        std::set_intersection(su.begin(), su.end(), sv.begin(), sv.end(),
                              std::back_inserter(both));
        CHECK(both.size() == cfg.d_prime / 4);
      }
    }
  }
}

TEST_CASE("hr extended domain stays within its bounds") {
  for (uint32_t d = 2; d <= 40; ++d) {
    const HrConfig cfg = HrConfig::make(d, validate_budget(1.0));
    CHECK(std::has_single_bit(cfg.d_prime));
    CHECK(cfg.d_prime >= d + 1);
    CHECK(cfg.d_prime <= 4 * d);
    CHECK(cfg.s == cfg.d_prime / 2);
  }
}

TEST_CASE("hr no-noise limit emits only preference-set members") {
  const HrConfig cfg = HrConfig::make(5, validate_budget(50.0));
  CHECK(cfg.in_set_prob == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cfg.cross_prob == doctest::Approx(0.5).epsilon(1e-12));
  SeededRng rng(71);
  for (int i = 0; i < 2000; ++i) {
    CHECK(hr_in_preference_set(4, hr_privatize(4, cfg, rng).index, cfg));
  }
}

TEST_CASE("hr in-set probability at d = 3, eps = ln 3") {
  const HrConfig cfg = HrConfig::make(3, validate_budget(std::log(3.0)));
  CHECK(cfg.in_set_prob == doctest::Approx(0.75).epsilon(1e-12));
  const uint64_t n = 100000;
  const double freq = empirical_frequency(
      [&](SeededRng& rng) {
        return hr_in_preference_set(1, hr_privatize(1, cfg, rng).index, cfg);
      },
      n, 73);
  CHECK(std::abs(freq - 0.75) <= three_sigma(0.75, n));
}

TEST_CASE("hr degenerate configuration equals krr") {
  for (uint32_t d : {2u, 4u, 6u}) {
    const auto budget = validate_budget(1.0);
    const auto hr = MechanismConfig::make(MechanismId::hr, d, budget,
                                          MechanismOverrides{.d_prime = d, .s = 1});
    const auto krr = MechanismConfig::make(MechanismId::krr, d, budget);
    for (uint32_t v = 0; v < d; ++v) {
      const auto lhs = output_distribution(hr, v);
      const auto rhs = output_distribution(krr, v);
      REQUIRE(lhs.size() == rhs.size());
      for (const auto& [atom, prob] : lhs) {
        CHECK(std::abs(prob - rhs.at(atom)) <= 1e-12);
      }
    }
    // Same estimates on identical tallies.
    SeededRng rng(79);
    std::vector<uint64_t> counts(d);
    uint64_t n = 0;
    for (auto& c : counts) {
      c = 1 + rng.below(300);
      n += c;
    }
    const FrequencyVector a =
        hr.estimate(make_tally(counts, n, ReportKind::extended_value));
    const FrequencyVector b = krr.estimate(make_tally(counts, n, ReportKind::value));
    for (uint32_t v = 0; v < d; ++v) CHECK(std::abs(a[v] - b[v]) <= 1e-9);
  }
}

TEST_CASE("hr estimate zero at the half-count fixed point") {
  const HrConfig cfg = HrConfig::make(3, validate_budget(1.0));
  // Uniform extended tally puts every in-set count at n/2.
  const FrequencyVector f =
      hr_estimate(make_tally({25, 25, 25, 25}, 100, ReportKind::extended_value), cfg);
  for (double x : f) CHECK(x == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("hr unbiasedness on a geometric distribution") {
  const auto cfg = MechanismConfig::make(MechanismId::hr, 10, validate_budget(1.0));
  std::vector<uint64_t> counts(10);
  double weight = 1.0, total = 0.0;
  for (int i = 0; i < 10; ++i) {
    counts[i] = static_cast<uint64_t>(std::llround(10000.0 * weight));
    total += weight;
    weight *= 0.7;
  }
  const std::vector<uint32_t> values = values_from_counts(counts);
  FrequencyVector truth(10);
  for (int i = 0; i < 10; ++i) truth[i] = counts[i] / double(values.size());
  const TrialMoments m = estimate_moments(cfg, values, 50, 83);
  for (uint32_t v = 0; v < 10; ++v) {
    CHECK(std::abs(m.mean[v] - truth[v]) <= 3.0 * m.stderr_of_mean[v]);
  }
}

// --- dispatch / overrides ------------------------------------------------------------------

TEST_CASE("mechanism overrides are rejected for the wrong mechanism") {
  const auto budget = validate_budget(1.0);
  CHECK_THROWS_AS(
      MechanismConfig::make(MechanismId::krr, 4, budget, MechanismOverrides{.k = 2}),
      InvalidConfig);
  CHECK_THROWS_AS(
      MechanismConfig::make(MechanismId::ksubset, 4, budget, MechanismOverrides{.d_prime = 8}),
      InvalidConfig);
  CHECK_THROWS_AS(
      MechanismConfig::make(MechanismId::hr, 4, budget, MechanismOverrides{.d_prime = 6}),
      InvalidConfig);
  CHECK_THROWS_AS(MechanismConfig::make(MechanismId::rr, 4, budget), InvalidConfig);
}

TEST_CASE("every privatize path is deterministic under a fixed seed") {
  const auto budget = validate_budget(1.3);
  for (MechanismId id : all_mechanisms()) {
    const uint32_t d = (id == MechanismId::rr) ? 2 : 7;
    const auto cfg = MechanismConfig::make(id, d, budget);
    std::vector<std::string> first, second;
    {
      SeededRng rng(97);
      for (uint32_t i = 0; i < 200; ++i) {
        first.push_back(report_to_string(cfg.privatize(i % d, rng)));
      }
    }
    {
      SeededRng rng(97);
      for (uint32_t i = 0; i < 200; ++i) {
        second.push_back(report_to_string(cfg.privatize(i % d, rng)));
      }
    }
    CHECK(first == second);
  }
}
