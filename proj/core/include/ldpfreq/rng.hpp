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

#ifndef LDPFREQ_RNG_HPP_
#define LDPFREQ_RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ldpfreq {

// Explicitly seeded generator used by every privatize operation. The library
// never reads ambient entropy; callers own the seeds. All draws go through
// the fixed conversions below so that identical seeds give identical report
// streams independent of the standard library's distribution implementations.
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform01() < p; }

  // Uniform integer in [0, n). Masked rejection sampling, unbiased.
  uint64_t below(uint64_t n) {
    if (n <= 1) return 0;
    uint64_t mask = ~uint64_t{0} >> __builtin_clzll(n - 1 | 1);
    uint64_t v;
    do {
      v = engine_() & mask;
    } while (v >= n);
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer; the stable building block for seed derivation.
constexpr uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic seed for a sub-stream identified by `parts` (for example
// mechanism id, epsilon bits, trial index). Stable across platforms and
// thread counts; part order matters.
inline uint64_t derive_seed(uint64_t master, std::initializer_list<uint64_t> parts) {
  uint64_t h = mix64(master);
  for (uint64_t part : parts) h = mix64(h ^ mix64(part));
  return h;
}

}  // namespace ldpfreq

#endif  // LDPFREQ_RNG_HPP_
