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
// Experiment harness: mechanism x epsilon x trial sweeps computing MAE
// against a dataset's true distribution. Trial seeds derive deterministically
// from (master seed, mechanism, epsilon, trial), so results are bit-identical
// across thread counts and execution orders.

#ifndef LDPFREQ_BENCH_HPP_
#define LDPFREQ_BENCH_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ldpfreq/data.hpp"
#include "ldpfreq/mechanisms.hpp"

namespace ldpfreq {

// Mean absolute error (1/d) sum |estimate_i - truth_i|.
double mae(const FrequencyVector& estimate, const FrequencyVector& truth);

struct TrialResult {
  double mae = 0;
  double elapsed_seconds = 0;
  uint64_t seed = 0;
};

// Privatizes every dataset value with a generator seeded by `trial_seed`,
// tallies the reports, estimates, and scores MAE against the dataset's true
// distribution. The estimator sees only the tally and n, never raw values.
TrialResult run_trial(const Dataset& dataset, const MechanismConfig& cfg, uint64_t trial_seed);

struct ExperimentPlan {
  std::vector<MechanismId> mechanisms;  // default: all d-ary mechanisms
  std::vector<double> epsilons = {0.5, 1.0, 2.0};
  uint32_t trials = 100;
  uint64_t master_seed = 0;
  MechanismOverrides overrides;
  unsigned threads = 0;  // 0 = hardware concurrency
};

uint64_t trial_seed(uint64_t master_seed, MechanismId id, double epsilon, uint32_t trial);

struct TrialRecord {
  MechanismId mechanism;
  double epsilon = 0;
  uint32_t trial = 0;
  double mae = 0;
  uint64_t seed = 0;
};

struct CellSummary {
  MechanismId mechanism;
  double epsilon = 0;
  double mae_mean = 0;
  double mae_std = 0;  // population standard deviation over trials
  uint32_t trials = 0;
};

struct BenchSummary {
  std::string dataset;
  std::string attribute;
  uint64_t n = 0;
  uint32_t d = 0;
  std::vector<CellSummary> cells;
  std::vector<TrialRecord> trial_records;

  const CellSummary* cell(MechanismId id, double epsilon) const;
};

BenchSummary run_plan(const Dataset& dataset, const ExperimentPlan& plan);

// --- Output files ------------------------------------------------------------

// Columns: dataset, attribute, mechanism, epsilon, trial, mae, seed.
void write_trials_csv(const BenchSummary& summary, const std::filesystem::path& path);

enum class OutputFormat { table, csv, json };
std::optional<OutputFormat> output_format_from_string(const std::string& name);

// Summary in the chosen format; `table` mirrors the mean/std grid layout with
// one row per (dataset, epsilon) and one column pair per mechanism.
std::string format_summary(const BenchSummary& summary, OutputFormat format);

// Plot-ready series rows keyed by (d, n, epsilon): one row per mechanism cell.
// Appends to `path` so sweeps over n accumulate into a single series file.
void append_series_rows(const BenchSummary& summary, const std::filesystem::path& path);

}  // namespace ldpfreq

#endif  // LDPFREQ_BENCH_HPP_
