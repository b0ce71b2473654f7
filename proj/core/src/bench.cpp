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

#include "ldpfreq/bench.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ldpfreq/tally.hpp"

namespace ldpfreq {

double mae(const FrequencyVector& estimate, const FrequencyVector& truth) {
  if (estimate.size() != truth.size()) {
    throw LengthMismatch("mae needs equal lengths, got " + std::to_string(estimate.size()) +
                         " and " + std::to_string(truth.size()));
  }
  double sum = 0.0;
  for (size_t i = 0; i < estimate.size(); ++i) sum += std::abs(estimate[i] - truth[i]);
  return sum / static_cast<double>(estimate.size());
}

TrialResult run_trial(const Dataset& dataset, const MechanismConfig& cfg, uint64_t seed) {
  if (cfg.domain_size() != dataset.domain.size()) {
    throw DomainMismatch("mechanism configured for d = " + std::to_string(cfg.domain_size()) +
                         " but dataset has d = " + std::to_string(dataset.domain.size()));
  }
  const auto start = std::chrono::steady_clock::now();

  SeededRng rng(seed);
  TallyAccumulator acc(cfg.report_kind(), cfg.tally_width());
  for (uint32_t v : dataset.values) {
    acc.add(cfg.privatize(v, rng));
  }
  const FrequencyVector estimate = cfg.estimate(acc.tally());

  TrialResult result;
  result.mae = mae(estimate, dataset.true_distribution());
  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.seed = seed;
  return result;
}

uint64_t trial_seed(uint64_t master_seed, MechanismId id, double epsilon, uint32_t trial) {
  return derive_seed(master_seed, {static_cast<uint64_t>(id),
                                   std::bit_cast<uint64_t>(epsilon), trial});
}

const CellSummary* BenchSummary::cell(MechanismId id, double epsilon) const {
  for (const CellSummary& c : cells) {
    if (c.mechanism == id && c.epsilon == epsilon) return &c;
  }
  return nullptr;
}

BenchSummary run_plan(const Dataset& dataset, const ExperimentPlan& plan) {
  if (plan.trials < 1) throw InvalidConfig("plan needs at least one trial");
  std::vector<MechanismId> mechanisms = plan.mechanisms;
  if (mechanisms.empty()) {
    mechanisms = {MechanismId::krr, MechanismId::ksubset, MechanismId::brappor,
                  MechanismId::cms, MechanismId::hr};
  }

  struct Job {
    size_t mech;
    size_t eps;
    uint32_t trial;
  };
  std::vector<Job> jobs;
  std::vector<MechanismConfig> configs;
  configs.reserve(mechanisms.size() * plan.epsilons.size());
  for (size_t m = 0; m < mechanisms.size(); ++m) {
    for (size_t e = 0; e < plan.epsilons.size(); ++e) {
      configs.push_back(MechanismConfig::make(mechanisms[m], dataset.domain.size(),
                                              validate_budget(plan.epsilons[e]),
                                              plan.overrides));
      for (uint32_t t = 0; t < plan.trials; ++t) jobs.push_back({m, e, t});
    }
  }

  // Each job owns a derived seed, so any execution order and thread count
  // produces identical results.
  std::vector<TrialRecord> records(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      const Job& job = jobs[i];
      const MechanismConfig& cfg = configs[job.mech * plan.epsilons.size() + job.eps];
      const uint64_t seed =
          trial_seed(plan.master_seed, mechanisms[job.mech], plan.epsilons[job.eps], job.trial);
      const TrialResult trial = run_trial(dataset, cfg, seed);
      records[i] = {mechanisms[job.mech], plan.epsilons[job.eps], job.trial, trial.mae, seed};
    }
  };

  unsigned n_threads = plan.threads ? plan.threads : std::thread::hardware_concurrency();
  n_threads = std::max(1u, std::min<unsigned>(n_threads, static_cast<unsigned>(jobs.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  BenchSummary summary;
  summary.dataset = dataset.name;
  summary.attribute = dataset.attribute;
  summary.n = dataset.n();
  summary.d = dataset.domain.size();
  summary.trial_records = std::move(records);

  for (size_t m = 0; m < mechanisms.size(); ++m) {
    for (size_t e = 0; e < plan.epsilons.size(); ++e) {
      double sum = 0.0, sum_sq = 0.0;
      for (const TrialRecord& r : summary.trial_records) {
        if (r.mechanism == mechanisms[m] && r.epsilon == plan.epsilons[e]) {
          sum += r.mae;
          sum_sq += r.mae * r.mae;
        }
      }
      const double count = plan.trials;
      const double mean = sum / count;
      const double var = std::max(0.0, sum_sq / count - mean * mean);
      summary.cells.push_back(
          {mechanisms[m], plan.epsilons[e], mean, std::sqrt(var), plan.trials});
    }
  }
  return summary;
}

// --- output -----------------------------------------------------------------

namespace {

// Shortest representation that round-trips exactly.
std::string format_double(double x) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), x);
  return std::string(buffer, result.ptr);
}

std::string format_fixed(double x, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << x;
  return out.str();
}

}  // namespace

void write_trials_csv(const BenchSummary& summary, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "dataset,attribute,mechanism,epsilon,trial,mae,seed\n";
  for (const TrialRecord& r : summary.trial_records) {
    out << summary.dataset << ',' << summary.attribute << ',' << to_string(r.mechanism) << ','
        << format_double(r.epsilon) << ',' << r.trial << ',' << format_double(r.mae) << ','
        << r.seed << '\n';
  }
  if (!out) throw IoError("short write to " + path.string());
}

std::optional<OutputFormat> output_format_from_string(const std::string& name) {
  if (name == "table") return OutputFormat::table;
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  return std::nullopt;
}

std::string format_summary(const BenchSummary& summary, OutputFormat format) {
  // Preserve first-seen order of mechanisms and epsilons.
  std::vector<MechanismId> mechanisms;
  std::vector<double> epsilons;
  for (const CellSummary& c : summary.cells) {
    if (std::find(mechanisms.begin(), mechanisms.end(), c.mechanism) == mechanisms.end()) {
      mechanisms.push_back(c.mechanism);
    }
    if (std::find(epsilons.begin(), epsilons.end(), c.epsilon) == epsilons.end()) {
      epsilons.push_back(c.epsilon);
    }
  }

  std::ostringstream out;
  switch (format) {
    case OutputFormat::csv: {
      out << "dataset,attribute,n,d,mechanism,epsilon,mae_mean,mae_std,trials\n";
      for (const CellSummary& c : summary.cells) {
        out << summary.dataset << ',' << summary.attribute << ',' << summary.n << ','
            << summary.d << ',' << to_string(c.mechanism) << ',' << format_double(c.epsilon)
            << ',' << format_double(c.mae_mean) << ',' << format_double(c.mae_std) << ','
            << c.trials << '\n';
      }
      break;
    }
    case OutputFormat::json: {
      nlohmann::json doc;
      doc["dataset"] = summary.dataset;
      doc["attribute"] = summary.attribute;
      doc["n"] = summary.n;
      doc["d"] = summary.d;
      doc["cells"] = nlohmann::json::array();
      for (const CellSummary& c : summary.cells) {
        doc["cells"].push_back({{"mechanism", to_string(c.mechanism)},
                                {"epsilon", c.epsilon},
                                {"mae_mean", c.mae_mean},
                                {"mae_std", c.mae_std},
                                {"trials", c.trials}});
      }
      out << doc.dump(2) << '\n';
      break;
    }
    case OutputFormat::table: {
      out << summary.dataset << " / " << summary.attribute << "  (n = " << summary.n
          << ", d = " << summary.d << ")\n";
      out << std::left << std::setw(9) << "epsilon";
      for (MechanismId id : mechanisms) {
        out << std::setw(18) << (to_string(id) + " mean/std");
      }
      out << '\n';
      for (double eps : epsilons) {
        out << std::left << std::setw(9) << format_fixed(eps, 2);
        for (MechanismId id : mechanisms) {
          const CellSummary* c = summary.cell(id, eps);
          out << std::setw(18)
              << (c ? format_fixed(c->mae_mean, 4) + " / " + format_fixed(c->mae_std, 4)
                    : "-");
        }
        out << '\n';
      }
      break;
    }
  }
  return out.str();
}

void append_series_rows(const BenchSummary& summary, const std::filesystem::path& path) {
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw IoError("cannot write " + path.string());
  if (fresh) out << "d,n,epsilon,mechanism,mae_mean,mae_std,trials\n";
  for (const CellSummary& c : summary.cells) {
    out << summary.d << ',' << summary.n << ',' << format_double(c.epsilon) << ','
        << to_string(c.mechanism) << ',' << format_double(c.mae_mean) << ','
        << format_double(c.mae_std) << ',' << c.trials << '\n';
  }
  if (!out) throw IoError("short write to " + path.string());
}

}  // namespace ldpfreq
