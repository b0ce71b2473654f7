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
// ldpfreq command line: privatize, estimate, audit, synth, ingest, and bench
// workflows over the frequency-oracle library. Exit codes: 0 success,
// 1 I/O error, 2 configuration error, 3 capability limit.

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ldpfreq/audit.hpp"
#include "ldpfreq/bench.hpp"
#include "ldpfreq/data.hpp"
#include "ldpfreq/mechanisms.hpp"
#include "ldpfreq/tally.hpp"

namespace {

using namespace ldpfreq;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCapability = 3;

// Shortest representation that round-trips exactly.
std::string format_double(double x) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), x);
  return std::string(buffer, result.ptr);
}

// Writes to `path`, or stdout when empty.
class OutputSink {
 public:
  explicit OutputSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw IoError("cannot write " + path);
      path_ = path;
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void finish() {
    stream().flush();
    if (file_.is_open() && !file_) throw IoError("short write to " + path_);
  }

 private:
  std::ofstream file_;
  std::string path_;
};

std::string default_out_dir() {
  if (const char* dir = std::getenv("LDPFREQ_OUT_DIR")) return dir;
  return ".";
}

struct MechanismFlags {
  std::string mechanism;
  double epsilon = 0;
  std::optional<uint32_t> k;
  std::optional<uint32_t> d_prime;
  std::optional<uint32_t> s;

  MechanismId id() const {
    auto id = mechanism_from_string(mechanism);
    if (!id) throw InvalidConfig("unknown mechanism: " + mechanism);
    return *id;
  }
  MechanismOverrides overrides() const { return {k, d_prime, s}; }
  MechanismConfig config(uint32_t d) const {
    return MechanismConfig::make(id(), d, validate_budget(epsilon), overrides());
  }
  // Flag-level validation that needs no domain size; runs before any I/O.
  void precheck() const {
    const MechanismId mech_id = id();
    validate_budget(epsilon);
    if (k && mech_id != MechanismId::ksubset) {
      throw InvalidConfig("--k applies to the ksubset mechanism only");
    }
    if ((d_prime || s) && mech_id != MechanismId::hr) {
      throw InvalidConfig("--dprime/--s apply to the hr mechanism only");
    }
  }
};

void add_mechanism_flags(CLI::App* cmd, MechanismFlags& flags, bool with_eps = true) {
  cmd->add_option("--mech", flags.mechanism, "Mechanism: rr, krr, ksubset, brappor, cms, hr")
      ->required();
  if (with_eps) {
    cmd->add_option("--eps", flags.epsilon, "Privacy budget epsilon (> 0)")->required();
  }
  cmd->add_option("--k", flags.k,
                  "ksubset subset size (default: max(1, round(d / (e^eps + 1))))");
  cmd->add_option("--dprime", flags.d_prime,
                  "hr extended domain size (default: smallest power of two >= d+1; "
                  "d with --s 1 selects the k-RR-equivalent variant)");
  cmd->add_option("--s", flags.s, "hr preference-set size (default: d'/2)");
}

struct CsvFlags {
  std::string path;
  std::string column;
  std::string delimiter = ",";
  bool header = false;
  bool no_trim = false;

  CsvOptions options() const {
    if (delimiter.size() != 1) throw InvalidConfig("--delim must be a single character");
    return CsvOptions{delimiter[0], header, !no_trim};
  }
};

void add_csv_flags(CLI::App* cmd, CsvFlags& flags) {
  cmd->add_option("--in", flags.path, "CSV input file");
  cmd->add_option("--col", flags.column, "Column to ingest: header name or 0-based index");
  cmd->add_option("--delim", flags.delimiter, "Field delimiter (default ',')");
  cmd->add_flag("--header", flags.header, "First row is a header");
  cmd->add_flag("--no-trim", flags.no_trim, "Keep surrounding whitespace in cells");
}

Dataset load_input_dataset(const CsvFlags& csv, const std::string& dataset_path) {
  if (!dataset_path.empty()) {
    return read_dataset(dataset_path);
  }
  if (csv.path.empty() || csv.column.empty()) {
    throw InvalidConfig("provide --data FILE or --in FILE with --col COLUMN");
  }
  return ingest_csv(csv.path, parse_column_selector(csv.column), csv.options());
}

// --- reports files -----------------------------------------------------------
//
// Line 1 is a JSON header {mechanism, d, epsilon, kind, [k, d_prime, s, labels]}
// so that estimate can rebuild the exact channel and self-validate without
// ever seeing raw data. Each following line is one serialized report.

nlohmann::json reports_header(const MechanismConfig& cfg, const Domain& domain) {
  nlohmann::json header = {
      {"mechanism", to_string(cfg.id())},
      {"d", cfg.domain_size()},
      {"epsilon", cfg.epsilon()},
      {"kind", to_string(cfg.report_kind())},
  };
  if (cfg.id() == MechanismId::ksubset) header["k"] = cfg.as<KsubsetConfig>().k;
  if (cfg.id() == MechanismId::hr) {
    header["d_prime"] = cfg.as<HrConfig>().d_prime;
    header["s"] = cfg.as<HrConfig>().s;
  }
  if (domain.labels()) header["labels"] = *domain.labels();
  return header;
}

int cmd_privatize(const MechanismFlags& mech, const CsvFlags& csv,
                  const std::string& dataset_path, uint64_t seed, const std::string& out) {
  mech.precheck();
  const Dataset dataset = load_input_dataset(csv, dataset_path);
  const MechanismConfig cfg = mech.config(dataset.domain.size());

  OutputSink sink(out);
  sink.stream() << reports_header(cfg, dataset.domain).dump() << '\n';
  SeededRng rng(seed);
  for (uint32_t v : dataset.values) {
    sink.stream() << report_to_string(cfg.privatize(v, rng)) << '\n';
  }
  sink.finish();
  return kExitOk;
}

int cmd_estimate(const std::string& mechanism, const std::string& reports_path,
                 bool project_simplex, bool cms_verbatim, const std::string& format_name,
                 const std::string& out) {
  std::ifstream in(reports_path, std::ios::binary);
  if (!in) throw FileNotFound("cannot open " + reports_path);
  std::string line;
  if (!std::getline(in, line)) throw InvalidSpec("reports file is empty: " + reports_path);

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidSpec("bad reports header: " + std::string(e.what()));
  }

  const std::string file_mechanism = header.at("mechanism").get<std::string>();
  if (!mechanism.empty() && mechanism != file_mechanism) {
    throw MixedReportKinds("reports file holds " + file_mechanism +
                           " reports, but --mech " + mechanism + " was requested");
  }
  const auto id = mechanism_from_string(file_mechanism);
  if (!id) throw InvalidSpec("unknown mechanism in reports header: " + file_mechanism);

  MechanismOverrides overrides;
  if (header.contains("k")) overrides.k = header["k"].get<uint32_t>();
  if (header.contains("d_prime")) overrides.d_prime = header["d_prime"].get<uint32_t>();
  if (header.contains("s")) overrides.s = header["s"].get<uint32_t>();
  const auto d = header.at("d").get<uint32_t>();
  const MechanismConfig cfg = MechanismConfig::make(
      *id, d, validate_budget(header.at("epsilon").get<double>()), overrides);

  std::optional<std::vector<std::string>> labels;
  if (header.contains("labels") && header["labels"].is_array()) {
    labels = header["labels"].get<std::vector<std::string>>();
  }

  TallyAccumulator acc(cfg.report_kind(), cfg.tally_width());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    acc.add(report_from_string(line, cfg.report_kind()));
  }

  FrequencyVector estimate;
  if (cms_verbatim) {
    if (cfg.id() != MechanismId::cms) {
      throw InvalidConfig("--cms-verbatim applies to the cms mechanism only");
    }
    estimate = cms_estimate_verbatim(acc.tally(), cfg.as<CmsConfig>());
  } else {
    estimate = cfg.estimate(acc.tally());
  }
  if (project_simplex) estimate = project_to_simplex(std::move(estimate));

  const auto format = output_format_from_string(format_name);
  if (!format) throw InvalidConfig("unknown output format: " + format_name);

  auto label = [&](uint32_t v) {
    return labels && v < labels->size() ? (*labels)[v] : std::to_string(v);
  };
  OutputSink sink(out);
  switch (*format) {
    case OutputFormat::csv:
      sink.stream() << "label,estimate\n";
      for (uint32_t v = 0; v < estimate.size(); ++v) {
        sink.stream() << label(v) << ',' << format_double(estimate[v]) << '\n';
      }
      break;
    case OutputFormat::json: {
      nlohmann::json doc = nlohmann::json::array();
      for (uint32_t v = 0; v < estimate.size(); ++v) {
        doc.push_back({{"label", label(v)}, {"estimate", estimate[v]}});
      }
      sink.stream() << doc.dump(2) << '\n';
      break;
    }
    case OutputFormat::table:
      for (uint32_t v = 0; v < estimate.size(); ++v) {
        sink.stream() << label(v) << '\t' << format_double(estimate[v]) << '\n';
      }
      break;
  }
  sink.finish();
  return kExitOk;
}

int cmd_audit(const MechanismFlags& mech, uint32_t d, bool decompose,
              const std::string& format_name, const std::string& out) {
  const MechanismConfig cfg = mech.config(d);
  const AuditResult result = audit_ldp(
      cfg, decompose ? AuditMethod::bit_decomposition : AuditMethod::enumeration);
  const double bound = std::exp(result.epsilon);

  const auto format = output_format_from_string(format_name);
  if (!format) throw InvalidConfig("unknown output format: " + format_name);

  OutputSink sink(out);
  switch (*format) {
    case OutputFormat::json: {
      nlohmann::json doc = {
          {"mechanism", to_string(result.mechanism)},
          {"d", result.d},
          {"epsilon", result.epsilon},
          {"max_ratio", result.max_ratio},
          {"exp_epsilon", bound},
          {"tight", result.tight},
          {"witness",
           {{"v1", result.witness_v1},
            {"v2", result.witness_v2},
            {"output", result.witness_output}}},
      };
      sink.stream() << doc.dump(2) << '\n';
      break;
    }
    case OutputFormat::csv:
      sink.stream() << "mechanism,d,epsilon,max_ratio,exp_epsilon,tight,v1,v2,output\n"
                    << to_string(result.mechanism) << ',' << result.d << ','
                    << format_double(result.epsilon) << ',' << format_double(result.max_ratio)
                    << ',' << format_double(bound) << ',' << (result.tight ? 1 : 0) << ','
                    << result.witness_v1 << ',' << result.witness_v2 << ','
                    << result.witness_output << '\n';
      break;
    case OutputFormat::table:
      sink.stream() << "mechanism   " << to_string(result.mechanism) << '\n'
                    << "d           " << result.d << '\n'
                    << "epsilon     " << format_double(result.epsilon) << '\n'
                    << "max_ratio   " << format_double(result.max_ratio) << '\n'
                    << "exp(eps)    " << format_double(bound) << '\n'
                    << "verdict     " << (result.tight ? "TIGHT" : "NOT TIGHT")
                    << (result.max_ratio <= bound + 1e-9 ? " (bound satisfied)"
                                                         : " (BOUND VIOLATED)")
                    << '\n'
                    << "witness     P[M(" << result.witness_v1 << ") = "
                    << result.witness_output << "] / P[M(" << result.witness_v2 << ") = "
                    << result.witness_output << "]" << '\n';
      break;
  }
  sink.finish();
  return kExitOk;
}

int cmd_synth(uint64_t n, uint32_t d, std::optional<double> rho, uint64_t seed,
              const std::string& name, const std::string& out) {
  SyntheticSpec spec;
  spec.name = name;
  spec.n = n;
  spec.d = d;
  spec.rho = rho.value_or(SyntheticSpec::default_rho(d));
  spec.seed = seed;
  const Dataset dataset = generate_synthetic(spec);
  if (out.empty()) throw InvalidConfig("synth requires --out FILE");
  write_dataset(dataset, out);
  std::cout << dataset.name << ": n = " << dataset.n() << ", d = " << dataset.domain.size()
            << ", rho = " << format_double(spec.rho) << ", seed = " << spec.seed << " -> "
            << out << '\n';
  return kExitOk;
}

int cmd_ingest(const CsvFlags& csv, const std::string& name, const std::string& out) {
  if (csv.path.empty() || csv.column.empty()) {
    throw InvalidConfig("ingest requires --in FILE and --col COLUMN");
  }
  Dataset dataset = ingest_csv(csv.path, parse_column_selector(csv.column), csv.options());
  if (!name.empty()) dataset.name = name;
  if (!out.empty()) write_dataset(dataset, out);
  const DatasetInfoRow row{dataset.name, dataset.attribute, dataset.n(),
                           dataset.domain.size()};
  std::cout << format_sizes_table(std::span<const DatasetInfoRow>(&row, 1));
  return kExitOk;
}

std::string sanitize(const std::string& text) {
  std::string out = text;
  for (char& c : out) {
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  }
  return out;
}

int cmd_bench(const std::string& dataset_path, std::optional<uint64_t> synth_n,
              std::optional<uint32_t> synth_d, std::optional<double> synth_rho,
              uint64_t synth_seed, const std::string& mechs, const std::vector<double>& eps,
              uint32_t trials, uint64_t seed, unsigned threads, std::optional<uint32_t> k,
              const std::string& out_dir, const std::string& format_name,
              const std::vector<uint64_t>& sweep_n) {
  ExperimentPlan plan;
  if (!eps.empty()) plan.epsilons = eps;
  plan.trials = trials;
  plan.master_seed = seed;
  plan.threads = threads;
  plan.overrides.k = k;
  if (!mechs.empty()) {
    std::stringstream ss(mechs);
    std::string token;
    while (std::getline(ss, token, ',')) {
      auto id = mechanism_from_string(token);
      if (!id) throw InvalidConfig("unknown mechanism in --mechs: " + token);
      plan.mechanisms.push_back(*id);
    }
  }
  for (double e : plan.epsilons) validate_budget(e);

  const auto format = output_format_from_string(format_name);
  if (!format) throw InvalidConfig("unknown output format: " + format_name);

  auto synth_dataset = [&](uint64_t n) {
    SyntheticSpec spec;
    spec.n = n;
    spec.d = *synth_d;
    spec.rho = synth_rho.value_or(SyntheticSpec::default_rho(*synth_d));
    // One fixed dataset per (seed, n); trials re-randomize mechanism noise only.
    spec.seed = derive_seed(synth_seed, {n});
    spec.name = "synthetic_d" + std::to_string(spec.d) + "_n" + std::to_string(n);
    return generate_synthetic(spec);
  };

  const std::filesystem::path dir = out_dir.empty() ? default_out_dir() : out_dir;
  std::filesystem::create_directories(dir);

  std::vector<Dataset> datasets;
  if (!dataset_path.empty()) {
    datasets.push_back(read_dataset(dataset_path));
  } else if (synth_d && synth_n) {
    if (!sweep_n.empty()) {
      for (uint64_t n : sweep_n) datasets.push_back(synth_dataset(n));
    } else {
      datasets.push_back(synth_dataset(*synth_n));
    }
  } else {
    throw InvalidConfig("provide --data FILE or --synth-d with --synth-n");
  }

  const bool sweeping = datasets.size() > 1;
  std::filesystem::path series_path;
  if (sweeping) {
    series_path = dir / (sanitize(datasets.front().name) + "_series.csv");
    std::filesystem::remove(series_path);
  }

  for (const Dataset& dataset : datasets) {
    const BenchSummary summary = run_plan(dataset, plan);
    const std::string stem = sanitize(dataset.name) + "_" + sanitize(dataset.attribute);
    write_trials_csv(summary, dir / (stem + "_trials.csv"));

    const char* ext = *format == OutputFormat::json  ? ".json"
                      : *format == OutputFormat::csv ? ".csv"
                                                     : ".txt";
    {
      std::ofstream out_file(dir / (stem + std::string("_summary") + ext), std::ios::binary);
      if (!out_file) throw IoError("cannot write summary file");
      out_file << format_summary(summary, *format);
    }
    if (sweeping) {
      append_series_rows(summary, series_path);
    } else {
      append_series_rows(summary, dir / (stem + "_series.csv"));
    }
    std::cout << format_summary(summary, *format);
  }
  if (sweeping) {
    std::cout << "series written to " << series_path.string() << '\n';
  }
  return kExitOk;
}

int dispatch(int argc, char** argv) {
  CLI::App app{
      "ldpfreq: locally differentially private frequency oracles.\n"
      "Default parameters for under-specified knobs: ksubset k = max(1, round(d/(e^eps+1)));\n"
      "brappor q = e^{eps/2}/(e^{eps/2}+1), p = 1 - q; cms flip = 1/(e^{eps/2}+1);\n"
      "hr d' = smallest power of two >= d+1, s = d'/2; synthetic rho = min(2/d, 1/2)."};
  app.require_subcommand(1);

  // privatize
  auto* privatize = app.add_subcommand("privatize", "Perturb each dataset value into a report");
  MechanismFlags priv_mech;
  CsvFlags priv_csv;
  std::string priv_data, priv_out;
  uint64_t priv_seed = 0;
  add_mechanism_flags(privatize, priv_mech);
  add_csv_flags(privatize, priv_csv);
  privatize->add_option("--data", priv_data, "Canonical dataset file (alternative to --in)");
  privatize->add_option("--seed", priv_seed, "Generator seed (default 0)");
  privatize->add_option("--out", priv_out, "Output reports file (default stdout)");

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Estimate frequencies from a reports file");
  std::string est_mech, est_reports, est_format = "table", est_out;
  bool est_project = false, est_verbatim = false;
  estimate->add_option("--mech", est_mech, "Expected mechanism (validated against the file)");
  estimate->add_option("--reports", est_reports, "Reports file from privatize")->required();
  estimate->add_flag("--project-simplex", est_project,
                     "Clamp negatives and renormalize onto the simplex");
  estimate->add_flag("--cms-verbatim", est_verbatim,
                     "Use the uncorrected count-scale cms constant (comparison only)");
  estimate->add_option("--format", est_format, "Output format: table, csv, json");
  estimate->add_option("--out", est_out, "Output file (default stdout)");

  // audit
  auto* audit = app.add_subcommand("audit", "Exactly verify the epsilon-LDP ratio bound");
  MechanismFlags audit_mech;
  uint32_t audit_d = 0;
  bool audit_decompose = false;
  std::string audit_format = "table", audit_out;
  add_mechanism_flags(audit, audit_mech);
  audit->add_option("--d", audit_d, "Domain size")->required();
  audit->add_flag("--decompose", audit_decompose,
                  "Per-bit decomposition (bit-vector mechanisms, any d)");
  audit->add_option("--format", audit_format, "Output format: table, csv, json");
  audit->add_option("--out", audit_out, "Output file (default stdout)");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a truncated-geometric dataset");
  uint64_t synth_n = 0, synth_seed = 0;
  uint32_t synth_d = 0;
  std::optional<double> synth_rho;
  std::string synth_name = "synthetic", synth_out;
  synth->add_option("--n", synth_n, "Number of values")->required();
  synth->add_option("--d", synth_d, "Domain size")->required();
  synth->add_option("--rho", synth_rho, "Geometric ratio in (0,1); default min(2/d, 1/2)");
  synth->add_option("--seed", synth_seed, "Generator seed (default 0)");
  synth->add_option("--name", synth_name, "Dataset name");
  synth->add_option("--out", synth_out, "Output dataset file")->required();

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Encode a CSV column as a categorical dataset");
  CsvFlags ingest_csv_flags;
  std::string ingest_name, ingest_out;
  add_csv_flags(ingest, ingest_csv_flags);
  ingest->add_option("--name", ingest_name, "Dataset name (default: file stem)");
  ingest->add_option("--out", ingest_out, "Canonical dataset output file");

  // bench
  auto* bench = app.add_subcommand("bench", "Run mechanism x epsilon x trial MAE sweeps");
  std::string bench_data, bench_mechs, bench_out_dir, bench_format = "table";
  std::optional<uint64_t> bench_synth_n;
  std::optional<uint32_t> bench_synth_d;
  std::optional<double> bench_synth_rho;
  uint64_t bench_synth_seed = 0, bench_seed = 0;
  std::vector<double> bench_eps;
  std::vector<uint64_t> bench_sweep;
  uint32_t bench_trials = 100;
  unsigned bench_threads = 0;
  std::optional<uint32_t> bench_k;
  bench->add_option("--data", bench_data, "Canonical dataset file");
  bench->add_option("--synth-n", bench_synth_n, "Synthetic dataset size");
  bench->add_option("--synth-d", bench_synth_d, "Synthetic domain size");
  bench->add_option("--synth-rho", bench_synth_rho,
                    "Synthetic geometric ratio; default min(2/d, 1/2)");
  bench->add_option("--synth-seed", bench_synth_seed, "Synthetic dataset seed (default 0)");
  bench->add_option("--mechs", bench_mechs,
                    "Comma list of mechanisms (default krr,ksubset,brappor,cms,hr)");
  bench->add_option("--eps-list", bench_eps, "Privacy budgets (default 0.5 1 2)");
  bench->add_option("--trials", bench_trials, "Trials per cell (default 100)");
  bench->add_option("--seed", bench_seed, "Master seed; trial seeds derive from it");
  bench->add_option("--threads", bench_threads, "Worker threads (default: hardware)");
  bench->add_option("--k", bench_k, "ksubset subset size override");
  bench->add_option("--sweep-n", bench_sweep,
                    "Synthetic sizes for a series sweep (emits one series file)");
  bench->add_option("--out-dir", bench_out_dir,
                    "Output directory (default $LDPFREQ_OUT_DIR or '.')");
  bench->add_option("--format", bench_format, "Summary format: table, csv, json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (privatize->parsed()) {
    return cmd_privatize(priv_mech, priv_csv, priv_data, priv_seed, priv_out);
  }
  if (estimate->parsed()) {
    return cmd_estimate(est_mech, est_reports, est_project, est_verbatim, est_format, est_out);
  }
  if (audit->parsed()) {
    return cmd_audit(audit_mech, audit_d, audit_decompose, audit_format, audit_out);
  }
  if (synth->parsed()) {
    return cmd_synth(synth_n, synth_d, synth_rho, synth_seed, synth_name, synth_out);
  }
  if (ingest->parsed()) {
    return cmd_ingest(ingest_csv_flags, ingest_name, ingest_out);
  }
  if (bench->parsed()) {
    return cmd_bench(bench_data, bench_synth_n, bench_synth_d, bench_synth_rho,
                     bench_synth_seed, bench_mechs, bench_eps, bench_trials, bench_seed,
                     bench_threads, bench_k, bench_out_dir, bench_format, bench_sweep);
  }
  return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const OutputSpaceTooLarge& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCapability;
  } catch (const FileNotFound& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const RaggedRow& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const EmptyColumn& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
}
