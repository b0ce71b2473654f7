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
// End-to-end checks of the ldpfreq binary: exit codes, reproducibility, and
// the privatize -> estimate round trip. LDPFREQ_CLI_PATH is injected by CMake.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code;
  std::string stdout_text;
};

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "ldpfreq_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt";
  const std::string command = std::string(LDPFREQ_CLI_PATH) + " " + args + " > " +
                              out.string() + " 2> " + (work_dir() / "stderr.txt").string();
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::stringstream buffer;
  buffer << in.rdbuf();
  result.stdout_text = buffer.str();
  return result;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// 60% a, 30% b, 10% c at the requested scale.
fs::path make_toy_csv(int scale = 1) {
  const fs::path path = work_dir() / ("toy_x" + std::to_string(scale) + ".csv");
  if (!fs::exists(path)) {
    std::ofstream out(path);
    for (int i = 0; i < 60 * scale; ++i) out << "a\n";
    for (int i = 0; i < 30 * scale; ++i) out << "b\n";
    for (int i = 0; i < 10 * scale; ++i) out << "c\n";
  }
  return path;
}

}  // namespace

TEST_CASE("privatize writes a header plus one report per value") {
  const fs::path csv = make_toy_csv();
  const fs::path reports = work_dir() / "toy_krr.reports";
  const RunResult r = run_cli("privatize --mech krr --eps 1 --in " + csv.string() +
                              " --col 0 --seed 7 --out " + reports.string());
  CHECK(r.exit_code == 0);
  std::ifstream in(reports);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 101);  // header + 100 reports
}

TEST_CASE("privatize rejects a zero budget with exit code 2") {
  const fs::path csv = make_toy_csv();
  const RunResult r =
      run_cli("privatize --mech krr --eps 0 --in " + csv.string() + " --col 0 --seed 1");
  CHECK(r.exit_code == 2);
}

TEST_CASE("privatize is byte-identical under a fixed seed") {
  const fs::path csv = make_toy_csv();
  const fs::path a = work_dir() / "rep_a.txt";
  const fs::path b = work_dir() / "rep_b.txt";
  const std::string flags =
      "privatize --mech ksubset --eps 0.5 --in " + csv.string() + " --col 0 --seed 9 --out ";
  CHECK(run_cli(flags + a.string()).exit_code == 0);
  CHECK(run_cli(flags + b.string()).exit_code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());
}

TEST_CASE("estimate round trip at a huge budget recovers the proportions") {
  // hr keeps randomizing inside the preference set even as eps -> infinity,
  // so the round trip needs enough reports for the estimator to settle.
  const fs::path csv = make_toy_csv(100);
  for (const std::string mech : {"krr", "ksubset", "brappor", "cms", "hr"}) {
    const fs::path reports = work_dir() / ("round_" + mech + ".reports");
    CHECK(run_cli("privatize --mech " + mech + " --eps 50 --in " + csv.string() +
                  " --col 0 --seed 3 --out " + reports.string())
              .exit_code == 0);
    const RunResult est = run_cli("estimate --mech " + mech + " --reports " +
                                  reports.string() + " --format csv");
    CHECK(est.exit_code == 0);
    std::istringstream lines(est.stdout_text);
    std::string line;
    std::getline(lines, line);  // header
    double values[3] = {0, 0, 0};
    int i = 0;
    while (std::getline(lines, line) && i < 3) {
      values[i++] = std::stod(line.substr(line.find(',') + 1));
    }
    CHECK(std::abs(values[0] - 0.6) < 0.01);
    CHECK(std::abs(values[1] - 0.3) < 0.01);
    CHECK(std::abs(values[2] - 0.1) < 0.01);
  }
}

TEST_CASE("estimate rejects a mechanism mismatch with exit code 2") {
  const fs::path csv = make_toy_csv();
  const fs::path reports = work_dir() / "mismatch.reports";
  CHECK(run_cli("privatize --mech brappor --eps 1 --in " + csv.string() +
                " --col 0 --seed 3 --out " + reports.string())
            .exit_code == 0);
  const RunResult est = run_cli("estimate --mech krr --reports " + reports.string());
  CHECK(est.exit_code == 2);
}

TEST_CASE("estimate can project onto the simplex") {
  const fs::path csv = make_toy_csv();
  const fs::path reports = work_dir() / "project.reports";
  CHECK(run_cli("privatize --mech krr --eps 0.5 --in " + csv.string() +
                " --col 0 --seed 11 --out " + reports.string())
            .exit_code == 0);
  const RunResult est = run_cli("estimate --reports " + reports.string() +
                                " --project-simplex --format csv");
  CHECK(est.exit_code == 0);
  std::istringstream lines(est.stdout_text);
  std::string line;
  std::getline(lines, line);
  double sum = 0.0;
  bool all_nonneg = true;
  while (std::getline(lines, line)) {
    const double v = std::stod(line.substr(line.find(',') + 1));
    sum += v;
    all_nonneg = all_nonneg && v >= 0.0;
  }
  CHECK(all_nonneg);
  CHECK(std::abs(sum - 1.0) <= 1e-9);
}

TEST_CASE("audit reports a tight krr channel") {
  const RunResult r = run_cli("audit --mech krr --d 5 --eps 1 --format json");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("\"tight\": true") != std::string::npos);
}

TEST_CASE("audit enumeration overflows to exit code 3 with a decomposition hint") {
  const RunResult r = run_cli("audit --mech brappor --d 25 --eps 1");
  CHECK(r.exit_code == 3);
  const RunResult ok = run_cli("audit --mech brappor --d 25 --eps 1 --decompose");
  CHECK(ok.exit_code == 0);
  CHECK(ok.stdout_text.find("TIGHT") != std::string::npos);
}

TEST_CASE("audit ksubset respects the bound") {
  const RunResult r = run_cli("audit --mech ksubset --d 6 --k 2 --eps 0.5 --format json");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("\"tight\": true") != std::string::npos);
}

TEST_CASE("synth and ingest emit canonical datasets") {
  const fs::path ds = work_dir() / "synth.ds";
  const RunResult r = run_cli("synth --n 1000 --d 10 --rho 0.3 --seed 4 --out " + ds.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(ds));

  const fs::path ds2 = work_dir() / "synth2.ds";
  CHECK(run_cli("synth --n 1000 --d 10 --rho 0.3 --seed 4 --out " + ds2.string()).exit_code ==
        0);
  CHECK(slurp(ds) == slurp(ds2));

  const fs::path csv = make_toy_csv();
  const fs::path ingested = work_dir() / "toy.ds";
  const RunResult ing =
      run_cli("ingest --in " + csv.string() + " --col 0 --out " + ingested.string());
  CHECK(ing.exit_code == 0);
  CHECK(ing.stdout_text.find("toy") != std::string::npos);
  CHECK(fs::exists(ingested));
}

TEST_CASE("bench over a canonical dataset writes summary, trials, and series files") {
  const fs::path ds = work_dir() / "bench.ds";
  CHECK(run_cli("synth --n 500 --d 6 --rho 0.3 --seed 2 --out " + ds.string()).exit_code == 0);
  const fs::path out_dir = work_dir() / "bench_out";
  const RunResult r = run_cli("bench --data " + ds.string() +
                              " --mechs krr,ksubset --eps-list 0.5 2 --trials 4 --seed 5 "
                              "--out-dir " +
                              out_dir.string());
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("krr mean/std") != std::string::npos);
  CHECK(r.stdout_text.find("ksubset mean/std") != std::string::npos);
  int csvs = 0;
  for (const auto& entry : fs::directory_iterator(out_dir)) {
    if (entry.path().extension() == ".csv" || entry.path().extension() == ".txt") ++csvs;
  }
  CHECK(csvs == 3);  // trials, summary, series
}

TEST_CASE("bench sweep accumulates one series file") {
  const fs::path out_dir = work_dir() / "sweep_out";
  const RunResult r = run_cli(
      "bench --synth-d 8 --synth-n 500 --sweep-n 300 600 --mechs krr --eps-list 1 "
      "--trials 2 --seed 6 --out-dir " +
      out_dir.string());
  CHECK(r.exit_code == 0);
  fs::path series;
  for (const auto& entry : fs::directory_iterator(out_dir)) {
    if (entry.path().filename().string().find("_series.csv") != std::string::npos) {
      series = entry.path();
    }
  }
  REQUIRE(!series.empty());
  std::istringstream lines(slurp(series));
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 3);  // header + one row per n
}

TEST_CASE("unknown mechanism exits with the config code") {
  CHECK(run_cli("audit --mech nope --d 4 --eps 1").exit_code == 2);
  CHECK(run_cli("privatize --mech hr --eps 1 --k 3 --in missing.csv --col 0").exit_code == 2);
}

TEST_CASE("missing input file exits with the io code") {
  CHECK(run_cli("privatize --mech krr --eps 1 --in /no/such/file.csv --col 0").exit_code == 1);
  CHECK(run_cli("estimate --reports /no/such/file.reports").exit_code == 1);
}
