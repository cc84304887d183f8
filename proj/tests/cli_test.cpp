// Copyright 2026 The kerrsim Authors
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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

struct CliRun {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

CliRun run(const std::string& args) {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path();
  const fs::path out = dir / ("kerrsim_cli_out_" + std::to_string(counter));
  const fs::path err = dir / ("kerrsim_cli_err_" + std::to_string(counter++));
  const std::string cmd =
      std::string("\"") + KERRSIM_CLI_PATH + "\" " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  CliRun r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  fs::remove(out);
  fs::remove(err);
  return r;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream cell_stream(line);
    std::string cell;
    while (std::getline(cell_stream, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

TEST(Cli, SimulateIsReproducible) {
  const CliRun a = run("simulate --n 4 --trials 3000 --seed 5");
  const CliRun b = run("simulate --n 4 --trials 3000 --seed 5 --threads 3");
  ASSERT_EQ(a.exit_code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["kind"], "monte_carlo");
  EXPECT_EQ(j["config"]["backend"], "dense");
  EXPECT_EQ(j["result"]["trials"], 3000);
}

TEST(Cli, OddPhotonCountHasHalfIntegerOutcomes) {
  const CliRun r = run("simulate --n 3 --trials 500");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto counts = nlohmann::json::parse(r.out)["result"]["per_outcome_counts"];
  ASSERT_EQ(counts.size(), 2u);
  EXPECT_TRUE(counts.contains("1"));
  EXPECT_TRUE(counts.contains("3"));
}

TEST(Cli, BackendsGiveIdenticalCounts) {
  const CliRun dense = run("simulate --n 6 --trials 2000 --backend dense --format csv");
  const CliRun sym = run("simulate --n 6 --trials 2000 --backend symmetric --format csv");
  ASSERT_EQ(dense.exit_code, 0) << dense.err;
  ASSERT_EQ(sym.exit_code, 0) << sym.err;
  EXPECT_EQ(dense.out, sym.out);
}

TEST(Cli, ConfigFileAndFlagOverride) {
  const fs::path path = fs::temp_directory_path() / "kerrsim_cli_config.json";
  {
    std::ofstream out(path);
    out << R"({"n": 5, "trials": 100, "seed": 3})";
  }
  const CliRun from_file = run("simulate --config " + path.string());
  const CliRun flags = run("simulate --n 5 --trials 100 --seed 3");
  ASSERT_EQ(from_file.exit_code, 0) << from_file.err;
  EXPECT_EQ(from_file.out, flags.out);
  const CliRun overridden = run("simulate --config " + path.string() + " --n 4");
  EXPECT_EQ(nlohmann::json::parse(overridden.out)["config"]["n"], 4);
  fs::remove(path);
}

TEST(Cli, ExitCodes) {
  const CliRun bad_theta = run("analyze --theta 0.9");
  EXPECT_EQ(bad_theta.exit_code, 2);
  EXPECT_TRUE(bad_theta.out.empty());
  const auto record = nlohmann::json::parse(bad_theta.err);
  EXPECT_EQ(record["exit_code"], 2);
  EXPECT_TRUE(record["error"].contains("kind"));

  EXPECT_EQ(run("analyze --bogus 1").exit_code, 2);
  EXPECT_EQ(run("").exit_code, 2);
  EXPECT_EQ(run("simulate --config /nonexistent/config.json").exit_code, 3);
  EXPECT_EQ(run("simulate --input custom --amplitudes /nonexistent/state.json").exit_code, 3);
  EXPECT_EQ(run("analyze --output /nonexistent/dir/out.json").exit_code, 3);
  EXPECT_EQ(run("simulate --n 30 --backend dense").exit_code, 2);
}

TEST(Cli, OutputFile) {
  const fs::path path = fs::temp_directory_path() / "kerrsim_cli_output.json";
  const CliRun r = run("analyze --n 6 --output " + path.string());
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(nlohmann::json::parse(slurp(path))["kind"], "error_report");
  fs::remove(path);
}

TEST(Cli, AnalyzeTable) {
  const CliRun r = run("analyze --n 8 --format csv");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"t", "gap_exact", "gap_approx", "epsilon_k", "epsilon_max"}));
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i][0], std::to_string(2 * i));
}

TEST(Cli, SampleDistribution) {
  const CliRun r = run("sample-distribution --n 4 --alpha 3e4 --points 4001");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 4002u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"x", "pdf", "outcome_t"}));
  std::vector<double> x;
  std::vector<double> pdf;
  std::vector<int> outcome;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    x.push_back(std::stod(rows[i][0]));
    pdf.push_back(std::stod(rows[i][1]));
    outcome.push_back(std::stoi(rows[i][2]));
  }
  double integral = 0.0;
  int maxima = 0;
  for (std::size_t i = 1; i < x.size(); ++i) integral += 0.5 * (pdf[i] + pdf[i - 1]) * (x[i] - x[i - 1]);
  for (std::size_t i = 1; i + 1 < x.size(); ++i) maxima += pdf[i] > pdf[i - 1] && pdf[i] > pdf[i + 1];
  EXPECT_NEAR(integral, 1.0, 1e-4);
  EXPECT_EQ(maxima, 3);  // alpha theta^2 = 3: peaks resolved
  // Outcomes step 4 -> 2 -> 0 as x grows, changing exactly twice.
  std::set<int> seen(outcome.begin(), outcome.end());
  EXPECT_EQ(seen, (std::set<int>{0, 2, 4}));
  int switches = 0;
  for (std::size_t i = 1; i < outcome.size(); ++i) {
    if (outcome[i] != outcome[i - 1]) {
      ++switches;
      EXPECT_EQ(outcome[i], outcome[i - 1] - 2);
    }
  }
  EXPECT_EQ(switches, 2);
}

TEST(Cli, Sweep) {
  const CliRun r = run("sweep --ns 4,5 --alphas 1e4 --thetas 0.01,0.5 --format csv");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  // 3 + 3 outcome rows, plus one invalid row per theta = 0.5 point.
  ASSERT_EQ(rows.size(), 1u + 3u + 1u + 3u + 1u);
  EXPECT_EQ(rows[2][0], "4");
}

TEST(Cli, Version) {
  const CliRun r = run("--version");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_FALSE(r.out.empty());
}

}  // namespace
