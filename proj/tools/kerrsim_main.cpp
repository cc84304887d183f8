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

// kerrsim: command-line driver for the weak cross-Kerr entangler simulator.
//
//   kerrsim simulate             Monte Carlo over the full measurement pipeline
//   kerrsim analyze              closed-form gaps and error probabilities
//   kerrsim sample-distribution  homodyne density and decisions on an x grid
//   kerrsim sweep                analyze + outcome probabilities over a grid
//
// Exit codes: 0 ok, 1 computation error, 2 bad configuration, 3 I/O failure.

#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kerrsim/analysis.hpp"
#include "kerrsim/error.hpp"
#include "kerrsim/homodyne.hpp"
#include "kerrsim/monte_carlo.hpp"
#include "kerrsim/presets.hpp"
#include "kerrsim/reports.hpp"
#include "kerrsim/run_config.hpp"
#include "kerrsim/version.hpp"

namespace {

using kerrsim::ErrorKind;
using kerrsim::RunConfig;

constexpr int kExitOk = 0;
constexpr int kExitCompute = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

// Flags mirror the JSON config keys. Only flags that were given override
// the config file.
class FlagSet {
 public:
  explicit FlagSet(CLI::App* app) : app_(app) {}

  template <typename T>
  void add(const std::string& key, const std::string& help) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app_->add_option("--" + key, *value, help);
    if constexpr (std::is_same_v<T, std::vector<int>> || std::is_same_v<T, std::vector<double>>) {
      opt->delimiter(',');
    }
    setters_.push_back([opt, key, value](nlohmann::json& j) {
      if (opt->count() > 0) j[key] = *value;
    });
  }

  nlohmann::json given() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& set : setters_) set(j);
    return j;
  }

 private:
  CLI::App* app_;
  std::vector<std::function<void(nlohmann::json&)>> setters_;
};

struct Command {
  CLI::App* app = nullptr;
  std::string config_path;
  std::unique_ptr<FlagSet> flags;
};

Command make_command(CLI::App& root, const std::string& name, const std::string& help) {
  Command cmd;
  cmd.app = root.add_subcommand(name, help);
  cmd.flags = std::make_unique<FlagSet>(cmd.app);
  cmd.app->add_option("--config", cmd.config_path, "JSON config file (same keys as the flags)");
  FlagSet& f = *cmd.flags;
  f.add<int>("n", "photon count");
  f.add<double>("alpha", "probe coherent amplitude");
  f.add<double>("theta", "Kerr phase per photon (rad)");
  f.add<std::string>("input", "uniform | product | dicke | custom");
  f.add<double>("beta", "product preset: H amplitude");
  f.add<double>("gamma", "product preset: V amplitude");
  f.add<int>("weight", "dicke preset: number of V photons");
  f.add<std::string>("amplitudes", "custom preset: amplitude JSON file");
  f.add<std::string>("backend", "dense | symmetric | auto");
  f.add<std::uint64_t>("seed", "master seed");
  f.add<std::string>("output", "output file (default stdout)");
  f.add<std::string>("format", "json | csv");
  return cmd;
}

RunConfig resolve(const Command& cmd) {
  RunConfig config;
  if (!cmd.config_path.empty()) config = kerrsim::read_config_file(cmd.config_path);
  return kerrsim::config_from_json(cmd.flags->given().dump(), config);
}

void emit(const RunConfig& config, const std::string& payload) {
  if (config.output.empty()) {
    std::cout << payload;
    std::cout.flush();
    if (!std::cout) kerrsim::fail(ErrorKind::kIo, "failed writing to stdout");
    return;
  }
  std::ofstream out(config.output, std::ios::binary | std::ios::trunc);
  if (!out) kerrsim::fail(ErrorKind::kIo, "cannot open output file '" + config.output + "'");
  out << payload;
  out.close();
  if (!out) kerrsim::fail(ErrorKind::kIo, "failed writing output file '" + config.output + "'");
}

void run_simulate(RunConfig config) {
  kerrsim::validate(config);
  const kerrsim::InputPreset preset = kerrsim::load_preset(config);
  const auto backend = kerrsim::resolve_backend(config, preset);
  config.backend = kerrsim::to_string(backend);
  const auto input = kerrsim::make_input(preset, config.n, backend);
  const auto report = kerrsim::run_monte_carlo(kerrsim::circuit_params(config), input,
                                               config.trials, config.seed, config.threads);
  emit(config, config.format == "csv" ? kerrsim::monte_carlo_csv(report)
                                      : kerrsim::monte_carlo_json(report, config));
}

void run_analyze(const RunConfig& config) {
  kerrsim::validate(config);
  const auto report = kerrsim::error_report(kerrsim::circuit_params(config));
  emit(config, config.format == "csv" ? kerrsim::error_report_csv(report)
                                      : kerrsim::error_report_json(report, config));
}

void run_sample_distribution(const RunConfig& config) {
  kerrsim::validate(config);
  const kerrsim::InputPreset preset = kerrsim::load_preset(config);
  const auto backend = kerrsim::resolve_backend(config, preset);
  const auto joint = kerrsim::kerr_evolve(kerrsim::circuit_params(config),
                                          kerrsim::make_input(preset, config.n, backend));
  const kerrsim::OutcomeInterval span = kerrsim::peak_span(joint, 8.0);
  const double xmin = config.xmin.value_or(span.lower);
  const double xmax = config.xmax.value_or(span.upper);
  if (!(xmin < xmax)) kerrsim::fail(ErrorKind::kConfig, "grid needs xmin < xmax");
  emit(config, kerrsim::distribution_csv(
                   kerrsim::distribution_table(joint, xmin, xmax, config.points)));
}

void run_sweep(const RunConfig& config) {
  kerrsim::validate_sweep(config);
  const kerrsim::InputPreset preset = kerrsim::load_preset(config);
  std::vector<kerrsim::SweepPoint> grid;
  for (int n : config.ns) {
    for (double alpha : config.alphas) {
      for (double theta : config.thetas) grid.push_back({n, alpha, theta});
    }
  }
  const auto rows = kerrsim::sweep(grid, preset);
  emit(config, config.format == "csv" ? kerrsim::sweep_csv(rows)
                                      : kerrsim::sweep_json(rows, config));
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig: return kExitConfig;
    case ErrorKind::kIo: return kExitIo;
    default: return kExitCompute;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak cross-Kerr multiphoton entangler simulator"};
  app.set_version_flag("--version", std::string(kerrsim::kVersion));
  app.require_subcommand(1);

  Command simulate = make_command(app, "simulate", "Monte Carlo run of the full pipeline");
  simulate.flags->add<std::uint64_t>("trials", "number of trials");
  simulate.flags->add<unsigned>("threads", "worker threads (0 = all cores); results do not depend on it");
  Command analyze = make_command(app, "analyze", "closed-form gaps and error probabilities");
  Command distribution =
      make_command(app, "sample-distribution", "homodyne density and outcome on an x grid");
  distribution.flags->add<double>("xmin", "grid start (default: lowest peak - 8)");
  distribution.flags->add<double>("xmax", "grid end (default: highest peak + 8)");
  distribution.flags->add<int>("points", "grid points");
  Command sweep = make_command(app, "sweep", "error table over a parameter grid");
  sweep.flags->add<std::vector<int>>("ns", "photon counts, comma separated");
  sweep.flags->add<std::vector<double>>("alphas", "probe amplitudes, comma separated");
  sweep.flags->add<std::vector<double>>("thetas", "Kerr phases, comma separated");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << kerrsim::error_record_json("config", e.what(), kExitConfig);
    return kExitConfig;
  }

  try {
    if (simulate.app->parsed()) run_simulate(resolve(simulate));
    if (analyze.app->parsed()) run_analyze(resolve(analyze));
    if (distribution.app->parsed()) run_sample_distribution(resolve(distribution));
    if (sweep.app->parsed()) run_sweep(resolve(sweep));
  } catch (const kerrsim::Error& e) {
    const int code = exit_code_for(e.kind());
    std::cerr << kerrsim::error_record_json(kerrsim::to_string(e.kind()), e.what(), code);
    return code;
  } catch (const std::exception& e) {
    std::cerr << kerrsim::error_record_json("internal", e.what(), kExitCompute);
    return kExitCompute;
  }
  return kExitOk;
}
