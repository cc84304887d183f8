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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kerrsim/kerr_circuit.hpp"
#include "kerrsim/presets.hpp"
#include "kerrsim/signal_state.hpp"

namespace kerrsim {

/// Every knob of a run. JSON config files use exactly these member names as
/// keys, and so do the command-line flags (--n, --alpha, ...).
struct RunConfig {
  int n = 4;
  double alpha = 1e4;  // demonstration default: alpha theta^2 = 1
  double theta = 0.01;
  std::string input = "uniform";  // uniform | product | dicke | custom
  double beta = 0.7071067811865476;
  double gamma = 0.7071067811865476;
  int weight = 0;          // dicke preset
  std::string amplitudes;  // custom preset: path to an amplitude file
  std::string backend = "auto";  // dense | symmetric | auto
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::string output;  // empty: stdout
  std::string format = "json";  // json | csv

  // sample-distribution grid; bounds default to all peaks +- 8.
  std::optional<double> xmin;
  std::optional<double> xmax;
  int points = 2001;

  // sweep grid (cartesian product, in this order).
  std::vector<int> ns;
  std::vector<double> alphas;
  std::vector<double> thetas;

  // Execution detail only; never changes results, so not echoed in reports.
  unsigned threads = 0;
};

/// Parses a JSON object whose keys are RunConfig member names. Unknown keys
/// and wrongly typed values throw kConfig. Missing keys keep `base` values.
RunConfig config_from_json(std::string_view text, const RunConfig& base = {});

/// Reads a config file; kIo if unreadable.
RunConfig read_config_file(const std::string& path, const RunConfig& base = {});

/// Canonical JSON of the resolved config (threads omitted).
std::string config_to_json(const RunConfig& config);

/// Checks every module cap before any work starts. Throws kConfig carrying
/// the underlying reason; a missing amplitude file throws kIo.
void validate(const RunConfig& config);

/// Checks for the sweep command: output format, a non-empty grid and a
/// loadable preset. Per-point cap violations are reported in the table.
void validate_sweep(const RunConfig& config);

/// Loads the input preset (reads the amplitude file for "custom").
InputPreset load_preset(const RunConfig& config);

/// dense / symmetric as requested; auto picks symmetric for a
/// permutation-invariant preset with n > 24, dense otherwise.
Backend resolve_backend(const RunConfig& config, const InputPreset& preset);

std::string_view to_string(Backend backend);

CircuitParams circuit_params(const RunConfig& config);

}  // namespace kerrsim
