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

#include <span>
#include <string>

#include "kerrsim/analysis.hpp"
#include "kerrsim/homodyne.hpp"
#include "kerrsim/monte_carlo.hpp"
#include "kerrsim/run_config.hpp"

namespace kerrsim {

inline constexpr int kReportSchemaVersion = 1;

// JSON reports carry schema_version, the library version, the resolved
// config and a "result" object. CSV headers are fixed per table.

std::string monte_carlo_json(const MonteCarloReport& report, const RunConfig& config);
/// t,count
std::string monte_carlo_csv(const MonteCarloReport& report);

std::string error_report_json(const ErrorReport& report, const RunConfig& config);
/// t,gap_exact,gap_approx,epsilon_k,epsilon_max
std::string error_report_csv(const ErrorReport& report);

std::string sweep_json(std::span<const SweepRow> rows, const RunConfig& config);
/// n,alpha,theta,t,gap_exact,gap_approx,epsilon_k,epsilon_max,outcome_prob
std::string sweep_csv(std::span<const SweepRow> rows);

/// x,pdf,outcome_t
std::string distribution_csv(std::span<const DistributionRow> rows);

/// {"error": {"kind": ..., "message": ...}, "exit_code": ...}
std::string error_record_json(std::string_view kind, std::string_view message, int exit_code);

/// Shortest decimal that reads back to the same double.
std::string format_double(double value);

}  // namespace kerrsim
