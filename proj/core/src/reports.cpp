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

#include "kerrsim/reports.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "json_support.hpp"
#include "kerrsim/version.hpp"

namespace kerrsim {
namespace {

using detail::ordered_json;

ordered_json envelope(std::string_view kind, const RunConfig& config) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kerrsim_version"] = kVersion;
  j["kind"] = kind;
  j["config"] = detail::config_json_value(config);
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::string optional_field(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string monte_carlo_json(const MonteCarloReport& report, const RunConfig& config) {
  ordered_json j = envelope("monte_carlo", config);
  ordered_json counts = ordered_json::object();
  for (const OutcomeCount& c : report.per_outcome_counts) {
    counts[std::to_string(c.t.twice())] = c.count;
  }
  ordered_json r;
  r["trials"] = report.trials;
  r["seed"] = report.seed;
  r["per_outcome_counts"] = std::move(counts);
  r["misclassified"] = report.misclassified;
  r["misclassification"] = report.misclassification;
  r["confidence_radius"] = report.confidence_radius;
  r["mean_output_fidelity"] = report.mean_output_fidelity;
  j["result"] = std::move(r);
  return dump(j);
}

std::string monte_carlo_csv(const MonteCarloReport& report) {
  std::ostringstream out;
  out << "t,count\n";
  for (const OutcomeCount& c : report.per_outcome_counts) {
    out << c.t.twice() << ',' << c.count << '\n';
  }
  return out.str();
}

std::string error_report_json(const ErrorReport& report, const RunConfig& config) {
  ordered_json j = envelope("error_report", config);
  ordered_json rows = ordered_json::array();
  for (const OutcomeError& e : report.per_outcome) {
    ordered_json row;
    row["t"] = e.t.twice();
    row["gap_exact"] = e.gap_exact;
    row["gap_approx"] = e.gap_approx;
    row["epsilon_k"] = e.epsilon;
    row["epsilon_max"] = report.epsilon_max;
    rows.push_back(std::move(row));
  }
  ordered_json r;
  r["n"] = report.params.photons();
  r["alpha"] = report.params.alpha();
  r["theta"] = report.params.theta();
  r["per_outcome"] = std::move(rows);
  r["epsilon_max"] = report.epsilon_max;
  r["epsilon_kmin"] = report.epsilon_kmin;
  j["result"] = std::move(r);
  return dump(j);
}

std::string error_report_csv(const ErrorReport& report) {
  std::ostringstream out;
  out << "t,gap_exact,gap_approx,epsilon_k,epsilon_max\n";
  for (const OutcomeError& e : report.per_outcome) {
    out << e.t.twice() << ',' << format_double(e.gap_exact) << ',' << format_double(e.gap_approx)
        << ',' << format_double(e.epsilon) << ',' << format_double(report.epsilon_max) << '\n';
  }
  return out.str();
}

std::string sweep_json(std::span<const SweepRow> rows, const RunConfig& config) {
  ordered_json j = envelope("sweep", config);
  ordered_json list = ordered_json::array();
  for (const SweepRow& row : rows) {
    ordered_json r;
    r["n"] = row.point.photons;
    r["alpha"] = row.point.alpha;
    r["theta"] = row.point.theta;
    r["valid"] = row.valid;
    if (!row.valid) {
      r["reason"] = row.invalid_reason;
    } else {
      r["t"] = row.t.twice();
      r["gap_exact"] = optional_number(row.gap_exact);
      r["gap_approx"] = optional_number(row.gap_approx);
      r["epsilon_k"] = optional_number(row.epsilon_k);
      r["epsilon_max"] = row.epsilon_max;
      r["outcome_prob"] = row.outcome_prob;
    }
    list.push_back(std::move(r));
  }
  j["result"] = {{"rows", std::move(list)}};
  return dump(j);
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::ostringstream out;
  out << "n,alpha,theta,t,gap_exact,gap_approx,epsilon_k,epsilon_max,outcome_prob\n";
  for (const SweepRow& row : rows) {
    out << row.point.photons << ',' << format_double(row.point.alpha) << ','
        << format_double(row.point.theta) << ',';
    if (!row.valid) {
      out << "invalid,,,,,\n";
      continue;
    }
    out << row.t.twice() << ',' << optional_field(row.gap_exact) << ','
        << optional_field(row.gap_approx) << ',' << optional_field(row.epsilon_k) << ','
        << format_double(row.epsilon_max) << ',' << format_double(row.outcome_prob) << '\n';
  }
  return out.str();
}

std::string distribution_csv(std::span<const DistributionRow> rows) {
  std::ostringstream out;
  out << "x,pdf,outcome_t\n";
  for (const DistributionRow& row : rows) {
    out << format_double(row.x) << ',' << format_double(row.pdf) << ',' << row.outcome.twice()
        << '\n';
  }
  return out.str();
}

std::string error_record_json(std::string_view kind, std::string_view message, int exit_code) {
  ordered_json j;
  j["error"] = {{"kind", kind}, {"message", message}};
  j["exit_code"] = exit_code;
  return j.dump() + "\n";
}

}  // namespace kerrsim
