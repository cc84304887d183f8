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

#include "kerrsim/analysis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kerrsim/error.hpp"
#include "kerrsim/homodyne.hpp"
#include "kerrsim/summation.hpp"

namespace kerrsim {
namespace {

const double kSqrt2 = std::numbers::sqrt2;

// erfc(z / sqrt 2) / 2 over the extended reals.
double upper_tail(double z) { return 0.5 * std::erfc(z / kSqrt2); }

}  // namespace

double erfc(double z) {
  if (!(z >= kErfcMinArgument && z <= kErfcMaxArgument)) {
    fail(ErrorKind::kDomain, "erfc argument " + std::to_string(z) + " outside [-10, 40]");
  }
  return std::erfc(z);
}

double normal_upper_tail(double z) { return upper_tail(z); }

double error_prob(const CircuitParams& params, TwiceIndex t) {
  return 0.5 * std::erfc(gap(params, t) / (2.0 * kSqrt2));
}

double max_error_prob(const CircuitParams& params) {
  const double a = params.alpha() * params.theta() * params.theta();
  return 0.5 * std::erfc(a / (2.0 * kSqrt2));
}

double gap_approx(const CircuitParams& params, TwiceIndex t) {
  (void)gap(params, t);  // index and ordering checks
  const double theta = params.theta();
  return static_cast<double>(t.twice() - 1) * params.alpha() * theta * theta;
}

double normal_interval_mass(double mu, double lower, double upper) {
  if (!(upper > lower)) return 0.0;
  const double a = lower - mu;
  const double b = upper - mu;
  if (a >= 0.0) return upper_tail(a) - upper_tail(b);
  if (b <= 0.0) return upper_tail(-b) - upper_tail(-a);
  return 1.0 - upper_tail(-a) - upper_tail(b);
}

double outcome_probability(const CircuitParams& params, const WeightDistribution& weights,
                           TwiceIndex t) {
  if (weights.photons() != params.photons()) {
    fail(ErrorKind::kDimension, "weight distribution and circuit disagree on n");
  }
  const OutcomeInterval interval = outcome_interval(params, t);
  CompensatedSum mass;
  for (int w = 0; w <= params.photons(); ++w) {
    if (weights[w] <= 0.0) continue;
    const double center = 2.0 * params.alpha() * std::cos(probe_phase(params, w));
    mass += weights[w] * normal_interval_mass(center, interval.lower, interval.upper);
  }
  return mass.value();
}

double outcome_probability(const CircuitParams& params, const SignalState& input, TwiceIndex t) {
  return outcome_probability(params, weight_probabilities(input), t);
}

std::vector<double> outcome_probabilities(const CircuitParams& params,
                                          const WeightDistribution& weights) {
  std::vector<double> out;
  for (TwiceIndex t : outcome_indices(params.photons())) {
    out.push_back(outcome_probability(params, weights, t));
  }
  return out;
}

ErrorReport error_report(const CircuitParams& params) {
  ErrorReport report{params, {}, max_error_prob(params), 0.0};
  const int n = params.photons();
  for (std::int64_t t = n % 2 == 0 ? 2 : 3; t <= n; t += 2) {
    const TwiceIndex index(t);
    report.per_outcome.push_back(
        {index, gap(params, index), gap_approx(params, index), error_prob(params, index)});
  }
  report.epsilon_kmin = report.per_outcome.front().epsilon;
  return report;
}

std::vector<SweepRow> sweep(std::span<const SweepPoint> grid, const InputPreset& preset) {
  std::vector<SweepRow> rows;
  for (const SweepPoint& point : grid) {
    try {
      const CircuitParams params(point.photons, point.alpha, point.theta);
      if (!params.peaks_ordered()) fail(ErrorKind::kDomain, "n*theta exceeds pi/2");
      const Backend backend =
          is_permutation_invariant(preset) ? Backend::kSymmetric : Backend::kDense;
      const WeightDistribution weights =
          weight_probabilities(make_input(preset, point.photons, backend));
      const double eps_max = max_error_prob(params);
      std::vector<SweepRow> point_rows;
      for (TwiceIndex t : outcome_indices(point.photons)) {
        SweepRow row;
        row.point = point;
        row.t = t;
        if (t != first_outcome(point.photons)) {
          row.gap_exact = gap(params, t);
          row.gap_approx = gap_approx(params, t);
          row.epsilon_k = error_prob(params, t);
        }
        row.epsilon_max = eps_max;
        row.outcome_prob = outcome_probability(params, weights, t);
        point_rows.push_back(row);
      }
      rows.insert(rows.end(), point_rows.begin(), point_rows.end());
    } catch (const Error& e) {
      SweepRow row;
      row.point = point;
      row.valid = false;
      row.invalid_reason = e.what();
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace kerrsim
