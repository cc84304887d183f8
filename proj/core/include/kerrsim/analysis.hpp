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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kerrsim/kerr_circuit.hpp"
#include "kerrsim/presets.hpp"
#include "kerrsim/signal_state.hpp"
#include "kerrsim/twice_index.hpp"

namespace kerrsim {

inline constexpr double kErfcMinArgument = -10.0;
inline constexpr double kErfcMaxArgument = 40.0;

/// Complementary error function on [-10, 40]; kDomain outside. Values below
/// the double range (z > ~26.5) come back as 0 or subnormal.
double erfc(double z);

/// P(Z > z) for a standard normal Z.
double normal_upper_tail(double z);

/// Discrimination error between neighboring peaks: erfc(gap / 2 sqrt 2) / 2,
/// using the exact gap.
double error_prob(const CircuitParams& params, TwiceIndex t);

/// erfc(alpha theta^2 / 2 sqrt 2) / 2: the small-angle gap of k = 1.
double max_error_prob(const CircuitParams& params);

/// Small-angle gap (2k - 1) alpha theta^2.
double gap_approx(const CircuitParams& params, TwiceIndex t);

/// Mass of the homodyne mixture on the interval of outcome t.
double outcome_probability(const CircuitParams& params, const WeightDistribution& weights,
                           TwiceIndex t);
double outcome_probability(const CircuitParams& params, const SignalState& input, TwiceIndex t);

/// outcome_probability for every outcome, ascending t.
std::vector<double> outcome_probabilities(const CircuitParams& params,
                                          const WeightDistribution& weights);

/// P(mu + Z in (lower, upper]) without cancellation in either tail.
double normal_interval_mass(double mu, double lower, double upper);

struct OutcomeError {
  TwiceIndex t;
  double gap_exact;
  double gap_approx;
  double epsilon;
};

struct ErrorReport {
  CircuitParams params;
  std::vector<OutcomeError> per_outcome;  // one per midpoint, ascending k
  double epsilon_max;   // small-angle k = 1 form
  double epsilon_kmin;  // exact value at the smallest valid k for this parity
};

ErrorReport error_report(const CircuitParams& params);

struct SweepPoint {
  int photons;
  double alpha;
  double theta;
};

struct SweepRow {
  SweepPoint point;
  bool valid = true;
  std::string invalid_reason;
  TwiceIndex t;
  std::optional<double> gap_exact;   // absent for the top outcome
  std::optional<double> gap_approx;
  std::optional<double> epsilon_k;
  double epsilon_max = 0.0;
  double outcome_prob = 0.0;
};

/// One row per (point, outcome), in grid order then ascending t. Points that
/// break a cap yield a single row with valid = false.
std::vector<SweepRow> sweep(std::span<const SweepPoint> grid, const InputPreset& preset);

}  // namespace kerrsim
