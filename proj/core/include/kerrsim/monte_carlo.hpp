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
#include <vector>

#include "kerrsim/kerr_circuit.hpp"
#include "kerrsim/rng.hpp"
#include "kerrsim/signal_state.hpp"
#include "kerrsim/twice_index.hpp"

namespace kerrsim {

struct TrialResult {
  double x;
  int sampled_weight;
  TwiceIndex true_outcome;  // |2w - n| of the sampled class
  TwiceIndex outcome;       // midpoint-rule decision
  double fidelity;

  bool misclassified() const { return true_outcome != outcome; }
};

/// Everything a trial needs that does not depend on the random draw: the
/// joint state and the ideal output of every outcome.
class TrialPipeline {
 public:
  TrialPipeline(const CircuitParams& params, const SignalState& input);

  const JointState& joint() const { return joint_; }
  const SignalState& input() const { return joint_.signal(); }

  /// sample -> classify -> collapse -> correct -> score.
  TrialResult run(Rng& rng) const;

 private:
  JointState joint_;
  std::vector<std::optional<SignalState>> ideals_;  // by (t - t_min) / 2
};

struct OutcomeCount {
  TwiceIndex t;
  std::uint64_t count;
};

struct MonteCarloReport {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<OutcomeCount> per_outcome_counts;  // every outcome, ascending t
  std::uint64_t misclassified = 0;
  double misclassification = 0.0;
  double confidence_radius = 0.0;  // 3 sqrt(p (1 - p) / N)
  double mean_output_fidelity = 0.0;
};

/// Runs `trials` independent trials. Trial i draws from Rng::for_trial(seed, i),
/// and reductions run in trial order, so the report does not depend on
/// `threads` (0 = hardware concurrency).
MonteCarloReport run_monte_carlo(const CircuitParams& params, const SignalState& input,
                                 std::uint64_t trials, std::uint64_t seed, unsigned threads = 0);

}  // namespace kerrsim
