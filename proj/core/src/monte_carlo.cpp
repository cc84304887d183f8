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

#include "kerrsim/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "kerrsim/error.hpp"
#include "kerrsim/feedforward.hpp"
#include "kerrsim/homodyne.hpp"
#include "kerrsim/summation.hpp"

namespace kerrsim {

TrialPipeline::TrialPipeline(const CircuitParams& params, const SignalState& input)
    : joint_(kerr_evolve(params, input)) {
  for (TwiceIndex t : outcome_indices(params.photons())) {
    try {
      ideals_.emplace_back(ideal_output(input, t));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kEmptyOutcome) throw;
      ideals_.emplace_back(std::nullopt);
    }
  }
}

TrialResult TrialPipeline::run(Rng& rng) const {
  const CircuitParams& params = joint_.params();
  const int n = params.photons();
  const MeasurementRecord record = measure(joint_, rng);
  const CorrectedOutput corrected =
      apply_correction_unchecked(record.conditional, params, record.outcome, record.x);
  const auto slot = static_cast<std::size_t>((record.outcome.twice() - n % 2) / 2);
  const double f = ideals_[slot]
                       ? fidelity(corrected.state, *ideals_[slot])
                       : fidelity(corrected.state,
                                  heralded_target(input(), record.conditional, record.outcome));
  return {record.x, record.sampled_weight, TwiceIndex(std::abs(2 * record.sampled_weight - n)),
          record.outcome, f};
}

MonteCarloReport run_monte_carlo(const CircuitParams& params, const SignalState& input,
                                 std::uint64_t trials, std::uint64_t seed, unsigned threads) {
  if (trials < 1) fail(ErrorKind::kDomain, "Monte Carlo needs at least one trial");
  const TrialPipeline pipeline(params, input);
  const int n = params.photons();

  std::vector<std::int32_t> outcome_slot(trials);
  std::vector<std::uint8_t> wrong(trials);
  std::vector<double> fidelities(trials);

  auto work = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      Rng rng = Rng::for_trial(seed, i);
      const TrialResult r = pipeline.run(rng);
      outcome_slot[i] = static_cast<std::int32_t>((r.outcome.twice() - n % 2) / 2);
      wrong[i] = r.misclassified() ? 1 : 0;
      fidelities[i] = r.fidelity;
    }
  };

  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));
  if (workers <= 1) {
    work(0, trials);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::uint64_t chunk = (trials + workers - 1) / workers;
    for (unsigned k = 0; k < workers; ++k) {
      const std::uint64_t begin = std::min<std::uint64_t>(trials, k * chunk);
      const std::uint64_t end = std::min<std::uint64_t>(trials, begin + chunk);
      pool.emplace_back([&, k, begin, end] {
        try {
          work(begin, end);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      });
    }
    for (auto& thread : pool) thread.join();
    for (const auto& error : errors) {
      if (error) std::rethrow_exception(error);
    }
  }

  MonteCarloReport report;
  report.trials = trials;
  report.seed = seed;
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(outcome_count(n)), 0);
  CompensatedSum fidelity_sum;
  for (std::uint64_t i = 0; i < trials; ++i) {
    ++counts[static_cast<std::size_t>(outcome_slot[i])];
    report.misclassified += wrong[i];
    fidelity_sum += fidelities[i];
  }
  for (std::size_t s = 0; s < counts.size(); ++s) {
    report.per_outcome_counts.push_back(
        {TwiceIndex(static_cast<std::int64_t>(n % 2 + 2 * s)), counts[s]});
  }
  const double total = static_cast<double>(trials);
  report.misclassification = static_cast<double>(report.misclassified) / total;
  const double p = report.misclassification;
  report.confidence_radius = 3.0 * std::sqrt(p * (1.0 - p) / total);
  report.mean_output_fidelity = fidelity_sum.value() / total;
  return report;
}

}  // namespace kerrsim
