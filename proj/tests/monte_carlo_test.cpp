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

#include <gtest/gtest.h>

#include <cmath>

#include "kerrsim/analysis.hpp"
#include "kerrsim/homodyne.hpp"

namespace kerrsim {
namespace {

const double kH = std::sqrt(0.5);

void expect_identical(const MonteCarloReport& a, const MonteCarloReport& b) {
  ASSERT_EQ(a.per_outcome_counts.size(), b.per_outcome_counts.size());
  for (std::size_t i = 0; i < a.per_outcome_counts.size(); ++i) {
    EXPECT_EQ(a.per_outcome_counts[i].t, b.per_outcome_counts[i].t);
    EXPECT_EQ(a.per_outcome_counts[i].count, b.per_outcome_counts[i].count);
  }
  EXPECT_EQ(a.misclassified, b.misclassified);
  EXPECT_EQ(a.mean_output_fidelity, b.mean_output_fidelity);
}

TEST(Rng, SubstreamsAreReproducibleAndDistinct) {
  Rng a = Rng::for_trial(7, 3);
  Rng b = Rng::for_trial(7, 3);
  Rng c = Rng::for_trial(7, 4);
  Rng d = Rng::for_trial(8, 3);
  const std::uint64_t first = a.next_u64();
  EXPECT_EQ(first, b.next_u64());
  EXPECT_NE(first, c.next_u64());
  EXPECT_NE(first, d.next_u64());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(MonteCarlo, Deterministic) {
  const CircuitParams p(4, 1e4, 0.01);
  const SignalState in = make_product_state(4, kH, kH, Backend::kDense);
  expect_identical(run_monte_carlo(p, in, 2000, 42, 1), run_monte_carlo(p, in, 2000, 42, 1));
  EXPECT_NE(run_monte_carlo(p, in, 2000, 42, 1).mean_output_fidelity,
            run_monte_carlo(p, in, 2000, 43, 1).mean_output_fidelity);
}

TEST(MonteCarlo, ThreadCountDoesNotChangeResults) {
  const CircuitParams p(6, 1e4, 0.01);
  const SignalState in = make_product_state(6, 0.6, 0.8, Backend::kSymmetric);
  const MonteCarloReport one = run_monte_carlo(p, in, 3000, 5, 1);
  expect_identical(one, run_monte_carlo(p, in, 3000, 5, 3));
  expect_identical(one, run_monte_carlo(p, in, 3000, 5, 8));
}

TEST(MonteCarlo, BackendsGiveIdenticalCounts) {
  const CircuitParams p(5, 1e4, 0.01);
  const MonteCarloReport dense = run_monte_carlo(p, make_product_state(5, kH, kH, Backend::kDense), 2000, 11, 1);
  const MonteCarloReport sym =
      run_monte_carlo(p, make_product_state(5, kH, kH, Backend::kSymmetric), 2000, 11, 1);
  ASSERT_EQ(dense.per_outcome_counts.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(dense.per_outcome_counts[i].count, sym.per_outcome_counts[i].count);
  }
  EXPECT_NEAR(dense.mean_output_fidelity, sym.mean_output_fidelity, 1e-10);
}

TEST(MonteCarlo, SingleClassErrorRate) {
  const CircuitParams p(2, 2e4, 0.01);  // alpha theta^2 = 2
  const SignalState in = make_product_state(2, 1.0, 0.0, Backend::kDense);
  const MonteCarloReport r = run_monte_carlo(p, in, 100000, 2024);
  EXPECT_EQ(r.trials, 100000u);
  const double eps = error_prob(p, TwiceIndex(2));
  EXPECT_LE(std::abs(r.misclassification - eps), r.confidence_radius);
  EXPECT_NEAR(r.confidence_radius, 3 * std::sqrt(r.misclassification * (1 - r.misclassification) / 1e5), 1e-15);
  std::uint64_t total = 0;
  for (const auto& c : r.per_outcome_counts) total += c.count;
  EXPECT_EQ(total, r.trials);
}

TEST(MonteCarlo, FidelityAtLargeSeparation) {
  const CircuitParams p(4, 8e4, 0.01);  // alpha theta^2 = 8
  const MonteCarloReport r = run_monte_carlo(p, make_product_state(4, kH, kH, Backend::kDense), 20000, 3);
  EXPECT_GE(r.mean_output_fidelity, 0.999);
  EXPECT_LE(r.mean_output_fidelity, 1.0 + 1e-12);
}

TEST(TrialPipeline, ResultFields) {
  const CircuitParams p(6, 1e4, 0.01);
  const TrialPipeline pipeline(p, make_product_state(6, kH, kH, Backend::kSymmetric));
  Rng rng = Rng::for_trial(1, 0);
  for (int i = 0; i < 200; ++i) {
    const TrialResult r = pipeline.run(rng);
    EXPECT_EQ(r.outcome, classify(p, r.x));
    EXPECT_EQ(r.true_outcome.twice(), std::abs(2 * r.sampled_weight - 6));
    EXPECT_GE(r.fidelity, 0.0);
    EXPECT_LE(r.fidelity, 1.0);
  }
}

}  // namespace
}  // namespace kerrsim
