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

#include "kerrsim/homodyne.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "kerrsim/error.hpp"
#include "oracles/oracles.hpp"
#include "test_support.hpp"

namespace kerrsim {
namespace {

const double kH = std::sqrt(0.5);

SignalState uniform(int n, Backend b = Backend::kDense) { return make_product_state(n, kH, kH, b); }

TEST(GaussianAmplitude, PeakValue) {
  // (2 pi)^{-1/4} from a 40-digit evaluation.
  EXPECT_NEAR(gaussian_amplitude(3.0, 3.0), 0.6316187777460647, 1e-16);
  EXPECT_NEAR(gaussian_amplitude(5.0, 3.0), 0.6316187777460647 * std::exp(-1.0), 1e-16);
  EXPECT_NEAR(gaussian_amplitude(1.0, 3.0), 0.6316187777460647 * std::exp(-1.0), 1e-16);
}

TEST(GaussianAmplitude, SquareIntegratesToOne) {
  const long double integral = oracle::integrate_panels(
      [](long double x) {
        const double f = gaussian_amplitude(static_cast<double>(x), 7.5);
        return static_cast<long double>(f) * f;
      },
      -12.5L, 27.5L, 1e-14L);
  EXPECT_NEAR(static_cast<double>(integral), 1.0, 1e-12);
}

TEST(PhasePhi, Examples) {
  const CircuitParams p(4, 1e4, 0.01);
  EXPECT_EQ(phase_phi(p, TwiceIndex(0), 123.0), 0.0);
  const double peak = 2 * 1e4 * std::cos(0.02);
  EXPECT_NEAR(phase_phi(p, TwiceIndex(4), peak), 0.0, 1e-9);
  // alpha sin(0.01) mod 2 pi; 40-digit value 5.750553733972849671...
  EXPECT_NEAR(phase_phi(p, TwiceIndex(2), 2 * 1e4 * std::cos(0.01) + 1.0), 5.750553733972850, 1e-9);
  EXPECT_THROW(phase_phi(p, TwiceIndex(-2), 0.0), Error);
}

TEST(PhasePhi, RangeAndHalfIndex) {
  const CircuitParams p(5, 1e4, 0.01);
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> x_dist(19000, 20100);
  for (int i = 0; i < 1000; ++i) {
    const double x = x_dist(gen);
    for (std::int64_t t = 1; t <= 5; t += 2) {
      const double v = phase_phi(p, TwiceIndex(t), x);
      EXPECT_GE(v, 0.0);
      EXPECT_LT(v, 2 * std::numbers::pi);
      const double raw = 1e4 * std::sin(t * 0.005) * (x - 2e4 * std::cos(t * 0.005));
      EXPECT_NEAR(std::remainder(v - raw, 2 * std::numbers::pi), 0.0, 1e-9);
    }
  }
}

TEST(MarginalPdf, SingleClassIsNormalDensity) {
  const CircuitParams p(2, 1e4, 0.01);
  const JointState j = kerr_evolve(p, make_product_state(2, 1.0, 0.0, Backend::kDense));
  const double center = 2e4 * std::cos(0.01);
  for (double d : {-3.0, -0.5, 0.0, 1.2, 4.0}) {
    EXPECT_NEAR(marginal_pdf(j, center + d), std::exp(-d * d / 2) / std::sqrt(2 * std::numbers::pi), 1e-11);
  }
}

TEST(MarginalPdf, DegenerateMixtureAtCommonCenter) {
  const CircuitParams p(2, 1.0, 1e-9);
  const JointState j = kerr_evolve(p, uniform(2));
  EXPECT_NEAR(marginal_pdf(j, 2.0), 1.0 / std::sqrt(2 * std::numbers::pi), 1e-15);
}

TEST(MarginalPdf, IntegratesToOne) {
  for (int n = 2; n <= 6; ++n) {
    const CircuitParams p(n, 1e4, 0.01);
    const JointState j = kerr_evolve(p, uniform(n));
    const auto span = peak_span(j, 10.0);
    const long double integral = oracle::integrate_panels(
        [&](long double x) { return static_cast<long double>(marginal_pdf(j, static_cast<double>(x))); },
        span.lower, span.upper, 1e-13L);
    EXPECT_NEAR(static_cast<double>(integral), 1.0, 1e-8) << n;
  }
}

TEST(MarginalPdf, FarTailUsesLogSpace) {
  const CircuitParams p(4, 1e4, 0.01);
  const JointState j = kerr_evolve(p, uniform(4));
  const double x = j.peak(2) + 35.0;  // 35 sigma above the highest peak
  const double pdf = marginal_pdf(j, x);
  EXPECT_GT(pdf, 0.0);
  EXPECT_NEAR(std::log(pdf), log_marginal_pdf(j, x), 1e-9);
  // Dominated by the balanced class: log(6/16) - log sqrt(2 pi) - 35^2/2.
  EXPECT_NEAR(log_marginal_pdf(j, x), std::log(6.0 / 16) - 0.5 * std::log(2 * std::numbers::pi) - 612.5, 1e-9);
  EXPECT_EQ(marginal_pdf(j, j.peak(2) + 45.0), 0.0);  // below the smallest double
  EXPECT_TRUE(std::isfinite(log_marginal_pdf(j, j.peak(2) + 45.0)));
}

TEST(SampleX, SingleClassMoments) {
  const CircuitParams p(2, 1e4, 0.01);
  const JointState j = kerr_evolve(p, make_product_state(2, 1.0, 0.0, Backend::kDense));
  Rng rng(2024);
  constexpr int kN = 1'000'000;
  std::vector<double> xs(kN);
  double mean = 0.0;
  for (double& x : xs) {
    x = sample_x(j, rng);
    mean += x;
  }
  mean /= kN;
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= kN - 1;
  const double center = 2e4 * std::cos(0.01);
  EXPECT_NEAR(mean, center, 3e-3);
  EXPECT_NEAR(var, 1.0, 0.005);

  // Kolmogorov-Smirnov distance to the exact normal CDF.
  std::sort(xs.begin(), xs.end());
  double ks = 0.0;
  for (int i = 0; i < kN; ++i) {
    const double cdf = 0.5 * std::erfc(-(xs[i] - center) / std::sqrt(2.0));
    ks = std::max({ks, std::abs(cdf - static_cast<double>(i) / kN),
                   std::abs(cdf - static_cast<double>(i + 1) / kN)});
  }
  EXPECT_LE(ks, 2.0 / std::sqrt(static_cast<double>(kN)));
}

TEST(SampleX, VarianceIndependentOfAlpha) {
  for (double alpha : {1.0, 1e3, 1e7}) {
    const JointState j = kerr_evolve(CircuitParams(2, alpha, 0.01), dicke_state(2, 2));
    Rng rng(9);
    double sum = 0.0;
    double sum2 = 0.0;
    constexpr int kN = 200'000;
    for (int i = 0; i < kN; ++i) {
      const double d = sample_x(j, rng) - j.peak(2);
      sum += d;
      sum2 += d * d;
    }
    EXPECT_NEAR(sum2 / kN - (sum / kN) * (sum / kN), 1.0, 0.01) << alpha;
  }
}

TEST(SampleX, MixtureWeightsFollowProbabilities) {
  const JointState j = kerr_evolve(CircuitParams(4, 1e4, 0.01), uniform(4, Backend::kSymmetric));
  Rng rng(77);
  std::vector<int> counts(5, 0);
  constexpr int kN = 400'000;
  for (int i = 0; i < kN; ++i) ++counts[sample_measurement(j, rng).weight];
  const double expected[] = {1, 4, 6, 4, 1};
  for (int w = 0; w <= 4; ++w) {
    const double p = expected[w] / 16;
    EXPECT_NEAR(counts[w] / static_cast<double>(kN), p, 4 * std::sqrt(p * (1 - p) / kN));
  }
}

TEST(Collapse, SingleClassUnchanged) {
  const CircuitParams p(3, 1e4, 0.01);
  const SignalState input = testing::dense_of(dicke_state(3, 1));
  const JointState j = kerr_evolve(p, input);
  const SignalState out = collapse(j, j.peak(1) + 0.7);
  EXPECT_NEAR(fidelity(out, input), 1.0, 1e-14);
}

TEST(Collapse, LargeSeparationProjectsOntoBalancedClass) {
  const CircuitParams p(2, 1e6, 0.01);  // alpha theta^2 = 100
  const JointState j = kerr_evolve(p, uniform(2));
  EXPECT_GE(fidelity(collapse(j, j.peak(1)), dicke_state(2, 1)), 1.0 - 1e-9);
}

TEST(Collapse, MatchesGaussianCombWithSignedPhases) {
  // Away from the peak so phi_1 is non-trivial; the w=2 term carries
  // e^{+i phi_1}, the w=0 term e^{-i phi_1}.
  const double alpha = 1e4;
  const double theta = 0.01;
  for (int n : {2, 3, 4, 5, 6}) {
    const CircuitParams p(n, alpha, theta);
    const JointState j = kerr_evolve(p, uniform(n));
    for (double x : {2 * alpha * std::cos(theta) + 0.3, 2 * alpha - 0.4, 2 * alpha * std::cos(1.5 * theta)}) {
      const SignalState collapsed = collapse(j, x);
      const auto& out = std::get<DenseSignalState>(collapsed);
      const oracle::Amplitudes brute =
          oracle::collapse(oracle::product_state(n, kH, kH), n, alpha, theta, x);
      for (std::size_t s = 0; s < out.size(); ++s) {
        EXPECT_NEAR(std::abs(out.amplitude(s) - Complex(brute[s])), 0.0, 1e-9) << n << " " << s;
      }
    }
  }
  const CircuitParams p(2, alpha, theta);
  const JointState j = kerr_evolve(p, uniform(2));
  const double x = 2 * alpha * std::cos(theta) + 0.3;
  const SignalState collapsed = collapse(j, x);
  const auto& out = std::get<DenseSignalState>(collapsed);
  const double phi1 = alpha * std::sin(theta) * 0.3;
  EXPECT_NEAR(std::remainder(std::arg(out.amplitude(0b11)) - phi1, 2 * std::numbers::pi), 0.0, 1e-9);
  EXPECT_NEAR(std::remainder(std::arg(out.amplitude(0b00)) + phi1, 2 * std::numbers::pi), 0.0, 1e-9);
}

TEST(Collapse, PreservesRelativeMagnitudesWithinClass) {
  std::mt19937_64 gen(8);
  std::normal_distribution<double> normal;
  const int n = 6;
  const CircuitParams p(n, 1e4, 0.01);
  std::vector<Complex> a(std::size_t{1} << n);
  for (auto& v : a) v = {normal(gen), normal(gen)};
  const SignalState input = normalize(DenseSignalState(n, a));
  const JointState j = kerr_evolve(p, input);
  for (double x : {19999.0, 19998.1, 19996.4}) {
    const SignalState collapsed = collapse(j, x);
    const auto& out = std::get<DenseSignalState>(collapsed);
    const auto& in = std::get<DenseSignalState>(input);
    std::vector<Complex> ratio(n + 1);
    std::vector<bool> seen(n + 1, false);
    for (std::size_t s = 0; s < out.size(); ++s) {
      const int w = std::popcount(s);
      const Complex r = out.amplitude(s) / in.amplitude(s);
      if (!seen[w]) {
        ratio[w] = r;
        seen[w] = true;
      }
      EXPECT_NEAR(std::abs(r - ratio[w]), 0.0, 1e-9 * std::abs(ratio[w]));
    }
  }
}

TEST(Collapse, ImpossibleOutcome) {
  const JointState j = kerr_evolve(CircuitParams(2, 1e4, 0.01), uniform(2));
  try {
    (void)collapse(j, 1e6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kImpossibleOutcome);
  }
  // 40 sigma from every peak is unlikely but representable.
  EXPECT_NO_THROW(collapse(j, j.peak(0) - 40.0));
}

TEST(Midpoint, Examples) {
  const CircuitParams p(4, 1e4, 0.01);
  // 40-digit reference 19999.50000416665277...
  EXPECT_NEAR(midpoint(p, TwiceIndex(2)), 19999.50000416665, 19999.5 * 1e-14);
  EXPECT_NEAR(midpoint(CircuitParams(4, 1e4, 1e-9), TwiceIndex(2)), 2e4, 1e-8);
  for (std::int64_t t = 2; t <= 4; t += 2) {
    const double k = t / 2.0;
    const double sum_form = 1e4 * (std::cos((k - 1) * 0.01) + std::cos(k * 0.01));
    EXPECT_NEAR(midpoint(p, TwiceIndex(t)), sum_form, 1e-12 * sum_form);
  }
}

TEST(Midpoint, IndexAndDomain) {
  EXPECT_THROW(midpoint(CircuitParams(4, 1e4, 0.01), TwiceIndex(0)), Error);
  EXPECT_THROW(midpoint(CircuitParams(4, 1e4, 0.01), TwiceIndex(3)), Error);
  EXPECT_THROW(midpoint(CircuitParams(5, 1e4, 0.01), TwiceIndex(1)), Error);
  EXPECT_THROW(midpoint(CircuitParams(4, 1e4, 0.01), TwiceIndex(6)), Error);
  EXPECT_NO_THROW(midpoint(CircuitParams(5, 1e4, 0.01), TwiceIndex(3)));
  try {
    (void)midpoint(CircuitParams(12, 1e4, 0.3), TwiceIndex(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDomain);
  }
}

TEST(Midpoint, StrictlyDecreasing) {
  for (double theta : {1e-4, 0.01, 0.1, 0.3}) {
    const int n_max = static_cast<int>(std::floor(std::numbers::pi / 2 / theta));
    for (int n : {2, 3, 4, 5, std::min(n_max, 40), n_max}) {
      if (n < 2) continue;
      const CircuitParams p(n, 1e4, theta);
      for (std::int64_t t = n % 2 == 0 ? 2 : 3; t + 2 <= n; t += 2) {
        EXPECT_LT(midpoint(p, TwiceIndex(t + 2)), midpoint(p, TwiceIndex(t)));
      }
    }
  }
}

TEST(Gap, Examples) {
  const CircuitParams p(4, 1e4, 0.01);
  // 4 alpha sin^2(theta/2), 40-digit reference 0.99999166669444439...
  EXPECT_NEAR(gap(p, TwiceIndex(2)), 0.9999916666944444, 1e-14);
  for (std::int64_t t = 2; t <= 4; t += 2) {
    const double k = t / 2.0;
    const double half_gap = midpoint(p, TwiceIndex(t)) - 2e4 * std::cos(k * 0.01);
    EXPECT_NEAR(half_gap, gap(p, TwiceIndex(t)) / 2, 1e-10 * gap(p, TwiceIndex(t)) + 1e-11);
  }
  EXPECT_LT(gap(CircuitParams(4, 1e4, 1e-9), TwiceIndex(2)), 1e-13);
}

TEST(Classify, Examples) {
  const CircuitParams p(4, 1e4, 0.01);
  EXPECT_EQ(classify(p, 2e4), TwiceIndex(0));
  EXPECT_EQ(classify(p, -1e5), TwiceIndex(4));
  EXPECT_EQ(classify(p, 2e4 * std::cos(0.01)), TwiceIndex(2));
  EXPECT_EQ(classify(CircuitParams(5, 1e4, 0.01), -1e5), TwiceIndex(5));
  EXPECT_EQ(classify(CircuitParams(5, 1e4, 0.01), 2e4), TwiceIndex(1));
}

TEST(Classify, TieGoesToLargerIndex) {
  for (int n : {4, 7, 10}) {
    const CircuitParams p(n, 1e4, 0.01);
    for (std::int64_t t = n % 2 == 0 ? 2 : 3; t <= n; t += 2) {
      const double m = midpoint(p, TwiceIndex(t));
      EXPECT_EQ(classify(p, m), TwiceIndex(t));
      EXPECT_EQ(classify(p, std::nextafter(m, 1e9)), TwiceIndex(t - 2));
    }
  }
}

TEST(Classify, DistinctOutcomeCount) {
  for (int n = 2; n <= 12; ++n) {
    const CircuitParams p(n, 1e4, 0.01);
    std::set<std::int64_t> seen;
    for (double x = 2e4 * std::cos(n * 0.01) - 20; x <= 2e4 + 20; x += 0.01) {
      const TwiceIndex t = classify(p, x);
      EXPECT_TRUE(is_outcome_index(n, t));
      seen.insert(t.twice());
    }
    EXPECT_EQ(static_cast<int>(seen.size()), n % 2 == 0 ? n / 2 + 1 : (n + 1) / 2) << n;
  }
}

TEST(Classify, AgreesWithOutcomeInterval) {
  const CircuitParams p(9, 1e3, 0.05);
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> x_dist(1800, 2010);
  for (int i = 0; i < 10000; ++i) {
    const double x = x_dist(gen);
    const TwiceIndex t = classify(p, x);
    const OutcomeInterval iv = outcome_interval(p, t);
    EXPECT_GT(x, iv.lower);
    EXPECT_LE(x, iv.upper);
  }
}

TEST(Classify, RequiresOrderedPeaks) {
  EXPECT_THROW(classify(CircuitParams(20, 1e4, 0.1), 0.0), Error);
}

TEST(DistributionTable, GridAndDegenerateGrid) {
  const JointState j = kerr_evolve(CircuitParams(4, 1e4, 0.01), uniform(4));
  const auto rows = distribution_table(j, 19990.0, 20010.0, 11);
  ASSERT_EQ(rows.size(), 11u);
  EXPECT_EQ(rows.front().x, 19990.0);
  EXPECT_EQ(rows.back().x, 20010.0);
  EXPECT_THROW(distribution_table(j, 1.0, 1.0, 10), Error);
  EXPECT_THROW(distribution_table(j, 0.0, 1.0, 1), Error);
}

TEST(Measure, RecordIsConsistent) {
  const JointState j = kerr_evolve(CircuitParams(6, 1e4, 0.01), uniform(6, Backend::kSymmetric));
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const MeasurementRecord r = measure(j, rng);
    EXPECT_EQ(r.outcome, classify(j.params(), r.x));
    EXPECT_NEAR(norm_squared(r.conditional), 1.0, 1e-10);
    EXPECT_TRUE(is_outcome_index(6, r.outcome));
  }
}

}  // namespace
}  // namespace kerrsim
