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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "kerrsim/error.hpp"
#include "kerrsim/summation.hpp"

namespace kerrsim {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// log((2 pi)^{-1/4}) and log((2 pi)^{-1/2}).
const double kLogAmplitudeNorm = -0.25 * std::log(kTwoPi);
const double kLogDensityNorm = -0.5 * std::log(kTwoPi);
// Beyond this many standard deviations densities are accumulated in log space.
constexpr double kLogSpaceDistance = 30.0;
const double kLogImpossibleNorm = std::log(1e-300);

double reduce_angle(double phase) {
  double r = std::fmod(phase, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r >= kTwoPi ? 0.0 : r;
}

void require_ordered(const CircuitParams& params) {
  if (!params.peaks_ordered()) {
    fail(ErrorKind::kDomain, "n*theta = " + std::to_string(params.photons() * params.theta()) +
                                 " exceeds pi/2; homodyne peaks are not ordered");
  }
}

void check_midpoint_index(const CircuitParams& params, TwiceIndex t) {
  const int n = params.photons();
  const std::int64_t lowest = n % 2 == 0 ? 2 : 3;
  if ((t.twice() - n) % 2 != 0) {
    fail(ErrorKind::kParity, "k=" + t.to_string() + " has the wrong parity for n=" + std::to_string(n));
  }
  if (t.twice() < lowest || t.twice() > n) {
    fail(ErrorKind::kIndex, "midpoint index k=" + t.to_string() + " outside its range for n=" +
                                std::to_string(n));
  }
  require_ordered(params);
}

double log_sum_exp(const std::vector<double>& terms) {
  double top = -std::numeric_limits<double>::infinity();
  for (double t : terms) top = std::max(top, t);
  if (!std::isfinite(top)) return top;
  CompensatedSum sum;
  for (double t : terms) sum += std::exp(t - top);
  return top + std::log(sum.value());
}

}  // namespace

double gaussian_amplitude(double x, double peak) {
  const double d = x - peak;
  return std::exp(kLogAmplitudeNorm - 0.25 * d * d);
}

double phase_phi(const CircuitParams& params, TwiceIndex t, double x) {
  if (t.twice() < 0) fail(ErrorKind::kIndex, "phase index must be non-negative");
  const double m_theta = t.k() * params.theta();
  const double alpha = params.alpha();
  return reduce_angle(alpha * std::sin(m_theta) * (x - 2.0 * alpha * std::cos(m_theta)));
}

double log_marginal_pdf(const JointState& joint, double x) {
  const auto peaks = joint.peaks();
  std::vector<double> terms;
  terms.reserve(peaks.size());
  for (std::size_t w = 0; w < peaks.size(); ++w) {
    const double p = joint.weights().probabilities[w];
    if (p <= 0.0) continue;
    const double d = x - peaks[w];
    terms.push_back(std::log(p) + kLogDensityNorm - 0.5 * d * d);
  }
  return log_sum_exp(terms);
}

double marginal_pdf(const JointState& joint, double x) {
  const auto peaks = joint.peaks();
  CompensatedSum sum;
  for (std::size_t w = 0; w < peaks.size(); ++w) {
    const double p = joint.weights().probabilities[w];
    if (p <= 0.0) continue;
    const double d = x - peaks[w];
    if (std::abs(d) > kLogSpaceDistance) return std::exp(log_marginal_pdf(joint, x));
    sum += p * std::exp(kLogDensityNorm - 0.5 * d * d);
  }
  return sum.value();
}

HomodyneSample sample_measurement(const JointState& joint, Rng& rng) {
  const auto cumulative = joint.cumulative_weights();
  const double u = rng.uniform();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  if (it == cumulative.end()) --it;
  const int w = static_cast<int>(it - cumulative.begin());
  return {joint.peak(w) + rng.normal(), w};
}

double sample_x(const JointState& joint, Rng& rng) { return sample_measurement(joint, rng).x; }

SignalState collapse(const JointState& joint, double x) {
  const auto peaks = joint.peaks();
  const auto slopes = joint.phase_slopes();
  const auto& probs = joint.weights().probabilities;
  const std::size_t size = peaks.size();

  // log f(x, peak_w) per class, and log of the class norm^2 after scaling.
  std::vector<double> log_amp(size, -std::numeric_limits<double>::infinity());
  std::vector<double> log_mass;
  log_mass.reserve(size);
  for (std::size_t w = 0; w < size; ++w) {
    if (probs[w] <= 0.0) continue;
    const double d = x - peaks[w];
    log_amp[w] = kLogAmplitudeNorm - 0.25 * d * d;
    log_mass.push_back(std::log(probs[w]) + 2.0 * log_amp[w]);
  }
  const double log_norm2 = log_sum_exp(log_mass);
  if (!(0.5 * log_norm2 >= kLogImpossibleNorm)) {
    fail(ErrorKind::kImpossibleOutcome,
         "x = " + std::to_string(x) + " lies astronomically far from every homodyne peak");
  }
  const double log_scale = -0.5 * log_norm2;
  std::vector<Complex> factors(size, Complex{});
  for (std::size_t w = 0; w < size; ++w) {
    if (probs[w] <= 0.0) continue;
    const double phase = slopes[w] * (x - peaks[w]);
    factors[w] = std::polar(std::exp(log_amp[w] + log_scale), phase);
  }
  return normalize(scale_weight_classes(joint.signal(), factors));
}

double midpoint(const CircuitParams& params, TwiceIndex t) {
  check_midpoint_index(params, t);
  const double theta = params.theta();
  return 2.0 * params.alpha() * std::cos(0.5 * theta) *
         std::cos(0.5 * static_cast<double>(t.twice() - 1) * theta);
}

double gap(const CircuitParams& params, TwiceIndex t) {
  check_midpoint_index(params, t);
  const double theta = params.theta();
  return 4.0 * params.alpha() * std::sin(0.5 * static_cast<double>(t.twice() - 1) * theta) *
         std::sin(0.5 * theta);
}

TwiceIndex classify(const CircuitParams& params, double x) {
  require_ordered(params);
  const int n = params.photons();
  const std::int64_t first = n % 2;
  const std::int64_t lowest_mid = first + 2;
  // Midpoints for t = lowest_mid, lowest_mid + 2, ..., n decrease; count the
  // prefix with x <= midpoint by bisection.
  std::int64_t lo = 0;
  std::int64_t hi = (n - first) / 2;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (x <= midpoint(params, TwiceIndex(lowest_mid + 2 * mid))) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return TwiceIndex(first + 2 * lo);
}

std::vector<TwiceIndex> outcome_indices(int n) {
  std::vector<TwiceIndex> out;
  for (std::int64_t t = n % 2; t <= n; t += 2) out.emplace_back(t);
  return out;
}

OutcomeInterval outcome_interval(const CircuitParams& params, TwiceIndex t) {
  const int n = params.photons();
  if (!is_outcome_index(n, t)) {
    fail(ErrorKind::kIndex, "k=" + t.to_string() + " is not an outcome for n=" + std::to_string(n));
  }
  require_ordered(params);
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double upper = t.twice() == n % 2 ? inf : midpoint(params, t);
  const double lower = t.twice() == n ? -inf : midpoint(params, TwiceIndex(t.twice() + 2));
  return {lower, upper};
}

std::vector<DistributionRow> distribution_table(const JointState& joint, double xmin, double xmax,
                                                int points) {
  if (points < 2 || !std::isfinite(xmin) || !std::isfinite(xmax) || !(xmin < xmax)) {
    fail(ErrorKind::kDomain, "distribution grid needs finite xmin < xmax and at least 2 points");
  }
  std::vector<DistributionRow> rows;
  rows.reserve(static_cast<std::size_t>(points));
  const double step = (xmax - xmin) / (points - 1);
  for (int i = 0; i < points; ++i) {
    const double x = i == points - 1 ? xmax : xmin + i * step;
    rows.push_back({x, marginal_pdf(joint, x), classify(joint.params(), x)});
  }
  return rows;
}

OutcomeInterval peak_span(const JointState& joint, double margin) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t w = 0; w < joint.peaks().size(); ++w) {
    if (joint.weights().probabilities[w] <= 0.0) continue;
    lo = std::min(lo, joint.peaks()[w]);
    hi = std::max(hi, joint.peaks()[w]);
  }
  return {lo - margin, hi + margin};
}

MeasurementRecord measure(const JointState& joint, Rng& rng) {
  const HomodyneSample sample = sample_measurement(joint, rng);
  return {sample.x, classify(joint.params(), sample.x), sample.weight, collapse(joint, sample.x)};
}

}  // namespace kerrsim
