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

#include "kerrsim/feedforward.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kerrsim/error.hpp"

namespace kerrsim {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_angle(double phase) {
  double r = std::fmod(phase, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r >= kTwoPi ? 0.0 : r;
}

Complex largest_amplitude(const SignalState& state) {
  auto pick = [](std::span<const Complex> amps) {
    Complex best{};
    double best_norm = -1.0;
    for (const Complex& a : amps) {
      const double m = std::norm(a);
      if (m > best_norm) {
        best_norm = m;
        best = a;
      }
    }
    return best;
  };
  if (const auto* dense = std::get_if<DenseSignalState>(&state)) return pick(dense->amplitudes());
  return pick(std::get<SymmetricSignalState>(state).weight_amplitudes());
}

}  // namespace

double correction_phase(const CircuitParams& params, TwiceIndex t, double x) {
  if (t.twice() < 1) fail(ErrorKind::kIndex, "no feed-forward correction for k = 0");
  const double k = t.k();
  const double alpha = params.alpha();
  const double k_theta = k * params.theta();
  return reduce_angle(alpha * std::sin(k_theta) * (x - 2.0 * alpha * std::cos(k_theta)) / k);
}

CorrectedOutput apply_correction_unchecked(const SignalState& state, const CircuitParams& params,
                                           TwiceIndex t, double x) {
  const int n = photons(state);
  if (n != params.photons()) fail(ErrorKind::kDimension, "state and circuit disagree on n");
  if (!is_outcome_index(n, t)) {
    fail(ErrorKind::kIndex, "k=" + t.to_string() + " is not an outcome for n=" + std::to_string(n));
  }
  std::vector<Complex> factors(static_cast<std::size_t>(n) + 1, Complex{1.0, 0.0});
  if (t.twice() > 0) {
    // exp(-i w phi) up to the global phase exp(i n phi / 2), written so the
    // two target classes get exactly exp(-+i phi_k) before any reduction.
    const double k_theta = t.k() * params.theta();
    const double raw = params.alpha() * std::sin(k_theta) * (x - 2.0 * params.alpha() * std::cos(k_theta));
    const auto twice = static_cast<double>(t.twice());
    for (int w = 0; w <= n; ++w) {
      factors[static_cast<std::size_t>(w)] = std::polar(1.0, -(static_cast<double>(2 * w - n) / twice) * raw);
    }
  }
  SignalState corrected = scale_weight_classes(state, factors);
  const double global = reduce_angle(std::arg(largest_amplitude(corrected)));
  const Complex unwind = std::polar(1.0, -global);
  std::vector<Complex> rotation(factors.size(), unwind);
  return {normalize(scale_weight_classes(corrected, rotation)), t, global};
}

CorrectedOutput apply_correction(const SignalState& state, const CircuitParams& params,
                                 TwiceIndex t, double x) {
  const TwiceIndex expected = classify(params, x);
  if (expected != t) {
    fail(ErrorKind::kMisrouting, "outcome k=" + t.to_string() + " does not match x=" +
                                     std::to_string(x) + ", which classifies as k=" +
                                     expected.to_string());
  }
  return apply_correction_unchecked(state, params, t, x);
}

SignalState ideal_output(const SignalState& input, TwiceIndex t) {
  const int n = photons(input);
  if (t.twice() < 0 || t.twice() > n) {
    fail(ErrorKind::kIndex, "k=" + t.to_string() + " outside [0, n/2] for n=" + std::to_string(n));
  }
  if ((t.twice() - n) % 2 != 0) {
    fail(ErrorKind::kParity, "k=" + t.to_string() + " has the wrong parity for n=" + std::to_string(n));
  }
  std::vector<Complex> mask(static_cast<std::size_t>(n) + 1, Complex{});
  mask[static_cast<std::size_t>((n - t.twice()) / 2)] = 1.0;
  mask[static_cast<std::size_t>((n + t.twice()) / 2)] = 1.0;
  SignalState projected = scale_weight_classes(input, mask);
  if (!(norm_squared(projected) > 0.0)) {
    fail(ErrorKind::kEmptyOutcome,
         "input has no support on the weight classes of k=" + t.to_string());
  }
  return normalize(projected);
}

SignalState heralded_target(const SignalState& input, const SignalState& conditional, TwiceIndex t) {
  try {
    return ideal_output(input, t);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kEmptyOutcome) throw;
  }
  const int n = photons(conditional);
  const WeightDistribution mass = weight_probabilities(normalize(conditional));
  std::vector<double> per_outcome(static_cast<std::size_t>(n) / 2 + 1, 0.0);
  for (int w = 0; w <= n; ++w) {
    per_outcome[static_cast<std::size_t>(std::abs(2 * w - n) / 2)] += mass[w];
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < per_outcome.size(); ++i) {
    if (per_outcome[i] > per_outcome[best]) best = i;
  }
  return ideal_output(input, TwiceIndex(static_cast<std::int64_t>(n % 2 + 2 * best)));
}

double output_fidelity(const CircuitParams& params, const SignalState& input, double x) {
  const JointState joint = kerr_evolve(params, input);
  const TwiceIndex t = classify(params, x);
  const SignalState conditional = collapse(joint, x);
  const CorrectedOutput corrected = apply_correction(conditional, params, t, x);
  return fidelity(corrected.state, heralded_target(input, conditional, t));
}

}  // namespace kerrsim
