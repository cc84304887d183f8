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

#include "kerrsim/kerr_circuit.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kerrsim/error.hpp"
#include "kerrsim/summation.hpp"

namespace kerrsim {

CircuitParams::CircuitParams(int photons, double alpha, double theta)
    : photons_(photons), alpha_(alpha), theta_(theta) {
  if (photons < 2) fail(ErrorKind::kDomain, "circuit needs n >= 2, got " + std::to_string(photons));
  if (photons > kSymmetricMaxPhotons) {
    fail(ErrorKind::kCapacity, "n=" + std::to_string(photons) + " exceeds " +
                                   std::to_string(kSymmetricMaxPhotons));
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    fail(ErrorKind::kDomain, "probe amplitude alpha must be positive and finite");
  }
  if (!(theta > 0.0) || !(theta <= kMaxKerrPhase)) {
    fail(ErrorKind::kDomain, "Kerr phase theta must lie in (0, 0.3], got " + std::to_string(theta));
  }
}

bool CircuitParams::peaks_ordered() const {
  return photons_ * theta_ <= 0.5 * std::numbers::pi;
}

std::vector<KerrBranch> kerr_single_mode(Complex c0, Complex c1, double alpha, double theta) {
  const double norm2 = std::norm(c0) + std::norm(c1);
  if (!(std::abs(norm2 - 1.0) <= kNormTolerance)) {
    fail(ErrorKind::kNormalization,
         "signal mode needs |c0|^2 + |c1|^2 = 1, got " + std::to_string(norm2));
  }
  std::vector<KerrBranch> branches;
  if (c0 != Complex{}) branches.push_back({0, c0, {alpha, 0.0}});
  if (c1 != Complex{}) branches.push_back({1, c1, {alpha, theta}});
  return branches;
}

double probe_phase(const CircuitParams& params, int w) {
  const int n = params.photons();
  if (w < 0 || w > n) {
    fail(ErrorKind::kIndex, "weight " + std::to_string(w) + " outside [0, " + std::to_string(n) + "]");
  }
  // 2w - n is exact, so beta_{n-w} == -beta_w bit for bit.
  return 0.5 * static_cast<double>(2 * w - n) * params.theta();
}

JointState::JointState(CircuitParams params, SignalState signal)
    : params_(params), signal_(std::move(signal)), weights_(weight_probabilities(signal_)) {
  const int n = params_.photons();
  const auto size = static_cast<std::size_t>(n) + 1;
  probe_phases_.resize(size);
  peaks_.resize(size);
  phase_slopes_.resize(size);
  cumulative_.resize(size);
  CompensatedSum running;
  for (int w = 0; w <= n; ++w) {
    const auto i = static_cast<std::size_t>(w);
    probe_phases_[i] = kerrsim::probe_phase(params_, w);
    peaks_[i] = 2.0 * params_.alpha() * std::cos(probe_phases_[i]);
    phase_slopes_[i] = params_.alpha() * std::sin(probe_phases_[i]);
    running += weights_[w];
    cumulative_[static_cast<std::size_t>(w)] = running.value();
  }
  cumulative_.back() = 1.0;
}

JointState kerr_evolve(const CircuitParams& params, const SignalState& input) {
  if (photons(input) != params.photons()) {
    fail(ErrorKind::kDimension, "input has n=" + std::to_string(photons(input)) +
                                    " but the circuit has n=" + std::to_string(params.photons()));
  }
  require_normalized(input);
  return JointState(params, input);
}

}  // namespace kerrsim
