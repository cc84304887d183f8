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

#include <vector>

#include "kerrsim/signal_state.hpp"

namespace kerrsim {

inline constexpr double kMaxKerrPhase = 0.3;

/// Photon count, probe amplitude and per-photon Kerr phase theta = chi*t.
class CircuitParams {
 public:
  /// Throws kDomain unless n >= 2, alpha > 0 finite and theta in (0, 0.3].
  CircuitParams(int photons, double alpha, double theta);

  int photons() const { return photons_; }
  double alpha() const { return alpha_; }
  double theta() const { return theta_; }

  /// n * theta <= pi/2, so the peak centers 2 alpha cos(m theta) strictly
  /// decrease in m and the midpoint decision rule is well defined.
  bool peaks_ordered() const;

  friend bool operator==(const CircuitParams&, const CircuitParams&) = default;

 private:
  int photons_;
  double alpha_;
  double theta_;
};

/// Coherent probe |alpha e^{i phase}>.
struct CoherentProbe {
  double amplitude;
  double phase;
};

/// One term of c|k>_s |alpha e^{i k theta}>_p.
struct KerrBranch {
  int signal_photons;  // 0 or 1
  Complex amplitude;
  CoherentProbe probe;
};

/// Single-mode cross-Kerr interaction on c0|0> + c1|1> with a coherent
/// probe. Branches with zero amplitude are dropped.
std::vector<KerrBranch> kerr_single_mode(Complex c0, Complex c1, double alpha, double theta);

/// Net probe phase of the weight-w class after the theta/2theta media and the
/// -3n theta/2 compensation gate: (n - w) theta + 2 w theta - 3 n theta / 2
/// = (w - n/2) theta.
double probe_phase(const CircuitParams& params, int w);

/// Signal and probe after the Kerr network. The signal amplitudes are the
/// input's, untouched; each weight class w carries the probe phase
/// beta_w = (w - n/2) theta.
class JointState {
 public:
  JointState(CircuitParams params, SignalState signal);

  const CircuitParams& params() const { return params_; }
  const SignalState& signal() const { return signal_; }
  const WeightDistribution& weights() const { return weights_; }
  std::span<const double> probe_phases() const { return probe_phases_; }
  double probe_phase(int w) const { return probe_phases_[static_cast<std::size_t>(w)]; }

  /// Homodyne peak 2 alpha cos(beta_w) of class w.
  double peak(int w) const { return peaks_[static_cast<std::size_t>(w)]; }
  std::span<const double> peaks() const { return peaks_; }

  /// alpha sin(beta_w): slope of the measurement-induced phase in x.
  std::span<const double> phase_slopes() const { return phase_slopes_; }

  /// Running sum of P_w; back() == 1.
  std::span<const double> cumulative_weights() const { return cumulative_; }

 private:
  CircuitParams params_;
  SignalState signal_;
  WeightDistribution weights_;
  std::vector<double> probe_phases_;
  std::vector<double> peaks_;
  std::vector<double> phase_slopes_;
  std::vector<double> cumulative_;
};

/// Throws kDimension if input.n != params.n, kNormalization if the input is
/// not normalized.
JointState kerr_evolve(const CircuitParams& params, const SignalState& input);

}  // namespace kerrsim
