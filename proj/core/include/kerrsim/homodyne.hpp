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

#include "kerrsim/kerr_circuit.hpp"
#include "kerrsim/rng.hpp"
#include "kerrsim/twice_index.hpp"

namespace kerrsim {

/// (2 pi)^{-1/4} exp(-(x - peak)^2 / 4): the probability amplitude of
/// reading x from |alpha e^{i beta}> with peak = 2 alpha cos(beta). Its
/// square is the unit-variance normal density.
double gaussian_amplitude(double x, double peak);

/// alpha sin(m theta) [x - 2 alpha cos(m theta)] reduced to [0, 2 pi), with
/// m = t/2. Throws kIndex for t < 0.
double phase_phi(const CircuitParams& params, TwiceIndex t, double x);

/// Density of the X-quadrature outcome: sum_w P_w N(x; 2 alpha cos beta_w, 1).
double marginal_pdf(const JointState& joint, double x);
double log_marginal_pdf(const JointState& joint, double x);

struct HomodyneSample {
  double x;
  int weight;  // mixture component that fired
};

/// Draws the weight class from P_w, then x from N(peak_w, 1).
HomodyneSample sample_measurement(const JointState& joint, Rng& rng);
double sample_x(const JointState& joint, Rng& rng);

/// Conditional signal state given outcome x, before feed-forward. Class w is
/// scaled by f(x, peak_w) exp(i alpha sin(beta_w) [x - peak_w]) and the
/// result renormalized. Throws kImpossibleOutcome if the unnormalized norm
/// falls below 1e-300.
SignalState collapse(const JointState& joint, double x);

/// Decision threshold between the peaks of m = k - 1 and m = k:
/// 2 alpha cos(theta/2) cos((k - 1/2) theta), with k = t/2.
/// Valid t: parity of n, 2 <= t <= n (3 <= t for odd n). Requires
/// n theta <= pi/2 (kDomain otherwise).
double midpoint(const CircuitParams& params, TwiceIndex t);

/// Peak separation 2 alpha [cos((k-1) theta) - cos(k theta)], evaluated as
/// 4 alpha sin((k - 1/2) theta) sin(theta/2). Same domain as midpoint.
double gap(const CircuitParams& params, TwiceIndex t);

/// Midpoint-rule outcome for x. Intervals are (midpoint(t+2), midpoint(t)],
/// so a value exactly on a midpoint goes to the larger index.
TwiceIndex classify(const CircuitParams& params, double x);

/// All outcome indices for n, ascending (t = n mod 2, ..., n).
std::vector<TwiceIndex> outcome_indices(int n);

/// Interval (lower, upper] of outcome t; infinite at the ends.
struct OutcomeInterval {
  double lower;
  double upper;
};
OutcomeInterval outcome_interval(const CircuitParams& params, TwiceIndex t);

struct DistributionRow {
  double x;
  double pdf;
  TwiceIndex outcome;
};

/// marginal_pdf and classify on `points` evenly spaced x in [xmin, xmax].
/// Throws kDomain for a degenerate grid.
std::vector<DistributionRow> distribution_table(const JointState& joint, double xmin, double xmax,
                                                int points);

/// [lowest supported peak - margin, highest supported peak + margin].
OutcomeInterval peak_span(const JointState& joint, double margin);

struct MeasurementRecord {
  double x;
  TwiceIndex outcome;
  int sampled_weight;
  SignalState conditional;
};

/// sample_measurement + classify + collapse.
MeasurementRecord measure(const JointState& joint, Rng& rng);

}  // namespace kerrsim
