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

#include "kerrsim/homodyne.hpp"
#include "kerrsim/kerr_circuit.hpp"
#include "kerrsim/signal_state.hpp"

namespace kerrsim {

/// Per-photon feed-forward phase alpha sin(k theta) [x - 2 alpha cos(k theta)] / k
/// reduced to [0, 2 pi), k = t/2. Throws kIndex for t < 1: the balanced
/// outcome needs no correction.
double correction_phase(const CircuitParams& params, TwiceIndex t, double x);

struct CorrectedOutput {
  SignalState state;
  TwiceIndex outcome;
  double global_phase_removed;  // diagnostic, in [0, 2 pi)
};

/// Multiplies each weight-w component by exp(-i w phi) with phi the
/// correction phase of outcome t (identity for t = 0), then rotates away the
/// phase of the largest-modulus amplitude. The shift is applied as
/// exp(-i (w - n/2) phi_k / k), which differs only by a global phase. Throws kMisrouting unless
/// t == classify(params, x).
CorrectedOutput apply_correction(const SignalState& state, const CircuitParams& params,
                                 TwiceIndex t, double x);

/// apply_correction without the routing check. Used to measure what a wrong
/// branch costs, and by the Monte Carlo loop which has just classified x.
CorrectedOutput apply_correction_unchecked(const SignalState& state, const CircuitParams& params,
                                           TwiceIndex t, double x);

/// Input restricted to weights n/2 - k and n/2 + k (just n/2 for t = 0) and
/// renormalized. Throws kEmptyOutcome if the input has no support there.
SignalState ideal_output(const SignalState& input, TwiceIndex t);

/// Reference state used to score a heralded outcome: ideal_output(input, t)
/// when the input supports t, otherwise ideal_output of the supported
/// outcome that holds the largest share of the conditional state.
SignalState heralded_target(const SignalState& input, const SignalState& conditional, TwiceIndex t);

/// Fidelity of the corrected conditional state for outcome x against its
/// heralded target.
double output_fidelity(const CircuitParams& params, const SignalState& input, double x);

}  // namespace kerrsim
