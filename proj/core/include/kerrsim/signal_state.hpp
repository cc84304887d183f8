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

#include <complex>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "kerrsim/twice_index.hpp"

namespace kerrsim {

using Complex = std::complex<double>;

inline constexpr int kDenseMaxPhotons = 24;
inline constexpr int kSymmetricMaxPhotons = 100000;
inline constexpr double kNormTolerance = 1e-10;

enum class Backend { kDense, kSymmetric };

/// Amplitudes over all 2^n polarization bitstrings. Bit value 1 means V,
/// 0 means H. Photon i (0-based, input port a_{i+1}) is bit (n - 1 - i), so
/// the index written in binary reads like the subscript a_{i1 i2 ... in}.
class DenseSignalState {
 public:
  /// Takes ownership of `amplitudes`; size must be 2^n. Not normalized here.
  DenseSignalState(int photons, std::vector<Complex> amplitudes);

  int photons() const { return photons_; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  Complex amplitude(std::uint64_t bits) const { return amplitudes_[bits]; }
  std::size_t size() const { return amplitudes_.size(); }

 private:
  int photons_;
  std::vector<Complex> amplitudes_;
};

/// Permutation-invariant state sum_w c_w |D_w>, where |D_w> is the
/// normalized Dicke state with w V-photons.
class SymmetricSignalState {
 public:
  SymmetricSignalState(int photons, std::vector<Complex> weight_amplitudes);

  int photons() const { return photons_; }
  std::span<const Complex> weight_amplitudes() const { return weight_amplitudes_; }
  Complex weight_amplitude(int w) const { return weight_amplitudes_[static_cast<std::size_t>(w)]; }

 private:
  int photons_;
  std::vector<Complex> weight_amplitudes_;
};

using SignalState = std::variant<DenseSignalState, SymmetricSignalState>;

/// P_w for w = 0..n.
struct WeightDistribution {
  std::vector<double> probabilities;

  int photons() const { return static_cast<int>(probabilities.size()) - 1; }
  double operator[](int w) const { return probabilities[static_cast<std::size_t>(w)]; }
};

int photons(const SignalState& state);
Backend backend_of(const SignalState& state);
double norm_squared(const SignalState& state);

/// Rescales to unit norm. A state already normalized to rounding is returned
/// unchanged, which makes the operation idempotent bit-for-bit.
SignalState normalize(const SignalState& state);
DenseSignalState normalize(const DenseSignalState& state);
SymmetricSignalState normalize(const SymmetricSignalState& state);

/// Throws kNormalization unless |norm^2 - 1| <= tolerance.
void require_normalized(const SignalState& state, double tolerance = kNormTolerance);

/// Product state (beta|H> + gamma|V>)^{(x) n}.
SignalState make_product_state(int n, Complex beta, Complex gamma, Backend backend);

SymmetricSignalState dicke_state(int n, int w);

/// (|D_{n/2-k}> + |D_{n/2+k}>)/sqrt(2) with k = t/2. Requires t = n (mod 2)
/// and 1 <= t <= n; t = 0 is rejected since both halves coincide.
SymmetricSignalState cat_like_state(int n, TwiceIndex t);

/// Ideal heralded state for a uniform input: the balanced Dicke class for
/// t = 0, cat_like_state(n, t) otherwise.
SymmetricSignalState target_state(int n, TwiceIndex t);

/// <a|b>, conjugate-linear in the first argument.
Complex overlap(const SignalState& a, const SignalState& b);

/// |<a|b>|^2 / (<a|a><b|b>), clamped to [0, 1].
double fidelity(const SignalState& a, const SignalState& b);

WeightDistribution weight_probabilities(const SignalState& state);

DenseSignalState to_dense(const SymmetricSignalState& state);

/// Inverse of to_dense. Throws kDomain if amplitudes differ within a weight
/// class by more than `tolerance`.
SymmetricSignalState to_symmetric(const DenseSignalState& state, double tolerance = 1e-12);

/// sum of a_s over bitstrings of weight w, for w = 0..n.
std::vector<Complex> weight_class_sums(const DenseSignalState& state);

/// Multiplies every weight-w component by factors[w]. The result is not
/// renormalized. This is the one primitive that collapse, feed-forward and
/// projection are built on.
SignalState scale_weight_classes(const SignalState& state, std::span<const Complex> factors);

/// C(n, k); exact for n <= 60.
double binomial(int n, int k);
inline constexpr int kExactBinomialMax = 60;

/// log C(n, k).
double log_binomial(int n, int k);

}  // namespace kerrsim
