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

#include "kerrsim/signal_state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "kerrsim/error.hpp"
#include "kerrsim/summation.hpp"

namespace kerrsim {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kNormalization: return "normalization";
    case ErrorKind::kIndex: return "index";
    case ErrorKind::kParity: return "parity";
    case ErrorKind::kDimension: return "dimension";
    case ErrorKind::kCapacity: return "capacity";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kImpossibleOutcome: return "impossible_outcome";
    case ErrorKind::kEmptyOutcome: return "empty_outcome";
    case ErrorKind::kMisrouting: return "misrouting";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

std::string TwiceIndex::to_string() const {
  if (is_half_integer()) return std::to_string(twice_) + "/2";
  return std::to_string(twice_ / 2);
}

namespace {

// Normalized to rounding: a second normalize must be a no-op.
constexpr double kAlreadyNormalized = 1e-14;

void check_photons(int n, int cap) {
  if (n < 1) fail(ErrorKind::kDomain, "photon count must be >= 1, got " + std::to_string(n));
  if (n > cap) {
    fail(ErrorKind::kCapacity, "photon count " + std::to_string(n) +
                                   " exceeds backend cap " + std::to_string(cap));
  }
}

double sum_norm(std::span<const Complex> amplitudes) {
  CompensatedSum sum;
  for (const Complex& a : amplitudes) sum += std::norm(a);
  return sum.value();
}

std::vector<Complex> scaled(std::span<const Complex> amplitudes, double factor) {
  std::vector<Complex> out(amplitudes.begin(), amplitudes.end());
  for (Complex& a : out) a *= factor;
  return out;
}

// beta^(n-w) gamma^w for every w, evaluated in log space so large n neither
// overflows nor loses the tail to repeated-product underflow.
std::vector<Complex> product_weight_terms(int n, Complex beta, Complex gamma,
                                          bool with_binomial) {
  std::vector<Complex> terms(static_cast<std::size_t>(n) + 1, Complex{});
  const double beta_abs = std::abs(beta);
  const double gamma_abs = std::abs(gamma);
  if (beta_abs == 0.0 || gamma_abs == 0.0) {
    // Only one weight class survives.
    const int w = beta_abs == 0.0 ? n : 0;
    const Complex base = beta_abs == 0.0 ? gamma : beta;
    const double log_mag = n * std::log(std::abs(base));
    terms[static_cast<std::size_t>(w)] = std::polar(std::exp(log_mag), n * std::arg(base));
    return terms;
  }
  const double log_beta = std::log(beta_abs);
  const double log_gamma = std::log(gamma_abs);
  const double arg_beta = std::arg(beta);
  const double arg_gamma = std::arg(gamma);
  for (int w = 0; w <= n; ++w) {
    double log_mag = (n - w) * log_beta + w * log_gamma;
    if (with_binomial) log_mag += 0.5 * log_binomial(n, w);
    terms[static_cast<std::size_t>(w)] =
        std::polar(std::exp(log_mag), (n - w) * arg_beta + w * arg_gamma);
  }
  return terms;
}

void check_outcome_index(int n, TwiceIndex t) {
  if (t.twice() < 0 || t.twice() > n) {
    fail(ErrorKind::kIndex, "index k=" + t.to_string() + " outside [0, n/2] for n=" +
                                std::to_string(n));
  }
  if ((t.twice() - n) % 2 != 0) {
    fail(ErrorKind::kParity, "index k=" + t.to_string() + " has the wrong parity for n=" +
                                 std::to_string(n));
  }
}

}  // namespace

DenseSignalState::DenseSignalState(int photons, std::vector<Complex> amplitudes)
    : photons_(photons), amplitudes_(std::move(amplitudes)) {
  check_photons(photons, kDenseMaxPhotons);
  if (amplitudes_.size() != (std::size_t{1} << photons)) {
    fail(ErrorKind::kDimension, "dense state for n=" + std::to_string(photons) + " needs " +
                                    std::to_string(std::size_t{1} << photons) +
                                    " amplitudes, got " + std::to_string(amplitudes_.size()));
  }
}

SymmetricSignalState::SymmetricSignalState(int photons, std::vector<Complex> weight_amplitudes)
    : photons_(photons), weight_amplitudes_(std::move(weight_amplitudes)) {
  check_photons(photons, kSymmetricMaxPhotons);
  if (weight_amplitudes_.size() != static_cast<std::size_t>(photons) + 1) {
    fail(ErrorKind::kDimension, "symmetric state for n=" + std::to_string(photons) +
                                    " needs " + std::to_string(photons + 1) +
                                    " amplitudes, got " +
                                    std::to_string(weight_amplitudes_.size()));
  }
}

int photons(const SignalState& state) {
  return std::visit([](const auto& s) { return s.photons(); }, state);
}

Backend backend_of(const SignalState& state) {
  return std::holds_alternative<DenseSignalState>(state) ? Backend::kDense : Backend::kSymmetric;
}

double norm_squared(const SignalState& state) {
  if (const auto* dense = std::get_if<DenseSignalState>(&state)) {
    return sum_norm(dense->amplitudes());
  }
  return sum_norm(std::get<SymmetricSignalState>(state).weight_amplitudes());
}

DenseSignalState normalize(const DenseSignalState& state) {
  const double norm2 = sum_norm(state.amplitudes());
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    fail(ErrorKind::kNormalization, "cannot normalize a state with norm^2 = " +
                                        std::to_string(norm2));
  }
  if (std::abs(norm2 - 1.0) <= kAlreadyNormalized) return state;
  return DenseSignalState(state.photons(), scaled(state.amplitudes(), 1.0 / std::sqrt(norm2)));
}

SymmetricSignalState normalize(const SymmetricSignalState& state) {
  const double norm2 = sum_norm(state.weight_amplitudes());
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    fail(ErrorKind::kNormalization, "cannot normalize a state with norm^2 = " +
                                        std::to_string(norm2));
  }
  if (std::abs(norm2 - 1.0) <= kAlreadyNormalized) return state;
  return SymmetricSignalState(state.photons(),
                              scaled(state.weight_amplitudes(), 1.0 / std::sqrt(norm2)));
}

SignalState normalize(const SignalState& state) {
  return std::visit([](const auto& s) -> SignalState { return normalize(s); }, state);
}

void require_normalized(const SignalState& state, double tolerance) {
  const double norm2 = norm_squared(state);
  if (!(std::abs(norm2 - 1.0) <= tolerance)) {
    fail(ErrorKind::kNormalization,
         "state is not normalized: norm^2 = " + std::to_string(norm2));
  }
}

SignalState make_product_state(int n, Complex beta, Complex gamma, Backend backend) {
  const double norm2 = std::norm(beta) + std::norm(gamma);
  if (!(std::abs(norm2 - 1.0) <= kNormTolerance)) {
    fail(ErrorKind::kNormalization,
         "single-photon state needs |beta|^2 + |gamma|^2 = 1, got " + std::to_string(norm2));
  }
  if (backend == Backend::kSymmetric) {
    check_photons(n, kSymmetricMaxPhotons);
    return normalize(SymmetricSignalState(n, product_weight_terms(n, beta, gamma, true)));
  }
  check_photons(n, kDenseMaxPhotons);
  const std::vector<Complex> per_weight = product_weight_terms(n, beta, gamma, false);
  std::vector<Complex> amplitudes(std::size_t{1} << n);
  for (std::size_t s = 0; s < amplitudes.size(); ++s) {
    amplitudes[s] = per_weight[static_cast<std::size_t>(std::popcount(s))];
  }
  return normalize(DenseSignalState(n, std::move(amplitudes)));
}

SymmetricSignalState dicke_state(int n, int w) {
  check_photons(n, kSymmetricMaxPhotons);
  if (w < 0 || w > n) {
    fail(ErrorKind::kIndex,
         "Dicke weight " + std::to_string(w) + " outside [0, " + std::to_string(n) + "]");
  }
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1, Complex{});
  c[static_cast<std::size_t>(w)] = 1.0;
  return SymmetricSignalState(n, std::move(c));
}

SymmetricSignalState cat_like_state(int n, TwiceIndex t) {
  if (n < 2) fail(ErrorKind::kDomain, "cat-like states need n >= 2");
  check_outcome_index(n, t);
  if (t.twice() == 0) {
    fail(ErrorKind::kIndex, "cat-like state with k = 0 is not normalizable; use target_state");
  }
  check_photons(n, kSymmetricMaxPhotons);
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1, Complex{});
  const auto low = static_cast<std::size_t>((n - t.twice()) / 2);
  const auto high = static_cast<std::size_t>((n + t.twice()) / 2);
  c[low] = std::sqrt(0.5);
  c[high] = std::sqrt(0.5);
  return SymmetricSignalState(n, std::move(c));
}

SymmetricSignalState target_state(int n, TwiceIndex t) {
  check_outcome_index(n, t);
  if (t.twice() == 0) return dicke_state(n, n / 2);
  return cat_like_state(n, t);
}

std::vector<Complex> weight_class_sums(const DenseSignalState& state) {
  std::vector<Complex> sums(static_cast<std::size_t>(state.photons()) + 1, Complex{});
  const auto amps = state.amplitudes();
  for (std::size_t s = 0; s < amps.size(); ++s) {
    sums[static_cast<std::size_t>(std::popcount(s))] += amps[s];
  }
  return sums;
}

Complex overlap(const SignalState& a, const SignalState& b) {
  if (photons(a) != photons(b)) {
    fail(ErrorKind::kDimension, "overlap of states with n=" + std::to_string(photons(a)) +
                                    " and n=" + std::to_string(photons(b)));
  }
  const int n = photons(a);
  const auto* da = std::get_if<DenseSignalState>(&a);
  const auto* db = std::get_if<DenseSignalState>(&b);
  CompensatedSum re;
  CompensatedSum im;
  auto accumulate = [&](Complex z) {
    re += z.real();
    im += z.imag();
  };
  if (da != nullptr && db != nullptr) {
    const auto x = da->amplitudes();
    const auto y = db->amplitudes();
    for (std::size_t s = 0; s < x.size(); ++s) accumulate(std::conj(x[s]) * y[s]);
  } else if (da == nullptr && db == nullptr) {
    const auto x = std::get<SymmetricSignalState>(a).weight_amplitudes();
    const auto y = std::get<SymmetricSignalState>(b).weight_amplitudes();
    for (std::size_t w = 0; w < x.size(); ++w) accumulate(std::conj(x[w]) * y[w]);
  } else {
    // Mixed: the symmetric side is constant c_w / sqrt(C(n,w)) on each class,
    // so only the dense side's per-class sums are needed.
    const DenseSignalState& dense = da != nullptr ? *da : *db;
    const SymmetricSignalState& sym =
        da != nullptr ? std::get<SymmetricSignalState>(b) : std::get<SymmetricSignalState>(a);
    const std::vector<Complex> sums = weight_class_sums(dense);
    for (int w = 0; w <= n; ++w) {
      const double scale = 1.0 / std::sqrt(binomial(n, w));
      const Complex c = sym.weight_amplitude(w) * scale;
      const Complex d = sums[static_cast<std::size_t>(w)];
      accumulate(da != nullptr ? std::conj(d) * c : std::conj(c) * d);
    }
  }
  return {re.value(), im.value()};
}

double fidelity(const SignalState& a, const SignalState& b) {
  const double na = norm_squared(a);
  const double nb = norm_squared(b);
  if (!(na > 0.0) || !(nb > 0.0)) {
    fail(ErrorKind::kNormalization, "fidelity of a zero-norm state");
  }
  const double f = std::norm(overlap(a, b)) / (na * nb);
  return std::clamp(f, 0.0, 1.0);
}

WeightDistribution weight_probabilities(const SignalState& state) {
  WeightDistribution out;
  const int n = photons(state);
  out.probabilities.assign(static_cast<std::size_t>(n) + 1, 0.0);
  if (const auto* dense = std::get_if<DenseSignalState>(&state)) {
    std::vector<CompensatedSum> sums(static_cast<std::size_t>(n) + 1);
    const auto amps = dense->amplitudes();
    for (std::size_t s = 0; s < amps.size(); ++s) {
      sums[static_cast<std::size_t>(std::popcount(s))] += std::norm(amps[s]);
    }
    for (std::size_t w = 0; w < sums.size(); ++w) out.probabilities[w] = sums[w].value();
  } else {
    const auto c = std::get<SymmetricSignalState>(state).weight_amplitudes();
    for (std::size_t w = 0; w < c.size(); ++w) out.probabilities[w] = std::norm(c[w]);
  }
  CompensatedSum total;
  for (double p : out.probabilities) total += p;
  if (!(total.value() > 0.0)) fail(ErrorKind::kNormalization, "zero-norm state");
  if (std::abs(total.value() - 1.0) > kNormTolerance) {
    fail(ErrorKind::kNormalization,
         "weight distribution of an unnormalized state: sum = " + std::to_string(total.value()));
  }
  for (double& p : out.probabilities) p /= total.value();
  return out;
}

DenseSignalState to_dense(const SymmetricSignalState& state) {
  const int n = state.photons();
  if (n > kDenseMaxPhotons) {
    fail(ErrorKind::kCapacity,
         "to_dense: n=" + std::to_string(n) + " exceeds dense cap " +
             std::to_string(kDenseMaxPhotons));
  }
  std::vector<Complex> per_weight(static_cast<std::size_t>(n) + 1);
  for (int w = 0; w <= n; ++w) {
    per_weight[static_cast<std::size_t>(w)] =
        state.weight_amplitude(w) / std::sqrt(binomial(n, w));
  }
  std::vector<Complex> amplitudes(std::size_t{1} << n);
  for (std::size_t s = 0; s < amplitudes.size(); ++s) {
    amplitudes[s] = per_weight[static_cast<std::size_t>(std::popcount(s))];
  }
  return DenseSignalState(n, std::move(amplitudes));
}

SymmetricSignalState to_symmetric(const DenseSignalState& state, double tolerance) {
  const int n = state.photons();
  const auto amps = state.amplitudes();
  std::vector<Complex> first(static_cast<std::size_t>(n) + 1);
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (std::size_t s = 0; s < amps.size(); ++s) {
    const auto w = static_cast<std::size_t>(std::popcount(s));
    if (!seen[w]) {
      first[w] = amps[s];
      seen[w] = true;
    } else if (std::abs(amps[s] - first[w]) > tolerance) {
      fail(ErrorKind::kDomain, "dense state is not permutation symmetric (weight " +
                                   std::to_string(w) + ")");
    }
  }
  for (int w = 0; w <= n; ++w) {
    first[static_cast<std::size_t>(w)] *= std::sqrt(binomial(n, w));
  }
  return SymmetricSignalState(n, std::move(first));
}

SignalState scale_weight_classes(const SignalState& state, std::span<const Complex> factors) {
  const int n = photons(state);
  if (factors.size() != static_cast<std::size_t>(n) + 1) {
    fail(ErrorKind::kDimension, "need one factor per weight class");
  }
  if (const auto* dense = std::get_if<DenseSignalState>(&state)) {
    std::vector<Complex> out(dense->amplitudes().begin(), dense->amplitudes().end());
    for (std::size_t s = 0; s < out.size(); ++s) {
      out[s] *= factors[static_cast<std::size_t>(std::popcount(s))];
    }
    return DenseSignalState(n, std::move(out));
  }
  const auto c = std::get<SymmetricSignalState>(state).weight_amplitudes();
  std::vector<Complex> out(c.begin(), c.end());
  for (std::size_t w = 0; w < out.size(); ++w) out[w] *= factors[w];
  return SymmetricSignalState(n, std::move(out));
}

double binomial(int n, int k) {
  if (k < 0 || k > n) fail(ErrorKind::kIndex, "binomial index out of range");
  if (n > kExactBinomialMax) return std::exp(log_binomial(n, k));
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (int i = 0; i < k; ++i) {
    // c * (n - i) stays below 2^64 for n <= 60; the division is exact.
    c = c * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
  }
  return static_cast<double>(c);
}

double log_binomial(int n, int k) {
  if (k < 0 || k > n) fail(ErrorKind::kIndex, "binomial index out of range");
  if (k == 0 || k == n) return 0.0;
  if (n <= kExactBinomialMax) return std::log(binomial(n, k));
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace kerrsim
