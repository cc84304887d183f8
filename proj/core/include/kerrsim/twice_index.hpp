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

#include <compare>
#include <cstdint>
#include <string>

namespace kerrsim {

/// Outcome and cat-state indices k are integers for even n and half-integers
/// for odd n. They are stored doubled (t = 2k) so comparisons stay exact.
/// The parity invariant t = n (mod 2) is checked where n is known.
class TwiceIndex {
 public:
  constexpr TwiceIndex() = default;
  constexpr explicit TwiceIndex(std::int64_t twice) : twice_(twice) {}

  static constexpr TwiceIndex from_k(std::int64_t k) { return TwiceIndex(2 * k); }

  constexpr std::int64_t twice() const { return twice_; }
  constexpr double k() const { return 0.5 * static_cast<double>(twice_); }
  constexpr bool is_half_integer() const { return (twice_ & 1) != 0; }

  constexpr auto operator<=>(const TwiceIndex&) const = default;

  std::string to_string() const;

 private:
  std::int64_t twice_ = 0;
};

/// True when t has the parity of n and lies in [0, n].
constexpr bool is_outcome_index(int n, TwiceIndex t) {
  return t.twice() >= 0 && t.twice() <= n && ((t.twice() - n) % 2 == 0);
}

/// Smallest outcome index for n photons: 0 (even n) or 1 (odd n).
constexpr TwiceIndex first_outcome(int n) { return TwiceIndex(n % 2); }

/// Number of distinct outcomes: n/2 + 1 (even), (n + 1)/2 (odd).
constexpr int outcome_count(int n) { return n / 2 + 1; }

}  // namespace kerrsim
