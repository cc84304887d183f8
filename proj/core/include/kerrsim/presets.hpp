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

#include <optional>
#include <string>
#include <string_view>

#include "kerrsim/signal_state.hpp"

namespace kerrsim {

/// Named input states accepted by the tools.
struct InputPreset {
  enum class Kind { kUniform, kProduct, kDicke, kCustom };

  Kind kind = Kind::kUniform;
  Complex beta{};   // kProduct
  Complex gamma{};  // kProduct
  int weight = 0;   // kDicke
  std::optional<SignalState> custom;
  std::string custom_path;

  static InputPreset uniform() { return {}; }
  static InputPreset product(Complex beta, Complex gamma);
  static InputPreset dicke(int weight);
  static InputPreset from_state(SignalState state, std::string path = {});
};

std::string_view to_string(InputPreset::Kind kind);

/// Whether the preset yields a permutation-invariant state (so the
/// symmetric backend represents it exactly).
bool is_permutation_invariant(const InputPreset& preset);

/// Builds the n-photon input on the requested backend. Custom states must
/// already have n photons; a dense custom state moves to the symmetric
/// backend only if it is permutation invariant.
SignalState make_input(const InputPreset& preset, int n, Backend backend);

}  // namespace kerrsim
