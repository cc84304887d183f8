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

#include <string>
#include <string_view>

#include "kerrsim/signal_state.hpp"

namespace kerrsim {

/// Reads {"n": int, "backend": "dense"|"symmetric", "amplitudes": [[re, im], ...]}.
/// The amplitude count must be 2^n (dense) or n + 1 (symmetric). The norm
/// must be within 1e-6 of 1; the state is then renormalized exactly.
/// Malformed documents throw kConfig.
SignalState parse_signal_state_json(std::string_view text);

/// As parse_signal_state_json; an unreadable file throws kIo.
SignalState read_signal_state_file(const std::string& path);

std::string signal_state_to_json(const SignalState& state);

inline constexpr double kInputNormTolerance = 1e-6;

}  // namespace kerrsim
