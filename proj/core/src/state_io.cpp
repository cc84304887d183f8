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

#include "kerrsim/state_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "kerrsim/error.hpp"

namespace kerrsim {

using nlohmann::json;

SignalState parse_signal_state_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kConfig, std::string("amplitude file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorKind::kConfig, "amplitude file must hold a JSON object");
  for (const char* key : {"n", "backend", "amplitudes"}) {
    if (!doc.contains(key)) fail(ErrorKind::kConfig, std::string("amplitude file lacks '") + key + "'");
  }
  if (!doc["n"].is_number_integer()) fail(ErrorKind::kConfig, "'n' must be an integer");
  const int n = doc["n"].get<int>();
  const std::string backend = doc["backend"].is_string() ? doc["backend"].get<std::string>() : "";
  if (backend != "dense" && backend != "symmetric") {
    fail(ErrorKind::kConfig, "'backend' must be \"dense\" or \"symmetric\"");
  }
  const json& list = doc["amplitudes"];
  if (!list.is_array()) fail(ErrorKind::kConfig, "'amplitudes' must be an array");

  std::vector<Complex> amplitudes;
  amplitudes.reserve(list.size());
  for (const json& entry : list) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
      fail(ErrorKind::kConfig, "each amplitude must be a [re, im] pair of numbers");
    }
    amplitudes.emplace_back(entry[0].get<double>(), entry[1].get<double>());
  }

  SignalState state = backend == "dense"
                          ? SignalState(DenseSignalState(n, std::move(amplitudes)))
                          : SignalState(SymmetricSignalState(n, std::move(amplitudes)));
  const double norm2 = norm_squared(state);
  if (!(std::abs(std::sqrt(norm2) - 1.0) <= kInputNormTolerance)) {
    fail(ErrorKind::kNormalization,
         "amplitude file norm " + std::to_string(std::sqrt(norm2)) + " is not within 1e-6 of 1");
  }
  return normalize(state);
}

SignalState read_signal_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIo, "cannot open amplitude file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) fail(ErrorKind::kIo, "error reading amplitude file '" + path + "'");
  return parse_signal_state_json(buffer.str());
}

std::string signal_state_to_json(const SignalState& state) {
  json doc;
  doc["n"] = photons(state);
  json list = json::array();
  auto emit = [&](std::span<const Complex> amps) {
    for (const Complex& a : amps) list.push_back({a.real(), a.imag()});
  };
  if (const auto* dense = std::get_if<DenseSignalState>(&state)) {
    doc["backend"] = "dense";
    emit(dense->amplitudes());
  } else {
    doc["backend"] = "symmetric";
    emit(std::get<SymmetricSignalState>(state).weight_amplitudes());
  }
  doc["amplitudes"] = std::move(list);
  return doc.dump();
}

}  // namespace kerrsim
