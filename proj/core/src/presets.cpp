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

#include "kerrsim/presets.hpp"

#include <cmath>

#include "kerrsim/error.hpp"

namespace kerrsim {

InputPreset InputPreset::product(Complex beta, Complex gamma) {
  InputPreset p;
  p.kind = Kind::kProduct;
  p.beta = beta;
  p.gamma = gamma;
  return p;
}

InputPreset InputPreset::dicke(int weight) {
  InputPreset p;
  p.kind = Kind::kDicke;
  p.weight = weight;
  return p;
}

InputPreset InputPreset::from_state(SignalState state, std::string path) {
  InputPreset p;
  p.kind = Kind::kCustom;
  p.custom = std::move(state);
  p.custom_path = std::move(path);
  return p;
}

std::string_view to_string(InputPreset::Kind kind) {
  switch (kind) {
    case InputPreset::Kind::kUniform: return "uniform";
    case InputPreset::Kind::kProduct: return "product";
    case InputPreset::Kind::kDicke: return "dicke";
    case InputPreset::Kind::kCustom: return "custom";
  }
  return "unknown";
}

bool is_permutation_invariant(const InputPreset& preset) {
  if (preset.kind != InputPreset::Kind::kCustom) return true;
  if (!preset.custom) return false;
  if (backend_of(*preset.custom) == Backend::kSymmetric) return true;
  try {
    (void)to_symmetric(std::get<DenseSignalState>(*preset.custom));
    return true;
  } catch (const Error&) {
    return false;
  }
}

SignalState make_input(const InputPreset& preset, int n, Backend backend) {
  switch (preset.kind) {
    case InputPreset::Kind::kUniform: {
      const double h = std::sqrt(0.5);
      return make_product_state(n, h, h, backend);
    }
    case InputPreset::Kind::kProduct:
      return make_product_state(n, preset.beta, preset.gamma, backend);
    case InputPreset::Kind::kDicke: {
      SymmetricSignalState d = dicke_state(n, preset.weight);
      if (backend == Backend::kDense) return to_dense(d);
      return d;
    }
    case InputPreset::Kind::kCustom: {
      if (!preset.custom) fail(ErrorKind::kConfig, "custom preset without a state");
      const SignalState& s = *preset.custom;
      if (photons(s) != n) {
        fail(ErrorKind::kDimension, "custom state has n=" + std::to_string(photons(s)) +
                                        " but n=" + std::to_string(n) + " was requested");
      }
      if (backend_of(s) == backend) return s;
      if (backend == Backend::kDense) return to_dense(std::get<SymmetricSignalState>(s));
      return to_symmetric(std::get<DenseSignalState>(s));
    }
  }
  fail(ErrorKind::kConfig, "unknown input preset");
}

}  // namespace kerrsim
