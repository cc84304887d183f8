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

#include "kerrsim/run_config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "json_support.hpp"
#include "kerrsim/error.hpp"
#include "kerrsim/state_io.hpp"

namespace kerrsim {
namespace {

using nlohmann::json;

template <typename T>
void read_key(const json& doc, const char* key, T& target) {
  if (!doc.contains(key)) return;
  const json& v = doc.at(key);
  try {
    if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw std::invalid_argument("expected a string");
      target = v.get<std::string>();
    } else if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) throw std::invalid_argument("expected a number");
      target = v.get<double>();
    } else if constexpr (std::is_same_v<T, std::optional<double>>) {
      if (v.is_null()) {
        target.reset();
        return;
      }
      if (!v.is_number()) throw std::invalid_argument("expected a number");
      target = v.get<double>();
    } else if constexpr (std::is_same_v<T, std::vector<int>> ||
                         std::is_same_v<T, std::vector<double>>) {
      if (!v.is_array()) throw std::invalid_argument("expected an array");
      target = v.get<T>();
    } else if constexpr (std::is_unsigned_v<T>) {
      if (!v.is_number_unsigned()) throw std::invalid_argument("expected a non-negative integer");
      target = v.get<T>();
    } else {
      if (!v.is_number_integer()) throw std::invalid_argument("expected an integer");
      target = v.get<T>();
    }
  } catch (const std::exception& e) {
    fail(ErrorKind::kConfig, std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

RunConfig config_from_json(std::string_view text, const RunConfig& base) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kConfig, std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorKind::kConfig, "config must be a JSON object");
  static const std::set<std::string> known = {
      "n", "alpha", "theta", "input", "beta", "gamma", "weight", "amplitudes", "backend",
      "trials", "seed", "output", "format", "xmin", "xmax", "points", "ns", "alphas",
      "thetas", "threads"};
  for (const auto& item : doc.items()) {
    if (!known.contains(item.key())) fail(ErrorKind::kConfig, "unknown config key '" + item.key() + "'");
  }
  RunConfig c = base;
  read_key(doc, "n", c.n);
  read_key(doc, "alpha", c.alpha);
  read_key(doc, "theta", c.theta);
  read_key(doc, "input", c.input);
  read_key(doc, "beta", c.beta);
  read_key(doc, "gamma", c.gamma);
  read_key(doc, "weight", c.weight);
  read_key(doc, "amplitudes", c.amplitudes);
  read_key(doc, "backend", c.backend);
  read_key(doc, "trials", c.trials);
  read_key(doc, "seed", c.seed);
  read_key(doc, "output", c.output);
  read_key(doc, "format", c.format);
  read_key(doc, "xmin", c.xmin);
  read_key(doc, "xmax", c.xmax);
  read_key(doc, "points", c.points);
  read_key(doc, "ns", c.ns);
  read_key(doc, "alphas", c.alphas);
  read_key(doc, "thetas", c.thetas);
  read_key(doc, "threads", c.threads);
  return c;
}

RunConfig read_config_file(const std::string& path, const RunConfig& base) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIo, "cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return config_from_json(buffer.str(), base);
}

namespace detail {

ordered_json config_json_value(const RunConfig& c) {
  ordered_json j;
  j["n"] = c.n;
  j["alpha"] = c.alpha;
  j["theta"] = c.theta;
  j["input"] = c.input;
  if (c.input == "product") {
    j["beta"] = c.beta;
    j["gamma"] = c.gamma;
  } else if (c.input == "dicke") {
    j["weight"] = c.weight;
  } else if (c.input == "custom") {
    j["amplitudes"] = c.amplitudes;
  }
  j["backend"] = c.backend;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["output"] = c.output;
  j["format"] = c.format;
  j["xmin"] = c.xmin ? ordered_json(*c.xmin) : ordered_json(nullptr);
  j["xmax"] = c.xmax ? ordered_json(*c.xmax) : ordered_json(nullptr);
  j["points"] = c.points;
  j["ns"] = c.ns;
  j["alphas"] = c.alphas;
  j["thetas"] = c.thetas;
  return j;
}

}  // namespace detail

std::string config_to_json(const RunConfig& config) {
  return detail::config_json_value(config).dump();
}

std::string_view to_string(Backend backend) {
  return backend == Backend::kDense ? "dense" : "symmetric";
}

InputPreset load_preset(const RunConfig& c) {
  if (c.input == "uniform") return InputPreset::uniform();
  if (c.input == "product") return InputPreset::product(c.beta, c.gamma);
  if (c.input == "dicke") return InputPreset::dicke(c.weight);
  if (c.input == "custom") {
    if (c.amplitudes.empty()) fail(ErrorKind::kConfig, "input 'custom' needs an amplitudes file");
    return InputPreset::from_state(read_signal_state_file(c.amplitudes), c.amplitudes);
  }
  fail(ErrorKind::kConfig, "unknown input preset '" + c.input + "'");
}

Backend resolve_backend(const RunConfig& c, const InputPreset& preset) {
  if (c.backend == "dense") return Backend::kDense;
  if (c.backend == "symmetric") return Backend::kSymmetric;
  if (c.backend != "auto") fail(ErrorKind::kConfig, "unknown backend '" + c.backend + "'");
  if (preset.kind == InputPreset::Kind::kCustom && preset.custom &&
      backend_of(*preset.custom) == Backend::kSymmetric && c.n > kDenseMaxPhotons) {
    return Backend::kSymmetric;
  }
  return is_permutation_invariant(preset) && c.n > kDenseMaxPhotons ? Backend::kSymmetric
                                                                      : Backend::kDense;
}

CircuitParams circuit_params(const RunConfig& c) { return CircuitParams(c.n, c.alpha, c.theta); }

void validate(const RunConfig& c) {
  auto config_error = [](const std::string& what) { fail(ErrorKind::kConfig, what); };
  if (c.format != "json" && c.format != "csv") config_error("format must be json or csv");
  if (c.trials < 1) config_error("trials must be >= 1");
  if (c.points < 2) config_error("points must be >= 2");
  if (c.xmin && !std::isfinite(*c.xmin)) config_error("xmin must be finite");
  if (c.xmax && !std::isfinite(*c.xmax)) config_error("xmax must be finite");
  if (c.xmin && c.xmax && !(*c.xmin < *c.xmax)) config_error("grid needs xmin < xmax");
  try {
    const CircuitParams params = circuit_params(c);
    if (!params.peaks_ordered()) fail(ErrorKind::kDomain, "n*theta must not exceed pi/2");
    const InputPreset preset = load_preset(c);
    const Backend backend = resolve_backend(c, preset);
    if (backend == Backend::kDense && c.n > kDenseMaxPhotons) {
      fail(ErrorKind::kCapacity, "dense backend holds at most n=24; use --backend symmetric");
    }
    if (backend == Backend::kSymmetric && !is_permutation_invariant(preset)) {
      fail(ErrorKind::kDomain, "symmetric backend needs a permutation-invariant input");
    }
    // Construct once so normalization and index errors surface here.
    (void)make_input(preset, c.n, backend);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kIo) throw;
    fail(ErrorKind::kConfig, std::string(to_string(e.kind())) + ": " + e.what());
  }
}

void validate_sweep(const RunConfig& c) {
  if (c.format != "json" && c.format != "csv") fail(ErrorKind::kConfig, "format must be json or csv");
  if (c.ns.empty() || c.alphas.empty() || c.thetas.empty()) {
    fail(ErrorKind::kConfig, "sweep needs non-empty ns, alphas and thetas");
  }
  try {
    (void)load_preset(c);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kIo) throw;
    fail(ErrorKind::kConfig, std::string(to_string(e.kind())) + ": " + e.what());
  }
}

}  // namespace kerrsim
