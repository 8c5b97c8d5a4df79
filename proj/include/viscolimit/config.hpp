// Copyright 2026 The viscolimit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VISCOLIMIT_CONFIG_HPP_
#define VISCOLIMIT_CONFIG_HPP_

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "viscolimit/ns_solver.hpp"
#include "viscolimit/pressure.hpp"

namespace viscolimit {

/// Parsed `key = value` pairs with the line each key came from.
/// Format: one `section.key = value` per line; `#` starts a comment; blank
/// lines are ignored; keys are case-sensitive; a key may appear once.
class KeyValueFile {
 public:
  static KeyValueFile parse(const std::string& text, const std::string& source = "config");
  static KeyValueFile load(const std::string& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  const std::string& value(const std::string& key) const;
  int line(const std::string& key) const;
  const std::string& source() const { return source_; }
  std::vector<std::string> keys() const;

 private:
  std::string source_;
  std::map<std::string, std::pair<std::string, int>> entries_;
};

struct PressureBlock {
  std::string law = "hybrid";  // hybrid | gamma
  double gamma = 1.4;
  double kappa = 1.0;
  double rho_star = 1.0;
  double c_star = 1.0;
  PressureLaw make() const;
};

struct InitialBlock {
  std::string preset = "sod_like";
  // Optional overrides of the preset's end states (NaN = preset value).
  double rho_left = NAN, u_left = NAN, rho_right = NAN, u_right = NAN;
  double amplitude = 1.0;    // smooth_pulse height above the background
  double pulse_width = 0.1;  // smooth_pulse Gaussian width
  double mollifier_exponent = 1.0;
  double mollifier_scale = 1.0;
  double L0 = 0.5;
};

struct DiagnosticsBlock {
  double K_lo = -0.8, K_hi = 0.8;
  int patch_cells = 16;
  int patch_samples = 8;
  double t_min = 0.05;
  double shock_margin = 0.05;
  double edge_margin = 0.02;
  std::pair<double, double> psi1{-1.5, -0.5};
  std::pair<double, double> psi2{-1.2, 0.2};
  int reference_refine = 4;
};

struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 20260101;
  std::string output_dir = "viscolimit_out";
  std::string snapshots = "final";  // none | final | all
  PressureBlock pressure;
  SolverConfig solver;
  std::vector<double> eps{1e-2, 5e-3, 2.5e-3, 1.25e-3};
  InitialBlock initial;
  DiagnosticsBlock diagnostics;
  /// Keys and values as written (for the metadata echo), in key order.
  std::vector<std::pair<std::string, std::string>> echo;
};

/// Known keys with their documentation, in catalog order.
const std::vector<std::pair<std::string, std::string>>& config_keys();

/// Builds and validates a config. Errors are kConfig with the source and
/// line number of the offending key (or the missing key's name).
ExperimentConfig parse_experiment_config(const KeyValueFile& kv);
ExperimentConfig load_experiment_config(const std::string& path);

}  // namespace viscolimit

#endif  // VISCOLIMIT_CONFIG_HPP_
