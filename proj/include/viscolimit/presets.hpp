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

#ifndef VISCOLIMIT_PRESETS_HPP_
#define VISCOLIMIT_PRESETS_HPP_

#include <functional>
#include <string>
#include <vector>

#include "viscolimit/ns_solver.hpp"

namespace viscolimit {

struct InitialPreset {
  std::string name;
  std::string description;
  bool riemann = true;  // piecewise constant with a jump at x = 0
  EndState left, right;
};

struct ExperimentPreset {
  std::string name;
  std::string description;
};

const std::vector<InitialPreset>& initial_presets();
const std::vector<ExperimentPreset>& experiment_presets();
/// nullptr if unknown.
const InitialPreset* find_initial_preset(const std::string& name);
bool is_experiment(const std::string& name);

/// Initial density and velocity profiles of a preset with optional end-state
/// overrides (NaN keeps the preset value) and pulse parameters.
struct InitialProfiles {
  EndState left, right;
  bool riemann = true;
  std::function<double(double)> rho, u;
};
InitialProfiles make_profiles(const InitialPreset& preset, double rho_left, double u_left,
                              double rho_right, double u_right, double amplitude,
                              double pulse_width);

}  // namespace viscolimit

#endif  // VISCOLIMIT_PRESETS_HPP_
