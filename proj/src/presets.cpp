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

#include "viscolimit/presets.hpp"

#include <cmath>

namespace viscolimit {

const std::vector<InitialPreset>& initial_presets() {
  static const std::vector<InitialPreset> presets{
      {"sod_like", "Riemann data (1, 0 | 0.25, 0): left rarefaction, right shock", true,
       {1.0, 0.0}, {0.25, 0.0}},
      {"colliding_streams", "Riemann data (1, 1 | 1, -1): two shocks moving apart", true,
       {1.0, 1.0}, {1.0, -1.0}},
      {"high_density_riemann",
       "Riemann data (4, 0 | 0.5, 0): left state above rho*, exercises the isothermal branch",
       true, {4.0, 0.0}, {0.5, 0.0}},
      {"smooth_pulse",
       "Gaussian density pulse on the rest state (1, 0); equal end states (energy benchmark)",
       false, {1.0, 0.0}, {1.0, 0.0}},
  };
  return presets;
}

const std::vector<ExperimentPreset>& experiment_presets() {
  static const std::vector<ExperimentPreset> presets{
      {"kernel_validation",
       "kernel PDE residual order, chi_flat decomposition, Bessel integrals, kernel identity"},
      {"entropy_crosscheck",
       "marched entropy pairs vs closed forms, convolution representation, support audit"},
      {"vanishing_viscosity",
       "epsilon sweep on Riemann data: L1(K) convergence table, energy and dagger-energy monitors"},
      {"commutation", "epsilon sweep: commutation residual on smooth patches of the solution"},
      {"dissipation",
       "entropy dissipation identity residual under grid halving, mu-proxy mass per epsilon"},
      {"energy_balance",
       "per-step discrete energy inequality on equal end states, plus mass conservation"},
  };
  return presets;
}

const InitialPreset* find_initial_preset(const std::string& name) {
  for (const auto& p : initial_presets())
    if (p.name == name) return &p;
  return nullptr;
}

bool is_experiment(const std::string& name) {
  for (const auto& p : experiment_presets())
    if (p.name == name) return true;
  return false;
}

InitialProfiles make_profiles(const InitialPreset& preset, double rho_left, double u_left,
                              double rho_right, double u_right, double amplitude,
                              double pulse_width) {
  InitialProfiles out;
  out.left = preset.left;
  out.right = preset.right;
  if (!std::isnan(rho_left)) out.left.rho = rho_left;
  if (!std::isnan(u_left)) out.left.u = u_left;
  if (!std::isnan(rho_right)) out.right.rho = rho_right;
  if (!std::isnan(u_right)) out.right.u = u_right;
  out.riemann = preset.riemann;
  const EndState L = out.left, R = out.right;
  if (preset.riemann) {
    out.rho = [L, R](double x) { return x < 0.0 ? L.rho : R.rho; };
    out.u = [L, R](double x) { return x < 0.0 ? L.u : R.u; };
  } else {
    // Gaussian bump on a background that interpolates the end states.
    out.rho = [L, R, amplitude, pulse_width](double x) {
      const double base = x < 0.0 ? L.rho : R.rho;
      return base + amplitude * std::exp(-(x * x) / (pulse_width * pulse_width));
    };
    out.u = [L, R](double x) { return x < 0.0 ? L.u : R.u; };
  }
  return out;
}

}  // namespace viscolimit
