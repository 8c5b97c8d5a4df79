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

#ifndef VISCOLIMIT_NS_SOLVER_HPP_
#define VISCOLIMIT_NS_SOLVER_HPP_

#include <functional>
#include <string>
#include <vector>

#include "viscolimit/pressure.hpp"

namespace viscolimit {

struct EndState {
  double rho = 1.0;
  double u = 0.0;
};

/// Space-time integrals accumulated step by step (cumulative from t = 0).
struct TimeIntegrals {
  double viscous = 0.0;        // eps int int |u_x|^2
  double density = 0.0;        // eps int int (p'/rho^2) |rho_x|^2
  double pressure_K = 0.0;     // int int_K rho p(rho)
  double kinetic_K = 0.0;      // int int_K rho |u|^3
  double dagger = 0.0;         // eps int int (|u u_x|^2 + e(rho) |u_x|^2)
  double boundary_mass = 0.0;  // int (F_left - F_right) dt, mass flux in
};

/// Cell averages on a uniform grid of [-L, L] with far-field end states.
struct FluidState {
  int N = 0;
  double L = 1.0;
  double dx = 0.0;
  double t = 0.0;
  std::vector<double> rho, m;
  EndState left, right;
  TimeIntegrals integrals;

  static FluidState uniform_grid(int N, double L, EndState left, EndState right);
  double x(int i) const { return -L + (i + 0.5) * dx; }
  double u(int i) const { return m[i] / rho[i]; }
  double mass() const;
};

enum class FluxKind { kHLL, kRusanov };
enum class ViscousMode { kAuto, kExplicit, kImplicit };

struct SolverConfig {
  double epsilon = 1e-2;
  double cfl = 0.45;
  int N = 4096;
  double L = 1.0;
  double t_end = 0.2;
  FluxKind flux = FluxKind::kHLL;
  ViscousMode viscous = ViscousMode::kAuto;
  double output_dt = 0.02;          // snapshot cadence (<= 0: start and end only)
  double K_lo = -0.5, K_hi = 0.5;   // monitor interval for the local integrals
  double far_field_tol = 1e-8;      // outer 10% must stay this close to the end states
  double positivity_floor = 1e-12;
  bool keep_snapshots = true;
};

/// Validates a config (cfl in (0,1), N >= 8, L > 0, eps >= 0, K inside the domain).
void validate(const SolverConfig& cfg);

std::string to_string(FluxKind k);
std::string to_string(ViscousMode v);

/// Energy and density-gradient measures of regularized data.
struct InitialDataReport {
  double width = 0.0;      // mollifier half-width
  double floor = 0.0;      // sqrt(eps)
  double E0 = 0.0;         // relative energy
  double E1 = 0.0;         // eps^2 int |rho_x|^2 / rho^3
  double M0 = 0.0;         // int rho |u - ubar|
  double min_rho = 0.0;
};

struct RegularizationConfig {
  double width_scale = 1.0;     // half-width = scale * eps^exponent
  double width_exponent = 0.25;
  double L0 = 0.5;              // reference functions constant outside [-L0, L0]
};

/// rho^eps = mollify(max(rho0, sqrt(eps))), u^eps = mollify(u0); cell averages
/// on N cells of [-L, L]. End states are the values of rho0, u0 at -L and L.
FluidState regularize_initial_data(const PressureLaw& law, const std::function<double(double)>& rho0,
                                   const std::function<double(double)>& u0, double epsilon, int N,
                                   double L, const RegularizationConfig& reg = {},
                                   InitialDataReport* report = nullptr);

/// Smooth monotone reference functions joining the end states over [-L0, L0].
struct ReferenceState {
  EndState left, right;
  double L0 = 0.5;
  double rho(double x) const;
  double u(double x) const;
};

struct StepInfo {
  double dt = 0.0;
  bool implicit = false;
  double max_speed = 0.0;
};

/// Advances one step of size min(CFL step, dt_max). Throws kSolverFailure on
/// positivity loss.
StepInfo step(const PressureLaw& law, FluidState& state, const SolverConfig& cfg,
              double dt_max = 1e300);

/// CFL time step for the current state (hyperbolic, plus the explicit
/// viscous limit when the explicit mode is selected).
double stable_dt(const PressureLaw& law, const FluidState& state, const SolverConfig& cfg);

using Probe = std::function<void(const FluidState&)>;

struct RunResult {
  std::vector<FluidState> snapshots;  // at t = 0, every output_dt, and t_end
  FluidState final_state;
  int steps = 0;
  int implicit_steps = 0;
  double wall_seconds = 0.0;
};

/// Advances to cfg.t_end calling probes at every snapshot time. Checks the
/// far-field region at the end; errors carry the failure time.
RunResult run(const PressureLaw& law, FluidState state, const SolverConfig& cfg,
              const std::vector<Probe>& probes = {});

/// Max deviation from the end states over the outer 10% of the domain.
double far_field_deviation(const FluidState& state);

}  // namespace viscolimit

#endif  // VISCOLIMIT_NS_SOLVER_HPP_
