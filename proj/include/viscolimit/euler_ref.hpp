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

#ifndef VISCOLIMIT_EULER_REF_HPP_
#define VISCOLIMIT_EULER_REF_HPP_

#include <string>
#include <vector>

#include "viscolimit/ns_solver.hpp"
#include "viscolimit/pressure.hpp"

namespace viscolimit {

enum class WaveKind { kNone, kShock, kRarefaction };
std::string to_string(WaveKind w);

/// Self-similar solution of the Riemann problem for the isentropic Euler
/// equations; sample(xi) gives (rho, u) at x / t = xi.
class RiemannSolution {
 public:
  const EndState& left() const { return left_; }
  const EndState& right() const { return right_; }
  const EndState& middle() const { return middle_; }
  WaveKind wave1() const { return w1_; }
  WaveKind wave2() const { return w2_; }
  /// Shock speed, or (head, tail) of a rarefaction fan; equal for shocks.
  double wave1_lo() const { return s1_lo_; }
  double wave1_hi() const { return s1_hi_; }
  double wave2_lo() const { return s2_lo_; }
  double wave2_hi() const { return s2_hi_; }
  /// Speeds of all shocks (discontinuities) in the solution.
  std::vector<double> shock_speeds() const;

  EndState sample(double xi) const;

 private:
  friend RiemannSolution exact_riemann(const PressureLaw&, EndState, EndState);
  explicit RiemannSolution(PressureLaw law) : law_(std::move(law)) {}
  PressureLaw law_;
  EndState left_, right_, middle_;
  WaveKind w1_ = WaveKind::kNone, w2_ = WaveKind::kNone;
  double s1_lo_ = 0, s1_hi_ = 0, s2_lo_ = 0, s2_hi_ = 0;
};

/// Exact Riemann solver from the two wave curves (integral curves through k,
/// Hugoniot loci through p); valid for any law satisfying strict
/// hyperbolicity and genuine nonlinearity. Intermediate density by bisection
/// and Newton polish to 1e-12. Throws kDomain if the data generate vacuum.
RiemannSolution exact_riemann(const PressureLaw& law, EndState left, EndState right);

/// Same, restricted to pure gamma laws.
RiemannSolution exact_riemann_gamma(const PressureLaw& law, EndState left, EndState right);

/// Max relative Rankine-Hugoniot residual over the shocks of a solution.
double rankine_hugoniot_residual(const PressureLaw& law, const RiemannSolution& sol);

/// eps = 0 HLL run on the given grid (intended >= 4x finer than the NS runs).
RunResult euler_reference_run(const PressureLaw& law, const FluidState& initial,
                              SolverConfig cfg);

/// Riemann initial data as cell averages (no regularization).
FluidState riemann_cells(EndState left, EndState right, int N, double L);

/// L1(K) distance of (rho, m) between a state and the exact solution at
/// time state.t (16 sub-samples per cell).
double l1_distance_exact(const FluidState& s, const RiemannSolution& sol, double K_lo, double K_hi);

/// L1(K) distance of (rho, m) between a coarse state and a finer state whose
/// cell count is an integer multiple (coarse state injected onto the fine grid).
double l1_distance_fine(const FluidState& coarse, const FluidState& fine, double K_lo,
                        double K_hi);

}  // namespace viscolimit

#endif  // VISCOLIMIT_EULER_REF_HPP_
