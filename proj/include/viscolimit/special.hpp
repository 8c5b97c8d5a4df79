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

#ifndef VISCOLIMIT_SPECIAL_HPP_
#define VISCOLIMIT_SPECIAL_HPP_

#include <span>
#include <vector>

namespace viscolimit::special {

/// Argument above which I0/I1 switch from the power series to the
/// large-argument asymptotic expansion.
inline constexpr double kBesselISwitch = 30.0;

// Modified Bessel functions of the first kind, x >= 0.
double bessel_i0(double x);
double bessel_i1(double x);

// Bessel functions of the first kind. Power series up to |x| = 12, Hankel
// asymptotics beyond.
double bessel_j0(double x);
double bessel_j1(double x);

/// The profile f(y) = J0(sqrt(y)/2), continued to y < 0 as I0(sqrt(-y)/2).
/// Entire in y; satisfies y f'' + f' + f/16 = 0 with f(0) = 1.
double profile_f(double y);

/// f'(y). Equals -1/16 at y = 0.
double profile_f_prime(double y);

struct OdeResidualReport {
  std::vector<double> y;
  std::vector<double> residual;  // |y f'' + f' + f/16| per grid point
  double max_residual = 0.0;
  double max_at = 0.0;
  bool empty() const { return y.empty(); }
};

/// Evaluates the profile ODE residual with 5-point finite differences
/// (step `h`) at every grid point.
OdeResidualReport ode_check_f(std::span<const double> y_grid, double h = 1e-3);

}  // namespace viscolimit::special

#endif  // VISCOLIMIT_SPECIAL_HPP_
