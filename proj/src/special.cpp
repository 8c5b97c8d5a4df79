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

#include "viscolimit/special.hpp"

#include <cmath>
#include <numbers>

#include "viscolimit/error.hpp"

namespace viscolimit::special {

namespace {

constexpr double kSeriesEps = 1e-17;

// sum_k (x^2/4)^k / (k! (k+nu)!) for nu in {0, 1}; alternating when sign < 0.
double bessel_series(double x, int nu, double sign) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  for (int j = 1; j <= nu; ++j) term /= j;
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= sign * q / (static_cast<double>(k) * (k + nu));
    sum += term;
    if (std::abs(term) < kSeriesEps * std::abs(sum)) break;
  }
  return nu == 0 ? sum : 0.5 * x * sum;
}

// e^x / sqrt(2 pi x) * sum_k (-1)^k a_k(nu) / x^k, truncated at the
// smallest term.
double bessel_i_asymptotic(double x, int nu) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  double prev = std::abs(term);
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(term) > prev) break;
    sum += term;
    prev = std::abs(term);
    if (prev < kSeriesEps * std::abs(sum)) break;
  }
  return std::exp(x) / std::sqrt(2.0 * std::numbers::pi * x) * sum;
}

// Hankel expansion for J_nu, nu in {0, 1}.
double bessel_j_asymptotic(double x, int nu) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0;
  double term = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 100; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(term) > prev) break;
    prev = std::abs(term);
    // k odd feeds Q, k even feeds P, with alternating signs.
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      case 0: p += term; break;
    }
    if (prev < kSeriesEps) break;
  }
  const double chi = x - (0.5 * nu + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) *
         (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_i0(double x) {
  require(x >= 0.0, ErrorCode::kInvalidArgument, "bessel_i0: negative argument");
  return x <= kBesselISwitch ? bessel_series(x, 0, 1.0)
                             : bessel_i_asymptotic(x, 0);
}

double bessel_i1(double x) {
  require(x >= 0.0, ErrorCode::kInvalidArgument, "bessel_i1: negative argument");
  return x <= kBesselISwitch ? bessel_series(x, 1, 1.0)
                             : bessel_i_asymptotic(x, 1);
}

double bessel_j0(double x) {
  x = std::abs(x);
  return x <= 12.0 ? bessel_series(x, 0, -1.0) : bessel_j_asymptotic(x, 0);
}

double bessel_j1(double x) {
  const double s = x < 0.0 ? -1.0 : 1.0;
  x = std::abs(x);
  return s * (x <= 12.0 ? bessel_series(x, 1, -1.0) : bessel_j_asymptotic(x, 1));
}

double profile_f(double y) {
  if (y >= 0.0) return bessel_j0(0.5 * std::sqrt(y));
  return bessel_i0(0.5 * std::sqrt(-y));
}

double profile_f_prime(double y) {
  // Near the origin differentiate f(y) = sum_k z^k / (k!)^2, z = -y/16,
  // termwise: f' = -1/16 sum_{k>=1} z^{k-1} / ((k-1)! k!).
  if (std::abs(y) < 1e-2) {
    const double z = -y / 16.0;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 2; k < 30; ++k) {
      term *= z / (static_cast<double>(k - 1) * k);
      sum += term;
      if (std::abs(term) < kSeriesEps) break;
    }
    return -sum / 16.0;
  }
  if (y > 0.0) {
    const double r = std::sqrt(y);
    return -bessel_j1(0.5 * r) / (4.0 * r);
  }
  const double r = std::sqrt(-y);
  return -bessel_i1(0.5 * r) / (4.0 * r);
}

OdeResidualReport ode_check_f(std::span<const double> y_grid, double h) {
  OdeResidualReport report;
  for (double y : y_grid) {
    const double fm2 = profile_f(y - 2 * h), fm1 = profile_f(y - h);
    const double f0 = profile_f(y);
    const double fp1 = profile_f(y + h), fp2 = profile_f(y + 2 * h);
    const double d1 = (-fp2 + 8 * fp1 - 8 * fm1 + fm2) / (12 * h);
    const double d2 = (-fp2 + 16 * fp1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h);
    const double r = std::abs(y * d2 + d1 + f0 / 16.0);
    report.y.push_back(y);
    report.residual.push_back(r);
    if (r >= report.max_residual) {
      report.max_residual = r;
      report.max_at = y;
    }
  }
  return report;
}

}  // namespace viscolimit::special
