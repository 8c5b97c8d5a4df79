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

#ifndef VISCOLIMIT_PRESSURE_HPP_
#define VISCOLIMIT_PRESSURE_HPP_

#include <array>
#include <limits>
#include <utility>
#include <vector>

namespace viscolimit {

/// Result of auditing the hyperbolicity / genuine-nonlinearity conditions
/// on the log-spaced audit grid.
struct PressureAudit {
  int samples = 0;
  double min_dp = 0.0;           // min p'(rho)
  double min_gnl = 0.0;          // min (rho p'' + 2 p') / (p / rho)
  double first_violation = -1.0; // rho of first failure, < 0 if none
  /// Fitted M_n with |P^(n)(rho)| <= M_n rho^(2 theta - n) on rho <= rho*.
  /// n = 3 is recorded only.
  std::array<double, 4> correction_bound{};
};

/// Barotropic pressure law: kappa rho^gamma below the blend, c* rho above
/// rho*, joined over [blend_lo_frac * rho*, rho*] by a quintic Hermite
/// blend of log p in log rho (value, slope, curvature matched).
///
/// A "pure" law is kappa rho^gamma everywhere (rho* = +inf).
///
/// Immutable after construction.
class PressureLaw {
 public:
  static PressureLaw make(double gamma, double kappa, double rho_star,
                          double c_star, double blend_lo_frac = 0.5);
  static PressureLaw pure_gamma(double gamma, double kappa);

  double gamma() const { return gamma_; }
  double kappa() const { return kappa_; }
  double rho_star() const { return rho_star_; }
  double c_star() const { return c_star_; }
  double theta() const { return 0.5 * (gamma_ - 1.0); }
  double lambda() const { return (3.0 - gamma_) / (2.0 * (gamma_ - 1.0)); }
  double rho_lo() const { return rho_lo_; }
  bool is_pure() const { return pure_; }
  double blend_lo_frac() const { return blend_lo_frac_; }
  /// Quintic coefficients of log p = L0 + d0 t + c3 t^3 + c4 t^4 + c5 t^5,
  /// t = (log rho - log rho_lo) / (log rho* - log rho_lo).
  std::array<double, 5> blend_coefficients() const {
    return {L0_, d0_, c3_, c4_, c5_};
  }
  const PressureAudit& audit() const { return audit_; }

  // Pressure and derivatives.
  double p(double rho) const;
  double dp(double rho) const;
  double d2p(double rho) const;
  double d3p(double rho) const;
  double sound_speed(double rho) const;  // sqrt(p')

  /// P(rho) = p / (kappa rho^gamma) - 1, and its first three derivatives.
  std::array<double, 4> correction(double rho) const;

  // k(rho) = int_0^rho sqrt(p'(s))/s ds and derivatives.
  double k(double rho) const;
  double dk(double rho) const;
  double d2k(double rho) const;
  double d3k(double rho) const;
  /// Inverse of k; value in [0, inf).
  double k_inverse(double kval) const;

  /// e(rho) = int_0^rho p(s)/s^2 ds; e'(rho) = p/rho^2.
  double e(double rho) const;
  double de(double rho) const;

  /// Relative internal energy e*(rho, rbar) >= 0.
  double e_star(double rho, double rbar) const;

  /// f with f'' = 2 p' e / rho, f(0) = f'(0) = 0.
  double f_dagger(double rho) const;
  double df_dagger(double rho) const;
  double d2f_dagger(double rho) const;

  /// (w, z) = (u + k, u - k).
  std::pair<double, double> riemann_invariants(double rho, double u) const;

 private:
  PressureLaw() = default;
  void build_tables();
  void run_audit();

  // log p and its X-derivatives on the blend.
  void blend_log(double X, double& L, double& L1, double& L2, double& L3) const;
  bool in_blend(double rho) const { return !pure_ && rho > rho_lo_ && rho < rho_star_; }

  struct Table {
    std::vector<double> v, d1, d2;  // values and first two X-derivatives
  };
  double table_eval(const Table& t, double X) const;

  double gamma_ = 2.0, kappa_ = 1.0;
  double rho_star_ = std::numeric_limits<double>::infinity();
  double c_star_ = 1.0;
  double blend_lo_frac_ = 0.5;
  double rho_lo_ = std::numeric_limits<double>::infinity();
  bool pure_ = true;

  double X_lo_ = 0.0, X_hi_ = 0.0, h_ = 1.0;
  double L0_ = 0.0, d0_ = 0.0, c3_ = 0.0, c4_ = 0.0, c5_ = 0.0;

  // Quantities at rho* (carried into the high branch).
  double k_star_ = 0.0, e_star_val_ = 0.0, f_star_ = 0.0, fp_star_ = 0.0;

  // Blend tables on a uniform X grid.
  int n_nodes_ = 0;
  double dX_ = 0.0;
  Table k_tab_, e_tab_, fp_tab_, f_tab_;

  PressureAudit audit_;
};

}  // namespace viscolimit

#endif  // VISCOLIMIT_PRESSURE_HPP_
