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

#ifndef VISCOLIMIT_ENTROPY_HPP_
#define VISCOLIMIT_ENTROPY_HPP_

#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "viscolimit/kernels.hpp"
#include "viscolimit/pressure.hpp"
#include "viscolimit/psi.hpp"

namespace viscolimit {

/// Entropy/flux values with derivatives in (rho, u) coordinates.
struct EntropyPoint {
  double eta = 0.0;
  double q = 0.0;
  double eta_rho = 0.0;   // d/drho at fixed u
  double eta_u = 0.0;
  double eta_uu = 0.0;
  double eta_urho = 0.0;  // d^2/(du drho)

  // Conservative-variable derivatives, m = rho u.
  double eta_m(double rho) const { return eta_u / rho; }
  double eta_mm(double rho) const { return eta_uu / (rho * rho); }
  /// d(eta_m)/du at fixed rho.
  double eta_mu(double rho) const { return eta_uu / rho; }
  /// d(eta_m)/drho at fixed u.
  double eta_mrho(double rho) const { return eta_urho / rho - eta_u / (rho * rho); }
  /// d(eta)/drho at fixed m.
  double eta_rho_m(double rho, double u) const { return eta_rho - u / rho * eta_u; }
};

class TablePairBuilder;

class EntropyPair {
 public:
  virtual ~EntropyPair() = default;
  virtual EntropyPoint eval(double rho, double u) const = 0;
  virtual std::string description() const = 0;
  /// Largest density the pair can be evaluated at.
  virtual double rho_max() const { return std::numeric_limits<double>::infinity(); }
};

/// eta* = (1/2) rho u^2 + rho e(rho), q* = (1/2) rho u^3 + rho u e + p u.
class MechanicalPair final : public EntropyPair {
 public:
  explicit MechanicalPair(PressureLaw law) : law_(std::move(law)) {}
  EntropyPoint eval(double rho, double u) const override;
  std::string description() const override { return "mechanical"; }

 private:
  PressureLaw law_;
};

/// eta^dagger = rho u^4 / 12 + e rho u^2 + f(rho),
/// q^dagger = u eta^dagger + p u^3 / 3 + (rho f' - f) u.
class DaggerPair final : public EntropyPair {
 public:
  explicit DaggerPair(PressureLaw law) : law_(std::move(law)) {}
  EntropyPoint eval(double rho, double u) const override;
  std::string description() const override { return "dagger"; }

 private:
  PressureLaw law_;
};

/// Galilean shift: eta'(rho, u) = eta(rho, u - u_minus),
/// q'(rho, u) = q(rho, u - u_minus) + u_minus eta(rho, u - u_minus).
class ShiftedPair final : public EntropyPair {
 public:
  ShiftedPair(std::shared_ptr<const EntropyPair> base, double u_minus)
      : base_(std::move(base)), u_minus_(u_minus) {}
  EntropyPoint eval(double rho, double u) const override;
  std::string description() const override;
  double rho_max() const override { return base_->rho_max(); }
  double u_minus() const { return u_minus_; }

 private:
  std::shared_ptr<const EntropyPair> base_;
  double u_minus_;
};

struct MarchConfig {
  double u_lo = -10.0;         // target u window
  double u_hi = 10.0;
  double du = 0.02;            // requested spacing; adjusted so rho* lies on a row
  double cfl = 1.0;            // dk / du, in (0, 1]
  double rho_max = std::exp(2.0);
  int min_panels = 4;          // Gauss-Legendre panels for the exact rows
};

/// Tabulated pair on a uniform (k, u) grid, k = k(rho). Rows with
/// k <= k(rho_lo) are exact (self-similar gamma-law quadrature); the rest
/// are marched by leapfrog on zeta = eta sqrt(k').
class TabulatedPair final : public EntropyPair {
 public:
  EntropyPoint eval(double rho, double u) const override;
  std::string description() const override { return description_; }
  double rho_max() const override { return rho_valid_max_; }

  const PressureLaw& law() const { return law_; }
  int rows() const { return nk_; }
  int cols() const { return nu_; }
  double dk() const { return dk_; }
  double du() const { return du_; }
  double u0() const { return u0_; }
  double row_k(int j) const { return j * dk_; }
  double row_rho(int j) const { return rho_row_[j]; }
  double col_u(int i) const { return u0_ + i * du_; }
  /// First marched row (rows below are exact); equals rows() if none.
  int first_marched_row() const { return j_march_; }
  /// Row index whose k equals k(rho*), or -1.
  int rho_star_row() const { return j_star_; }
  bool compact() const { return compact_; }
  double z_star() const { return z_star_; }
  double w_star() const { return w_star_; }
  const MarchConfig& config() const { return cfg_; }

  // Node access.
  EntropyPoint node(int j, int i) const;
  /// Cubic interpolation along a row (no k interpolation).
  EntropyPoint row_eval(int j, double u) const;

 private:
  friend class TablePairBuilder;
  explicit TabulatedPair(PressureLaw law) : law_(std::move(law)) {}
  std::size_t at(int j, int i) const { return static_cast<std::size_t>(j) * nu_ + i; }

  PressureLaw law_;
  MarchConfig cfg_;
  std::string description_;
  int nk_ = 0, nu_ = 0, j_march_ = 0, j_star_ = -1;
  double dk_ = 0.0, du_ = 0.0, u0_ = 0.0;
  double rho_valid_max_ = 0.0;
  bool compact_ = false;
  double z_star_ = 0.0, w_star_ = 0.0;
  std::vector<double> rho_row_;
  std::vector<double> eta_, q_, eta_rho_, eta_u_, eta_uu_, eta_urho_;
};

/// Weak entropy pair generated by psi.
std::shared_ptr<TabulatedPair> march_entropy(const PressureLaw& law, const TestFunctionPsi& psi,
                                             const MarchConfig& cfg);
/// The entropy kernel itself, eta(rho, u) = chi(rho, u - 0).
std::shared_ptr<TabulatedPair> march_kernel(const PressureLaw& law, const MarchConfig& cfg);

/// Exact gamma-law pair at one point by self-similar quadrature
/// (valid for rho <= rho_lo of the law).
EntropyPoint gamma_entropy_exact(const PressureLaw& law, const TestFunctionPsi& psi, double rho,
                                 double u, int min_panels = 8);

/// Boundary data on rho = 1 taken from row `rho_star_row()` of a table;
/// `flux` selects (Q, Q_rho) instead of (eta, eta_rho).
kernels::BoundaryData boundary_data(const TabulatedPair& table, bool flux);

/// (eta, q) at rho >= 1 via the isothermal convolution representation.
/// Requires rho* = c* = 1 and a table whose window covers [u - log rho, u + log rho].
std::pair<double, double> convolution_entropy(const TabulatedPair& table, double rho, double u,
                                              int panels = 16);

/// Max over the two compatibility relations
///   q_rho = u eta_rho + (p'/rho) eta_u,  q_u = rho eta_rho + u eta_u,
/// with derivatives of eta, q taken by central differences of step h.
double compatibility_residual(const EntropyPair& pair, const PressureLaw& law, double rho,
                              double u, double h = 1e-4);

/// Fitted constants for the hat pair (psi = s|s|/2).
struct HatBoundReport {
  double m_low = 0.0;       // q-hat lower bound, rho <= rho*
  double m_high = 0.0;      // q-hat lower bound, rho >= rho*
  double m_eta = 0.0;       // |eta-hat| <= M eta*
  double m_eta_mm = 0.0;    // |rho eta-hat_mm| <= M
  double m_remainder = 0.0; // shifted-pair Taylor remainder constant
  double m_eta_mu = 0.0;    // |eta-hat_mu| sqrt(log rho), rho >= 2 rho*
  double m_eta_mrho = 0.0;  // |eta-hat_mrho| rho log rho, rho >= 2 rho*
  int samples = 0;
  bool falsified = false;   // some constant exceeded 1e6
};

struct HatPair {
  std::shared_ptr<TabulatedPair> table;
  HatBoundReport report;
};

/// Builds the hat pair on the audit box [1e-3, e^3] x [-8, 8] and fits the
/// constants of its bounds. `u_minus` is used for the remainder check.
HatPair hat_pair(const PressureLaw& law, double du = 0.02, double u_minus = 0.5);

/// Fitted constants for the compact-pair bounds.
struct CompactBoundReport {
  double m_eta = 0.0, m_q = 0.0, m_deriv = 0.0, m_mrho = 0.0;
  double support_violation = 0.0;  // max |eta|,|q| at nodes outside the cone
  int nodes_outside = 0;
};
CompactBoundReport compact_pair_bounds(const TabulatedPair& table);

}  // namespace viscolimit

#endif  // VISCOLIMIT_ENTROPY_HPP_
