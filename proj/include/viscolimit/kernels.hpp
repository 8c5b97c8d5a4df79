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

#ifndef VISCOLIMIT_KERNELS_HPP_
#define VISCOLIMIT_KERNELS_HPP_

#include <functional>
#include <vector>

#include "viscolimit/pressure.hpp"

namespace viscolimit::kernels {

/// Default sample count over the support of a LineMeasure; one unit of
/// padding is added on each side.
inline constexpr int kDefaultMeasurePoints = 2048;

struct Atom {
  double location = 0.0;
  double weight = 0.0;
};

/// A measure in the shift variable v = u - s: finitely many atoms plus an
/// absolutely continuous part.
///
/// The density is always available as uniform samples (for export and for
/// trapezoid pairing). When `cone_weighted` is set, the density on
/// |v - center| < radius is additionally known analytically through
///   cone_weighted(phi) = density(center + radius sin phi) * radius cos phi,
/// which is smooth even when the density has inverse-square-root edge
/// singularities; pairing then integrates in phi instead of using samples.
struct LineMeasure {
  std::vector<Atom> atoms;
  double s_lo = 0.0;
  double ds = 0.0;
  std::vector<double> density;

  double center = 0.0;
  double radius = 0.0;
  std::function<double(double)> cone_weighted;

  double s_hi() const { return s_lo + ds * (density.empty() ? 0 : density.size() - 1); }
  /// Linear interpolation of the samples; zero outside the sample range.
  double density_at(double v) const;
  /// Integral of g against the measure.
  double pair(const std::function<double(double)>& g, int panels = 64) const;
  double total_mass() const;
};

// --- Isothermal kernels in R = log(rho) coordinates --------------------

/// chi#(R, v) = (1/2) sgn(R) e^{R/2} f(v^2 - R^2) 1_{|v| < |R|}.
double chi_sharp_R(double R, double v);
/// Absolutely continuous part of chi#_R (atoms (1/2) e^{R/2} at v = +-R).
double chi_sharp_dR_density(double R, double v);
/// Density of chi_flat = chi#_R - chi# inside the cone.
double chi_flat_density_R(double R, double v);

/// chi#(rho, v) for rho >= 1.
double chi_sharp(double rho, double v);
/// chi_flat(rho, .) as a LineMeasure on a grid covering [-R-1, R+1].
LineMeasure chi_flat(double rho, int points = kDefaultMeasurePoints);
/// chi#(rho, .) as a LineMeasure (density only, analytic cone part).
LineMeasure chi_sharp_measure(double rho, int points = kDefaultMeasurePoints);
/// chi#_R(R, .) as a LineMeasure (two atoms plus density), R > 0.
LineMeasure chi_sharp_dR_measure(double R, int points = kDefaultMeasurePoints);

/// h#(rho, v) = (1/2) sgn(v) + d/du int_0^R chi#(r, v) dr.
double h_sharp(double rho, double v);
/// h_flat = chi#_u - h# as a LineMeasure sampled on [v_lo, v_hi]; its
/// density equals -(1/2) sgn(v) outside the cone, so it is not compact.
LineMeasure h_flat(double rho, double v_lo, double v_hi,
                   int points = kDefaultMeasurePoints);

// --- gamma-law leading-order kernel ------------------------------------

/// M_lambda = Gamma(lambda + 3/2) / (sqrt(pi) Gamma(lambda + 1)).
double m_lambda(double lambda);
/// G(rho, v) = [k(rho)^2 - v^2]_+^order.
double g_lambda(const PressureLaw& law, double rho, double v, double order);
/// a#(rho) = M_lambda k^{-lambda} k'^{-1/2};  b#(rho) = (rho k'/k) a#.
double a_sharp(const PressureLaw& law, double rho);
double b_sharp(const PressureLaw& law, double rho);

/// Exact weak-entropy kernel of a pure gamma law,
/// chi(rho, v) = M_lambda c^{-1/theta} G_lambda with c = sqrt(kappa gamma)/theta,
/// so that int chi dv = rho.
double gamma_chi(const PressureLaw& law, double rho, double v);
/// d/drho of gamma_chi (inside the cone; zero outside).
double gamma_chi_rho(const PressureLaw& law, double rho, double v);
/// Multiplier A = M_lambda c^{-1/theta}.
double gamma_chi_scale(const PressureLaw& law);

// --- Convolution representation (rho >= 1, isothermal above rho = 1) ---

/// Boundary data on rho = 1: b0(v) = chi(1, v) (or eta(1, .)) and
/// b1(v) = chi_rho(1, v) (or eta_rho(1, .)). `kinks` lists points where
/// the data is not smooth, used as quadrature breakpoints.
struct BoundaryData {
  std::function<double(double)> b0;
  std::function<double(double)> b1;
  std::vector<double> kinks;
};

/// (b1 * chi#(rho)) (u) + (b0 * chi_flat(rho)) (u), computed as exact atom
/// translates plus a phi-substituted cone integral.
double convolve_isothermal(const BoundaryData& data, double rho, double u,
                           int panels = 16);

struct IdentityReport {
  std::vector<double> rho;
  std::vector<double> residual;  // |int (rho chi_rho - chi) dv|
  double worst_rho = 0.0;
  double worst_ratio = 0.0;      // max residual / (tol_factor * rho)
  bool pass = true;
};

/// Checks int (rho chi_rho - chi) dv = 0 for the pure gamma-law closed form.
IdentityReport identity_check_gamma(const PressureLaw& law,
                                    const std::vector<double>& rho_list,
                                    double tol_factor = 1e-6);

/// Same identity for rho >= 1 via the convolution representation from the
/// given boundary data (support of the data within [-k1, k1]).
IdentityReport identity_check_convolution(const BoundaryData& data, double k1,
                                          const std::vector<double>& rho_list,
                                          double tol_factor = 1e-6);

/// 5-point finite-difference residual of X_RR - X_uu - X_R on an interior
/// grid of spacing h, excluding a 3h band around the cone |v| = R.
struct PdeResidual {
  double h = 0.0;
  double max_residual = 0.0;
  double norm = 0.0;  // max |X| on the grid
  int points = 0;
};
PdeResidual pde_residual(const std::function<double(double, double)>& kernel,
                         double R_lo, double R_hi, double v_max, double h);

}  // namespace viscolimit::kernels

#endif  // VISCOLIMIT_KERNELS_HPP_
