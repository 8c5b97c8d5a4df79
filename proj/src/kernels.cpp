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

#include "viscolimit/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "viscolimit/error.hpp"
#include "viscolimit/quadrature.hpp"
#include "viscolimit/special.hpp"

namespace viscolimit::kernels {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

double sgn(double x) { return (x > 0) - (x < 0); }

void require_rho_ge_one(double rho, const char* who) {
  require(rho >= 1.0, ErrorCode::kDomain, std::string(who) + ": requires rho >= 1");
}

// Composite Gauss-Legendre over [-pi/2, pi/2] split at the given angles.
template <typename F>
double integrate_phi(F&& f, std::vector<double> cuts, int panels) {
  cuts.push_back(-kHalfPi);
  cuts.push_back(kHalfPi);
  std::sort(cuts.begin(), cuts.end());
  return quad::gl16().integrate_pieces(f, cuts, panels);
}

// Samples `fn` on [lo, hi] with n points into `m`.
template <typename F>
void sample(LineMeasure& m, double lo, double hi, int n, F&& fn) {
  m.s_lo = lo;
  m.ds = (hi - lo) / (n - 1);
  m.density.resize(n);
  for (int i = 0; i < n; ++i) m.density[i] = fn(lo + i * m.ds);
}

// Grid for a cone of half-width R: `points` samples across [-R, R] plus
// one unit of padding on both sides, aligned so that +-R are nodes.
void sample_cone(LineMeasure& m, double R, int points,
                 const std::function<double(double)>& fn) {
  const double ds = 2.0 * R / (points - 1);
  const int pad = static_cast<int>(std::ceil(1.0 / ds));
  const double lo = -R - pad * ds;
  const int n = points + 2 * pad;
  sample(m, lo, lo + (n - 1) * ds, n, [&](double v) {
    return std::abs(v) < R * (1 - 1e-14) ? fn(v) : 0.0;
  });
}

}  // namespace

double LineMeasure::density_at(double v) const {
  if (density.empty() || v < s_lo || v > s_hi()) return 0.0;
  const double x = (v - s_lo) / ds;
  const std::size_t i = std::min(static_cast<std::size_t>(x), density.size() - 2);
  const double t = x - i;
  return (1 - t) * density[i] + t * density[i + 1];
}

double LineMeasure::pair(const std::function<double(double)>& g, int panels) const {
  double sum = 0.0;
  for (const auto& a : atoms) sum += a.weight * g(a.location);
  if (cone_weighted) {
    sum += integrate_phi(
        [&](double phi) { return g(center + radius * std::sin(phi)) * cone_weighted(phi); },
        {}, panels);
  } else if (density.size() >= 2) {
    double acc = 0.5 * (density.front() * g(s_lo) + density.back() * g(s_hi()));
    for (std::size_t i = 1; i + 1 < density.size(); ++i) acc += density[i] * g(s_lo + i * ds);
    sum += acc * ds;
  }
  return sum;
}

double LineMeasure::total_mass() const {
  return pair([](double) { return 1.0; });
}

// ---------------------------------------------------------------------------

double chi_sharp_R(double R, double v) {
  if (!(std::abs(v) < std::abs(R))) return 0.0;
  return 0.5 * sgn(R) * std::exp(0.5 * R) * special::profile_f(v * v - R * R);
}

double chi_sharp_dR_density(double R, double v) {
  if (!(std::abs(v) < std::abs(R))) return 0.0;
  const double y = v * v - R * R;
  return 0.5 * sgn(R) * std::exp(0.5 * R) *
         (0.5 * special::profile_f(y) - 2.0 * R * special::profile_f_prime(y));
}

double chi_flat_density_R(double R, double v) {
  if (!(std::abs(v) < std::abs(R))) return 0.0;
  const double y = v * v - R * R;
  return 0.5 * sgn(R) * std::exp(0.5 * R) *
         (-0.5 * special::profile_f(y) - 2.0 * R * special::profile_f_prime(y));
}

double chi_sharp(double rho, double v) {
  require_rho_ge_one(rho, "chi_sharp");
  return chi_sharp_R(std::log(rho), v);
}

LineMeasure chi_sharp_measure(double rho, int points) {
  require_rho_ge_one(rho, "chi_sharp_measure");
  const double R = std::log(rho), sr = std::sqrt(rho);
  LineMeasure m;
  if (R == 0.0) return m;
  sample_cone(m, R, points, [&](double v) { return chi_sharp_R(R, v); });
  m.radius = R;
  m.cone_weighted = [R, sr](double phi) {
    const double w = R * std::cos(phi);
    return 0.5 * sr * special::bessel_i0(0.5 * w) * w;
  };
  return m;
}

LineMeasure chi_flat(double rho, int points) {
  require_rho_ge_one(rho, "chi_flat");
  const double R = std::log(rho), sr = std::sqrt(rho);
  LineMeasure m;
  if (R == 0.0) {
    m.atoms.push_back({0.0, 1.0});
    return m;
  }
  m.atoms = {{-R, 0.5 * sr}, {R, 0.5 * sr}};
  sample_cone(m, R, points, [&](double v) { return chi_flat_density_R(R, v); });
  m.radius = R;
  m.cone_weighted = [R, sr](double phi) {
    const double w = R * std::cos(phi);
    return 0.25 * sr * R * (special::bessel_i1(0.5 * w) - std::cos(phi) * special::bessel_i0(0.5 * w));
  };
  return m;
}

LineMeasure chi_sharp_dR_measure(double R, int points) {
  require(R > 0.0, ErrorCode::kDomain, "chi_sharp_dR_measure: requires R > 0");
  LineMeasure m;
  const double a = 0.5 * std::exp(0.5 * R);
  m.atoms = {{-R, a}, {R, a}};
  sample_cone(m, R, points, [&](double v) { return chi_sharp_dR_density(R, v); });
  return m;
}

double h_sharp(double rho, double v) {
  require_rho_ge_one(rho, "h_sharp");
  const double R = std::log(rho), a = std::abs(v);
  if (a >= R) return 0.5 * sgn(v);
  const double tail = quad::gl16().integrate_composite(
      [&](double r) { return v * std::exp(0.5 * r) * special::profile_f_prime(v * v - r * r); }, a,
      R, 8);
  return 0.5 * sgn(v) * (1.0 - std::exp(0.5 * a)) + tail;
}

LineMeasure h_flat(double rho, double v_lo, double v_hi, int points) {
  require_rho_ge_one(rho, "h_flat");
  require(v_hi > v_lo && points >= 2, ErrorCode::kInvalidArgument, "h_flat: bad grid");
  const double R = std::log(rho), sr = std::sqrt(rho);
  LineMeasure m;
  if (R > 0.0) m.atoms = {{-R, 0.5 * sr}, {R, -0.5 * sr}};
  sample(m, v_lo, v_hi, points, [&](double v) {
    const double in =
        std::abs(v) < R ? sr * v * special::profile_f_prime(v * v - R * R) : 0.0;
    return in - h_sharp(rho, v);
  });
  return m;
}

// ---------------------------------------------------------------------------

double m_lambda(double lambda) {
  require(lambda > 0.0, ErrorCode::kDomain, "m_lambda: lambda must be positive");
  return std::exp(std::lgamma(lambda + 1.5) - std::lgamma(lambda + 1.0)) /
         std::sqrt(std::numbers::pi);
}

double g_lambda(const PressureLaw& law, double rho, double v, double order) {
  const double k = law.k(rho);
  const double d = k * k - v * v;
  return d > 0.0 ? std::pow(d, order) : 0.0;
}

double a_sharp(const PressureLaw& law, double rho) {
  return m_lambda(law.lambda()) * std::pow(law.k(rho), -law.lambda()) /
         std::sqrt(law.dk(rho));
}

double b_sharp(const PressureLaw& law, double rho) {
  return rho * law.dk(rho) / law.k(rho) * a_sharp(law, rho);
}

namespace {
double gamma_c(const PressureLaw& law) {
  return std::sqrt(law.kappa() * law.gamma()) / law.theta();
}
}  // namespace

double gamma_chi_scale(const PressureLaw& law) {
  return m_lambda(law.lambda()) * std::pow(gamma_c(law), -1.0 / law.theta());
}

// Both use the gamma-law branch kappa rho^gamma; for a hybrid law they are
// the exact kernel for rho <= rho_lo.
double gamma_chi(const PressureLaw& law, double rho, double v) {
  const double k = gamma_c(law) * std::pow(rho, law.theta());
  const double d = k * k - v * v;
  return d > 0.0 ? gamma_chi_scale(law) * std::pow(d, law.lambda()) : 0.0;
}

double gamma_chi_rho(const PressureLaw& law, double rho, double v) {
  const double c = gamma_c(law), th = law.theta(), lam = law.lambda();
  const double k = c * std::pow(rho, th);
  const double dk = c * th * std::pow(rho, th - 1.0);
  const double d = k * k - v * v;
  return d > 0.0 ? gamma_chi_scale(law) * lam * std::pow(d, lam - 1.0) * 2.0 * k * dk : 0.0;
}

// ---------------------------------------------------------------------------

double convolve_isothermal(const BoundaryData& data, double rho, double u, int panels) {
  require_rho_ge_one(rho, "convolve_isothermal");
  const double R = std::log(rho), sr = std::sqrt(rho);
  if (R == 0.0) return data.b0(u);
  double sum = 0.5 * sr * (data.b0(u - R) + data.b0(u + R));
  std::vector<double> cuts;
  for (double kink : data.kinks) {
    const double s = (u - kink) / R;
    if (std::abs(s) < 1.0) cuts.push_back(std::asin(s));
  }
  sum += integrate_phi(
      [&](double phi) {
        const double c = std::cos(phi), w = R * c;
        const double i0 = special::bessel_i0(0.5 * w), i1 = special::bessel_i1(0.5 * w);
        const double s = u - R * std::sin(phi);
        return data.b1(s) * 0.5 * sr * w * i0 + data.b0(s) * 0.25 * sr * R * (i1 - c * i0);
      },
      std::move(cuts), panels);
  return sum;
}

namespace {
void finish(IdentityReport& rep, double tol_factor) {
  for (std::size_t i = 0; i < rep.rho.size(); ++i) {
    const double ratio = rep.residual[i] / (tol_factor * std::max(rep.rho[i], 1e-300));
    if (ratio > rep.worst_ratio || i == 0) {
      rep.worst_ratio = ratio;
      rep.worst_rho = rep.rho[i];
    }
  }
  rep.pass = rep.worst_ratio <= 1.0;
}
}  // namespace

IdentityReport identity_check_gamma(const PressureLaw& law, const std::vector<double>& rho_list,
                                    double tol_factor) {
  IdentityReport rep;
  const double A = gamma_chi_scale(law), lam = law.lambda();
  const double c = gamma_c(law), th = law.theta();
  for (double rho : rho_list) {
    double res = 0.0;
    if (rho > 0.0) {
      const double k = c * std::pow(rho, th), dk = c * th * std::pow(rho, th - 1.0);
      // v = k y: chi dv = A k^{2l+1} (1-y^2)^l dy,
      //          chi_rho dv = 2 A l k' k^{2l} (1-y^2)^{l-1} dy.
      const double val = quad::tanh_sinh(
          [&](double y, double dist) {
            const double one_m_y2 = dist * (2.0 - dist);  // (1-|y|)(1+|y|)
            (void)y;
            return rho * 2.0 * A * lam * dk * std::pow(k, 2 * lam) * std::pow(one_m_y2, lam - 1) -
                   A * std::pow(k, 2 * lam + 1) * std::pow(one_m_y2, lam);
          },
          -1.0, 1.0);
      res = std::abs(val);
    }
    rep.rho.push_back(rho);
    rep.residual.push_back(res);
  }
  finish(rep, tol_factor);
  return rep;
}

namespace {
// int chi(rho, v) dv through the convolution representation.
double convolved_mass(const BoundaryData& data, double k1, double rho) {
  const double R = std::log(rho);
  std::vector<double> br = {-k1 - R, k1 + R};
  for (double kk : data.kinks) {
    br.push_back(kk - R);
    br.push_back(kk + R);
  }
  br.push_back(-k1 + R);
  br.push_back(k1 - R);
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  std::vector<double> clipped;
  for (double b : br)
    if (b >= br.front() && b <= br.back()) clipped.push_back(b);
  return quad::gl16().integrate_pieces(
      [&](double v) { return convolve_isothermal(data, rho, v); }, clipped, 8);
}
}  // namespace

IdentityReport identity_check_convolution(const BoundaryData& data, double k1,
                                          const std::vector<double>& rho_list,
                                          double tol_factor) {
  IdentityReport rep;
  for (double rho : rho_list) {
    require_rho_ge_one(rho, "identity_check_convolution");
    // The mass is affine in rho, so a one-sided 3-point stencil is exact
    // up to quadrature error.
    const double d = 1e-2 * rho;
    const double f0 = convolved_mass(data, k1, rho);
    const double f1 = convolved_mass(data, k1, rho + d);
    const double f2 = convolved_mass(data, k1, rho + 2 * d);
    const double dF = (-3 * f0 + 4 * f1 - f2) / (2 * d);
    rep.rho.push_back(rho);
    rep.residual.push_back(std::abs(rho * dF - f0));
  }
  finish(rep, tol_factor);
  return rep;
}

PdeResidual pde_residual(const std::function<double(double, double)>& kernel, double R_lo,
                         double R_hi, double v_max, double h) {
  PdeResidual out;
  out.h = h;
  const int nR = static_cast<int>(std::floor((R_hi - R_lo) / h + 1e-9));
  const int nv = static_cast<int>(std::floor(v_max / h + 1e-9));
  for (int a = 0; a <= nR; ++a) {
    const double R = R_lo + a * h;
    for (int b = -nv; b <= nv; ++b) {
      const double v = b * h;
      if (std::abs(std::abs(v) - std::abs(R)) < 3 * h) continue;
      const double c = kernel(R, v);
      const double rr = (kernel(R + h, v) - 2 * c + kernel(R - h, v)) / (h * h);
      const double uu = (kernel(R, v + h) - 2 * c + kernel(R, v - h)) / (h * h);
      const double r1 = (kernel(R + h, v) - kernel(R - h, v)) / (2 * h);
      out.max_residual = std::max(out.max_residual, std::abs(rr - uu - r1));
      out.norm = std::max(out.norm, std::abs(c));
      ++out.points;
    }
  }
  return out;
}

}  // namespace viscolimit::kernels
