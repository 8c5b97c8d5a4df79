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

#include "viscolimit/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "viscolimit/error.hpp"
#include "viscolimit/quadrature.hpp"

namespace viscolimit {

namespace {

constexpr int kBlendNodes = 257;
constexpr int kAuditSamples = 10000;

// Quintic Hermite on [0,1]: values y0,y1, slopes s0,s1, curvatures a0,a1
// (all already scaled to the unit interval).
double hermite5(double t, double y0, double y1, double s0, double s1, double a0,
                double a1) {
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  const double h0 = 1 - 10 * t3 + 15 * t4 - 6 * t5;
  const double h1 = t - 6 * t3 + 8 * t4 - 3 * t5;
  const double h2 = 0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5;
  const double h3 = 0.5 * t3 - t4 + 0.5 * t5;
  const double h4 = -4 * t3 + 7 * t4 - 3 * t5;
  const double h5 = 10 * t3 - 15 * t4 + 6 * t5;
  return y0 * h0 + s0 * h1 + a0 * h2 + a1 * h3 + s1 * h4 + y1 * h5;
}

}  // namespace

PressureLaw PressureLaw::pure_gamma(double gamma, double kappa) {
  require(gamma > 1.0 && gamma < 3.0, ErrorCode::kDomain,
          "pressure: gamma must lie in (1,3)");
  require(kappa > 0.0, ErrorCode::kDomain, "pressure: kappa must be positive");
  PressureLaw law;
  law.gamma_ = gamma;
  law.kappa_ = kappa;
  law.pure_ = true;
  law.run_audit();
  return law;
}

PressureLaw PressureLaw::make(double gamma, double kappa, double rho_star,
                              double c_star, double blend_lo_frac) {
  require(gamma > 1.0 && gamma < 3.0, ErrorCode::kDomain,
          "pressure: gamma must lie in (1,3)");
  require(kappa > 0.0, ErrorCode::kDomain, "pressure: kappa must be positive");
  require(rho_star > 0.0 && std::isfinite(rho_star), ErrorCode::kDomain,
          "pressure: rho_star must be positive and finite");
  require(c_star > 0.0, ErrorCode::kDomain, "pressure: c_star must be positive");
  require(blend_lo_frac > 0.0 && blend_lo_frac < 1.0, ErrorCode::kDomain,
          "pressure: blend_lo_frac must lie in (0,1)");
  PressureLaw law;
  law.gamma_ = gamma;
  law.kappa_ = kappa;
  law.rho_star_ = rho_star;
  law.c_star_ = c_star;
  law.blend_lo_frac_ = blend_lo_frac;
  law.rho_lo_ = blend_lo_frac * rho_star;
  law.pure_ = false;

  law.X_lo_ = std::log(law.rho_lo_);
  law.X_hi_ = std::log(rho_star);
  law.h_ = law.X_hi_ - law.X_lo_;
  // log p = L0 + d0 t + c3 t^3 + c4 t^4 + c5 t^5 with L'' = 0 at both ends.
  law.L0_ = std::log(kappa) + gamma * law.X_lo_;
  law.d0_ = gamma * law.h_;
  const double L1 = std::log(c_star) + law.X_hi_;
  const double d1 = law.h_;
  const double A = L1 - law.L0_ - law.d0_;
  const double B = d1 - law.d0_;
  law.c3_ = 10 * A - 4 * B;
  law.c4_ = -15 * A + 7 * B;
  law.c5_ = 6 * A - 3 * B;

  law.run_audit();  // throws before tables are needed if the growth conditions fail
  law.build_tables();
  return law;
}

void PressureLaw::blend_log(double X, double& L, double& L1, double& L2,
                            double& L3) const {
  const double t = (X - X_lo_) / h_;
  const double t2 = t * t, t3 = t2 * t;
  L = L0_ + d0_ * t + c3_ * t3 + c4_ * t3 * t + c5_ * t3 * t2;
  L1 = (d0_ + 3 * c3_ * t2 + 4 * c4_ * t3 + 5 * c5_ * t2 * t2) / h_;
  L2 = (6 * c3_ * t + 12 * c4_ * t2 + 20 * c5_ * t3) / (h_ * h_);
  L3 = (6 * c3_ + 24 * c4_ * t + 60 * c5_ * t2) / (h_ * h_ * h_);
}

double PressureLaw::p(double rho) const {
  require(rho >= 0.0, ErrorCode::kInvalidArgument, "pressure: negative density");
  if (pure_ || rho <= rho_lo_) return kappa_ * std::pow(rho, gamma_);
  if (rho >= rho_star_) return c_star_ * rho;
  double L, L1, L2, L3;
  blend_log(std::log(rho), L, L1, L2, L3);
  return std::exp(L);
}

double PressureLaw::dp(double rho) const {
  if (pure_ || rho <= rho_lo_) return kappa_ * gamma_ * std::pow(rho, gamma_ - 1);
  if (rho >= rho_star_) return c_star_;
  const double X = std::log(rho);
  double L, L1, L2, L3;
  blend_log(X, L, L1, L2, L3);
  return std::exp(L - X) * L1;
}

double PressureLaw::d2p(double rho) const {
  if (pure_ || rho <= rho_lo_)
    return kappa_ * gamma_ * (gamma_ - 1) * std::pow(rho, gamma_ - 2);
  if (rho >= rho_star_) return 0.0;
  const double X = std::log(rho);
  double L, L1, L2, L3;
  blend_log(X, L, L1, L2, L3);
  return std::exp(L - 2 * X) * ((L1 - 1) * L1 + L2);
}

double PressureLaw::d3p(double rho) const {
  if (pure_ || rho <= rho_lo_)
    return kappa_ * gamma_ * (gamma_ - 1) * (gamma_ - 2) * std::pow(rho, gamma_ - 3);
  if (rho >= rho_star_) return 0.0;
  const double X = std::log(rho);
  double L, L1, L2, L3;
  blend_log(X, L, L1, L2, L3);
  return std::exp(L - 3 * X) *
         ((L1 - 2) * ((L1 - 1) * L1 + L2) + (2 * L1 - 1) * L2 + L3);
}

double PressureLaw::sound_speed(double rho) const { return std::sqrt(dp(rho)); }

std::array<double, 4> PressureLaw::correction(double rho) const {
  const double g = gamma_;
  const double base = kappa_ * std::pow(rho, g);
  const double P0 = p(rho), P1 = dp(rho), P2 = d2p(rho), P3 = d3p(rho);
  // Leibniz rule on p * rho^-gamma / kappa.
  return {P0 / base - 1.0,
          (P1 - g * P0 / rho) / base,
          (P2 - 2 * g * P1 / rho + g * (g + 1) * P0 / (rho * rho)) / base,
          (P3 - 3 * g * P2 / rho + 3 * g * (g + 1) * P1 / (rho * rho) -
           g * (g + 1) * (g + 2) * P0 / (rho * rho * rho)) /
              base};
}

double PressureLaw::table_eval(const Table& t, double X) const {
  const double s = (X - X_lo_) / dX_;
  int i = std::clamp(static_cast<int>(s), 0, n_nodes_ - 2);
  const double u = s - i;
  return hermite5(u, t.v[i], t.v[i + 1], dX_ * t.d1[i], dX_ * t.d1[i + 1],
                  dX_ * dX_ * t.d2[i], dX_ * dX_ * t.d2[i + 1]);
}

void PressureLaw::build_tables() {
  n_nodes_ = kBlendNodes;
  dX_ = h_ / (n_nodes_ - 1);
  const auto& gl = quad::gl16();
  const double r_lo = rho_lo_;
  auto node_X = [&](int i) { return i == n_nodes_ - 1 ? X_hi_ : X_lo_ + i * dX_; };
  for (Table* t : {&k_tab_, &e_tab_, &fp_tab_, &f_tab_}) {
    t->v.assign(n_nodes_, 0.0);
    t->d1.assign(n_nodes_, 0.0);
    t->d2.assign(n_nodes_, 0.0);
  }
  // Seeds from the gamma-law closed forms at rho_lo.
  const double th = theta();
  const double g = gamma_;
  k_tab_.v[0] = std::sqrt(kappa_ * g) / th * std::pow(r_lo, th);
  e_tab_.v[0] = kappa_ * std::pow(r_lo, g - 1) / (g - 1);
  fp_tab_.v[0] = kappa_ * kappa_ * g * std::pow(r_lo, 2 * g - 2) / ((g - 1) * (g - 1));
  f_tab_.v[0] = kappa_ * kappa_ * g * std::pow(r_lo, 2 * g - 1) /
                ((g - 1) * (g - 1) * (2 * g - 1));

  // Derivative columns (closed form in terms of p and the running e, f').
  auto fill_derivs = [&](int i, Table& t, int which) {
    const double X = node_X(i);
    const double r = std::exp(X);
    const double P = p(r), P1 = dp(r), P2 = d2p(r);
    switch (which) {
      case 0:  // K(X): K_X = sqrt(p'), K_XX = rho p'' / (2 sqrt(p'))
        t.d1[i] = std::sqrt(P1);
        t.d2[i] = r * P2 / (2 * std::sqrt(P1));
        break;
      case 1:  // E(X): E_X = p/rho, E_XX = p' - p/rho
        t.d1[i] = P / r;
        t.d2[i] = P1 - P / r;
        break;
      case 2: {  // F1(X) = f'(e^X): F1_X = 2 p' e, F1_XX = 2 (rho p'' e + p' p / rho)
        const double ev = e_tab_.v[i];
        t.d1[i] = 2 * P1 * ev;
        t.d2[i] = 2 * (r * P2 * ev + P1 * P / r);
        break;
      }
      case 3: {  // F0(X) = f(e^X): F0_X = rho f', F0_XX = rho f' + rho^2 f''
        const double fp = fp_tab_.v[i];
        t.d1[i] = r * fp;
        t.d2[i] = r * fp + r * 2 * P1 * e_tab_.v[i];
        break;
      }
    }
  };

  for (int i = 0; i < n_nodes_; ++i) {
    if (i > 0) {
      const double a = node_X(i - 1), b = node_X(i);
      k_tab_.v[i] = k_tab_.v[i - 1] +
                    gl.integrate([&](double X) { return std::sqrt(dp(std::exp(X))); }, a, b);
      e_tab_.v[i] = e_tab_.v[i - 1] +
                    gl.integrate([&](double X) { return p(std::exp(X)) * std::exp(-X); }, a, b);
    }
    fill_derivs(i, k_tab_, 0);
    fill_derivs(i, e_tab_, 1);
  }
  for (int i = 0; i < n_nodes_; ++i) {
    if (i > 0) {
      const double a = node_X(i - 1), b = node_X(i);
      fp_tab_.v[i] = fp_tab_.v[i - 1] + gl.integrate(
                                            [&](double X) {
                                              return 2 * dp(std::exp(X)) * table_eval(e_tab_, X);
                                            },
                                            a, b);
    }
    fill_derivs(i, fp_tab_, 2);
  }
  for (int i = 0; i < n_nodes_; ++i) {
    if (i > 0) {
      const double a = node_X(i - 1), b = node_X(i);
      f_tab_.v[i] = f_tab_.v[i - 1] +
                    gl.integrate([&](double X) { return std::exp(X) * table_eval(fp_tab_, X); },
                                 a, b);
    }
    fill_derivs(i, f_tab_, 3);
  }
  k_star_ = k_tab_.v.back();
  e_star_val_ = e_tab_.v.back();
  fp_star_ = fp_tab_.v.back();
  f_star_ = f_tab_.v.back();
}

void PressureLaw::run_audit() {
  audit_ = PressureAudit{};
  audit_.samples = kAuditSamples;
  audit_.min_dp = std::numeric_limits<double>::infinity();
  audit_.min_gnl = std::numeric_limits<double>::infinity();
  const double a = std::log(1e-6), b = std::log(1e6);
  for (int i = 0; i < kAuditSamples; ++i) {
    const double r = std::exp(a + (b - a) * i / (kAuditSamples - 1));
    const double P = p(r), P1 = dp(r), P2 = d2p(r);
    const double gnl = r * P2 + 2 * P1;
    audit_.min_dp = std::min(audit_.min_dp, P1);
    audit_.min_gnl = std::min(audit_.min_gnl, gnl / (P / r));
    if ((!(P1 > 0.0) || !(gnl > 0.0)) && audit_.first_violation < 0.0)
      audit_.first_violation = r;
    if (r <= rho_star_) {
      const auto c = correction(r);
      for (int n = 0; n < 4; ++n)
        audit_.correction_bound[n] = std::max(
            audit_.correction_bound[n], std::abs(c[n]) * std::pow(r, n - 2 * theta()));
    }
  }
  if (audit_.first_violation >= 0.0) {
    std::ostringstream os;
    os << "pressure: blend violates p' > 0 or rho p'' + 2p' > 0 at rho = "
       << audit_.first_violation;
    fail(ErrorCode::kDomain, os.str());
  }
}

double PressureLaw::k(double rho) const {
  require(rho >= 0.0, ErrorCode::kInvalidArgument, "k: negative density");
  if (pure_ || rho <= rho_lo_) return std::sqrt(kappa_ * gamma_) / theta() * std::pow(rho, theta());
  if (rho >= rho_star_) return k_star_ + std::sqrt(c_star_) * std::log(rho / rho_star_);
  return table_eval(k_tab_, std::log(rho));
}

double PressureLaw::dk(double rho) const { return std::sqrt(dp(rho)) / rho; }

double PressureLaw::d2k(double rho) const {
  if (pure_ || rho <= rho_lo_)
    return std::sqrt(kappa_ * gamma_) * (theta() - 1) * std::pow(rho, theta() - 2);
  if (rho >= rho_star_) return -std::sqrt(c_star_) / (rho * rho);
  const double g = std::sqrt(dp(rho));
  const double g1 = d2p(rho) / (2 * g);
  return g1 / rho - g / (rho * rho);
}

double PressureLaw::d3k(double rho) const {
  if (pure_ || rho <= rho_lo_)
    return std::sqrt(kappa_ * gamma_) * (theta() - 1) * (theta() - 2) *
           std::pow(rho, theta() - 3);
  if (rho >= rho_star_) return 2 * std::sqrt(c_star_) / (rho * rho * rho);
  const double P1 = dp(rho), P2 = d2p(rho), P3 = d3p(rho);
  const double g = std::sqrt(P1);
  const double g1 = P2 / (2 * g);
  const double g2 = P3 / (2 * g) - P2 * P2 / (4 * g * g * g);
  return g2 / rho - 2 * g1 / (rho * rho) + 2 * g / (rho * rho * rho);
}

double PressureLaw::k_inverse(double kval) const {
  require(kval >= 0.0, ErrorCode::kInvalidArgument, "k_inverse: negative argument");
  const double c = std::sqrt(kappa_ * gamma_) / theta();
  if (pure_) return std::pow(kval / c, 1.0 / theta());
  const double k_lo = k_tab_.v.front();
  if (kval <= k_lo) return std::pow(kval / c, 1.0 / theta());
  if (kval >= k_star_) return rho_star_ * std::exp((kval - k_star_) / std::sqrt(c_star_));
  // Safeguarded Newton in X = log rho; K_X = sqrt(p') > 0.
  double lo = X_lo_, hi = X_hi_;
  double X = X_lo_ + h_ * (kval - k_lo) / (k_star_ - k_lo);
  for (int it = 0; it < 100; ++it) {
    const double f = table_eval(k_tab_, X) - kval;
    if (f > 0) hi = X; else lo = X;
    double next = X - f / std::sqrt(dp(std::exp(X)));
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - X) < 1e-15 * std::max(1.0, std::abs(X))) {
      X = next;
      break;
    }
    X = next;
  }
  return std::exp(X);
}

double PressureLaw::e(double rho) const {
  require(rho >= 0.0, ErrorCode::kInvalidArgument, "e: negative density");
  if (pure_ || rho <= rho_lo_) return kappa_ * std::pow(rho, gamma_ - 1) / (gamma_ - 1);
  if (rho >= rho_star_) return e_star_val_ + c_star_ * std::log(rho / rho_star_);
  return table_eval(e_tab_, std::log(rho));
}

double PressureLaw::de(double rho) const { return p(rho) / (rho * rho); }

double PressureLaw::e_star(double rho, double rbar) const {
  // rho e(rho) is convex; this is its Bregman divergence.
  const double slope = p(rbar) / rbar + e(rbar);
  return rho * e(rho) - rbar * e(rbar) - slope * (rho - rbar);
}

double PressureLaw::f_dagger(double rho) const {
  require(rho >= 0.0, ErrorCode::kInvalidArgument, "f_dagger: negative density");
  const double g = gamma_;
  if (pure_ || rho <= rho_lo_)
    return kappa_ * kappa_ * g * std::pow(rho, 2 * g - 1) / ((g - 1) * (g - 1) * (2 * g - 1));
  if (rho >= rho_star_) {
    // int_{rho*}^{rho} (B + 2 c A l + c^2 l^2) ds with l = log(s / rho*).
    const double l = std::log(rho / rho_star_), el = rho / rho_star_;
    const double c = c_star_, A = e_star_val_, B = fp_star_;
    const double i0 = el - 1, i1 = (l - 1) * el + 1, i2 = (l * l - 2 * l + 2) * el - 2;
    return f_star_ + rho_star_ * (B * i0 + 2 * c * A * i1 + c * c * i2);
  }
  return table_eval(f_tab_, std::log(rho));
}

double PressureLaw::df_dagger(double rho) const {
  const double g = gamma_;
  if (pure_ || rho <= rho_lo_)
    return kappa_ * kappa_ * g * std::pow(rho, 2 * g - 2) / ((g - 1) * (g - 1));
  if (rho >= rho_star_) {
    const double l = std::log(rho / rho_star_);
    return fp_star_ + 2 * c_star_ * e_star_val_ * l + c_star_ * c_star_ * l * l;
  }
  return table_eval(fp_tab_, std::log(rho));
}

double PressureLaw::d2f_dagger(double rho) const { return 2 * dp(rho) * e(rho) / rho; }

std::pair<double, double> PressureLaw::riemann_invariants(double rho, double u) const {
  const double kv = k(rho);
  return {u + kv, u - kv};
}

}  // namespace viscolimit
