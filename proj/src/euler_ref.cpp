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

#include "viscolimit/euler_ref.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "viscolimit/error.hpp"

namespace viscolimit {

std::string to_string(WaveKind w) {
  switch (w) {
    case WaveKind::kNone: return "none";
    case WaveKind::kShock: return "shock";
    case WaveKind::kRarefaction: return "rarefaction";
  }
  return "none";
}

namespace {

// Velocity reached from state (r0, u0) along the wave curve of family
// `sign` (-1: 1-wave from the left, +1: 2-wave from the right) at density r,
// and its derivative in r.
void wave_curve(const PressureLaw& law, double r0, double u0, int sign, double r, double& u,
                double& du) {
  if (r <= r0) {
    u = u0 + sign * (law.k(r) - law.k(r0));
    du = sign * law.dk(r);
  } else {
    const double dp = law.p(r) - law.p(r0), dr = r - r0;
    const double phi = dp * dr / (r * r0);
    const double dphi = (law.dp(r) * dr + dp) / (r * r0) - dp * dr / (r * r * r0);
    const double sq = std::sqrt(phi);
    u = u0 + sign * sq;
    du = sign * 0.5 * dphi / sq;
  }
}

// Root of a monotone function on [lo, hi] by bisection to ~1e-10 relative
// followed by safeguarded Newton.
template <typename F>
double monotone_root(F&& f, double lo, double hi) {
  double flo, dlo, fhi, dhi;
  f(lo, flo, dlo);
  f(hi, fhi, dhi);
  require(flo * fhi <= 0.0, ErrorCode::kInternal, "riemann: root not bracketed");
  const bool inc = fhi > flo;
  for (int it = 0; it < 200 && hi - lo > 1e-10 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    double fm, dm;
    f(mid, fm, dm);
    if ((fm < 0.0) == inc) lo = mid; else hi = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 20; ++it) {
    double fx, dx;
    f(x, fx, dx);
    if (fx == 0.0 || dx == 0.0) break;
    const double xn = x - fx / dx;
    if (!(xn > lo && xn < hi)) break;
    const bool done = std::abs(xn - x) <= 1e-15 * std::max(1.0, std::abs(x));
    x = xn;
    if (done) break;
  }
  return x;
}

}  // namespace

RiemannSolution exact_riemann(const PressureLaw& law, EndState L, EndState R) {
  require(L.rho > 0.0 && R.rho > 0.0, ErrorCode::kInvalidArgument,
          "riemann: end densities must be positive");
  RiemannSolution sol(law);
  sol.left_ = L;
  sol.right_ = R;
  const double kl = law.k(L.rho), kr = law.k(R.rho);
  if (L.u + kl <= R.u - kr) {
    std::ostringstream os;
    os << "riemann: data generate vacuum (u_L + k_L = " << L.u + kl << " <= u_R - k_R = " << R.u - kr
       << ")";
    fail(ErrorCode::kDomain, os.str());
  }
  auto phi = [&](double r, double& f, double& df) {
    double u1, d1, u2, d2;
    wave_curve(law, L.rho, L.u, -1, r, u1, d1);
    wave_curve(law, R.rho, R.u, +1, r, u2, d2);
    f = u1 - u2;
    df = d1 - d2;
  };
  double hi = std::max(L.rho, R.rho), f, df;
  for (phi(hi, f, df); f > 0.0; phi(hi, f, df)) hi *= 2.0;
  const double lo = 1e-300;
  const double rm = monotone_root(phi, lo, hi);
  double um, d;
  wave_curve(law, L.rho, L.u, -1, rm, um, d);
  sol.middle_ = {rm, um};

  const double same = 1e-14 * std::max(L.rho, R.rho);
  if (std::abs(rm - L.rho) <= same) {
    sol.w1_ = WaveKind::kNone;
    sol.s1_lo_ = sol.s1_hi_ = L.u - law.sound_speed(L.rho);
  } else if (rm > L.rho) {
    sol.w1_ = WaveKind::kShock;
    sol.s1_lo_ = sol.s1_hi_ = (rm * um - L.rho * L.u) / (rm - L.rho);
  } else {
    sol.w1_ = WaveKind::kRarefaction;
    sol.s1_lo_ = L.u - law.sound_speed(L.rho);
    sol.s1_hi_ = um - law.sound_speed(rm);
  }
  if (std::abs(rm - R.rho) <= same) {
    sol.w2_ = WaveKind::kNone;
    sol.s2_lo_ = sol.s2_hi_ = R.u + law.sound_speed(R.rho);
  } else if (rm > R.rho) {
    sol.w2_ = WaveKind::kShock;
    sol.s2_lo_ = sol.s2_hi_ = (R.rho * R.u - rm * um) / (R.rho - rm);
  } else {
    sol.w2_ = WaveKind::kRarefaction;
    sol.s2_lo_ = um + law.sound_speed(rm);
    sol.s2_hi_ = R.u + law.sound_speed(R.rho);
  }
  return sol;
}

RiemannSolution exact_riemann_gamma(const PressureLaw& law, EndState left, EndState right) {
  require(law.is_pure(), ErrorCode::kInvalidArgument,
          "exact_riemann_gamma: requires a pure gamma law");
  return exact_riemann(law, left, right);
}

std::vector<double> RiemannSolution::shock_speeds() const {
  std::vector<double> s;
  if (w1_ == WaveKind::kShock) s.push_back(s1_lo_);
  if (w2_ == WaveKind::kShock) s.push_back(s2_lo_);
  return s;
}

EndState RiemannSolution::sample(double xi) const {
  const PressureLaw& law = law_;
  if (xi < s1_lo_) return left_;
  if (xi <= s1_hi_ && w1_ == WaveKind::kRarefaction) {
    // u - c = xi along u + k = u_L + k_L.
    const double inv = left_.u + law.k(left_.rho);
    auto g = [&](double r, double& f, double& df) {
      f = inv - law.k(r) - law.sound_speed(r) - xi;
      df = -law.dk(r) - 0.5 * law.d2p(r) / law.sound_speed(r);
    };
    const double r = monotone_root(g, middle_.rho, left_.rho);
    return {r, inv - law.k(r)};
  }
  if (xi < s2_lo_) return middle_;
  if (xi <= s2_hi_ && w2_ == WaveKind::kRarefaction) {
    const double inv = right_.u - law.k(right_.rho);
    auto g = [&](double r, double& f, double& df) {
      f = inv + law.k(r) + law.sound_speed(r) - xi;
      df = law.dk(r) + 0.5 * law.d2p(r) / law.sound_speed(r);
    };
    const double r = monotone_root(g, middle_.rho, right_.rho);
    return {r, inv + law.k(r)};
  }
  return right_;
}

double rankine_hugoniot_residual(const PressureLaw& law, const RiemannSolution& sol) {
  double worst = 0.0;
  auto check = [&](const EndState& a, const EndState& b, double s) {
    const double ma = a.rho * a.u, mb = b.rho * b.u;
    const double fa = ma * a.u + law.p(a.rho), fb = mb * b.u + law.p(b.rho);
    const double r1 = std::abs(s * (b.rho - a.rho) - (mb - ma)) / std::max(1.0, std::abs(mb - ma));
    const double r2 = std::abs(s * (mb - ma) - (fb - fa)) / std::max(1.0, std::abs(fb - fa));
    worst = std::max({worst, r1, r2});
  };
  if (sol.wave1() == WaveKind::kShock) check(sol.left(), sol.middle(), sol.wave1_lo());
  if (sol.wave2() == WaveKind::kShock) check(sol.middle(), sol.right(), sol.wave2_lo());
  return worst;
}

FluidState riemann_cells(EndState left, EndState right, int N, double L) {
  FluidState s = FluidState::uniform_grid(N, L, left, right);
  for (int i = 0; i < N; ++i) {
    const double xl = s.x(i) - 0.5 * s.dx, xr = s.x(i) + 0.5 * s.dx;
    double fl = 1.0;  // fraction of the cell left of x = 0
    if (xl >= 0.0) fl = 0.0;
    else if (xr > 0.0) fl = -xl / s.dx;
    s.rho[i] = fl * left.rho + (1 - fl) * right.rho;
    s.m[i] = fl * left.rho * left.u + (1 - fl) * right.rho * right.u;
  }
  return s;
}

RunResult euler_reference_run(const PressureLaw& law, const FluidState& initial,
                              SolverConfig cfg) {
  cfg.epsilon = 0.0;
  cfg.N = initial.N;
  cfg.L = initial.L;
  return run(law, initial, cfg);
}

double l1_distance_exact(const FluidState& s, const RiemannSolution& sol, double K_lo,
                         double K_hi) {
  require(s.t > 0.0, ErrorCode::kInvalidArgument, "l1_distance_exact: need t > 0");
  const int sub = 16;
  double sum = 0.0;
  for (int i = 0; i < s.N; ++i) {
    const double x = s.x(i);
    if (x < K_lo || x > K_hi) continue;
    for (int q = 0; q < sub; ++q) {
      const double xq = x - 0.5 * s.dx + (q + 0.5) * s.dx / sub;
      const EndState e = sol.sample(xq / s.t);
      sum += std::abs(s.rho[i] - e.rho) + std::abs(s.m[i] - e.rho * e.u);
    }
  }
  return sum * s.dx / sub;
}

double l1_distance_fine(const FluidState& c, const FluidState& f, double K_lo, double K_hi) {
  require(f.N % c.N == 0 && std::abs(f.L - c.L) <= 1e-12 * c.L, ErrorCode::kInvalidArgument,
          "l1_distance_fine: grids are not nested");
  const int r = f.N / c.N;
  double sum = 0.0;
  for (int i = 0; i < f.N; ++i) {
    const double x = f.x(i);
    if (x < K_lo || x > K_hi) continue;
    const int j = i / r;
    sum += std::abs(c.rho[j] - f.rho[i]) + std::abs(c.m[j] - f.m[i]);
  }
  return sum * f.dx;
}

}  // namespace viscolimit
