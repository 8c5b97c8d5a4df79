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

#include "viscolimit/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "viscolimit/error.hpp"

namespace viscolimit::quad {

GaussLegendre::GaussLegendre(int n) {
  require(n >= 1, ErrorCode::kInvalidArgument, "GaussLegendre: order must be >= 1");
  nodes_.resize(n);
  weights_.resize(n);
  // Newton on P_n from the Chebyshev-like initial guess; symmetric pairs.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes_[i] = -x;
    nodes_[n - 1 - i] = x;
    weights_[i] = weights_[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes_[n / 2] = 0.0;
}

const GaussLegendre& gl16() {
  static const GaussLegendre rule(16);
  return rule;
}

namespace {

struct SimpsonState {
  const Integrand& f;
  int max_depth;
  bool exhausted = false;
};

double simpson_rec(SimpsonState& st, double a, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = st.f(lm), frm = st.f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth >= st.max_depth) {
    st.exhausted = st.exhausted || std::abs(delta) > 15.0 * tol;
    return left + right + delta / 15.0;
  }
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_rec(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double adaptive_simpson(const Integrand& f, double a, double b, double abs_tol,
                        int max_depth, bool strict) {
  if (a == b) return 0.0;
  SimpsonState st{f, max_depth};
  // Seed with four panels so that integrands vanishing at the three
  // initial nodes are not mistaken for zero.
  double total = 0.0;
  const int seeds = 4;
  const double h = (b - a) / seeds;
  for (int j = 0; j < seeds; ++j) {
    const double lo = a + j * h, hi = lo + h, mid = 0.5 * (lo + hi);
    const double flo = f(lo), fmid = f(mid), fhi = f(hi);
    const double whole = h / 6.0 * (flo + 4.0 * fmid + fhi);
    total += simpson_rec(st, lo, hi, flo, fmid, fhi, whole, abs_tol / seeds, 0);
  }
  if (strict && st.exhausted)
    fail(ErrorCode::kInternal, "adaptive_simpson: tolerance not met at max depth");
  return total;
}

double tanh_sinh(const std::function<double(double, double)>& f, double a, double b,
                 double step) {
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  const double hp = 0.5 * std::numbers::pi;
  double sum = hp * f(mid, half);  // j = 0: weight pi/2, x = mid
  for (int j = 1;; ++j) {
    const double t = j * step;
    const double s = hp * std::sinh(t);
    const double e2 = std::exp(2.0 * s);
    // 1 - tanh(s) = 2 / (e^{2s} + 1), exact for large s.
    const double one_minus = 2.0 / (e2 + 1.0);
    const double ch = std::cosh(s);
    const double w = hp * std::cosh(t) / (ch * ch);
    if (w < 1e-300 || one_minus * half == 0.0) break;
    const double d = half * one_minus;  // distance to the endpoint
    sum += w * (f(b - d, d) + f(a + d, d));
    if (j > 10000) break;
  }
  return sum * step * half;
}

double QuadratureRule::integrate(const Integrand& f, double a, double b) const {
  if (kind == Kind::kAdaptiveSimpson) return adaptive_simpson(f, a, b, tolerance);
  if (order == 16) return gl16().integrate_composite(f, a, b, panels);
  return GaussLegendre(order).integrate_composite(f, a, b, panels);
}

}  // namespace viscolimit::quad
