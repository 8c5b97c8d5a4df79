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

#include "viscolimit/entropy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "viscolimit/error.hpp"
#include "viscolimit/quadrature.hpp"

namespace viscolimit {

// --- closed-form pairs -------------------------------------------------

EntropyPoint MechanicalPair::eval(double rho, double u) const {
  const double p = law_.p(rho), e = law_.e(rho);
  EntropyPoint r;
  r.eta = 0.5 * rho * u * u + rho * e;
  r.q = 0.5 * rho * u * u * u + rho * u * e + p * u;
  r.eta_rho = 0.5 * u * u + e + (rho > 0.0 ? p / rho : 0.0);
  r.eta_u = rho * u;
  r.eta_uu = rho;
  r.eta_urho = u;
  return r;
}

EntropyPoint DaggerPair::eval(double rho, double u) const {
  const double p = law_.p(rho), e = law_.e(rho);
  const double f = law_.f_dagger(rho), fp = law_.df_dagger(rho);
  const double u2 = u * u, pr = rho > 0.0 ? p / rho : 0.0;
  EntropyPoint r;
  r.eta = rho * u2 * u2 / 12.0 + e * rho * u2 + f;
  r.q = u * r.eta + p * u2 * u / 3.0 + (rho * fp - f) * u;
  r.eta_rho = u2 * u2 / 12.0 + (pr + e) * u2 + fp;
  r.eta_u = rho * u2 * u / 3.0 + 2.0 * e * rho * u;
  r.eta_uu = rho * u2 + 2.0 * e * rho;
  r.eta_urho = u2 * u / 3.0 + 2.0 * (pr + e) * u;
  return r;
}

EntropyPoint ShiftedPair::eval(double rho, double u) const {
  EntropyPoint r = base_->eval(rho, u - u_minus_);
  r.q += u_minus_ * r.eta;
  return r;
}

std::string ShiftedPair::description() const {
  std::ostringstream os;
  os << base_->description() << " shifted by " << u_minus_;
  return os.str();
}

// --- exact gamma-region rows -------------------------------------------

namespace {

struct RowExact {
  double eta = 0, eta_rho = 0, eta_u = 0, eta_uu = 0, eta_urho = 0, Q = 0;
};

// Supplies exact values on rows k <= k(rho_lo), where the law is kappa rho^gamma.
class RowSource {
 public:
  virtual ~RowSource() = default;
  virtual RowExact exact(double k, double u) const = 0;
  virtual bool compact() const = 0;
  virtual double z_star() const { return 0.0; }
  virtual double w_star() const { return 0.0; }
  virtual std::string name() const = 0;
};

double gamma_rho_of_k(const PressureLaw& law, double k) {
  const double c = std::sqrt(law.kappa() * law.gamma()) / law.theta();
  return std::pow(k / c, 1.0 / law.theta());
}

class PsiSource final : public RowSource {
 public:
  PsiSource(const PressureLaw& law, const TestFunctionPsi& psi, int min_panels)
      : law_(law), psi_(psi), min_panels_(min_panels),
        mlam_(kernels::m_lambda(law.lambda())) {}

  RowExact exact(double k, double u) const override {
    RowExact r;
    if (k <= 0.0) {
      r.eta_rho = psi_.value(u);
      r.eta_urho = psi_.d1(u);
      return r;
    }
    const double hp = 0.5 * std::numbers::pi;
    std::vector<double> br{-hp, hp};
    for (double kink : psi_.kinks()) {
      const double sn = (u - kink) / k;
      if (sn > -1.0 && sn < 1.0) br.push_back(std::asin(sn));
    }
    std::sort(br.begin(), br.end());
    double lo = -hp, hi = hp;
    if (psi_.is_compact()) {
      // s = u - k sin(phi) in (a, b)  <=>  sin(phi) in ((u-b)/k, (u-a)/k).
      const double s_lo = (u - psi_.w_star()) / k, s_hi = (u - psi_.z_star()) / k;
      if (s_lo >= 1.0 || s_hi <= -1.0) return r;
      lo = s_lo > -1.0 ? std::asin(s_lo) : -hp;
      hi = s_hi < 1.0 ? std::asin(s_hi) : hp;
    }
    // Compact psi varies on the scale of its support; polynomial psi only
    // needs to resolve the weight cos^{2 lambda + 1}.
    const double per_k = psi_.is_compact() ? 4.0 / (psi_.w_star() - psi_.z_star()) : 0.5;
    const int panels = min_panels_ + static_cast<int>(std::ceil(per_k * k));
    const double pw = 1.0 / law_.theta();  // 2 lambda + 1
    std::array<double, 6> acc{};           // I0, I1, Is, J0, J1, K0
    const auto& gl = quad::gl16();
    for (std::size_t b = 0; b + 1 < br.size(); ++b) {
      const double a0 = std::max(br[b], lo), a1 = std::min(br[b + 1], hi);
      if (!(a1 > a0)) continue;
      const double h = (a1 - a0) / panels;
      for (int pnl = 0; pnl < panels; ++pnl) {
        const double mid = a0 + (pnl + 0.5) * h, half = 0.5 * h;
        for (int q = 0; q < gl.order(); ++q) {
          const double phi = mid + half * gl.nodes()[q];
          const double sn = std::sin(phi), cs = std::cos(phi);
          const double w = gl.weights()[q] * half * std::pow(std::max(cs, 0.0), pw);
          const double s = u - k * sn;
          const double v0 = psi_.value(s), v1 = psi_.d1(s), v2 = psi_.d2(s);
          acc[0] += v0 * w;
          acc[1] += v1 * sn * w;
          acc[2] += v0 * sn * w;
          acc[3] += v1 * w;
          acc[4] += v2 * sn * w;
          acc[5] += v2 * w;
        }
      }
    }
    const double rho = gamma_rho_of_k(law_, k), th = law_.theta();
    r.eta = mlam_ * rho * acc[0];
    r.eta_rho = mlam_ * (acc[0] - th * k * acc[1]);
    r.eta_u = mlam_ * rho * acc[3];
    r.eta_uu = mlam_ * rho * acc[5];
    r.eta_urho = mlam_ * (acc[3] - th * k * acc[4]);
    r.Q = -th * k * mlam_ * rho * acc[2];
    return r;
  }
  bool compact() const override { return psi_.is_compact(); }
  double z_star() const override { return psi_.z_star(); }
  double w_star() const override { return psi_.w_star(); }
  std::string name() const override { return psi_.name(); }

 private:
  const PressureLaw& law_;
  const TestFunctionPsi& psi_;
  int min_panels_;
  double mlam_;
};

// psi = delta at s = 0: the kernel itself.
class KernelSource final : public RowSource {
 public:
  explicit KernelSource(const PressureLaw& law)
      : law_(law), a_(kernels::gamma_chi_scale(law)) {}

  RowExact exact(double k, double u) const override {
    RowExact r;
    const double d = k * k - u * u;
    if (k <= 0.0 || d <= 0.0) return r;
    const double lam = law_.lambda(), th = law_.theta();
    const double rho = gamma_rho_of_k(law_, k);
    const double dk = th * k / rho;  // rho k' = theta k
    const double g1 = std::pow(d, lam - 1.0);
    r.eta = a_ * g1 * d;
    r.eta_rho = a_ * lam * g1 * 2.0 * k * dk;
    r.eta_u = -2.0 * lam * a_ * u * g1;
    const double g2 = std::pow(d, lam - 2.0);
    r.eta_uu = a_ * (-2.0 * lam * g1 + 4.0 * lam * (lam - 1.0) * u * u * g2);
    r.eta_urho = -2.0 * lam * (lam - 1.0) * a_ * u * g2 * 2.0 * k * dk;
    r.Q = -th * u * r.eta;
    return r;
  }
  bool compact() const override { return true; }
  std::string name() const override { return "kernel"; }

 private:
  const PressureLaw& law_;
  double a_;
};

// Lagrange weights for nodes 0..3 at t.
std::array<double, 4> lagrange4(double t) {
  return {-(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0, t * (t - 2.0) * (t - 3.0) / 2.0,
          -t * (t - 1.0) * (t - 3.0) / 2.0, t * (t - 1.0) * (t - 2.0) / 6.0};
}

int stencil_base(double x, int n) {
  return std::clamp(static_cast<int>(std::floor(x)) - 1, 0, std::max(n - 4, 0));
}

// Potential of the zeta equation zeta_kk = zeta_uu - V zeta.
double march_potential(const PressureLaw& law, double k) {
  const double rho = law.k_inverse(k);
  const double k1 = law.dk(rho), k2 = law.d2k(rho), k3 = law.d3k(rho);
  return 0.75 * k2 * k2 / (k1 * k1 * k1 * k1) - 0.5 * k3 / (k1 * k1 * k1);
}

// Half-moments of V over the characteristic diamond |s| + |t| <= dk about
// row k (the diamond integral of z_kk - z_uu is twice the corner sum):
// M0 = int a V, M1 = int a s V, M2 = int a s^2 V, M3 = int a^3/6 V, a = dk - |s|.
// V jumps where k''' does (blend ends), so the s-integral is split there.
std::array<double, 4> potential_moments(const PressureLaw& law, double k, double dk) {
  std::vector<double> br{-dk, 0.0, dk};
  if (!law.is_pure())
    for (double kk : {law.k(law.rho_lo()), law.k(law.rho_star())})
      if (std::abs(kk - k) < dk) br.push_back(kk - k);
  std::sort(br.begin(), br.end());
  std::array<double, 4> m{};
  const auto& gl = quad::gl16();
  for (std::size_t b = 0; b + 1 < br.size(); ++b) {
    const double mid = 0.5 * (br[b] + br[b + 1]), half = 0.5 * (br[b + 1] - br[b]);
    if (!(half > 0.0)) continue;
    for (int q = 0; q < gl.order(); ++q) {
      const double s = mid + half * gl.nodes()[q];
      const double a = dk - std::abs(s);
      const double wv = gl.weights()[q] * half * march_potential(law, k + s);
      m[0] += a * wv;
      m[1] += a * s * wv;
      m[2] += a * s * s * wv;
      m[3] += a * a * a / 6.0 * wv;
    }
  }
  return m;
}

}  // namespace

// --- table construction ------------------------------------------------

class TablePairBuilder {
 public:
  static std::shared_ptr<TabulatedPair> build(const PressureLaw& law, const RowSource& src,
                                              const MarchConfig& cfg);
};

std::shared_ptr<TabulatedPair> TablePairBuilder::build(const PressureLaw& law,
                                                       const RowSource& src,
                                                       const MarchConfig& cfg) {
  require(cfg.cfl > 0.0 && cfg.cfl <= 1.0, ErrorCode::kInvalidArgument,
          "march: cfl must lie in (0, 1]");
  require(cfg.du > 0.0 && cfg.u_hi > cfg.u_lo, ErrorCode::kInvalidArgument,
          "march: invalid u window");
  require(cfg.rho_max > 0.0 && std::isfinite(cfg.rho_max), ErrorCode::kInvalidArgument,
          "march: rho_max must be positive and finite");
  require(cfg.min_panels >= 1, ErrorCode::kInvalidArgument, "march: min_panels >= 1");

  std::shared_ptr<TabulatedPair> t(new TabulatedPair(law));
  TabulatedPair& T = *t;
  T.cfg_ = cfg;
  T.description_ = src.name();
  T.compact_ = src.compact();
  T.z_star_ = src.z_star();
  T.w_star_ = src.w_star();

  const double k_max = law.k(cfg.rho_max);
  if (law.is_pure()) {
    T.du_ = cfg.du;
    T.dk_ = cfg.cfl * cfg.du;
    T.j_star_ = -1;
  } else {
    const double kst = law.k(law.rho_star());
    const int J = std::max(1, static_cast<int>(std::ceil(kst / (cfg.cfl * cfg.du))));
    T.dk_ = kst / J;
    T.du_ = T.dk_ / cfg.cfl;
    T.j_star_ = J;
  }
  const double dk = T.dk_, du = T.du_;
  T.nk_ = static_cast<int>(std::ceil(k_max / dk)) + 3;
  const int nk = T.nk_;
  const int margin = 3;
  T.u0_ = cfg.u_lo - margin * du;
  T.nu_ = static_cast<int>(std::ceil((cfg.u_hi - cfg.u_lo) / du - 1e-9)) + 1 + 2 * margin;
  const int nu = T.nu_;

  int jq = nk - 1;
  if (!law.is_pure()) jq = std::min(nk - 1, static_cast<int>(std::floor(law.k(law.rho_lo()) / dk + 1e-12)));
  require(jq >= 2, ErrorCode::kConfig, "march: grid too coarse for the gamma region");
  T.j_march_ = jq + 1 < nk ? jq + 1 : nk;

  T.rho_row_.resize(nk);
  for (int j = 0; j < nk; ++j)
    T.rho_row_[j] = j <= jq ? gamma_rho_of_k(law, j * dk) : law.k_inverse(j * dk);
  T.rho_valid_max_ = T.rho_row_[nk - 2];

  const std::size_t N = static_cast<std::size_t>(nk) * nu;
  T.eta_.assign(N, 0.0);
  T.q_.assign(N, 0.0);
  T.eta_rho_.assign(N, 0.0);
  T.eta_u_.assign(N, 0.0);
  T.eta_uu_.assign(N, 0.0);
  T.eta_urho_.assign(N, 0.0);
  std::vector<double> Qtab(N, 0.0);

  for (int j = 0; j <= jq; ++j) {
    for (int i = 0; i < nu; ++i) {
      const RowExact r = src.exact(j * dk, T.col_u(i));
      const std::size_t a = T.at(j, i);
      T.eta_[a] = r.eta;
      T.eta_rho_[a] = r.eta_rho;
      T.eta_u_[a] = r.eta_u;
      T.eta_uu_[a] = r.eta_uu;
      T.eta_urho_[a] = r.eta_urho;
      Qtab[a] = r.Q;
    }
  }

  if (jq < nk - 1) {
    const int steps = nk - 1 - jq;
    const int S = steps + 2;
    const int P = nu + 2 * S;
    auto pu = [&](int p) { return T.u0_ + (p - S) * du; };
    // Padded eta for rows jq-1 .. nk-1.
    const int R0 = jq - 1, nr = nk - R0;
    std::vector<double> pad(static_cast<std::size_t>(nr) * P, 0.0);
    auto prow = [&](int j) { return pad.data() + static_cast<std::size_t>(j - R0) * P; };
    for (int j = jq - 1; j <= jq; ++j) {
      double* row = prow(j);
      for (int p = 0; p < P; ++p) row[p] = src.exact(j * dk, pu(p)).eta;
    }
    const double r2 = (dk / du) * (dk / du);
    const bool diamond = cfg.cfl == 1.0;
    std::vector<double> zp(P), zc(P), zn(P);
    auto sq = [&](int j) { return std::sqrt(law.dk(T.rho_row_[j])); };
    for (int p = 0; p < P; ++p) {
      zp[p] = prow(jq - 1)[p] * sq(jq - 1);
      zc[p] = prow(jq)[p] * sq(jq);
    }
    for (int j = jq; j < nk - 1; ++j) {
      const auto M = potential_moments(law, j * dk, dk);
      zn[0] = zn[P - 1] = 0.0;
      if (diamond) {
        // Exact d'Alembert identity over the diamond; the source -V zeta is
        // integrated with zeta quadratic in k through rows j-1, j, j+1.
        const double a1 = M[1] / (2.0 * dk), a2 = M[2] / (2.0 * dk * dk);
        const double inv = 1.0 / (1.0 + a1 + a2);
        const double m3 = M[3] / (dk * dk);
        for (int p = 1; p < P - 1; ++p) {
          const double side = zc[p + 1] + zc[p - 1];
          const double zuu = side - 2.0 * zc[p];
          zn[p] = inv * (side - zp[p] - M[0] * zc[p] + a1 * zp[p] + a2 * (2.0 * zc[p] - zp[p]) -
                         m3 * zuu);
        }
      } else {
        const double c0 = 2.0 - 2.0 * r2 - M[0];
        for (int p = 1; p < P - 1; ++p)
          zn[p] = c0 * zc[p] + r2 * (zc[p + 1] + zc[p - 1]) - zp[p];
      }
      const double inv = 1.0 / sq(j + 1);
      double* row = prow(j + 1);
      for (int p = 0; p < P; ++p) row[p] = zn[p] * inv;
      std::swap(zp, zc);
      std::swap(zc, zn);
    }

    // Derivatives on marched rows. eta_k uses 5-point stencils that do not
    // straddle a jump of k''' (rho_lo, rho*), where eta_kkk is discontinuous.
    static constexpr double kD1[5][5] = {{-25, 48, -36, 16, -3},
                                         {-3, -10, 18, -6, 1},
                                         {1, -8, 0, 8, -1},
                                         {-1, 6, -18, 10, 3},
                                         {3, -16, 36, -48, 25}};
    std::vector<double> jumps;
    if (!law.is_pure()) jumps = {law.k(law.rho_lo()) / dk, law.k(law.rho_star()) / dk};
    auto stencil_ok = [&](int a0) {
      if (a0 < R0 || a0 + 4 > nk - 1) return false;
      for (double x : jumps)
        if (x > a0 + 1e-9 && x < a0 + 4 - 1e-9) return false;
      return true;
    };
    std::vector<double> erho(P);
    for (int j = jq + 1; j < nk; ++j) {
      int a0 = -1;
      for (int off : {2, 1, 3, 0, 4})
        if (stencil_ok(j - off)) {
          a0 = j - off;
          break;
        }
      require(a0 >= 0, ErrorCode::kInternal, "march: no admissible k-stencil");
      const double* w = kD1[j - a0];
      const double kp = law.dk(T.rho_row_[j]) / (12.0 * dk);
      const double kj = j * dk;
      for (int p = 0; p < P; ++p) {
        double d = 0.0;
        const double u = pu(p);
        if (T.compact_ && (u + kj < T.z_star_ || u - kj > T.w_star_)) {
          // Outside the cone: backward stencil, which sees only rows whose
          // (narrower) cones also exclude this node.
          if (j - 4 >= R0)
            for (int m = 0; m < 5; ++m) d += kD1[4][m] * prow(j - 4 + m)[p];
          else
            d = 6.0 * (3.0 * prow(j)[p] - 4.0 * prow(j - 1)[p] + prow(j - 2)[p]);
        } else {
          for (int m = 0; m < 5; ++m) d += w[m] * prow(a0 + m)[p];
        }
        erho[p] = kp * d;
      }
      const double* e0 = prow(j);
      for (int i = 0; i < nu; ++i) {
        const int p = i + S;
        const std::size_t a = T.at(j, i);
        T.eta_[a] = e0[p];
        T.eta_rho_[a] = erho[p];
        T.eta_u_[a] = (e0[p - 2] - 8.0 * e0[p - 1] + 8.0 * e0[p + 1] - e0[p + 2]) / (12.0 * du);
        T.eta_uu_[a] = (-e0[p - 2] + 16.0 * e0[p - 1] - 30.0 * e0[p] + 16.0 * e0[p + 1] -
                        e0[p + 2]) / (12.0 * du * du);
        T.eta_urho_[a] =
            (erho[p - 2] - 8.0 * erho[p - 1] + 8.0 * erho[p + 1] - erho[p + 2]) / (12.0 * du);
      }
    }

    // Flux: Q = q - u eta satisfies Q_u = rho eta_rho - eta, Q_k = rho k' eta_u.
    const double u_end = T.col_u(nu - 1);
    const bool enclosed = T.compact_ && T.u0_ <= T.z_star_ - k_max - dk &&
                          u_end >= T.w_star_ + k_max + dk;
    std::vector<double> g(nu);
    for (int j = jq + 1; j < nk; ++j) {
      const double rho = T.rho_row_[j];
      for (int i = 0; i < nu; ++i) {
        const std::size_t a = T.at(j, i);
        g[i] = rho * T.eta_rho_[a] - T.eta_[a];
      }
      double* Q = Qtab.data() + T.at(j, 0);
      if (enclosed) {
        Q[0] = 0.0;
        double wsum = 0.0;
        std::vector<double> W(nu, 0.0);
        for (int i = 1; i < nu; ++i) {
          Q[i] = Q[i - 1] + 0.5 * du * (g[i - 1] + g[i]);
          wsum += std::abs(g[i]);
          W[i] = wsum;
        }
        // Spread the right-edge defect by cumulative |g| so exact zeros persist.
        const double D = Q[nu - 1];
        if (wsum > 0.0)
          for (int i = 0; i < nu; ++i) Q[i] -= D * (W[i] / wsum);
      } else {
        // Column integration of Q_k = sqrt(p') eta_u (Adams-Moulton, 3rd order).
        const double s0 = std::sqrt(law.dp(rho)), s1 = std::sqrt(law.dp(T.rho_row_[j - 1]));
        const double s2 = std::sqrt(law.dp(T.rho_row_[j - 2]));
        const double* Qm = Qtab.data() + T.at(j - 1, 0);
        const double* e0 = T.eta_u_.data() + T.at(j, 0);
        const double* e1 = T.eta_u_.data() + T.at(j - 1, 0);
        const double* e2 = T.eta_u_.data() + T.at(j - 2, 0);
        for (int i = 0; i < nu; ++i)
          Q[i] = Qm[i] + dk / 12.0 * (5.0 * s0 * e0[i] + 8.0 * s1 * e1[i] - s2 * e2[i]);
      }
    }
  }

  for (int j = 0; j < nk; ++j)
    for (int i = 0; i < nu; ++i) {
      const std::size_t a = T.at(j, i);
      T.q_[a] = Qtab[a] + T.col_u(i) * T.eta_[a];
    }
  return t;
}

// --- table evaluation --------------------------------------------------

EntropyPoint TabulatedPair::node(int j, int i) const {
  require(j >= 0 && j < nk_ && i >= 0 && i < nu_, ErrorCode::kInvalidArgument,
          "entropy table: node index out of range");
  const std::size_t a = at(j, i);
  return {eta_[a], q_[a], eta_rho_[a], eta_u_[a], eta_uu_[a], eta_urho_[a]};
}

EntropyPoint TabulatedPair::row_eval(int j, double u) const {
  require(j >= 0 && j < nk_, ErrorCode::kInvalidArgument, "entropy table: row out of range");
  const double y = (u - u0_) / du_;
  require(y >= -1e-9 && y <= nu_ - 1 + 1e-9, ErrorCode::kDomain,
          "entropy table: u outside the tabulated window");
  const int ib = stencil_base(y, nu_);
  const auto w = lagrange4(y - ib);
  EntropyPoint r;
  for (int b = 0; b < 4; ++b) {
    const std::size_t a = at(j, ib + b);
    r.eta += w[b] * eta_[a];
    r.q += w[b] * q_[a];
    r.eta_rho += w[b] * eta_rho_[a];
    r.eta_u += w[b] * eta_u_[a];
    r.eta_uu += w[b] * eta_uu_[a];
    r.eta_urho += w[b] * eta_urho_[a];
  }
  return r;
}

EntropyPoint TabulatedPair::eval(double rho, double u) const {
  if (!(rho >= 0.0) || rho > rho_valid_max_ * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "entropy table: rho = " << rho << " outside [0, " << rho_valid_max_ << "]";
    fail(ErrorCode::kDomain, os.str());
  }
  const double x = law_.k(rho) / dk_;
  const double y = (u - u0_) / du_;
  if (!(y >= -1e-9 && y <= nu_ - 1 + 1e-9)) {
    std::ostringstream os;
    os << "entropy table: u = " << u << " outside [" << u0_ << ", " << col_u(nu_ - 1) << "]";
    fail(ErrorCode::kDomain, os.str());
  }
  const int jb = stencil_base(x, nk_), ib = stencil_base(y, nu_);
  const auto wx = lagrange4(x - jb), wy = lagrange4(y - ib);
  EntropyPoint r;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const double w = wx[a] * wy[b];
      const std::size_t n = at(jb + a, ib + b);
      r.eta += w * eta_[n];
      r.q += w * q_[n];
      r.eta_rho += w * eta_rho_[n];
      r.eta_u += w * eta_u_[n];
      r.eta_uu += w * eta_uu_[n];
      r.eta_urho += w * eta_urho_[n];
    }
  return r;
}

// --- public constructors -----------------------------------------------

std::shared_ptr<TabulatedPair> march_entropy(const PressureLaw& law, const TestFunctionPsi& psi,
                                             const MarchConfig& cfg) {
  if (psi.is_compact()) {
    const double reach = law.k(cfg.rho_max);
    require(cfg.u_lo <= psi.z_star() - reach && cfg.u_hi >= psi.w_star() + reach,
            ErrorCode::kConfig,
            "march_entropy: u window does not contain the characteristic cone of supp psi");
  }
  PsiSource src(law, psi, cfg.min_panels);
  return TablePairBuilder::build(law, src, cfg);
}

std::shared_ptr<TabulatedPair> march_kernel(const PressureLaw& law, const MarchConfig& cfg) {
  KernelSource src(law);
  return TablePairBuilder::build(law, src, cfg);
}

EntropyPoint gamma_entropy_exact(const PressureLaw& law, const TestFunctionPsi& psi, double rho,
                                 double u, int min_panels) {
  require(rho >= 0.0 && rho <= law.rho_lo() * (1.0 + 1e-12), ErrorCode::kDomain,
          "gamma_entropy_exact: rho must lie in the gamma region");
  PsiSource src(law, psi, min_panels);
  const double k = std::sqrt(law.kappa() * law.gamma()) / law.theta() * std::pow(rho, law.theta());
  const RowExact r = src.exact(k, u);
  return {r.eta, r.Q + u * r.eta, r.eta_rho, r.eta_u, r.eta_uu, r.eta_urho};
}

// --- convolution route -------------------------------------------------

kernels::BoundaryData boundary_data(const TabulatedPair& table, bool flux) {
  const PressureLaw& law = table.law();
  require(!law.is_pure() && law.rho_star() == 1.0 && law.c_star() == 1.0, ErrorCode::kConfig,
          "boundary_data: requires rho* = c* = 1");
  const int j = table.rho_star_row();
  require(j >= 0, ErrorCode::kInternal, "boundary_data: table has no rho* row");
  const double lo = table.col_u(0), hi = table.col_u(table.cols() - 1);
  const bool compact = table.compact();
  const double k1 = table.row_k(j);
  const double zs = table.z_star() - k1, ws = table.w_star() + k1;
  auto guard = [=](double v) {
    if (compact && (v <= zs || v >= ws)) return false;
    if (v < lo || v > hi)
      fail(ErrorCode::kDomain, "boundary_data: shift outside the tabulated window");
    return true;
  };
  const TabulatedPair* tp = &table;
  kernels::BoundaryData d;
  if (!flux) {
    d.b0 = [=](double v) { return guard(v) ? tp->row_eval(j, v).eta : 0.0; };
    d.b1 = [=](double v) { return guard(v) ? tp->row_eval(j, v).eta_rho : 0.0; };
  } else {
    // Q(1, .) and Q_rho(1, .) = (p'(1)/1) eta_u(1, .) = eta_u(1, .).
    d.b0 = [=](double v) {
      if (!guard(v)) return 0.0;
      const EntropyPoint e = tp->row_eval(j, v);
      return e.q - v * e.eta;
    };
    d.b1 = [=](double v) { return guard(v) ? tp->row_eval(j, v).eta_u : 0.0; };
  }
  if (compact) d.kinks = {zs, ws};
  return d;
}

std::pair<double, double> convolution_entropy(const TabulatedPair& table, double rho, double u,
                                              int panels) {
  const kernels::BoundaryData be = boundary_data(table, false);
  const kernels::BoundaryData bq = boundary_data(table, true);
  const double eta = kernels::convolve_isothermal(be, rho, u, panels);
  const double Q = kernels::convolve_isothermal(bq, rho, u, panels);
  return {eta, Q + u * eta};
}

double compatibility_residual(const EntropyPair& pair, const PressureLaw& law, double rho,
                              double u, double h) {
  require(rho > h, ErrorCode::kInvalidArgument, "compatibility_residual: rho must exceed h");
  const EntropyPoint rp = pair.eval(rho + h, u), rm = pair.eval(rho - h, u);
  const EntropyPoint up = pair.eval(rho, u + h), um = pair.eval(rho, u - h);
  const double eta_r = (rp.eta - rm.eta) / (2 * h), q_r = (rp.q - rm.q) / (2 * h);
  const double eta_u = (up.eta - um.eta) / (2 * h), q_u = (up.q - um.q) / (2 * h);
  const double r1 = std::abs(q_r - (u * eta_r + law.dp(rho) / rho * eta_u));
  const double r2 = std::abs(q_u - (rho * eta_r + u * eta_u));
  return std::max(r1, r2);
}

// --- bound audits -------------------------------------------------------

HatPair hat_pair(const PressureLaw& law, double du, double u_minus) {
  const double u_box = 8.0, rho_lo = 1e-3, rho_hi = std::exp(3.0);
  MarchConfig cfg;
  cfg.du = du;
  cfg.u_lo = -u_box - std::abs(u_minus) - 1.0;
  cfg.u_hi = u_box + std::abs(u_minus) + 1.0;
  cfg.rho_max = rho_hi;
  HatPair out;
  out.table = march_entropy(law, TestFunctionPsi::signed_quadratic(), cfg);
  const TabulatedPair& T = *out.table;
  MechanicalPair mech(law);
  HatBoundReport& rep = out.report;

  const int nr = 100, nv = 101;
  const double rs = law.is_pure() ? 1.0 : law.rho_star();
  for (int a = 0; a < nr; ++a) {
    const double rho = rho_lo * std::pow(rho_hi / rho_lo, a / (nr - 1.0));
    const double g0u = T.eval(rho, 0.0).eta_u;
    for (int b = 0; b < nv; ++b) {
      const double u = -u_box + 2.0 * u_box * b / (nv - 1.0);
      const EntropyPoint e = T.eval(rho, u);
      const double au = std::abs(u);
      double A, B;
      if (law.is_pure() || rho <= rs) {
        A = rho * au * au * au + std::pow(rho, law.gamma() + law.theta());
        B = rho * u * u + std::pow(rho, law.gamma());
      } else {
        const double lr = std::log(rho);
        A = rho * au * au * au;
        B = rho * u * u + rho + rho * lr * lr * lr * lr;
      }
      const double m = (-e.q + std::sqrt(e.q * e.q + 4.0 * A * B)) / (2.0 * B);
      if (law.is_pure() || rho <= rs) rep.m_low = std::max(rep.m_low, m);
      if (!law.is_pure() && rho >= rs) rep.m_high = std::max(rep.m_high, m);
      rep.m_eta = std::max(rep.m_eta, std::abs(e.eta) / mech.eval(rho, u).eta);
      rep.m_eta_mm = std::max(rep.m_eta_mm, std::abs(e.eta_uu / rho));
      if (!law.is_pure() && rho >= 2.0 * rs) {
        const double lr = std::log(rho);
        rep.m_eta_mu = std::max(rep.m_eta_mu, std::abs(e.eta_mu(rho)) * std::sqrt(lr));
        rep.m_eta_mrho = std::max(rep.m_eta_mrho, std::abs(e.eta_mrho(rho)) * rho * lr);
      }
      // Shifted pair: eta-check(rho, u) = eta-hat(rho, u - u_minus); remainder of the
      // expansion about u = u_minus, where eta-check_u(rho, u_minus) = eta-hat_u(rho, 0).
      const double d = u - u_minus;
      if (std::abs(d) > 1e-3) {
        const double rem = T.eval(rho, d).eta - T.eval(rho, 0.0).eta - g0u * d;
        rep.m_remainder = std::max(rep.m_remainder, std::abs(rem) / (rho * d * d));
      }
      ++rep.samples;
    }
  }
  for (double m : {rep.m_low, rep.m_high, rep.m_eta, rep.m_eta_mm, rep.m_remainder,
                   rep.m_eta_mu, rep.m_eta_mrho})
    if (!(m <= 1e6)) rep.falsified = true;
  return out;
}

CompactBoundReport compact_pair_bounds(const TabulatedPair& T) {
  require(T.compact(), ErrorCode::kInvalidArgument, "compact_pair_bounds: table is not compact");
  const PressureLaw& law = T.law();
  CompactBoundReport rep;
  for (int j = 1; j < T.rows() - 1; ++j) {
    const double rho = T.row_rho(j), k = T.row_k(j);
    const double damp = std::min(1.0, 1.0 / std::sqrt(std::log(rho + 1.0)));
    const double cs = std::sqrt(law.dp(rho));
    for (int i = 0; i < T.cols(); ++i) {
      const double u = T.col_u(i);
      const EntropyPoint e = T.node(j, i);
      if (u + k < T.z_star() || u - k > T.w_star()) {
        rep.support_violation =
            std::max({rep.support_violation, std::abs(e.eta), std::abs(e.q)});
        ++rep.nodes_outside;
        continue;
      }
      rep.m_eta = std::max(rep.m_eta, std::abs(e.eta) / (rho * damp));
      rep.m_q = std::max(rep.m_q, std::abs(e.q) / rho);
      rep.m_deriv = std::max(rep.m_deriv, (std::abs(e.eta_m(rho)) + rho * std::abs(e.eta_mm(rho))) / damp);
      rep.m_mrho = std::max(rep.m_mrho, std::abs(e.eta_mrho(rho)) * rho / cs);
    }
  }
  return rep;
}

}  // namespace viscolimit
