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

#include "viscolimit/ns_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "viscolimit/diagnostics.hpp"
#include "viscolimit/error.hpp"
#include "viscolimit/quadrature.hpp"

namespace viscolimit {

FluidState FluidState::uniform_grid(int N, double L, EndState left, EndState right) {
  require(N >= 8, ErrorCode::kInvalidArgument, "grid: need at least 8 cells");
  require(L > 0.0, ErrorCode::kInvalidArgument, "grid: half-length must be positive");
  FluidState s;
  s.N = N;
  s.L = L;
  s.dx = 2.0 * L / N;
  s.rho.assign(N, left.rho);
  s.m.assign(N, left.rho * left.u);
  s.left = left;
  s.right = right;
  return s;
}

double FluidState::mass() const {
  double sum = 0.0;
  for (double r : rho) sum += r;
  return sum * dx;
}

void validate(const SolverConfig& c) {
  require(c.cfl > 0.0 && c.cfl < 1.0, ErrorCode::kConfig, "solver: cfl must lie in (0, 1)");
  require(c.N >= 8, ErrorCode::kConfig, "solver: N must be >= 8");
  require(c.L > 0.0, ErrorCode::kConfig, "solver: L must be positive");
  require(c.epsilon >= 0.0 && std::isfinite(c.epsilon), ErrorCode::kConfig,
          "solver: epsilon must be finite and >= 0");
  require(c.t_end > 0.0, ErrorCode::kConfig, "solver: t_end must be positive");
  require(c.K_lo < c.K_hi && c.K_lo >= -c.L && c.K_hi <= c.L, ErrorCode::kConfig,
          "solver: monitor interval K must be a non-empty subset of the domain");
}

std::string to_string(FluxKind k) { return k == FluxKind::kHLL ? "hll" : "rusanov"; }

std::string to_string(ViscousMode v) {
  switch (v) {
    case ViscousMode::kAuto: return "auto";
    case ViscousMode::kExplicit: return "explicit";
    case ViscousMode::kImplicit: return "implicit";
  }
  return "auto";
}

// --- reference functions and initial data ------------------------------

namespace {

// C^2 quintic smoothstep on [0, 1].
double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

}  // namespace

double ReferenceState::rho(double x) const {
  return left.rho + (right.rho - left.rho) * smoothstep((x + L0) / (2.0 * L0));
}

double ReferenceState::u(double x) const {
  return left.u + (right.u - left.u) * smoothstep((x + L0) / (2.0 * L0));
}

FluidState regularize_initial_data(const PressureLaw& law, const std::function<double(double)>& rho0,
                                   const std::function<double(double)>& u0, double epsilon, int N,
                                   double L, const RegularizationConfig& reg,
                                   InitialDataReport* report) {
  require(epsilon >= 0.0, ErrorCode::kInvalidArgument, "regularize: epsilon must be >= 0");
  require(reg.width_scale >= 0.0, ErrorCode::kInvalidArgument, "regularize: negative width");
  const double floor = std::sqrt(epsilon);
  const double width = epsilon > 0.0 ? reg.width_scale * std::pow(epsilon, reg.width_exponent) : 0.0;
  auto rho_cut = [&](double x) {
    const double r = rho0(x);
    require(std::isfinite(r) && r >= 0.0, ErrorCode::kDomain,
            "regularize: initial density must be finite and >= 0");
    return std::max(r, floor);
  };
  auto u_raw = [&](double x) {
    const double v = u0(x);
    require(std::isfinite(v), ErrorCode::kDomain, "regularize: initial velocity must be finite");
    return v;
  };
  EndState left{rho_cut(-L), u_raw(-L)}, right{rho_cut(L), u_raw(L)};
  require(left.rho > 0.0 && right.rho > 0.0, ErrorCode::kDomain,
          "regularize: end states must have positive density");
  FluidState s = FluidState::uniform_grid(N, L, left, right);

  // Mollifier: C-infinity bump exp(-1/(1-y^2)) on [-width, width], sampled at
  // 4 x 16 Gauss points and normalised discretely.
  std::vector<double> my, mw;
  if (width > 0.0) {
    const auto& gl = quad::gl16();
    const int panels = 4;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double a = -1.0 + 2.0 * p / panels, h = 1.0 / panels;
      for (int q = 0; q < gl.order(); ++q) {
        const double y = a + h + h * gl.nodes()[q];
        const double w = gl.weights()[q] * h * std::exp(-1.0 / (1.0 - y * y));
        my.push_back(y * width);
        mw.push_back(w);
        total += w;
      }
    }
    for (double& w : mw) w /= total;
  } else {
    my = {0.0};
    mw = {1.0};
  }
  // Values outside the domain take the end states (far field).
  auto ext_rho = [&](double x) { return x <= -L ? left.rho : x >= L ? right.rho : rho_cut(x); };
  auto ext_u = [&](double x) { return x <= -L ? left.u : x >= L ? right.u : u_raw(x); };
  const auto& g4 = quad::GaussLegendre(4);
  for (int i = 0; i < N; ++i) {
    double r = 0.0, v = 0.0;
    for (int c = 0; c < 4; ++c) {
      const double xc = s.x(i) + 0.5 * s.dx * g4.nodes()[c];
      const double wc = 0.5 * g4.weights()[c];
      for (std::size_t q = 0; q < my.size(); ++q) {
        r += wc * mw[q] * ext_rho(xc - my[q]);
        v += wc * mw[q] * ext_u(xc - my[q]);
      }
    }
    s.rho[i] = r;
    s.m[i] = r * v;
  }

  if (report) {
    ReferenceState ref{left, right, reg.L0};
    InitialDataReport& rep = *report;
    rep.width = width;
    rep.floor = floor;
    rep.E0 = relative_energy(law, s, ref);
    rep.min_rho = *std::min_element(s.rho.begin(), s.rho.end());
    double e1 = 0.0, m0 = 0.0;
    for (int i = 0; i < N; ++i) {
      m0 += s.rho[i] * std::abs(s.u(i) - ref.u(s.x(i)));
      if (i + 1 < N) {
        const double rx = (s.rho[i + 1] - s.rho[i]) / s.dx, rf = 0.5 * (s.rho[i] + s.rho[i + 1]);
        e1 += rx * rx / (rf * rf * rf);
      }
    }
    rep.E1 = epsilon * epsilon * e1 * s.dx;
    rep.M0 = m0 * s.dx;
    require(std::isfinite(rep.E0) && std::isfinite(rep.E1), ErrorCode::kDomain,
            "regularize: initial data has infinite energy");
  }
  return s;
}

// --- time stepping ------------------------------------------------------

namespace {

struct Cons {
  double rho, m;
};

Cons physical_flux(const PressureLaw& law, double rho, double m) {
  return {m, m * m / rho + law.p(rho)};
}

Cons numerical_flux(const PressureLaw& law, FluxKind kind, double rl, double ml, double rr,
                    double mr) {
  const double ul = ml / rl, ur = mr / rr;
  const double cl = law.sound_speed(rl), cr = law.sound_speed(rr);
  const Cons fl = physical_flux(law, rl, ml), fr = physical_flux(law, rr, mr);
  if (kind == FluxKind::kRusanov) {
    const double a = std::max(std::abs(ul) + cl, std::abs(ur) + cr);
    return {0.5 * (fl.rho + fr.rho) - 0.5 * a * (rr - rl), 0.5 * (fl.m + fr.m) - 0.5 * a * (mr - ml)};
  }
  const double c = std::max(cl, cr);
  const double sl = std::min(ul, ur) - c, sr = std::max(ul, ur) + c;
  if (sl >= 0.0) return fl;
  if (sr <= 0.0) return fr;
  const double inv = 1.0 / (sr - sl);
  return {(sr * fl.rho - sl * fr.rho + sl * sr * (rr - rl)) * inv,
          (sr * fl.m - sl * fr.m + sl * sr * (mr - ml)) * inv};
}

// Thomas algorithm for a_i x_{i-1} + b_i x_i + c_i x_{i+1} = d_i.
void solve_tridiagonal(const std::vector<double>& a, std::vector<double> b,
                       const std::vector<double>& c, std::vector<double>& d) {
  const std::size_t n = d.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = a[i] / b[i - 1];
    b[i] -= w * c[i - 1];
    d[i] -= w * d[i - 1];
  }
  d[n - 1] /= b[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) d[i] = (d[i] - c[i] * d[i + 1]) / b[i];
}

[[noreturn]] void positivity_failure(const FluidState& s, int i, double value) {
  std::ostringstream os;
  os << "positivity lost: rho = " << value << " in cell " << i << " (x = " << s.x(i)
     << ") at t = " << s.t;
  fail(ErrorCode::kSolverFailure, os.str());
}

}  // namespace

double stable_dt(const PressureLaw& law, const FluidState& s, const SolverConfig& cfg) {
  double vmax = std::max(std::abs(s.left.u) + law.sound_speed(s.left.rho),
                         std::abs(s.right.u) + law.sound_speed(s.right.rho));
  double rmin = std::min(s.left.rho, s.right.rho);
  for (int i = 0; i < s.N; ++i) {
    vmax = std::max(vmax, std::abs(s.u(i)) + law.sound_speed(s.rho[i]));
    rmin = std::min(rmin, s.rho[i]);
  }
  double dt = cfg.cfl * s.dx / vmax;
  if (cfg.viscous == ViscousMode::kExplicit && cfg.epsilon > 0.0)
    dt = std::min(dt, 0.5 * std::min(1.0, rmin) * s.dx * s.dx / cfg.epsilon);
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    std::ostringstream os;
    os << "CFL violation: no admissible time step (max speed " << vmax << ") at t = " << s.t;
    fail(ErrorCode::kSolverFailure, os.str());
  }
  return dt;
}

StepInfo step(const PressureLaw& law, FluidState& s, const SolverConfig& cfg, double dt_max) {
  const int N = s.N;
  StepInfo info;
  info.dt = std::min(stable_dt(law, s, cfg), dt_max);
  const double dt = info.dt, dx = s.dx, lam = dt / dx;
  const double rl = s.left.rho, ml = s.left.rho * s.left.u;
  const double rr = s.right.rho, mr = s.right.rho * s.right.u;

  // Hyperbolic update.
  std::vector<Cons> F(N + 1);
  for (int f = 0; f <= N; ++f) {
    const double ra = f == 0 ? rl : s.rho[f - 1], ma = f == 0 ? ml : s.m[f - 1];
    const double rb = f == N ? rr : s.rho[f], mb = f == N ? mr : s.m[f];
    F[f] = numerical_flux(law, cfg.flux, ra, ma, rb, mb);
  }
  for (int i = 0; i < N; ++i) {
    s.rho[i] -= lam * (F[i + 1].rho - F[i].rho);
    s.m[i] -= lam * (F[i + 1].m - F[i].m);
    if (!(s.rho[i] >= cfg.positivity_floor)) positivity_failure(s, i, s.rho[i]);
  }
  s.integrals.boundary_mass += dt * (F[0].rho - F[N].rho);

  // Viscous term eps u_xx on the momentum, split after the hyperbolic step.
  const double eps = cfg.epsilon;
  if (eps > 0.0) {
    const double a = eps * dt / (dx * dx);
    info.implicit = cfg.viscous == ViscousMode::kImplicit ||
                    (cfg.viscous == ViscousMode::kAuto && a > 0.25);
    if (info.implicit) {
      // rho_i u_i - a (u_{i+1} - 2 u_i + u_{i-1}) = m_i, ghosts at the end states.
      std::vector<double> lo(N, -a), di(N), up(N, -a), rhs(s.m);
      for (int i = 0; i < N; ++i) di[i] = s.rho[i] + 2.0 * a;
      rhs[0] += a * s.left.u;
      rhs[N - 1] += a * s.right.u;
      solve_tridiagonal(lo, di, up, rhs);
      for (int i = 0; i < N; ++i) s.m[i] = s.rho[i] * rhs[i];
    } else {
      std::vector<double> u(N + 2);
      u[0] = s.left.u;
      u[N + 1] = s.right.u;
      for (int i = 0; i < N; ++i) u[i + 1] = s.u(i);
      for (int i = 0; i < N; ++i) s.m[i] += a * (u[i + 2] - 2.0 * u[i + 1] + u[i]);
    }
  }
  s.t += dt;

  // Running integrals on the updated state.
  TimeIntegrals& I = s.integrals;
  double visc = 0.0, dens = 0.0, dag = 0.0, pk = 0.0, kk = 0.0;
  for (int f = 0; f <= N; ++f) {
    const double ra = f == 0 ? rl : s.rho[f - 1], ua = f == 0 ? s.left.u : s.u(f - 1);
    const double rb = f == N ? rr : s.rho[f], ub = f == N ? s.right.u : s.u(f);
    const double ux = (ub - ua) / dx, rx = (rb - ra) / dx;
    const double rf = 0.5 * (ra + rb), uf = 0.5 * (ua + ub);
    visc += ux * ux;
    dens += law.dp(rf) / (rf * rf) * rx * rx;
    dag += (uf * uf + law.e(rf)) * ux * ux;
  }
  for (int i = 0; i < N; ++i) {
    const double x = s.x(i);
    if (x < cfg.K_lo || x > cfg.K_hi) continue;
    const double u = s.u(i);
    pk += s.rho[i] * law.p(s.rho[i]);
    kk += s.rho[i] * std::abs(u) * u * u;
  }
  I.viscous += dt * eps * visc * dx;
  I.density += dt * eps * dens * dx;
  I.dagger += dt * eps * dag * dx;
  I.pressure_K += dt * pk * dx;
  I.kinetic_K += dt * kk * dx;
  return info;
}

double far_field_deviation(const FluidState& s) {
  const int band = std::max(1, s.N / 20);  // 10% of the domain: 5% per side
  double dev = 0.0;
  for (int i = 0; i < band; ++i) {
    dev = std::max({dev, std::abs(s.rho[i] - s.left.rho), std::abs(s.u(i) - s.left.u)});
    const int j = s.N - 1 - i;
    dev = std::max({dev, std::abs(s.rho[j] - s.right.rho), std::abs(s.u(j) - s.right.u)});
  }
  return dev;
}

RunResult run(const PressureLaw& law, FluidState state, const SolverConfig& cfg,
              const std::vector<Probe>& probes) {
  validate(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  RunResult res;
  auto emit = [&](const FluidState& s) {
    for (const Probe& p : probes) p(s);
    if (cfg.keep_snapshots) res.snapshots.push_back(s);
  };
  emit(state);
  int k = 1;
  const double tol = 1e-12 * std::max(1.0, cfg.t_end);
  while (state.t < cfg.t_end - tol) {
    double target = cfg.t_end;
    if (cfg.output_dt > 0.0) target = std::min(cfg.t_end, k * cfg.output_dt);
    while (state.t < target - tol) {
      StepInfo info;
      try {
        info = step(law, state, cfg, target - state.t);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kSolverFailure) throw;
        std::ostringstream os;
        os << "solver failure at t = " << state.t << " after " << res.steps << " steps: " << e.what();
        fail(ErrorCode::kSolverFailure, os.str());
      }
      ++res.steps;
      if (info.implicit) ++res.implicit_steps;
    }
    state.t = target;
    emit(state);
    ++k;
  }
  const double dev = far_field_deviation(state);
  if (dev > cfg.far_field_tol) {
    std::ostringstream os;
    os << "waves reached the outer 10% of the domain by t = " << state.t << " (deviation " << dev
       << " > " << cfg.far_field_tol << "); enlarge L";
    fail(ErrorCode::kSolverFailure, os.str());
  }
  res.final_state = std::move(state);
  res.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace viscolimit
