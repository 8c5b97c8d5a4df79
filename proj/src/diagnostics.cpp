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

#include "viscolimit/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "viscolimit/error.hpp"

namespace viscolimit {

namespace {

// Central-difference gradients with the end states as ghost cells.
struct Gradients {
  std::vector<double> rho_x, u_x;
};

Gradients gradients(const FluidState& s) {
  Gradients g;
  g.rho_x.resize(s.N);
  g.u_x.resize(s.N);
  const double inv = 0.5 / s.dx;
  for (int i = 0; i < s.N; ++i) {
    const double rl = i > 0 ? s.rho[i - 1] : s.left.rho;
    const double rr = i + 1 < s.N ? s.rho[i + 1] : s.right.rho;
    const double ul = i > 0 ? s.u(i - 1) : s.left.u;
    const double ur = i + 1 < s.N ? s.u(i + 1) : s.right.u;
    g.rho_x[i] = (rr - rl) * inv;
    g.u_x[i] = (ur - ul) * inv;
  }
  return g;
}

}  // namespace

double relative_energy(const PressureLaw& law, const FluidState& s, const ReferenceState& ref) {
  double sum = 0.0;
  for (int i = 0; i < s.N; ++i) {
    const double x = s.x(i), rho = s.rho[i], du = s.u(i) - ref.u(x);
    sum += 0.5 * rho * du * du + law.e_star(rho, ref.rho(x));
  }
  return sum * s.dx;
}

double dagger_energy(const PressureLaw& law, const FluidState& s, const ReferenceState& ref,
                     double* min_density) {
  const DaggerPair pair(law);
  double sum = 0.0, lowest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < s.N; ++i) {
    const double x = s.x(i), rb = ref.rho(x), ub = ref.u(x);
    const EntropyPoint P = pair.eval(s.rho[i], s.u(i)), B = pair.eval(rb, ub);
    const double d =
        P.eta - B.eta - B.eta_rho_m(rb, ub) * (s.rho[i] - rb) - B.eta_m(rb) * (s.m[i] - rb * ub);
    sum += d;
    lowest = std::min(lowest, d);
  }
  if (min_density) *min_density = lowest;
  return sum * s.dx;
}

double density_gradient_energy(const FluidState& s, double epsilon) {
  const Gradients g = gradients(s);
  double sum = 0.0;
  for (int i = 0; i < s.N; ++i) sum += g.rho_x[i] * g.rho_x[i] / (s.rho[i] * s.rho[i] * s.rho[i]);
  return epsilon * epsilon * sum * s.dx;
}

double viscous_rate(const FluidState& s, double epsilon) {
  const Gradients g = gradients(s);
  double sum = 0.0;
  for (double v : g.u_x) sum += v * v;
  return epsilon * sum * s.dx;
}

// --- report --------------------------------------------------------------------

void DiagnosticsReport::add(const std::string& quantity, double t, double epsilon, double value) {
  if (!std::isfinite(value) || !std::isfinite(t)) {
    std::ostringstream os;
    os << "report: non-finite value for " << quantity << " at t = " << t;
    fail(ErrorCode::kInternal, os.str());
  }
  for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
    if (it->quantity == quantity && it->epsilon == epsilon) {
      if (!(t > it->t))
        fail(ErrorCode::kInternal, "report: time samples of " + quantity + " not increasing");
      break;
    }
  }
  rows_.push_back({quantity, t, epsilon, value});
}

std::vector<ReportRow> DiagnosticsReport::series(const std::string& quantity, double epsilon) const {
  std::vector<ReportRow> out;
  for (const auto& r : rows_)
    if (r.quantity == quantity && r.epsilon == epsilon) out.push_back(r);
  return out;
}

void DiagnosticsReport::merge(const DiagnosticsReport& other) {
  for (const auto& r : other.rows_) add(r.quantity, r.t, r.epsilon, r.value);
  for (const auto& [k, v] : other.meta_) meta_[k] = v;
}

void DiagnosticsReport::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot write " + path);
  out << "quantity,t,epsilon,value\n" << std::setprecision(17);
  for (const auto& r : rows_) out << r.quantity << ',' << r.t << ',' << r.epsilon << ',' << r.value << '\n';
  if (!out) fail(ErrorCode::kIo, "write failed: " + path);
}

void record_snapshot(DiagnosticsReport& report, const PressureLaw& law, const FluidState& s,
                     const ReferenceState& ref, double epsilon) {
  const TimeIntegrals& I = s.integrals;
  report.add("energy", s.t, epsilon, relative_energy(law, s, ref));
  report.add("viscous_integral", s.t, epsilon, I.viscous);
  report.add("density_energy", s.t, epsilon, density_gradient_energy(s, epsilon));
  report.add("density_integral", s.t, epsilon, I.density);
  report.add("pressure_K", s.t, epsilon, I.pressure_K);
  report.add("kinetic_K", s.t, epsilon, I.kinetic_K);
  report.add("dagger_energy", s.t, epsilon, dagger_energy(law, s, ref));
  report.add("dagger_integral", s.t, epsilon, I.dagger);
}

double fitted_energy_constant(const PressureLaw& law, const std::vector<FluidState>& traj,
                              const ReferenceState& ref) {
  require(!traj.empty(), ErrorCode::kInvalidArgument, "fitted_energy_constant: empty trajectory");
  std::vector<double> t, lhs;
  for (const auto& s : traj) {
    t.push_back(s.t);
    lhs.push_back(relative_energy(law, s, ref) + s.integrals.viscous);
  }
  const double E0 = relative_energy(law, traj.front(), ref);
  auto ok = [&](double M) {
    for (std::size_t n = 0; n < t.size(); ++n)
      if (lhs[n] > M * (E0 + 1.0) * std::exp(M * t[n])) return false;
    return true;
  };
  double lo = 0.0, hi = 1.0;
  while (!ok(hi)) {
    hi *= 2.0;
    require(hi < 1e12, ErrorCode::kInternal, "fitted_energy_constant: no finite constant");
  }
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

DaggerMonitor dagger_energy_monitor(const PressureLaw& law, const std::vector<FluidState>& traj,
                                    const ReferenceState& ref) {
  require(!traj.empty(), ErrorCode::kInvalidArgument, "dagger_energy_monitor: empty trajectory");
  DaggerMonitor m;
  m.E0 = relative_energy(law, traj.front(), ref);
  m.min_energy = m.min_density = std::numeric_limits<double>::infinity();
  for (const auto& s : traj) {
    double lowest = 0.0;
    const double e = dagger_energy(law, s, ref, &lowest);
    m.min_density = std::min(m.min_density, lowest);
    m.t.push_back(s.t);
    m.energy.push_back(e);
    m.lhs.push_back(e + s.integrals.dagger);
    m.min_energy = std::min(m.min_energy, e);
    m.fitted_M = std::max(m.fitted_M, m.lhs.back() / (m.E0 + 1.0));
  }
  return m;
}

// --- dissipation identity ----------------------------------------------------------

namespace {
double bump(double y) {
  if (std::abs(y) >= 1.0) return 0.0;
  const double w = 1.0 - y * y;
  return w * w * w * w;
}
double dbump(double y) {
  if (std::abs(y) >= 1.0) return 0.0;
  const double w = 1.0 - y * y;
  return -8.0 * y * w * w * w;
}
}  // namespace

double SpaceTimeBump::time(double t) const { return bump((t - tc) / tw); }
double SpaceTimeBump::space(double x) const { return bump((x - xc) / xw); }
double SpaceTimeBump::space_dx(double x) const { return dbump((x - xc) / xw) / xw; }

double SpaceTimeBump::value(double t, double x) const {
  return bump((t - tc) / tw) * bump((x - xc) / xw);
}
double SpaceTimeBump::dt(double t, double x) const {
  return dbump((t - tc) / tw) / tw * bump((x - xc) / xw);
}
double SpaceTimeBump::dx(double t, double x) const {
  return bump((t - tc) / tw) * dbump((x - xc) / xw) / xw;
}

std::vector<SpaceTimeBump> default_test_functions(double t_end, double K_lo, double K_hi) {
  require(t_end > 0.0 && K_hi > K_lo, ErrorCode::kInvalidArgument,
          "default_test_functions: empty domain");
  // Centres on a 5 x 2 lattice with alternating widths; every support lies
  // strictly inside (0, t_end) x (K_lo, K_hi).
  std::vector<SpaceTimeBump> out;
  const double w = K_hi - K_lo;
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 2; ++b) {
      SpaceTimeBump f;
      f.xc = K_lo + w * (0.2 + 0.15 * a);
      f.xw = w * (a % 2 == 0 ? 0.18 : 0.12);
      f.tc = t_end * (b == 0 ? 0.4 : 0.6);
      f.tw = t_end * (b == 0 ? 0.3 : 0.35);
      out.push_back(f);
    }
  }
  return out;
}

double DissipationResult::max_residual() const {
  double m = 0.0;
  for (double r : residual) m = std::max(m, std::abs(r));
  return m;
}

DissipationResult dissipation_identity_residual(const std::vector<FluidState>& traj,
                                                const EntropyPair& pair, double epsilon,
                                                const std::vector<SpaceTimeBump>& tests) {
  require(traj.size() >= 3, ErrorCode::kInvalidArgument,
          "dissipation_identity_residual: need at least 3 snapshots");
  const std::size_t T = traj.size(), F = tests.size();
  // Per snapshot and bump, with phi = Theta(t) X(x):
  //   A = sum eta X dx                                (paired with Theta')
  //   B = sum q [X(x+dx/2) - X(x-dx/2)] - eps eta_m u_x X' dx - src X dx
  // Both derivative pairings are in summation-by-parts form, so constant
  // fields telescope to zero.
  std::vector<std::vector<double>> A(F, std::vector<double>(T, 0.0)), B = A;
  std::vector<double> mu_uu(T, 0.0), mu_ur(T, 0.0);
  for (std::size_t n = 0; n < T; ++n) {
    const FluidState& s = traj[n];
    const Gradients g = gradients(s);
    for (int i = 0; i < s.N; ++i) {
      const double rho = s.rho[i], u = s.u(i), x = s.x(i);
      const EntropyPoint P = pair.eval(rho, u);
      const double ux = g.u_x[i], rx = g.rho_x[i];
      const double flux = epsilon * P.eta_m(rho) * ux;
      const double src = epsilon * (P.eta_mu(rho) * ux * ux + P.eta_mrho(rho) * rx * ux);
      mu_uu[n] += epsilon * std::abs(P.eta_mu(rho)) * ux * ux;
      mu_ur[n] += epsilon * std::abs(P.eta_mrho(rho) * rx * ux);
      for (std::size_t k = 0; k < F; ++k) {
        const SpaceTimeBump& f = tests[k];
        if (std::abs(x - f.xc) >= f.xw + s.dx) continue;
        const double X = f.space(x), dX = f.space(x + 0.5 * s.dx) - f.space(x - 0.5 * s.dx);
        A[k][n] += P.eta * X * s.dx;
        B[k][n] += P.q * dX - (flux * f.space_dx(x) + src * X) * s.dx;
      }
    }
    mu_uu[n] *= s.dx;
    mu_ur[n] *= s.dx;
  }
  // Time sums over snapshots n = 0, stride, 2 stride, ..., T - 1.
  auto time_sum = [&](const SpaceTimeBump& f, const std::vector<double>& a,
                      const std::vector<double>& b, std::size_t stride) {
    std::vector<std::size_t> idx;
    for (std::size_t n = 0; n < T; n += stride) idx.push_back(n);
    if (idx.back() != T - 1) idx.push_back(T - 1);
    double sum = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const double t = traj[idx[j]].t;
      const double tl = j > 0 ? 0.5 * (t + traj[idx[j - 1]].t) : t;
      const double tr = j + 1 < idx.size() ? 0.5 * (t + traj[idx[j + 1]].t) : t;
      sum += a[idx[j]] * (f.time(tr) - f.time(tl)) + b[idx[j]] * f.time(t) * (tr - tl);
    }
    return sum;
  };
  DissipationResult res;
  for (std::size_t k = 0; k < F; ++k) {
    const double fine = time_sum(tests[k], A[k], B[k], 1);
    const double coarse = time_sum(tests[k], A[k], B[k], 2);
    res.residual.push_back(fine);
    res.time_error.push_back(std::abs(fine - coarse) / 3.0);
  }
  // Time errors far below the largest residual are immaterial.
  const double scale = 1e-3 * res.max_residual();
  for (std::size_t k = 0; k < F; ++k)
    if (res.time_error[k] > std::max(std::abs(res.residual[k]), scale)) res.cadence_too_coarse = true;
  for (std::size_t n = 0; n + 1 < T; ++n) {
    const double h = 0.5 * (traj[n + 1].t - traj[n].t);
    res.mu_mass_uu += h * (mu_uu[n] + mu_uu[n + 1]);
    res.mu_mass_urho += h * (mu_ur[n] + mu_ur[n + 1]);
  }
  return res;
}

// --- commutation -------------------------------------------------------------------

double patch_commutator(const std::vector<FluidState>& traj, const Patch& p, const EntropyPair& a,
                        const EntropyPair& b) {
  require(p.n1 <= static_cast<int>(traj.size()) && p.n0 < p.n1 && p.i0 < p.i1,
          ErrorCode::kInvalidArgument, "patch_commutator: patch outside trajectory");
  // Map (t, x) back to the stored cell values.
  int n_cur = p.n0;
  auto sampler = [&](double t, double x) {
    while (traj[n_cur].t != t) ++n_cur;
    const FluidState& s = traj[n_cur];
    const int i = static_cast<int>(std::floor((x + s.L) / s.dx));
    return std::pair<double, double>{s.rho[i], s.u(i)};
  };
  return patch_commutator_sampled(traj, p, a, b, sampler);
}

std::vector<WavePath> wave_paths(const RiemannSolution& sol, double shock_margin,
                                 double edge_margin) {
  std::vector<WavePath> out;
  auto add = [&](WaveKind w, double lo, double hi) {
    if (w == WaveKind::kShock) out.push_back({lo, shock_margin});
    if (w == WaveKind::kRarefaction) {
      out.push_back({lo, edge_margin});
      out.push_back({hi, edge_margin});
    }
  };
  add(sol.wave1(), sol.wave1_lo(), sol.wave1_hi());
  add(sol.wave2(), sol.wave2_lo(), sol.wave2_hi());
  return out;
}

std::vector<Patch> smooth_patches(const std::vector<FluidState>& traj, const PatchSpec& spec,
                                  const std::vector<WavePath>& paths, int* flagged) {
  require(!traj.empty() && spec.cells > 0 && spec.samples > 0, ErrorCode::kInvalidArgument,
          "smooth_patches: bad patch spec");
  const FluidState& g = traj.front();
  int ia = g.N, ib = 0;
  for (int i = 0; i < g.N; ++i) {
    if (g.x(i) >= spec.K_lo && g.x(i) <= spec.K_hi) {
      ia = std::min(ia, i);
      ib = std::max(ib, i + 1);
    }
  }
  int na = static_cast<int>(traj.size());
  for (int n = 0; n < static_cast<int>(traj.size()); ++n)
    if (traj[n].t >= spec.t_min) { na = n; break; }
  std::vector<Patch> out;
  int nflag = 0, id = 0;
  for (int n0 = na; n0 + spec.samples <= static_cast<int>(traj.size()); n0 += spec.samples) {
    const double t0 = traj[n0].t, t1 = traj[n0 + spec.samples - 1].t;
    for (int i0 = ia; i0 + spec.cells <= ib; i0 += spec.cells) {
      const double x0 = g.x(i0) - 0.5 * g.dx, x1 = g.x(i0 + spec.cells - 1) + 0.5 * g.dx;
      bool hit = false;
      for (const WavePath& w : paths) {
        const double lo = std::min(w.speed * t0, w.speed * t1);
        const double hi = std::max(w.speed * t0, w.speed * t1);
        if (hi > x0 - w.margin && lo < x1 + w.margin) hit = true;
      }
      const Patch p{id++, i0, i0 + spec.cells, n0, n0 + spec.samples};
      if (hit) ++nflag; else out.push_back(p);
    }
  }
  if (flagged) *flagged = nflag;
  return out;
}

CommutationTable commutation_residual(const std::vector<double>& eps,
                                      const std::vector<std::vector<FluidState>>& runs,
                                      const std::vector<double>& limit_commutator,
                                      const std::vector<Patch>& patches, const EntropyPair& a,
                                      const EntropyPair& b, double floor) {
  require(eps.size() >= 3 && eps.size() == runs.size(), ErrorCode::kInvalidArgument,
          "commutation_residual: need >= 3 epsilon values with one run each");
  require(limit_commutator.size() == patches.size(), ErrorCode::kInvalidArgument,
          "commutation_residual: one limit value per patch required");
  for (std::size_t k = 1; k < eps.size(); ++k)
    require(eps[k] < eps[k - 1], ErrorCode::kInvalidArgument,
            "commutation_residual: epsilon list must be strictly decreasing");
  CommutationTable tab;
  tab.patches = static_cast<int>(patches.size());
  for (std::size_t p = 0; p < patches.size(); ++p) {
    double prev = std::numeric_limits<double>::infinity();
    bool dec = true;
    for (std::size_t k = 0; k < eps.size(); ++k) {
      const double c = patch_commutator(runs[k], patches[p], a, b);
      const double r = std::abs(c - limit_commutator[p]);
      tab.rows.push_back({patches[p].id, eps[k], r, std::abs(c)});
      if (!(r < prev || (r <= floor && prev <= floor))) dec = false;
      prev = r;
    }
    if (!dec) ++tab.non_decreasing;
  }
  return tab;
}

double empirical_order(const std::vector<double>& eps, const std::vector<double>& err) {
  require(eps.size() == err.size() && eps.size() >= 2, ErrorCode::kInvalidArgument,
          "empirical_order: need >= 2 matching samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(eps.size());
  for (std::size_t k = 0; k < eps.size(); ++k) {
    require(eps[k] > 0 && err[k] > 0, ErrorCode::kDomain, "empirical_order: values must be positive");
    const double x = std::log(eps[k]), y = std::log(err[k]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double variation_factor(const std::vector<double>& values) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double v : values) {
    if (!(v > 0.0)) return std::numeric_limits<double>::infinity();
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return values.empty() ? 1.0 : hi / lo;
}

}  // namespace viscolimit
