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

#include "viscolimit/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "viscolimit/diagnostics.hpp"
#include "viscolimit/entropy.hpp"
#include "viscolimit/euler_ref.hpp"
#include "viscolimit/kernels.hpp"
#include "viscolimit/presets.hpp"
#include "viscolimit/quadrature.hpp"
#include "viscolimit/special.hpp"

#ifndef VISCOLIMIT_GIT_DESCRIBE
#define VISCOLIMIT_GIT_DESCRIBE "v0.1.0"
#endif

namespace viscolimit {

namespace fs = std::filesystem;

const char* version_string() { return "viscolimit " VISCOLIMIT_GIT_DESCRIBE; }

bool ExperimentOutcome::falsified() const {
  return std::any_of(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass; });
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return 0;
    case ErrorCode::kFalsified: return 1;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kConfig:
    case ErrorCode::kIo: return 2;
    case ErrorCode::kDomain:
    case ErrorCode::kSolverFailure:
    case ErrorCode::kInternal: return 3;
  }
  return 3;
}

unsigned worker_count(std::size_t tasks) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("VISCOLIMIT_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, tasks)));
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  const unsigned workers = worker_count(n);
  std::vector<std::exception_ptr> errors(n);
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    // Static round-robin assignment: task i runs on worker i % workers.
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < n; i += workers) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

namespace {

// --- output plumbing --------------------------------------------------------

class Artifacts {
 public:
  explicit Artifacts(const std::string& dir) : root_(dir) {
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec || !fs::is_directory(root_))
      fail(ErrorCode::kConfig, "output directory '" + dir + "' cannot be created");
    const fs::path probe = root_ / ".viscolimit_write_probe";
    {
      std::ofstream out(probe);
      if (!out) fail(ErrorCode::kConfig, "output directory '" + dir + "' is not writable");
    }
    fs::remove(probe, ec);
  }

  template <typename F>
  void write(const std::string& name, const std::string& kind, const std::string& desc, F&& body) {
    std::ofstream out(root_ / name);
    if (!out) fail(ErrorCode::kIo, "cannot write " + (root_ / name).string());
    out << std::setprecision(17);
    body(out);
    out.flush();
    if (!out) fail(ErrorCode::kIo, "write failed: " + (root_ / name).string());
    files_.push_back({name, kind, desc});
  }

  std::vector<ArtifactEntry>& files() { return files_; }
  const fs::path& root() const { return root_; }

 private:
  fs::path root_;
  std::vector<ArtifactEntry> files_;
};

struct Context {
  const ExperimentConfig& cfg;
  PressureLaw law;
  Artifacts& out;
  std::vector<CheckResult>& checks;
  std::vector<std::pair<std::string, double>>& summary;

  void check(const std::string& name, double value, double threshold, bool pass,
             const std::string& detail = "") {
    checks.push_back({name, value, threshold, pass, detail});
  }
  void note(const std::string& key, double value) { summary.emplace_back(key, value); }
};

std::string eps_tag(std::size_t k) { return "eps" + std::to_string(k); }

void write_snapshot(Artifacts& out, const std::string& name, const std::string& desc,
                    const std::vector<const FluidState*>& states) {
  out.write(name, "snapshot", desc, [&](std::ostream& os) {
    os << "t,x,rho,m,u\n";
    for (const FluidState* s : states)
      for (int i = 0; i < s->N; ++i)
        os << s->t << ',' << s->x(i) << ',' << s->rho[i] << ',' << s->m[i] << ',' << s->u(i) << '\n';
  });
}

void write_snapshots(Context& ctx, const std::string& prefix, double eps,
                     const std::vector<FluidState>& traj) {
  if (ctx.cfg.snapshots == "none" || traj.empty()) return;
  std::vector<const FluidState*> states;
  if (ctx.cfg.snapshots == "all")
    for (const auto& s : traj) states.push_back(&s);
  else
    states.push_back(&traj.back());
  std::ostringstream desc;
  desc << "NS snapshots (" << ctx.cfg.snapshots << ") at eps = " << eps;
  write_snapshot(ctx.out, prefix + ".csv", desc.str(), states);
}

// --- shared experiment pieces --------------------------------------------------

InitialProfiles profiles_of(const ExperimentConfig& cfg) {
  const InitialBlock& in = cfg.initial;
  return make_profiles(*find_initial_preset(in.preset), in.rho_left, in.u_left, in.rho_right,
                       in.u_right, in.amplitude, in.pulse_width);
}

RegularizationConfig regularization_of(const ExperimentConfig& cfg) {
  RegularizationConfig r;
  r.width_exponent = cfg.initial.mollifier_exponent;
  r.width_scale = cfg.initial.mollifier_scale;
  r.L0 = cfg.initial.L0;
  return r;
}

struct SweepMember {
  double eps = 0.0;
  InitialDataReport init;
  RunResult run;
  double mass0 = 0.0;
};

std::vector<SweepMember> run_sweep(const Context& ctx, const InitialProfiles& prof, int N,
                                   const std::vector<double>& eps_list) {
  std::vector<SweepMember> members(eps_list.size());
  const RegularizationConfig reg = regularization_of(ctx.cfg);
  parallel_for(eps_list.size(), [&](std::size_t k) {
    SweepMember& m = members[k];
    m.eps = eps_list[k];
    const FluidState s0 = regularize_initial_data(ctx.law, prof.rho, prof.u, m.eps, N,
                                                  ctx.cfg.solver.L, reg, &m.init);
    m.mass0 = s0.mass();
    SolverConfig sc = ctx.cfg.solver;
    sc.epsilon = m.eps;
    sc.N = N;
    try {
      m.run = run(ctx.law, s0, sc);
    } catch (const Error& e) {
      std::ostringstream os;
      os << "eps = " << m.eps << ", N = " << N << ": " << e.what();
      throw Error(e.code(), os.str());
    }
  });
  return members;
}

// Reference (eps -> 0) solution: exact for pure laws on Riemann data,
// otherwise an eps = 0 HLL run on a refined grid with the same cadence.
struct Limit {
  std::optional<RiemannSolution> exact;
  RunResult reference;
  bool has_reference = false;

  EndState sample(std::size_t snapshot, double t, double x) const {
    if (exact) return exact->sample(x / t);
    const FluidState& f = reference.snapshots.at(snapshot);
    int i = static_cast<int>(std::floor((x + f.L) / f.dx));
    i = std::clamp(i, 0, f.N - 1);
    return {f.rho[i], f.u(i)};
  }
  double l1(const FluidState& s, double K_lo, double K_hi) const {
    if (exact) return l1_distance_exact(s, *exact, K_lo, K_hi);
    return l1_distance_fine(s, reference.final_state, K_lo, K_hi);
  }
  std::string kind() const { return exact ? "exact_riemann" : "euler_reference"; }
};

Limit make_limit(const Context& ctx, const InitialProfiles& prof, int N) {
  Limit lim;
  if (prof.riemann && ctx.law.is_pure()) {
    lim.exact = exact_riemann_gamma(ctx.law, prof.left, prof.right);
    return lim;
  }
  const int Nf = N * ctx.cfg.diagnostics.reference_refine;
  const FluidState init = prof.riemann
                              ? riemann_cells(prof.left, prof.right, Nf, ctx.cfg.solver.L)
                              : regularize_initial_data(ctx.law, prof.rho, prof.u, 0.0, Nf,
                                                        ctx.cfg.solver.L);
  SolverConfig sc = ctx.cfg.solver;
  sc.epsilon = 0.0;
  sc.N = Nf;
  lim.reference = euler_reference_run(ctx.law, init, sc);
  lim.has_reference = true;
  return lim;
}

// Table window for compact pairs: covers the characteristic cones of the
// generators' supports and the invariant region of the data.
MarchConfig pair_window(const PressureLaw& law, const InitialProfiles& prof, double L,
                        double a, double b) {
  double zmin = std::numeric_limits<double>::infinity(), wmax = -zmin, rmax = 0.0;
  auto visit = [&](double rho, double u) {
    const double k = law.k(rho);
    zmin = std::min(zmin, u - k);
    wmax = std::max(wmax, u + k);
    rmax = std::max(rmax, rho);
  };
  visit(prof.left.rho, prof.left.u);
  visit(prof.right.rho, prof.right.u);
  for (int i = 0; i <= 2000; ++i) {
    const double x = -L + 2.0 * L * i / 2000.0;
    visit(prof.rho(x), prof.u(x));
  }
  const double kmax = 0.5 * (wmax - zmin);
  MarchConfig mc;
  mc.rho_max = 1.25 * std::max(rmax, law.k_inverse(kmax));
  const double kt = law.k(mc.rho_max);
  mc.u_lo = std::min(a, zmin) - kt - 0.5;
  mc.u_hi = std::max(b, wmax) + kt + 0.5;
  return mc;
}

std::shared_ptr<TabulatedPair> compact_pair(const Context& ctx, const InitialProfiles& prof,
                                            std::pair<double, double> support) {
  const auto [a, b] = support;
  const MarchConfig mc = pair_window(ctx.law, prof, ctx.cfg.solver.L, a, b);
  return march_entropy(ctx.law, TestFunctionPsi::compact(a, b), mc);
}

void require_riemann(const InitialProfiles& prof, const std::string& experiment) {
  if (!prof.riemann)
    fail(ErrorCode::kConfig, experiment + " requires a Riemann initial-data preset");
}

// --- experiments ---------------------------------------------------------------

void kernel_validation(Context& ctx) {
  using namespace kernels;
  // PDE residual order under two halvings.
  auto sharp = [](double R, double v) { return chi_sharp_R(R, v); };
  auto flat = [](double R, double v) { return chi_flat_density_R(R, v); };
  std::vector<std::tuple<std::string, double, double>> pde_rows;
  for (auto& [name, kern] : {std::pair<std::string, std::function<double(double, double)>>{"chi_sharp", sharp},
                             std::pair<std::string, std::function<double(double, double)>>{"chi_flat", flat}}) {
    double prev = 0.0, worst_order = std::numeric_limits<double>::infinity();
    for (double h : {0.04, 0.02, 0.01}) {
      const PdeResidual r = pde_residual(kern, 0.5, 2.0, 2.0, h);
      pde_rows.emplace_back(name, h, r.max_residual);
      if (prev > 0.0) worst_order = std::min(worst_order, std::log2(prev / r.max_residual));
      prev = r.max_residual;
    }
    ctx.check("pde_residual_order_" + name, worst_order, 1.6, worst_order >= 1.6,
              "min observed order over two halvings; O(h^2) expected");
  }
  ctx.out.write("pde_residual.csv", "table", "kernel PDE residual under grid halving",
                [&](std::ostream& os) {
                  os << "kernel,h,max_residual\n";
                  for (const auto& [n, h, r] : pde_rows) os << n << ',' << h << ',' << r << '\n';
                });

  // chi_flat = chi#_R - chi#: atoms exact, density against a 5-point R difference.
  double atom_err = 0.0, dens_err = 0.0;
  for (double R : {0.5, 1.0, 2.0}) {
    const LineMeasure f = chi_flat(std::exp(R)), d = chi_sharp_dR_measure(R);
    if (f.atoms.size() != d.atoms.size()) atom_err = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < std::min(f.atoms.size(), d.atoms.size()); ++i)
      atom_err = std::max({atom_err, std::abs(f.atoms[i].location - d.atoms[i].location),
                           std::abs(f.atoms[i].weight - d.atoms[i].weight)});
    const double h = 1e-3;
    for (double v = -R + 5 * h; v < R - 5 * h; v += R / 97.0) {
      const double fd = (-chi_sharp_R(R + 2 * h, v) + 8 * chi_sharp_R(R + h, v) -
                         8 * chi_sharp_R(R - h, v) + chi_sharp_R(R - 2 * h, v)) / (12 * h);
      dens_err = std::max(dens_err, std::abs(chi_flat_density_R(R, v) - (fd - chi_sharp_R(R, v))));
    }
  }
  ctx.check("chi_flat_atoms", atom_err, 1e-15, atom_err <= 1e-15);
  ctx.check("chi_flat_density", dens_err, 1e-8, dens_err <= 1e-8);

  // Bessel integral identities.
  const auto& gl = quad::gl16();
  double bessel = 0.0;
  for (double rho : {2.0, std::exp(2.0), 10.0}) {
    const double R = std::log(rho), sr = std::sqrt(rho), hp = 0.5 * std::acos(-1.0);
    const double a = gl.integrate_composite(
        [&](double t) { return special::bessel_i0(0.5 * R * std::cos(t)) * std::cos(t); }, 0.0, hp, 4);
    const double b = gl.integrate_composite(
        [&](double t) { return special::bessel_i1(0.5 * R * std::cos(t)); }, 0.0, hp, 4);
    const double ea = (rho - 1) / (sr * R), eb = (rho - 2 * sr + 1) / (sr * R);
    bessel = std::max({bessel, std::abs(a - ea) / std::abs(ea), std::abs(b - eb) / std::abs(eb)});
  }
  ctx.check("bessel_integrals", bessel, 1e-8, bessel <= 1e-8, "max relative error");

  // Identity int (rho chi_rho - chi) dv = 0.
  const PressureLaw gl_law = PressureLaw::pure_gamma(ctx.cfg.pressure.gamma, ctx.cfg.pressure.kappa);
  const std::vector<double> rhos{0.25, 0.5, 1.0, 2.0, std::exp(2.0)};
  const IdentityReport ig = identity_check_gamma(gl_law, rhos, 1e-6);
  // The convolution check exercises the isothermal continuation only; its
  // boundary data comes from a fixed smooth (lambda = 2) kernel so that the
  // Gauss rule is not fighting edge singularities of chi_rho when lambda < 1.
  const PressureLaw smooth_law = PressureLaw::pure_gamma(1.4, 1.0);
  const double k1 = smooth_law.k(1.0);
  BoundaryData data{[&](double v) { return gamma_chi(smooth_law, 1.0, v); },
                    [&](double v) { return gamma_chi_rho(smooth_law, 1.0, v); },
                    {-k1, k1}};
  const IdentityReport ic = identity_check_convolution(data, k1, {1.0, 2.0, std::exp(2.0)}, 1e-6);
  ctx.check("identity_gamma", ig.worst_ratio, 1.0, ig.pass, "max residual / (1e-6 rho)");
  ctx.check("identity_convolution", ic.worst_ratio, 1.0, ic.pass, "max residual / (1e-6 rho)");
  ctx.out.write("identity.csv", "table", "kernel identity residuals", [&](std::ostream& os) {
    os << "representation,rho,residual\n";
    for (std::size_t i = 0; i < ig.rho.size(); ++i) os << "gamma," << ig.rho[i] << ',' << ig.residual[i] << '\n';
    for (std::size_t i = 0; i < ic.rho.size(); ++i) os << "convolution," << ic.rho[i] << ',' << ic.residual[i] << '\n';
  });

  // Heatmap data over (rho, v = u - s).
  ctx.out.write("kernel_grid.csv", "grid", "chi_sharp and chi_flat density over (rho, v)",
                [&](std::ostream& os) {
                  os << "rho,v,chi_sharp,chi_flat_density\n";
                  for (int i = 0; i <= 40; ++i) {
                    const double R = 0.05 + 2.0 * i / 40.0, rho = std::exp(R);
                    for (int j = 0; j <= 80; ++j) {
                      const double v = -2.2 + 4.4 * j / 80.0;
                      os << rho << ',' << v << ',' << chi_sharp_R(R, v) << ','
                         << chi_flat_density_R(R, v) << '\n';
                    }
                  }
                });
}

void entropy_crosscheck(Context& ctx) {
  const PressureLaw& law = ctx.law;
  MarchConfig mc;
  auto one = march_entropy(law, TestFunctionPsi::constant(), mc);
  auto lin = march_entropy(law, TestFunctionPsi::linear(), mc);
  auto quad = march_entropy(law, TestFunctionPsi::quadratic(), mc);
  const MechanicalPair mech(law);
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
  double e_mass = 0, e_mom = 0, e_energy = 0;
  std::mt19937_64 rng(ctx.cfg.seed);
  std::uniform_real_distribution<double> lr(std::log(0.05), std::log(6.0)), du(-2.5, 2.5);
  for (int n = 0; n < 200; ++n) {
    const double rho = std::exp(lr(rng)), u = du(rng);
    const EntropyPoint a = one->eval(rho, u), b = lin->eval(rho, u), c = quad->eval(rho, u),
                       m = mech.eval(rho, u);
    e_mass = std::max({e_mass, rel(a.eta, rho), rel(a.q, rho * u)});
    e_mom = std::max({e_mom, rel(b.eta, rho * u), rel(b.q, rho * u * u + law.p(rho))});
    e_energy = std::max({e_energy, rel(c.eta, m.eta), rel(c.q, m.q)});
  }
  ctx.check("march_mass", e_mass, 1e-4, e_mass <= 1e-4, "psi = 1 vs (rho, rho u)");
  ctx.check("march_momentum", e_mom, 1e-4, e_mom <= 1e-4, "psi = s vs (rho u, rho u^2 + p)");
  ctx.check("march_energy", e_energy, 1e-4, e_energy <= 1e-4, "psi = s^2/2 vs mechanical pair");

  const auto [a, b] = ctx.cfg.diagnostics.psi1;
  auto compact = march_entropy(law, TestFunctionPsi::compact(a, b), mc);
  if (!law.is_pure() && law.rho_star() == 1.0 && law.c_star() == 1.0) {
    double worst = 0.0, scale = 0.0;
    for (double rho : {1.0, 1.5, 2.5, 4.0, std::exp(2.0)})
      for (double u : {-1.5, -0.5, 0.0, 0.7, 1.8}) {
        const auto [eta, q] = convolution_entropy(*compact, rho, u);
        const EntropyPoint p = compact->eval(rho, u);
        worst = std::max({worst, std::abs(eta - p.eta), std::abs(q - p.q)});
        scale = std::max(scale, std::abs(p.eta));
      }
    const double r = worst / std::max(1.0, scale);
    ctx.check("march_vs_convolution", r, 1e-3, r <= 1e-3, "rho in [1, e^2]");
  } else {
    ctx.note("march_vs_convolution_skipped", 1.0);
  }
  const CompactBoundReport cb = compact_pair_bounds(*compact);
  ctx.check("support_audit", cb.support_violation, 1e-12,
            cb.support_violation <= 1e-12 && cb.nodes_outside >= 10000,
            std::to_string(cb.nodes_outside) + " nodes outside the cone");
  ctx.note("compact_m_eta", cb.m_eta);
  ctx.note("compact_m_q", cb.m_q);

  ctx.out.write("pair_table.csv", "pair", "compact pair on a (rho, u) grid", [&](std::ostream& os) {
    os << "rho,u,eta,q,eta_rho,eta_u,eta_uu,eta_urho\n";
    for (int i = 0; i <= 60; ++i) {
      const double rho = std::exp(std::log(0.05) + (std::log(6.0) - std::log(0.05)) * i / 60.0);
      for (int j = 0; j <= 80; ++j) {
        const double u = -4.0 + 8.0 * j / 80.0;
        const EntropyPoint p = compact->eval(rho, u);
        os << rho << ',' << u << ',' << p.eta << ',' << p.q << ',' << p.eta_rho << ',' << p.eta_u
           << ',' << p.eta_uu << ',' << p.eta_urho << '\n';
      }
    }
  });
  ctx.out.write("pair_table.json", "metadata", "sidecar for pair_table.csv", [&](std::ostream& os) {
    nlohmann::ordered_json j;
    j["generator"] = {{"kind", "compact"}, {"a", a}, {"b", b}};
    j["pressure"] = {{"law", ctx.cfg.pressure.law}, {"gamma", law.gamma()}, {"kappa", law.kappa()},
                     {"rho_star", law.rho_star()}, {"c_star", law.c_star()}};
    j["table"] = {{"rows", compact->rows()}, {"cols", compact->cols()}, {"dk", compact->dk()},
                  {"du", compact->du()}, {"u0", compact->u0()}, {"rho_max", compact->rho_max()},
                  {"first_marched_row", compact->first_marched_row()}};
    j["grid"] = {{"rho", "61 log-spaced points on [0.05, 6]"}, {"u", "81 points on [-4, 4]"}};
    os << j.dump(2) << '\n';
  });
}

void vanishing_viscosity(Context& ctx) {
  const ExperimentConfig& cfg = ctx.cfg;
  const InitialProfiles prof = profiles_of(cfg);
  const ReferenceState ref{prof.left, prof.right, cfg.initial.L0};
  const int N = cfg.solver.N;
  std::vector<SweepMember> members = run_sweep(ctx, prof, N, cfg.eps);
  const Limit lim = make_limit(ctx, prof, N);

  DiagnosticsReport report;
  std::vector<double> l1, fitted, dagger_M;
  double min_dagger = std::numeric_limits<double>::infinity(), mass_defect = 0.0;
  double min_dagger_density = min_dagger;
  for (auto& m : members) {
    const auto& traj = m.run.snapshots;
    for (const auto& s : traj) record_snapshot(report, ctx.law, s, ref, m.eps);
    const FluidState& fin = m.run.final_state;
    l1.push_back(lim.l1(fin, cfg.diagnostics.K_lo, cfg.diagnostics.K_hi));
    fitted.push_back(fitted_energy_constant(ctx.law, traj, ref));
    const DaggerMonitor dm = dagger_energy_monitor(ctx.law, traj, ref);
    dagger_M.push_back(dm.fitted_M);
    min_dagger = std::min(min_dagger, dm.min_energy);
    min_dagger_density = std::min(min_dagger_density, dm.min_density);
    mass_defect = std::max(mass_defect, std::abs(fin.mass() - m.mass0 - fin.integrals.boundary_mass) / fin.t);
  }
  for (std::size_t k = 0; k < members.size(); ++k) report.add("l1_distance", members[k].run.final_state.t, members[k].eps, l1[k]);
  report.write_csv((ctx.out.root() / "report.csv").string());
  ctx.out.files().push_back({"report.csv", "report", "monitored functionals per snapshot and epsilon"});

  ctx.out.write("convergence.csv", "table", "L1(K) distance to the limit per epsilon",
                [&](std::ostream& os) {
                  os << "epsilon,l1_distance,fitted_M,dagger_M,E0,E1,M0,steps,implicit_steps\n";
                  for (std::size_t k = 0; k < members.size(); ++k) {
                    const auto& m = members[k];
                    os << m.eps << ',' << l1[k] << ',' << fitted[k] << ',' << dagger_M[k] << ','
                       << m.init.E0 << ',' << m.init.E1 << ',' << m.init.M0 << ',' << m.run.steps
                       << ',' << m.run.implicit_steps << '\n';
                  }
                });
  for (std::size_t k = 0; k < members.size(); ++k)
    write_snapshots(ctx, "snapshots_" + eps_tag(k), members[k].eps, members[k].run.snapshots);
  if (lim.has_reference && cfg.snapshots != "none")
    write_snapshot(ctx.out, "reference_final.csv", "Euler reference at t_end", {&lim.reference.final_state});

  // Recorded uniformity of the monitored bounds (not asserted).
  struct Mon { std::string name; std::vector<double> v; };
  std::vector<Mon> mons{{"viscous_integral", {}}, {"density_monitor", {}}, {"pressure_K", {}},
                        {"kinetic_K", {}}, {"dagger_lhs", {}}};
  for (auto& m : members) {
    const FluidState& f = m.run.final_state;
    mons[0].v.push_back(f.integrals.viscous);
    mons[1].v.push_back(density_gradient_energy(f, m.eps) + f.integrals.density);
    mons[2].v.push_back(f.integrals.pressure_K);
    mons[3].v.push_back(f.integrals.kinetic_K);
    mons[4].v.push_back(dagger_energy(ctx.law, f, ref) + f.integrals.dagger);
  }
  ctx.out.write("uniformity.csv", "table", "variation factor of monitored bounds across the sweep",
                [&](std::ostream& os) {
                  os << "quantity,min,max,variation_factor,within_3x\n";
                  for (const auto& m : mons) {
                    const double f = variation_factor(m.v);
                    os << m.name << ',' << *std::min_element(m.v.begin(), m.v.end()) << ','
                       << *std::max_element(m.v.begin(), m.v.end()) << ',' << f << ','
                       << (f < 3.0 ? 1 : 0) << '\n';
                  }
                });

  double worst_ratio = 0.0;
  for (std::size_t k = 1; k < l1.size(); ++k) worst_ratio = std::max(worst_ratio, l1[k] / l1[k - 1]);
  if (l1.size() >= 2) {
    ctx.check("l1_monotone", worst_ratio, 1.0, worst_ratio < 1.0, "max L1(eps_k) / L1(eps_{k-1})");
    const double order = empirical_order(cfg.eps, l1);
    ctx.check("empirical_order", order, 0.4, order >= 0.4 && order <= 1.1, "band [0.4, 1.1]");
    ctx.note("empirical_order", order);
  }
  const double vm = variation_factor(fitted), vd = variation_factor(dagger_M);
  ctx.check("energy_M_variation", vm, 2.0, vm < 2.0, "fitted M max/min across the sweep");
  ctx.check("dagger_M_variation", vd, 2.0, vd < 2.0, "dagger-energy fitted M max/min across the sweep");
  ctx.check("dagger_energy_nonnegative", min_dagger, 0.0, min_dagger >= -1e-12 && std::isfinite(min_dagger),
            "min over snapshots of the integrated dagger energy");
  ctx.check("dagger_density_nonnegative", min_dagger_density, 0.0, min_dagger_density >= -1e-12,
            "min over cells and snapshots of the dagger relative-entropy density");
  ctx.check("mass_conservation", mass_defect, 1e-10, mass_defect <= 1e-10, "per unit time");
  ctx.note("limit_is_exact", lim.exact ? 1.0 : 0.0);
  for (std::size_t k = 0; k < members.size(); ++k) {
    ctx.note("l1_" + eps_tag(k), l1[k]);
    ctx.note("fitted_M_" + eps_tag(k), fitted[k]);
  }
}

void commutation(Context& ctx) {
  const ExperimentConfig& cfg = ctx.cfg;
  if (cfg.eps.size() < 3) fail(ErrorCode::kConfig, "commutation requires at least 3 sweep.eps values");
  const InitialProfiles prof = profiles_of(cfg);
  require_riemann(prof, "commutation");
  const int N = cfg.solver.N;
  auto a = compact_pair(ctx, prof, cfg.diagnostics.psi1);
  auto b = compact_pair(ctx, prof, cfg.diagnostics.psi2);
  std::vector<SweepMember> members = run_sweep(ctx, prof, N, cfg.eps);
  const Limit lim = make_limit(ctx, prof, N);
  const RiemannSolution waves = exact_riemann(ctx.law, prof.left, prof.right);

  std::vector<std::vector<FluidState>> runs;
  for (auto& m : members) runs.push_back(std::move(m.run.snapshots));
  const auto t0 = std::chrono::steady_clock::now();
  PatchSpec spec;
  spec.cells = cfg.diagnostics.patch_cells;
  spec.samples = cfg.diagnostics.patch_samples;
  spec.K_lo = cfg.diagnostics.K_lo;
  spec.K_hi = cfg.diagnostics.K_hi;
  spec.t_min = cfg.diagnostics.t_min;
  const double shock_margin = std::max(cfg.diagnostics.shock_margin, 20.0 * cfg.eps.front());
  int flagged = 0;
  const auto patches = smooth_patches(
      runs[0], spec, wave_paths(waves, shock_margin, cfg.diagnostics.edge_margin), &flagged);
  std::vector<double> limit_c(patches.size());
  parallel_for(patches.size(), [&](std::size_t p) {
    limit_c[p] = patch_commutator_sampled(runs[0], patches[p], *a, *b, [&](double t, double x) {
      std::size_t n = 0;
      while (runs[0][n].t != t) ++n;
      const EndState e = lim.sample(n, t, x);
      return std::pair<double, double>{e.rho, e.u};
    });
  });
  const CommutationTable tab = commutation_residual(cfg.eps, runs, limit_c, patches, *a, *b);
  const double post = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  ctx.out.write("commutation.csv", "table", "commutation residual per patch and epsilon",
                [&](std::ostream& os) {
                  os << "patch_id,epsilon,residual\n";
                  for (const auto& r : tab.rows) os << r.patch_id << ',' << r.epsilon << ',' << r.residual << '\n';
                });
  // Patches where both pairs vanish identically (states outside the generator
  // cones) decrease trivially; the check also requires enough active ones.
  std::vector<char> active(patches.size(), 0);
  for (std::size_t p = 0; p < patches.size(); ++p) active[p] = std::abs(limit_c[p]) > 1e-14;
  for (const auto& r : tab.rows)
    for (std::size_t p = 0; p < patches.size(); ++p)
      if (patches[p].id == r.patch_id && (std::abs(r.raw) > 1e-14 || r.residual > 1e-14)) active[p] = 1;
  const int n_active = static_cast<int>(std::count(active.begin(), active.end(), 1));
  const FluidState& g = runs[0].front();
  ctx.out.write("patches.csv", "table", "smooth-region patches", [&](std::ostream& os) {
    os << "patch_id,x0,x1,t0,t1,limit_commutator,active\n";
    for (std::size_t p = 0; p < patches.size(); ++p) {
      const Patch& q = patches[p];
      os << q.id << ',' << g.x(q.i0) - 0.5 * g.dx << ',' << g.x(q.i1 - 1) + 0.5 * g.dx << ','
         << runs[0][q.n0].t << ',' << runs[0][q.n1 - 1].t << ',' << limit_c[p] << ','
         << int(active[p]) << '\n';
    }
  });
  ctx.check("commutation_decreasing", tab.non_decreasing, 0.0, tab.decreasing() && n_active >= 10,
            std::to_string(tab.non_decreasing) + " of " + std::to_string(tab.patches) +
                " patches not strictly decreasing; " + std::to_string(n_active) +
                " active (>= 10 required)");
  ctx.note("patches", static_cast<double>(patches.size()));
  ctx.note("patches_active", n_active);
  ctx.note("patches_flagged_near_waves", flagged);
  ctx.note("postprocessing_seconds", post);
}

void dissipation(Context& ctx) {
  const ExperimentConfig& cfg = ctx.cfg;
  const InitialProfiles prof = profiles_of(cfg);
  auto pair = compact_pair(ctx, prof, cfg.diagnostics.psi1);
  const int N = cfg.solver.N;
  const auto tests = default_test_functions(cfg.solver.t_end, cfg.diagnostics.K_lo, cfg.diagnostics.K_hi);
  std::vector<SweepMember> coarse = run_sweep(ctx, prof, N / 2, cfg.eps);
  std::vector<SweepMember> fine = run_sweep(ctx, prof, N, cfg.eps);
  std::vector<DissipationResult> rc(cfg.eps.size()), rf(cfg.eps.size());
  parallel_for(2 * cfg.eps.size(), [&](std::size_t j) {
    const std::size_t k = j / 2;
    if (j % 2 == 0) rc[k] = dissipation_identity_residual(coarse[k].run.snapshots, *pair, cfg.eps[k], tests);
    else rf[k] = dissipation_identity_residual(fine[k].run.snapshots, *pair, cfg.eps[k], tests);
  });
  ctx.out.write("dissipation.csv", "table", "dissipation identity residual per test function",
                [&](std::ostream& os) {
                  os << "epsilon,N,test_id,residual,time_error\n";
                  for (std::size_t k = 0; k < cfg.eps.size(); ++k)
                    for (auto [n, r] : {std::pair{N / 2, &rc[k]}, std::pair{N, &rf[k]}})
                      for (std::size_t t = 0; t < r->residual.size(); ++t)
                        os << cfg.eps[k] << ',' << n << ',' << t << ',' << r->residual[t] << ','
                           << r->time_error[t] << '\n';
                });
  ctx.out.write("mu_proxy.csv", "table", "mu-proxy L1 masses per epsilon", [&](std::ostream& os) {
    os << "epsilon,mu_uu,mu_urho\n";
    for (std::size_t k = 0; k < cfg.eps.size(); ++k)
      os << cfg.eps[k] << ',' << rf[k].mu_mass_uu << ',' << rf[k].mu_mass_urho << '\n';
  });
  std::vector<double> mu1, mu2;
  for (std::size_t k = 0; k < cfg.eps.size(); ++k) {
    const double ratio = rc[k].max_residual() / rf[k].max_residual();
    std::ostringstream name;
    name << "residual_halving_" << eps_tag(k);
    ctx.check(name.str(), ratio, 2.0, ratio >= 1.4 && ratio <= 2.6,
              "coarse/fine max residual, band [1.4, 2.6]");
    if (rf[k].cadence_too_coarse) ctx.note("cadence_flag_" + eps_tag(k), 1.0);
    mu1.push_back(rf[k].mu_mass_uu);
    mu2.push_back(rf[k].mu_mass_urho);
  }
  const double v1 = variation_factor(mu1), v2 = variation_factor(mu2);
  ctx.check("mu_proxy_uniform_uu", v1, 3.0, v1 < 3.0, "max/min across the sweep");
  ctx.check("mu_proxy_uniform_urho", v2, 3.0, v2 < 3.0, "max/min across the sweep");
}

void energy_balance(Context& ctx) {
  const ExperimentConfig& cfg = ctx.cfg;
  const InitialProfiles prof = profiles_of(cfg);
  if (prof.left.rho != prof.right.rho || prof.left.u != prof.right.u)
    fail(ErrorCode::kConfig, "energy_balance requires equal end states");
  const ReferenceState ref{prof.left, prof.right, cfg.initial.L0};
  const RegularizationConfig reg = regularization_of(cfg);
  struct Trace { std::vector<std::array<double, 3>> rows; double worst = -1e300, mass = 0.0; int steps = 0; };
  std::vector<Trace> traces(cfg.eps.size());
  parallel_for(cfg.eps.size(), [&](std::size_t k) {
    FluidState s = regularize_initial_data(ctx.law, prof.rho, prof.u, cfg.eps[k], cfg.solver.N,
                                           cfg.solver.L, reg);
    const double m0 = s.mass();
    SolverConfig sc = cfg.solver;
    sc.epsilon = cfg.eps[k];
    Trace& tr = traces[k];
    double prev = relative_energy(ctx.law, s, ref);
    tr.rows.push_back({s.t, prev, 0.0});
    while (s.t < sc.t_end - 1e-12) {
      step(ctx.law, s, sc, sc.t_end - s.t);
      const double e = relative_energy(ctx.law, s, ref);
      tr.rows.push_back({s.t, e, s.integrals.viscous});
      tr.worst = std::max(tr.worst, e + s.integrals.viscous - prev);
      prev = e + s.integrals.viscous;
      ++tr.steps;
    }
    tr.mass = std::abs(s.mass() - m0 - s.integrals.boundary_mass) / s.t;
  });
  ctx.out.write("energy_steps.csv", "table", "relative energy and dissipation per step",
                [&](std::ostream& os) {
                  os << "epsilon,step,t,energy,dissipation\n";
                  for (std::size_t k = 0; k < traces.size(); ++k)
                    for (std::size_t n = 0; n < traces[k].rows.size(); ++n)
                      os << cfg.eps[k] << ',' << n << ',' << traces[k].rows[n][0] << ','
                         << traces[k].rows[n][1] << ',' << traces[k].rows[n][2] << '\n';
                });
  double worst = -1e300, mass = 0.0;
  for (const auto& t : traces) {
    worst = std::max(worst, t.worst);
    mass = std::max(mass, t.mass);
  }
  ctx.check("energy_nonincreasing", worst, 1e-8, worst <= 1e-8, "max per-step increase of E + dissipation");
  ctx.check("mass_conservation", mass, 1e-10, mass <= 1e-10, "per unit time");
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  Artifacts out(cfg.output_dir);
  ExperimentOutcome res;
  res.experiment = cfg.experiment;
  Context ctx{cfg, cfg.pressure.make(), out, res.checks, res.summary};
  if (cfg.experiment == "kernel_validation") kernel_validation(ctx);
  else if (cfg.experiment == "entropy_crosscheck") entropy_crosscheck(ctx);
  else if (cfg.experiment == "vanishing_viscosity") vanishing_viscosity(ctx);
  else if (cfg.experiment == "commutation") commutation(ctx);
  else if (cfg.experiment == "dissipation") dissipation(ctx);
  else if (cfg.experiment == "energy_balance") energy_balance(ctx);
  else fail(ErrorCode::kConfig, "unknown experiment '" + cfg.experiment + "'");
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  out.write("checks.csv", "checks", "all checks with their thresholds", [&](std::ostream& os) {
    os << "check,value,threshold,pass,detail\n";
    for (const auto& c : res.checks)
      os << c.name << ',' << c.value << ',' << c.threshold << ',' << (c.pass ? 1 : 0) << ",\""
         << c.detail << "\"\n";
  });
  out.write("failures.csv", "failures", "falsified checks (empty when all pass)", [&](std::ostream& os) {
    os << "check,value,threshold,detail\n";
    for (const auto& c : res.checks)
      if (!c.pass) os << c.name << ',' << c.value << ',' << c.threshold << ",\"" << c.detail << "\"\n";
  });
  out.write("summary.csv", "summary", "headline numbers", [&](std::ostream& os) {
    os << "quantity,value\n";
    for (const auto& [k, v] : res.summary) os << k << ',' << v << '\n';
  });
  out.write("run.json", "metadata", "config echo, version and wall clock", [&](std::ostream& os) {
    nlohmann::ordered_json j;
    j["version"] = version_string();
    j["experiment"] = cfg.experiment;
    nlohmann::ordered_json echo = nlohmann::ordered_json::object();
    for (const auto& [k, v] : cfg.echo) echo[k] = v;
    j["config"] = echo;
    j["seed"] = cfg.seed;
    j["threads"] = worker_count(std::max<std::size_t>(1, cfg.eps.size()));
    j["wall_seconds"] = res.wall_seconds;
    j["checks"] = res.checks.size();
    j["failures"] = std::count_if(res.checks.begin(), res.checks.end(),
                                  [](const CheckResult& c) { return !c.pass; });
    j["exit_code"] = res.exit_code();
    os << j.dump(2) << '\n';
  });
  out.files().push_back({"manifest.csv", "manifest", "index of all emitted files"});
  res.files = out.files();
  out.write("manifest.csv", "manifest", "", [&](std::ostream& os) {
    os << "path,kind,description\n";
    for (const auto& f : res.files) os << f.path << ',' << f.kind << ",\"" << f.description << "\"\n";
  });
  out.files().pop_back();  // the manifest lists itself once
  return res;
}

}  // namespace viscolimit
