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

#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "viscolimit/diagnostics.hpp"
#include "viscolimit/error.hpp"
#include "viscolimit/euler_ref.hpp"
#include "viscolimit/quadrature.hpp"

using namespace viscolimit;

namespace {

PressureLaw shallow() { return PressureLaw::pure_gamma(2.0, 0.5); }

std::shared_ptr<TabulatedPair> compact_pair(double a, double b) {
  MarchConfig mc;
  mc.u_lo = a - 3.5;
  mc.u_hi = b + 3.5;
  mc.rho_max = 2.0;
  return march_entropy(shallow(), TestFunctionPsi::compact(a, b), mc);
}

std::vector<FluidState> constant_trajectory(EndState e, int N, int samples) {
  std::vector<FluidState> out;
  for (int n = 0; n < samples; ++n) {
    FluidState s = FluidState::uniform_grid(N, 1.0, e, e);
    s.t = 0.2 * n / (samples - 1);
    out.push_back(s);
  }
  return out;
}

std::vector<FluidState> sod_run(double eps, int N, double output_dt) {
  RegularizationConfig reg;
  reg.width_exponent = 1.0;
  const FluidState s0 = regularize_initial_data(
      shallow(), [](double x) { return x < 0 ? 1.0 : 0.25; }, [](double) { return 0.0; }, eps, N,
      1.0, reg);
  SolverConfig c;
  c.epsilon = eps;
  c.N = N;
  c.output_dt = output_dt;
  return run(shallow(), s0, c).snapshots;
}

}  // namespace

TEST_CASE("relative energy closed forms") {
  const PressureLaw law = shallow();
  const ReferenceState ref{{1, 0}, {1, 0}, 0.5};
  FluidState s = FluidState::uniform_grid(100, 1.0, {1, 0}, {1, 0});
  CHECK(relative_energy(law, s, ref) == 0.0);
  for (int i = 0; i < s.N; ++i) s.m[i] = 1.0;
  CHECK(relative_energy(law, s, ref) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("relative energy matches an independent quadrature oracle") {
  const PressureLaw law = shallow();
  const ReferenceState ref{{1, 0}, {0.25, 0}, 0.5};
  auto rho = [](double x) { return 0.6 + 0.3 * std::tanh(-4 * x) + 0.1 * std::cos(3 * x); };
  auto u = [](double x) { return 0.4 * std::exp(-8 * x * x); };
  auto integrand = [&](double x) {
    const double du = u(x) - ref.u(x);
    return 0.5 * rho(x) * du * du + law.e_star(rho(x), ref.rho(x));
  };
  const double oracle = quad::adaptive_simpson(integrand, -1.0, 1.0, 1e-13);
  FluidState s = FluidState::uniform_grid(8192, 1.0, ref.left, ref.right);
  for (int i = 0; i < s.N; ++i) {
    s.rho[i] = rho(s.x(i));
    s.m[i] = s.rho[i] * u(s.x(i));
  }
  CHECK(std::abs(relative_energy(law, s, ref) - oracle) <= 1e-8);
}

TEST_CASE("report invariants and CSV layout") {
  DiagnosticsReport rep;
  rep.add("energy", 0.0, 1e-2, 1.0);
  rep.add("energy", 0.1, 1e-2, 0.9);
  rep.add("energy", 0.0, 5e-3, 1.0);
  CHECK_THROWS_AS(rep.add("energy", 0.1, 1e-2, 0.8), Error);
  CHECK_THROWS_AS(rep.add("viscous", 0.2, 1e-2, NAN), Error);
  CHECK(rep.series("energy", 1e-2).size() == 2);
  const std::string path = "test_diagnostics_report.csv";
  rep.write_csv(path);
  std::ifstream in(path);
  std::string header, line;
  std::getline(in, header);
  CHECK(header == "quantity,t,epsilon,value");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);
  std::remove(path.c_str());
}

TEST_CASE("monitors vanish on constant states and are non-negative on a Riemann run") {
  const PressureLaw law = shallow();
  const auto flat = constant_trajectory({0.7, 0.3}, 64, 5);
  const ReferenceState same{{0.7, 0.3}, {0.7, 0.3}, 0.5};
  const DaggerMonitor dm = dagger_energy_monitor(law, flat, same);
  for (double e : dm.energy) CHECK(std::abs(e) <= 1e-14);

  const auto traj = sod_run(1e-2, 512, 0.02);
  const ReferenceState ref{{1, 0}, {0.25, 0}, 0.5};
  const DaggerMonitor d = dagger_energy_monitor(law, traj, ref);
  CHECK(d.min_energy > 0.0);
  CHECK(d.fitted_M > 0.0);
  const double M = fitted_energy_constant(law, traj, ref);
  for (const auto& s : traj) {
    const double lhs = relative_energy(law, s, ref) + s.integrals.viscous;
    CHECK(lhs <= M * (d.E0 + 1.0) * std::exp(M * s.t) * (1 + 1e-12));
  }
  DiagnosticsReport rep;
  for (const auto& s : traj) record_snapshot(rep, law, s, ref, 1e-2);
  for (const auto& r : rep.rows()) CHECK(r.value >= 0.0);
}

TEST_CASE("dissipation identity: exact on constants, first order on a Riemann run") {
  const auto pair = compact_pair(-1.2, 0.2);
  const auto tests = default_test_functions(0.2, -0.8, 0.8);
  REQUIRE(tests.size() == 10);
  const DissipationResult flat =
      dissipation_identity_residual(constant_trajectory({0.6, 0.2}, 128, 21), *pair, 1e-2, tests);
  CHECK(flat.max_residual() <= 1e-12);

  const double r1 =
      dissipation_identity_residual(sod_run(1e-2, 512, 0.004), *pair, 1e-2, tests).max_residual();
  const DissipationResult fine =
      dissipation_identity_residual(sod_run(1e-2, 1024, 0.004), *pair, 1e-2, tests);
  const double ratio = r1 / fine.max_residual();
  CHECK(ratio >= 1.4);
  CHECK(ratio <= 2.6);
  CHECK_FALSE(fine.cadence_too_coarse);
  CHECK(fine.mu_mass_uu > 0.0);
  CHECK(fine.mu_mass_urho > 0.0);
}

TEST_CASE("commutator: constants, disjoint supports, and sweep trend") {
  const auto a = compact_pair(-1.5, -0.5), b = compact_pair(-1.2, 0.2);
  const auto flat = constant_trajectory({0.8, 0.1}, 64, 8);
  const Patch p{0, 10, 26, 0, 8};
  CHECK(patch_commutator(flat, p, *a, *b) == 0.0);

  // Non-constant fields where the first pair vanishes identically.
  const auto far = compact_pair(3.2, 3.5);
  auto traj = constant_trajectory({0.5, 0.0}, 64, 8);
  for (auto& s : traj)
    for (int i = 0; i < s.N; ++i) {
      s.rho[i] = 0.5 + 0.2 * std::sin(5 * s.x(i) + s.t);
      s.m[i] = s.rho[i] * 0.1 * std::cos(3 * s.x(i));
    }
  CHECK(far->eval(0.7, 0.1).eta == 0.0);
  CHECK(patch_commutator(traj, p, *far, *b) == 0.0);

  const PressureLaw law = shallow();
  const RiemannSolution sol = exact_riemann(law, {1, 0}, {0.25, 0});
  const std::vector<double> eps{1e-2, 5e-3, 2.5e-3};
  std::vector<std::vector<FluidState>> runs;
  for (double e : eps) runs.push_back(sod_run(e, 1024, 0.01));
  PatchSpec spec;
  spec.K_lo = -0.8;
  spec.K_hi = 0.8;
  int flagged = 0;
  const auto patches = smooth_patches(runs[0], spec, wave_paths(sol, 0.05, 0.02), &flagged);
  CHECK(flagged > 0);
  CHECK(patches.size() > 20);
  std::vector<double> lim;
  for (const auto& q : patches)
    lim.push_back(patch_commutator_sampled(runs[0], q, *a, *b, [&](double t, double x) {
      const EndState e = sol.sample(x / t);
      return std::pair<double, double>{e.rho, e.u};
    }));
  const CommutationTable tab = commutation_residual(eps, runs, lim, patches, *a, *b);
  CHECK(tab.rows.size() == 3 * patches.size());
  CHECK(tab.decreasing());
  CHECK_THROWS_AS(commutation_residual({1e-2, 5e-3}, {runs[0], runs[1]}, lim, patches, *a, *b),
                  Error);
}

TEST_CASE("empirical order and variation factor") {
  const std::vector<double> eps{1e-2, 5e-3, 2.5e-3};
  CHECK(empirical_order(eps, {4e-2, 2e-2, 1e-2}) == doctest::Approx(1.0));
  CHECK(empirical_order(eps, {1e-2, 1e-2 / std::sqrt(2.0), 5e-3}) == doctest::Approx(0.5));
  CHECK(variation_factor({1.0, 2.5, 2.0}) == doctest::Approx(2.5));
  CHECK(std::isinf(variation_factor({1.0, 0.0})));
}
