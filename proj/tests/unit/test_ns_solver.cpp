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

#include "viscolimit/diagnostics.hpp"
#include "viscolimit/euler_ref.hpp"
#include "viscolimit/error.hpp"
#include "viscolimit/ns_solver.hpp"

using namespace viscolimit;

namespace {

PressureLaw hybrid() { return PressureLaw::make(1.4, 1.0, 1.0, 1.0); }

SolverConfig small_config(double eps, int N) {
  SolverConfig c;
  c.epsilon = eps;
  c.N = N;
  c.t_end = 0.1;
  c.output_dt = 0.02;
  return c;
}

}  // namespace

TEST_CASE("constant state is a fixed point") {
  const PressureLaw law = hybrid();
  FluidState s = FluidState::uniform_grid(64, 1.0, {1.3, 0.4}, {1.3, 0.4});
  const FluidState s0 = s;
  SolverConfig c = small_config(1e-2, 64);
  for (int n = 0; n < 20; ++n) step(law, s, c);
  for (int i = 0; i < s.N; ++i) {
    CHECK(s.rho[i] == s0.rho[i]);
    CHECK(std::abs(s.m[i] - s0.m[i]) <= 1e-15);
  }
}

TEST_CASE("mirror symmetry is preserved") {
  const PressureLaw law = hybrid();
  const int N = 200;
  FluidState s = FluidState::uniform_grid(N, 1.0, {0.8, 0.0}, {0.8, 0.0});
  for (int i = 0; i < N; ++i) {
    const double x = s.x(i);
    s.rho[i] = 0.8 + 1.5 * std::exp(-40 * x * x);
    s.m[i] = s.rho[i] * (-0.7 * x * std::exp(-20 * x * x));
  }
  for (auto mode : {ViscousMode::kExplicit, ViscousMode::kImplicit}) {
    FluidState w = s;
    SolverConfig c = small_config(5e-3, N);
    c.viscous = mode;
    for (int n = 0; n < 100; ++n) step(law, w, c);
    double worst = 0.0;
    for (int i = 0; i < N; ++i) {
      worst = std::max(worst, std::abs(w.rho[i] - w.rho[N - 1 - i]));
      worst = std::max(worst, std::abs(w.m[i] + w.m[N - 1 - i]));
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("mass is conserved up to the boundary flux") {
  const PressureLaw law = hybrid();
  InitialDataReport rep;
  const FluidState s0 = regularize_initial_data(
      law, [](double x) { return x < 0 ? 2.0 : 0.5; }, [](double x) { return x < 0 ? 0.3 : -0.2; },
      1e-2, 400, 1.0, {}, &rep);
  SolverConfig c = small_config(1e-2, 400);
  c.t_end = 0.15;
  const RunResult r = run(law, s0, c);
  const FluidState& s = r.final_state;
  const double defect = std::abs(s.mass() - s0.mass() - s.integrals.boundary_mass);
  CHECK(defect <= 1e-10 * c.t_end);
  CHECK(r.snapshots.size() == 9);  // t = 0, 0.02, ..., 0.14, 0.15
  CHECK(r.snapshots.back().t == doctest::Approx(0.15));
}

TEST_CASE("energy plus dissipation is non-increasing with equal end states") {
  const PressureLaw law = hybrid();
  const EndState far{0.9, 0.2};
  FluidState s = FluidState::uniform_grid(256, 1.0, far, far);
  for (int i = 0; i < s.N; ++i) {
    const double x = s.x(i);
    s.rho[i] = 0.9 + 2.0 * std::exp(-30 * x * x);
    s.m[i] = s.rho[i] * (0.2 + 0.8 * std::sin(3 * x) * std::exp(-30 * x * x));
  }
  const ReferenceState ref{far, far, 0.5};
  for (double eps : {1e-2, 1e-3}) {
    FluidState w = s;
    SolverConfig c = small_config(eps, s.N);
    double prev = relative_energy(law, w, ref), worst = -1.0;
    for (int n = 0; n < 200; ++n) {
      step(law, w, c);
      const double cur = relative_energy(law, w, ref) + w.integrals.viscous;
      worst = std::max(worst, cur - prev);
      prev = cur;
    }
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("implicit and explicit viscous steps agree at small time steps") {
  const PressureLaw law = hybrid();
  FluidState s = FluidState::uniform_grid(128, 1.0, {1, 0}, {1, 0});
  for (int i = 0; i < s.N; ++i) s.m[i] = std::exp(-50 * s.x(i) * s.x(i));
  SolverConfig ce = small_config(1e-3, 128), ci = ce;
  ce.viscous = ViscousMode::kExplicit;
  ci.viscous = ViscousMode::kImplicit;
  FluidState a = s, b = s;
  for (int n = 0; n < 50; ++n) {
    step(law, a, ce, 1e-4);
    step(law, b, ci, 1e-4);
  }
  double d = 0.0;
  for (int i = 0; i < s.N; ++i) d = std::max(d, std::abs(a.m[i] - b.m[i]));
  CHECK(d < 1e-4);
  CHECK(d > 0.0);
}

TEST_CASE("regularization: constant data, vacuum floor, and E1 trend") {
  const PressureLaw law = hybrid();
  InitialDataReport rep;
  FluidState s = regularize_initial_data(
      law, [](double) { return 1.7; }, [](double) { return -0.3; }, 1e-2, 128, 1.0, {}, &rep);
  for (int i = 0; i < s.N; ++i) {
    CHECK(std::abs(s.rho[i] - 1.7) <= 1e-10);
    CHECK(std::abs(s.u(i) + 0.3) <= 1e-10);
  }
  CHECK(rep.E0 <= 1e-20);

  // Vacuum interval: the floor sqrt(eps) = 0.1 is the minimum after mollification.
  s = regularize_initial_data(
      law, [](double x) { return std::abs(x) < 0.5 ? 0.0 : 1.0; }, [](double) { return 0.0; },
      1e-2, 400, 2.0, {}, &rep);
  CHECK(rep.floor == doctest::Approx(0.1));
  CHECK(rep.min_rho == doctest::Approx(0.1).epsilon(1e-12));

  // Riemann data (1, 0 | 0.125, 0): E1 finite and decreasing in the width.
  double prev = INFINITY;
  for (double scale : {0.05, 0.1, 0.2, 0.4}) {
    RegularizationConfig reg;
    reg.width_scale = scale;
    regularize_initial_data(
        law, [](double x) { return x < 0 ? 1.0 : 0.125; }, [](double) { return 0.0; }, 1e-2, 2000,
        1.0, reg, &rep);
    CHECK(std::isfinite(rep.E1));
    CHECK(rep.E1 < prev);
    prev = rep.E1;
  }
  CHECK_THROWS_AS(regularize_initial_data(
                      law, [](double) { return -1.0; }, [](double) { return 0.0; }, 1e-2, 64, 1.0),
                  Error);
}

TEST_CASE("positivity and far-field failures are reported") {
  const PressureLaw law = PressureLaw::pure_gamma(2.0, 0.5);
  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kOk;
  };
  // Strong expansion: the centre density drops below a raised floor.
  FluidState s = FluidState::uniform_grid(128, 1.0, {1, -3}, {1, 3});
  for (int i = 64; i < 128; ++i) s.m[i] = 3.0;
  SolverConfig c = small_config(0.0, 128);
  c.positivity_floor = 0.2;
  CHECK(code_of([&] { run(law, s, c); }) == ErrorCode::kSolverFailure);

  // Waves that reach the outer band abort the run.
  FluidState r = FluidState::uniform_grid(64, 0.3, {1, 0}, {0.25, 0});
  for (int i = 32; i < 64; ++i) r.rho[i] = 0.25;
  SolverConfig c2 = small_config(1e-3, 64);
  c2.L = 0.3;
  c2.K_lo = -0.2;
  c2.K_hi = 0.2;
  c2.t_end = 0.3;
  CHECK(code_of([&] { run(law, r, c2); }) == ErrorCode::kSolverFailure);

  SolverConfig bad = small_config(1e-3, 64);
  bad.cfl = 1.2;
  CHECK(code_of([&] { validate(bad); }) == ErrorCode::kConfig);
}

TEST_CASE("probes see every snapshot and constant states keep zero energy") {
  const PressureLaw law = hybrid();
  const EndState far{1.2, -0.1};
  const ReferenceState ref{far, far, 0.5};
  FluidState s = FluidState::uniform_grid(64, 1.0, far, far);
  SolverConfig c = small_config(1e-2, 64);
  std::vector<double> energies;
  const RunResult r = run(law, s, c, {[&](const FluidState& st) {
                            energies.push_back(relative_energy(law, st, ref));
                          }});
  CHECK(energies.size() == r.snapshots.size());
  for (double e : energies) CHECK(std::abs(e) <= 1e-15);
  SolverConfig quiet = c;
  quiet.keep_snapshots = false;
  CHECK(run(law, s, quiet).snapshots.empty());
}
