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

#include "viscolimit/error.hpp"
#include "viscolimit/euler_ref.hpp"

using namespace viscolimit;

namespace {

PressureLaw shallow() { return PressureLaw::pure_gamma(2.0, 0.5); }
PressureLaw hybrid() { return PressureLaw::make(1.4, 1.0, 1.0, 1.0); }

struct Frozen {
  EndState left, right;
  double rho_m, u_m;
};

// Intermediate states for p = rho^2 / 2 (40-digit root of the wave-curve
// equation, rounded).
const Frozen kFrozen[] = {
    {{1.0, 0.0}, {0.25, 0.0}, 0.5517469269185533194, 0.51440661428700037524},
    {{1.0, 1.0}, {1.0, -1.0}, 2.1700864866260337227, 0.0},
    {{4.0, 0.0}, {0.5, 0.0}, 1.715021483098085056, 1.3808234247396873483},
    {{1.0, -0.5}, {2.0, 0.3}, 1.0142639341142995611, -0.51421369602092260126},
};

}  // namespace

TEST_CASE("exact solver matches frozen shallow-water states") {
  for (const auto& f : kFrozen) {
    const RiemannSolution sol = exact_riemann_gamma(shallow(), f.left, f.right);
    CHECK(sol.middle().rho == doctest::Approx(f.rho_m).epsilon(1e-12));
    CHECK(std::abs(sol.middle().u - f.u_m) <= 1e-12);
    CHECK(rankine_hugoniot_residual(shallow(), sol) <= 1e-12);
  }
  const RiemannSolution sod = exact_riemann(shallow(), {1, 0}, {0.25, 0});
  CHECK(sod.wave1() == WaveKind::kRarefaction);
  CHECK(sod.wave2() == WaveKind::kShock);
  CHECK(sod.wave2_lo() == doctest::Approx(0.94059704772416306727).epsilon(1e-12));
  // Inside the fan 2 - 3 sqrt(rho) = xi.
  const EndState fan = sod.sample(-0.5);
  CHECK(fan.rho == doctest::Approx(25.0 / 36.0).epsilon(1e-12));
  CHECK(fan.u == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(sod.sample(-5).rho == 1.0);
  CHECK(sod.sample(5).rho == 0.25);
  CHECK(sod.sample(0.5).rho == doctest::Approx(0.5517469269185533194).epsilon(1e-12));
}

TEST_CASE("vacuum-generating data are rejected") {
  try {
    exact_riemann(shallow(), {1, -3}, {1, 3});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDomain);
  }
  CHECK_THROWS_AS(exact_riemann_gamma(hybrid(), {1, 0}, {0.5, 0}), Error);
}

TEST_CASE("general-law solver: Hugoniot and fan consistency on the hybrid law") {
  const PressureLaw law = hybrid();
  const RiemannSolution sol = exact_riemann(law, {4.0, 0.0}, {0.3, 0.0});
  CHECK(sol.wave1() == WaveKind::kRarefaction);
  CHECK(sol.wave2() == WaveKind::kShock);
  CHECK(rankine_hugoniot_residual(law, sol) <= 1e-12);
  // Riemann invariant u + k is constant through the 1-fan, and u - c = xi.
  const double inv = 0.0 + law.k(4.0);
  for (double a : {0.1, 0.5, 0.9}) {
    const double xi = sol.wave1_lo() + a * (sol.wave1_hi() - sol.wave1_lo());
    const EndState e = sol.sample(xi);
    CHECK(std::abs(e.u + law.k(e.rho) - inv) <= 1e-10);
    CHECK(std::abs(e.u - law.sound_speed(e.rho) - xi) <= 1e-10);
  }
  // Lax entropy condition at the shock.
  const double s = sol.wave2_lo();
  CHECK(sol.middle().u + law.sound_speed(sol.middle().rho) > s);
  CHECK(sol.right().u + law.sound_speed(sol.right().rho) < s);
}

TEST_CASE("HLL reference converges to the exact solution") {
  const PressureLaw law = shallow();
  const RiemannSolution sol = exact_riemann(law, {1, 0}, {0.25, 0});
  SolverConfig c;
  c.t_end = 0.2;
  c.output_dt = 0.0;
  double prev = INFINITY;
  for (int N : {400, 800, 1600}) {
    const RunResult r = euler_reference_run(law, riemann_cells({1, 0}, {0.25, 0}, N, 1.0), c);
    const double err = l1_distance_exact(r.final_state, sol, -0.5, 0.5);
    CHECK(err < prev);
    if (N > 400) CHECK(prev / err > 1.3);
    prev = err;
  }
  CHECK(prev < 1e-2);
}

TEST_CASE("hybrid reference run is self-similar and agrees with the exact solver") {
  const PressureLaw law = hybrid();
  const EndState L{3.0, 0.0}, R{0.4, 0.0};
  SolverConfig c;
  c.t_end = 0.2;
  c.output_dt = 0.1;
  const RunResult r = euler_reference_run(law, riemann_cells(L, R, 1600, 1.0), c);
  const FluidState& a = r.snapshots[1];  // t = 0.1
  const FluidState& b = r.snapshots[2];  // t = 0.2
  // rho(0.2, 2x) vs rho(0.1, x) on |x| < 0.25.
  double diff = 0.0;
  for (int i = 0; i < a.N; ++i) {
    const double x = a.x(i);
    if (std::abs(x) > 0.25) continue;
    const int j = static_cast<int>(std::floor((2 * x + b.L) / b.dx));
    diff += std::abs(a.rho[i] - b.rho[j]) * a.dx;
  }
  CHECK(diff < 5e-3);
  const RiemannSolution sol = exact_riemann(law, L, R);
  CHECK(l1_distance_exact(b, sol, -0.5, 0.5) < 2e-2);
}

TEST_CASE("nested-grid L1 distance") {
  FluidState c = FluidState::uniform_grid(8, 1.0, {1, 0}, {1, 0});
  FluidState f = FluidState::uniform_grid(32, 1.0, {1, 0}, {1, 0});
  CHECK(l1_distance_fine(c, f, -1, 1) == 0.0);
  for (int i = 0; i < 32; ++i) f.rho[i] = 1.5;
  CHECK(l1_distance_fine(c, f, -1, 1) == doctest::Approx(1.0));
  FluidState g = FluidState::uniform_grid(12, 1.0, {1, 0}, {1, 0});
  CHECK_THROWS_AS(l1_distance_fine(g, f, -1, 1), Error);
}
