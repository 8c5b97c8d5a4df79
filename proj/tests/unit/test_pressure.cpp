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

#include <cmath>

#include "doctest.h"
#include "viscolimit/error.hpp"
#include "viscolimit/pressure.hpp"

using namespace viscolimit;
using doctest::Approx;

TEST_CASE("parameter checks") {
  CHECK_THROWS_AS(PressureLaw::make(3.0, 1, 1, 1), Error);
  CHECK_THROWS_AS(PressureLaw::make(1.0, 1, 1, 1), Error);
  CHECK_THROWS_AS(PressureLaw::make(2.0, -1, 1, 1), Error);
  CHECK_THROWS_AS(PressureLaw::pure_gamma(0.5, 1), Error);
  const auto law = PressureLaw::pure_gamma(2.0, 0.7);
  CHECK_NOTHROW(PressureLaw::make(2.0, 1.4, 1, 1));
  CHECK_THROWS_AS(PressureLaw::make(2.0, 1.0, 1, 1), Error);
  CHECK(law.lambda() == 0.5);
  CHECK(law.theta() == 0.5);
}

TEST_CASE("pure gamma law closed forms") {
  const auto law = PressureLaw::pure_gamma(2.0, 0.5);
  CHECK(law.k(4.0) == Approx(4.0).epsilon(1e-14));
  CHECK(law.k(0.0) == 0.0);
  const auto [w, z] = law.riemann_invariants(4.0, 0.0);
  CHECK(w == Approx(4.0));
  CHECK(z == Approx(-4.0));
  const auto [w0, z0] = law.riemann_invariants(0.0, 3.0);
  CHECK(w0 == 3.0);
  CHECK(z0 == 3.0);
  const auto unit = PressureLaw::pure_gamma(2.0, 1.0);
  CHECK(unit.e(0.37) == Approx(0.37));
  CHECK(unit.e(0.0) == 0.0);
  CHECK(unit.f_dagger(1.0) == Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(law.k_inverse(law.k(2.7)) == Approx(2.7).epsilon(1e-13));
}

TEST_CASE("hybrid law continuity and branch values") {
  const auto law = PressureLaw::make(1.4, 1.0, 1.0, 1.0);
  const double rs = law.rho_star();
  for (double d : {1e-9}) {
    CHECK(law.p(rs - d) == Approx(law.p(rs + d)).epsilon(1e-8));
    CHECK(law.dp(rs - d) == Approx(law.dp(rs + d)).epsilon(1e-7));
    CHECK(std::abs(law.d2p(rs - d) - law.d2p(rs + d)) < 1e-6);
    CHECK(std::abs(law.e(rs * (1 - 1e-15)) - law.e(rs * (1 + 1e-15))) < 1e-12);
    const double lo = law.rho_lo();
    CHECK(law.p(lo - d) == Approx(law.p(lo + d)).epsilon(1e-8));
    CHECK(law.d2p(lo - d) == Approx(law.d2p(lo + d)).epsilon(1e-6));
  }
  CHECK(law.p(rs) == Approx(law.c_star() * rs));
  CHECK(law.p(5.0) == 5.0);
  // Frozen values from an independent arbitrary-precision quadrature.
  CHECK(law.k(1.0) == Approx(5.92341477856431127).epsilon(1e-12));
  CHECK(law.e(1.0) == Approx(2.51768160683081576).epsilon(1e-12));
  CHECK(law.k(0.75) == Approx(5.60938639510422307).epsilon(1e-12));
  CHECK(law.e(0.75) == Approx(2.23515972115735373).epsilon(1e-12));
  CHECK(law.df_dagger(1.0) == Approx(8.80882219297417266).epsilon(1e-10));
  CHECK(law.f_dagger(1.0) == Approx(4.93572975102629).epsilon(1e-10));
  CHECK(law.p(0.75) == Approx(0.70395385784673).epsilon(1e-12));
  CHECK(law.dp(0.75) == Approx(1.41088302026625).epsilon(1e-10));
  CHECK(law.d2p(0.75) == Approx(-0.999285325709519).epsilon(1e-8));
  // k(e rho*) = k(rho*) + 1 on the isothermal branch.
  CHECK(law.k(std::exp(1.0)) == Approx(law.k(1.0) + 1.0).epsilon(1e-14));
}

TEST_CASE("audit and structural invariants") {
  const auto law = PressureLaw::make(1.4, 1.0, 1.0, 1.0);
  CHECK(law.audit().samples == 10000);
  CHECK(law.audit().min_dp > 0.0);
  CHECK(law.audit().min_gnl > 0.0);
  CHECK(law.audit().first_violation < 0.0);
  CHECK(std::isfinite(law.audit().correction_bound[0]));
  // k - log rho constant above rho*.
  const double c0 = law.k(1.0);
  for (double r = 1.0; r < 1e6; r *= 3.7) CHECK(std::abs(law.k(r) - std::log(r) - c0) < 1e-10);
  // k strictly increasing; inverse round trip through all three branches.
  double prev = -1.0;
  for (double r = 1e-4; r < 50.0; r *= 1.07) {
    CHECK(law.k(r) > prev);
    prev = law.k(r);
    CHECK(law.k_inverse(law.k(r)) == Approx(r).epsilon(1e-11));
  }
  // e* >= 0.
  for (double r = 0.01; r < 20; r *= 1.5)
    for (double rb = 0.02; rb < 20; rb *= 1.7) CHECK(law.e_star(r, rb) >= -1e-14);
}

TEST_CASE("derivatives agree with finite differences away from joints") {
  const auto law = PressureLaw::make(1.4, 1.0, 1.0, 1.0);
  for (double r : {0.1, 0.3, 0.6, 0.7, 0.8, 0.9, 2.0, 7.0}) {
    const double h = 1e-5 * r;
    CHECK((law.p(r + h) - law.p(r - h)) / (2 * h) == Approx(law.dp(r)).epsilon(1e-6));
    CHECK((law.dp(r + h) - law.dp(r - h)) / (2 * h) ==
          Approx(law.d2p(r)).epsilon(1e-6).scale(law.dp(r) / r));
    CHECK((law.d2p(r + h) - law.d2p(r - h)) / (2 * h) ==
          Approx(law.d3p(r)).epsilon(1e-5).scale(law.dp(r) / (r * r)));
    CHECK((law.k(r + h) - law.k(r - h)) / (2 * h) == Approx(law.dk(r)).epsilon(1e-6));
    CHECK((law.dk(r + h) - law.dk(r - h)) / (2 * h) == Approx(law.d2k(r)).epsilon(1e-6));
    CHECK((law.d2k(r + h) - law.d2k(r - h)) / (2 * h) == Approx(law.d3k(r)).epsilon(1e-5));
    CHECK((law.e(r + h) - law.e(r - h)) / (2 * h) == Approx(law.de(r)).epsilon(1e-6));
    CHECK((law.f_dagger(r + h) - law.f_dagger(r - h)) / (2 * h) ==
          Approx(law.df_dagger(r)).epsilon(1e-6));
    CHECK((law.df_dagger(r + h) - law.df_dagger(r - h)) / (2 * h) ==
          Approx(law.d2f_dagger(r)).epsilon(1e-6));
  }
}

TEST_CASE("audit rejects a blend that breaks genuine nonlinearity") {
  // A very steep jump from a tiny gamma-law pressure to a large linear one
  // forces large negative curvature in the blend.
  CHECK_THROWS_AS(PressureLaw::make(1.05, 1e-6, 1.0, 100.0, 0.9), Error);
}
