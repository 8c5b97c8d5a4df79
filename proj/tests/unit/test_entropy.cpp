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

#include "viscolimit/entropy.hpp"
#include "viscolimit/error.hpp"

using namespace viscolimit;

namespace {

PressureLaw hybrid() { return PressureLaw::make(1.4, 1.0, 1.0, 1.0); }

const double kRhos[] = {0.05, 0.3, 0.6, 0.9, 1.0, 1.7, 3.0, 6.0};
const double kUs[] = {-2.0, -0.4, 0.0, 0.9, 2.5};

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("march reproduces mass and momentum") {
  const PressureLaw law = hybrid();
  auto one = march_entropy(law, TestFunctionPsi::constant(), {});
  auto lin = march_entropy(law, TestFunctionPsi::linear(), {});
  CHECK(one->first_marched_row() < one->rows());
  double worst = 0.0;
  for (double rho : kRhos)
    for (double u : kUs) {
      const EntropyPoint a = one->eval(rho, u), b = lin->eval(rho, u);
      worst = std::max({worst, rel(a.eta, rho), rel(a.q, rho * u), rel(b.eta, rho * u),
                        rel(b.q, rho * u * u + law.p(rho))});
      worst = std::max({worst, rel(a.eta_rho, 1.0), rel(b.eta_u, rho), rel(b.eta_urho, 1.0)});
    }
  MESSAGE("mass/momentum worst " << worst);
  CHECK(worst < 1e-4);
}

TEST_CASE("march reproduces the mechanical energy pair") {
  const PressureLaw law = hybrid();
  auto quad = march_entropy(law, TestFunctionPsi::quadratic(), {});
  MechanicalPair mech(law);
  double worst = 0.0;
  for (double rho : kRhos)
    for (double u : kUs) {
      const EntropyPoint a = quad->eval(rho, u), b = mech.eval(rho, u);
      worst = std::max({worst, rel(a.eta, b.eta), rel(a.q, b.q), rel(a.eta_rho, b.eta_rho),
                        rel(a.eta_u, b.eta_u), rel(a.eta_uu, b.eta_uu)});
    }
  MESSAGE("mechanical worst " << worst);
  CHECK(worst < 1e-4);
}

TEST_CASE("rho* is a grid row and the table range is enforced") {
  const PressureLaw law = hybrid();
  auto t = march_entropy(law, TestFunctionPsi::constant(), {});
  REQUIRE(t->rho_star_row() > 0);
  CHECK(t->row_rho(t->rho_star_row()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t->rho_max() >= std::exp(2.0));
  CHECK_THROWS_AS(t->eval(std::exp(2.5), 0.0), Error);
  CHECK_THROWS_AS(t->eval(1.0, 12.0), Error);
}

TEST_CASE("exact gamma rows agree with the tabulated pair") {
  const PressureLaw law = hybrid();
  const auto psi = TestFunctionPsi::compact(-0.5, 0.5);
  auto t = march_entropy(law, psi, {});
  for (double rho : {0.01, 0.2, 0.45})
    for (double u : {-0.8, 0.1, 0.6}) {
      const EntropyPoint a = gamma_entropy_exact(law, psi, rho, u), b = t->eval(rho, u);
      CHECK(a.eta == doctest::Approx(b.eta).epsilon(1e-5).scale(1.0));
      CHECK(a.q == doctest::Approx(b.q).epsilon(1e-5).scale(1.0));
    }
  CHECK_THROWS_AS(gamma_entropy_exact(law, psi, 0.9, 0.0), Error);
}

TEST_CASE("march agrees with the convolution representation above rho*") {
  const PressureLaw law = hybrid();
  auto t = march_entropy(law, TestFunctionPsi::compact(-0.5, 0.5), {});
  double worst = 0.0, scale = 0.0;
  for (double rho : {1.3, 2.0, 4.0, 7.0})
    for (double u : {-1.5, -0.3, 0.0, 0.8, 2.0}) {
      const auto [eta, q] = convolution_entropy(*t, rho, u);
      const EntropyPoint m = t->eval(rho, u);
      worst = std::max({worst, std::abs(eta - m.eta), std::abs(q - m.q)});
      scale = std::max(scale, std::abs(m.eta));
    }
  MESSAGE("march vs convolution worst " << worst << " (scale " << scale << ")");
  CHECK(worst < 1e-3 * std::max(1.0, scale));
}

TEST_CASE("compact pairs vanish outside the characteristic cone") {
  const PressureLaw law = hybrid();
  auto t = march_entropy(law, TestFunctionPsi::compact(-0.5, 0.5), {});
  const CompactBoundReport rep = compact_pair_bounds(*t);
  MESSAGE("support violation " << rep.support_violation << " over " << rep.nodes_outside);
  CHECK(rep.nodes_outside >= 10000);
  CHECK(rep.support_violation <= 1e-12);
  CHECK(rep.m_eta < 1e3);
  CHECK(rep.m_q < 1e3);
}

TEST_CASE("linearity and Galilean shift of the generator") {
  const PressureLaw law = hybrid();
  MarchConfig cfg;
  auto a = march_entropy(law, TestFunctionPsi::compact(-0.5, 0.5, 1.0), cfg);
  auto b = march_entropy(law, TestFunctionPsi::compact(-0.5, 0.5, 2.5), cfg);
  const double c = 20 * a->du();
  auto s = march_entropy(law, TestFunctionPsi::compact(-0.5 + c, 0.5 + c), cfg);
  for (double rho : {0.4, 1.0, 3.0})
    for (double u : {-0.6, 0.2}) {
      CHECK(b->eval(rho, u).eta == doctest::Approx(2.5 * a->eval(rho, u).eta).epsilon(1e-12));
      CHECK(s->eval(rho, u + c).eta == doctest::Approx(a->eval(rho, u).eta).epsilon(1e-6));
    }
}

TEST_CASE("closed-form pairs satisfy the compatibility relations") {
  const PressureLaw law = hybrid();
  MechanicalPair mech(law);
  DaggerPair dag(law);
  CHECK(compatibility_residual(mech, law, 0.7, 0.3) <= 1e-6);
  CHECK(compatibility_residual(dag, law, 0.7, 0.3) <= 1e-5);
  CHECK(compatibility_residual(mech, law, 2.5, -1.2) <= 1e-6);
  CHECK(compatibility_residual(dag, law, 0.8, 1.1) <= 1e-5);
  auto shifted = std::make_shared<MechanicalPair>(law);
  ShiftedPair sp(shifted, 0.4);
  CHECK(compatibility_residual(sp, law, 1.3, 0.2) <= 1e-6);
  CHECK(sp.eval(1.3, 0.4).eta == doctest::Approx(mech.eval(1.3, 0.0).eta));
}

TEST_CASE("dagger entropy of the gamma = 2 law") {
  // p = rho^2: e = rho, f = 2 rho^3 / 3.
  DaggerPair dag(PressureLaw::pure_gamma(2.0, 1.0));
  CHECK(dag.eval(1.0, 0.0).eta == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(dag.eval(2.0, 1.0).eta == doctest::Approx(2.0 / 12 + 4.0 + 16.0 / 3).epsilon(1e-12));
}

TEST_CASE("tabulated pair satisfies the compatibility relations") {
  const PressureLaw law = hybrid();
  auto t = march_entropy(law, TestFunctionPsi::compact(-0.5, 0.5), {});
  for (double rho : {0.3, 0.8, 2.0})
    CHECK(compatibility_residual(*t, law, rho, 0.1, 1e-3) < 5e-3);
}

TEST_CASE("hat pair bounds are finite") {
  const HatPair hp = hat_pair(hybrid());
  const HatBoundReport& r = hp.report;
  MESSAGE("hat: low " << r.m_low << " high " << r.m_high << " eta " << r.m_eta << " mm "
                      << r.m_eta_mm << " rem " << r.m_remainder << " mu " << r.m_eta_mu
                      << " mrho " << r.m_eta_mrho);
  CHECK(r.samples == 10100);
  CHECK_FALSE(r.falsified);
  CHECK(r.m_low > 0.0);
  CHECK(r.m_high > 0.0);
}

TEST_CASE("marched kernel satisfies the mass identity through convolution") {
  const PressureLaw law = hybrid();
  MarchConfig cfg;
  cfg.u_lo = -8.0;
  cfg.u_hi = 8.0;
  auto t = march_kernel(law, cfg);
  const kernels::BoundaryData d = boundary_data(*t, false);
  const double k1 = t->row_k(t->rho_star_row());
  const auto rep = kernels::identity_check_convolution(d, k1, {2.0}, 1e-5);
  MESSAGE("kernel identity residual " << rep.residual[0]);
  CHECK(rep.pass);
}

TEST_CASE("march rejects invalid configurations") {
  const PressureLaw law = hybrid();
  MarchConfig cfg;
  cfg.cfl = 1.5;
  CHECK_THROWS_AS(march_entropy(law, TestFunctionPsi::constant(), cfg), Error);
  cfg = MarchConfig{};
  cfg.u_lo = -1.0;
  cfg.u_hi = 1.0;
  CHECK_THROWS_AS(march_entropy(law, TestFunctionPsi::compact(-0.5, 0.5), cfg), Error);
}
