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
#include <numbers>

#include "doctest.h"
#include "viscolimit/error.hpp"
#include "viscolimit/kernels.hpp"
#include "viscolimit/quadrature.hpp"
#include "viscolimit/special.hpp"

using namespace viscolimit;
using namespace viscolimit::kernels;
using doctest::Approx;

namespace {
// Mass of the raw density (independent of the phi substitution): the edge
// singularity is integrable, handled by tanh-sinh in v.
double raw_density_mass(double R, double (*dens)(double, double)) {
  return quad::tanh_sinh([&](double v, double) { return dens(R, v); }, -R, R);
}
}  // namespace

TEST_CASE("chi_sharp values and support") {
  CHECK(chi_sharp(1.0, 0.3) == 0.0);
  CHECK(chi_sharp(std::exp(2.0), 0.0) ==
        Approx(0.5 * std::exp(1.0) * 1.26606587775200833560).epsilon(1e-13));
  CHECK(chi_sharp(std::exp(1.0), 2.0) == 0.0);
  CHECK_THROWS_AS(chi_sharp(0.5, 0.0), Error);
  for (double v : {0.1, 0.7, 1.9})
    CHECK(chi_sharp(7.0, v) == chi_sharp(7.0, -v));
  // R < 0 branch: sign flips and support uses |R|.
  CHECK(chi_sharp_R(-1.0, 0.2) < 0.0);
  CHECK(chi_sharp_R(-1.0, 1.2) == 0.0);
}

TEST_CASE("chi_sharp and chi_flat masses") {
  for (double rho : {std::exp(1.0), std::exp(2.0), 3.3}) {
    const double R = std::log(rho);
    CHECK(chi_sharp_measure(rho).total_mass() == Approx(rho - 1.0).epsilon(1e-12));
    CHECK(raw_density_mass(R, chi_sharp_R) == Approx(rho - 1.0).epsilon(1e-10));
    const auto flat = chi_flat(rho);
    REQUIRE(flat.atoms.size() == 2);
    CHECK(flat.total_mass() == Approx(1.0).epsilon(1e-12));
    CHECK(flat.atoms[0].weight + flat.atoms[1].weight + raw_density_mass(R, chi_flat_density_R) ==
          Approx(1.0).epsilon(1e-9));
  }
  const auto at_one = chi_flat(1.0);
  REQUIRE(at_one.atoms.size() == 1);
  CHECK(at_one.atoms[0].location == 0.0);
  CHECK(at_one.atoms[0].weight == 1.0);
  const auto e2 = chi_flat(std::exp(2.0));
  CHECK(e2.atoms[0].location == Approx(-2.0));
  CHECK(e2.atoms[1].location == Approx(2.0));
  CHECK(e2.atoms[0].weight == Approx(0.5 * std::exp(1.0)));
  // Sampled density vanishes outside the cone.
  for (std::size_t i = 0; i < e2.density.size(); ++i) {
    const double v = e2.s_lo + i * e2.ds;
    if (std::abs(v) >= 2.0) CHECK(e2.density[i] == 0.0);
  }
}

TEST_CASE("chi_flat equals chi#_R - chi#") {
  for (double R : {0.5, 1.0, 2.0}) {
    const auto flat = chi_flat(std::exp(R));
    const auto dR = chi_sharp_dR_measure(R);
    REQUIRE(flat.atoms.size() == dR.atoms.size());
    for (std::size_t i = 0; i < flat.atoms.size(); ++i) {
      CHECK(flat.atoms[i].location == dR.atoms[i].location);
      CHECK(flat.atoms[i].weight == Approx(dR.atoms[i].weight).epsilon(1e-15));
    }
    // Densities against a 5-point finite difference in R of chi#.
    const double h = 1e-3;
    double sup = 0.0;
    for (double v = -R + 5 * h; v < R - 5 * h; v += R / 97.0) {
      const double fd = (-chi_sharp_R(R + 2 * h, v) + 8 * chi_sharp_R(R + h, v) -
                         8 * chi_sharp_R(R - h, v) + chi_sharp_R(R - 2 * h, v)) /
                        (12 * h);
      sup = std::max(sup, std::abs(chi_flat_density_R(R, v) - (fd - chi_sharp_R(R, v))));
    }
    CHECK(sup <= 1e-8);
  }
}

TEST_CASE("PDE residual converges at second order") {
  auto sharp = [](double R, double v) { return chi_sharp_R(R, v); };
  auto flat = [](double R, double v) { return chi_flat_density_R(R, v); };
  for (auto kern : {std::function<double(double, double)>(sharp),
                    std::function<double(double, double)>(flat)}) {
    const auto r1 = pde_residual(kern, 0.5, 2.0, 2.0, 0.04);
    const auto r2 = pde_residual(kern, 0.5, 2.0, 2.0, 0.02);
    const auto r3 = pde_residual(kern, 0.5, 2.0, 2.0, 0.01);
    CHECK(r1.max_residual / r2.max_residual > 3.0);
    CHECK(r2.max_residual / r3.max_residual > 3.0);
    CHECK(r3.max_residual <= 1e-4 * r3.norm);
  }
}

TEST_CASE("flux kernels") {
  const double rho = std::exp(2.0);
  CHECK(h_sharp(rho, 2.5) == 0.5);
  CHECK(h_sharp(rho, -3.0) == -0.5);
  CHECK(h_sharp(rho, 0.0) == 0.0);
  for (double v : {0.3, 1.1, 1.9}) CHECK(h_sharp(rho, -v) == Approx(-h_sharp(rho, v)));
  const auto hf = h_flat(rho, -3.0, 3.0, 601);
  REQUIRE(hf.atoms.size() == 2);
  CHECK(hf.atoms[0].location == Approx(-2.0));
  CHECK(hf.atoms[0].weight == Approx(0.5 * std::exp(1.0)));
  CHECK(hf.atoms[1].location == Approx(2.0));
  CHECK(hf.atoms[1].weight == Approx(-0.5 * std::exp(1.0)));
  // Outside the cone the h_flat density is -h# = -(1/2) sgn.
  CHECK(hf.density_at(2.7) == Approx(-0.5));
  CHECK(hf.density_at(-2.7) == Approx(0.5));
}

TEST_CASE("h# matches d/du of int_0^R chi# dr plus sgn/2") {
  // Independent route: differentiate the r-integral of chi# numerically.
  const double R = 1.5;
  auto Iu = [&](double v) {
    return quad::adaptive_simpson([&](double r) { return chi_sharp_R(r, v); }, std::abs(v), R,
                                  1e-13);
  };
  for (double v : {0.2, 0.6, 1.2}) {
    const double h = 1e-4;
    const double d = (Iu(v + h) - Iu(v - h)) / (2 * h);
    CHECK(h_sharp(std::exp(R), v) == Approx(0.5 + d).epsilon(1e-6));
  }
}

TEST_CASE("gamma-law kernel") {
  const auto law = PressureLaw::pure_gamma(2.0, 0.5);
  CHECK(g_lambda(law, 1.0, 0.0, law.lambda()) == Approx(2.0));
  CHECK(g_lambda(law, 1.0, 2.5, law.lambda()) == 0.0);
  // Beta-function oracle for M_lambda.
  for (double lam : {0.5, 1.0, 2.0, 0.25}) {
    const double beta = quad::tanh_sinh(
        [&](double, double d) { return std::pow(d * (2 - d), lam); }, -1.0, 1.0);
    CHECK(m_lambda(lam) * beta == Approx(1.0).epsilon(1e-12));
  }
  // With c = sqrt(kappa gamma)/theta = 1 (kappa = 1/8 for gamma = 2),
  // int M_lambda G_lambda = rho.
  const auto unit = PressureLaw::pure_gamma(2.0, 0.125);
  for (double rho : {0.25, 1.0}) {
    const double k = unit.k(rho);
    const double mass = quad::tanh_sinh(
        [&](double v, double) { return m_lambda(0.5) * g_lambda(unit, rho, v, 0.5); }, -k, k);
    CHECK(mass == Approx(rho).epsilon(1e-12));
  }
  // General kappa: the scaled kernel has mass rho.
  for (double g : {1.4, 2.0, 2.5}) {
    const auto l = PressureLaw::pure_gamma(g, 0.7);
    for (double rho : {0.3, 2.0}) {
      const double k = l.k(rho);
      CHECK(quad::tanh_sinh([&](double v, double) { return gamma_chi(l, rho, v); }, -k, k) ==
            Approx(rho).epsilon(1e-11));
    }
  }
}

TEST_CASE("a# and b# positive on the audit grid") {
  const auto law = PressureLaw::make(1.4, 1.0, 1.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double rho = std::exp(std::log(1e-6) + std::log(1e12) * i / 9999.0);
    const double a = a_sharp(law, rho), b = b_sharp(law, rho);
    CHECK(a > 0.0);
    CHECK(b > 0.0);
    CHECK(a * b > 0.0);  // leading-order D(rho)
  }
}

TEST_CASE("mass identity, gamma-law closed form") {
  const auto law = PressureLaw::pure_gamma(1.4, 1.0);
  const auto r = identity_check_gamma(law, {0.0, 0.25, 0.5, 1.0, 2.0, std::exp(2.0)});
  CHECK(r.pass);
  CHECK(r.residual[0] == 0.0);
  CHECK(r.residual[2] <= 1e-8);
  const auto r2 = identity_check_gamma(PressureLaw::pure_gamma(2.5, 0.3), {0.5, 3.0});
  CHECK(r2.pass);
}

TEST_CASE("mass identity, convolution representation") {
  const auto law = PressureLaw::pure_gamma(1.4, 1.0);
  const double k1 = law.k(1.0);
  BoundaryData data{[&](double v) { return gamma_chi(law, 1.0, v); },
                    [&](double v) { return gamma_chi_rho(law, 1.0, v); },
                    {-k1, k1}};
  const auto r = identity_check_convolution(data, k1, {1.0, 2.0, std::exp(2.0)});
  CHECK(r.pass);
  // Mass of the isothermal continuation:
  // int chi(rho) = (rho - 1) int chi_rho(1) + int chi(1) = (2 - 1) * 1 + 1.
  const double m = quad::gl16().integrate_pieces(
      [&](double v) { return convolve_isothermal(data, 2.0, v); },
      std::vector<double>{-k1 - std::log(2.0), -k1 + std::log(2.0), k1 - std::log(2.0),
                          k1 + std::log(2.0)},
      8);
  CHECK(m == Approx(2.0).epsilon(1e-10));
}
