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

#include <string>

#include "doctest.h"
#include "viscolimit/config.hpp"
#include "viscolimit/error.hpp"

using namespace viscolimit;

namespace {

ExperimentConfig parse(const std::string& text) {
  return parse_experiment_config(KeyValueFile::parse(text, "test.cfg"));
}

// Returns the error message, or "" if parsing succeeded.
std::string error_of(const std::string& text, ErrorCode* code = nullptr) {
  try {
    parse(text);
  } catch (const Error& e) {
    if (code) *code = e.code();
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, const std::string& needle) {
  return s.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("minimal config takes documented defaults") {
  const ExperimentConfig c = parse("experiment = kernel_validation\npressure.gamma = 1.4\n");
  CHECK(c.experiment == "kernel_validation");
  CHECK(c.pressure.law == "hybrid");
  CHECK(c.eps.size() == 4);
  CHECK(c.solver.epsilon == c.eps.front());
  CHECK(c.solver.output_dt == doctest::Approx(0.01));
  CHECK(c.solver.K_lo == c.diagnostics.K_lo);
  CHECK(c.initial.mollifier_exponent == 1.0);
  CHECK(c.snapshots == "final");
  CHECK(c.echo.size() == 2);
}

TEST_CASE("values, comments and lists") {
  const ExperimentConfig c = parse(
      "# header\n"
      "experiment = vanishing_viscosity   # trailing\n"
      "\n"
      "pressure.law = gamma\n"
      "pressure.gamma = 2\n"
      "pressure.kappa = 0.5\n"
      "sweep.eps = 2e-2, 1e-2 ,5e-3\n"
      "solver.N = 512\n"
      "diagnostics.psi1 = -1, 0.5\n");
  CHECK(c.pressure.make().is_pure());
  REQUIRE(c.eps.size() == 3);
  CHECK(c.eps[2] == 5e-3);
  CHECK(c.solver.N == 512);
  CHECK(c.diagnostics.psi1.second == 0.5);
}

TEST_CASE("missing pressure.gamma names the key") {
  ErrorCode code = ErrorCode::kOk;
  const std::string msg = error_of("experiment = dissipation\n", &code);
  CHECK(code == ErrorCode::kConfig);
  CHECK(contains(msg, "pressure.gamma"));
  CHECK(contains(msg, "missing"));
}

TEST_CASE("errors carry source and line") {
  ErrorCode code = ErrorCode::kOk;
  std::string msg = error_of("experiment = dissipation\npressure.gamma = 1.4\nsolver.Nx = 10\n", &code);
  CHECK(code == ErrorCode::kConfig);
  CHECK(contains(msg, "test.cfg:3"));
  CHECK(contains(msg, "unknown key 'solver.Nx'"));

  msg = error_of("experiment = dissipation\npressure.gamma = abc\n");
  CHECK(contains(msg, "test.cfg:2"));

  msg = error_of("experiment = dissipation\npressure.gamma = 1.4\npressure.gamma = 1.5\n");
  CHECK(contains(msg, "test.cfg:3"));

  msg = error_of("experiment = dissipation\nthis line has no equals sign\n");
  CHECK(contains(msg, "test.cfg:2"));
}

TEST_CASE("semantic validation") {
  const std::string base = "experiment = dissipation\npressure.gamma = 1.4\n";
  CHECK(contains(error_of(base + "sweep.eps = 1e-2, 1e-2\n"), "strictly decreasing"));
  CHECK(contains(error_of(base + "sweep.eps = 1e-2, -1e-3\n"), "positive"));
  CHECK(contains(error_of("experiment = dissipation\npressure.gamma = 3.5\n"), "gamma"));
  CHECK(contains(error_of(base + "solver.cfl = 1.5\n"), "cfl"));
  CHECK(contains(error_of(base + "initial.preset = nope\n"), "nope"));
  CHECK(contains(error_of(base + "output.snapshots = some\n"), "expected one of"));
  CHECK(contains(error_of(base + "diagnostics.psi1 = 1, 0\n"), "a < b"));
  CHECK(contains(error_of(base + "initial.rho_left = 0\n"), "positive"));
  CHECK(contains(error_of("experiment = warp\npressure.gamma = 1.4\n"), "unknown experiment"));
  CHECK(contains(error_of("experiment = commutation\npressure.gamma = 1.4\nsweep.eps = 1e-2, 5e-3\n"),
                 "at least 3"));
  CHECK(contains(error_of("experiment = commutation\npressure.gamma = 1.4\ninitial.preset = smooth_pulse\n"),
                 "Riemann"));
}

TEST_CASE("key catalog has no duplicates and documents every key") {
  const auto& keys = config_keys();
  for (std::size_t i = 0; i < keys.size(); ++i) {
    CHECK_FALSE(keys[i].second.empty());
    for (std::size_t j = i + 1; j < keys.size(); ++j) CHECK(keys[i].first != keys[j].first);
  }
}

TEST_CASE("load reports unreadable files as I/O errors") {
  try {
    load_experiment_config("/nonexistent/dir/file.cfg");
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
}
