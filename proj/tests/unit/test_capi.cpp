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
#include <cstdlib>
#include <string>
#include <thread>

#include "doctest.h"
#include "viscolimit/viscolimit.h"

TEST_CASE("status codes and exit mapping") {
  CHECK(vl_exit_code(VL_OK) == 0);
  CHECK(vl_exit_code(VL_FALSIFIED) == 1);
  CHECK(vl_exit_code(VL_CONFIG) == 2);
  CHECK(vl_exit_code(VL_SOLVER_FAILURE) == 3);
  CHECK(vl_exit_code(99) == 3);
  CHECK(std::string(vl_version()).rfind("viscolimit", 0) == 0);
}

TEST_CASE("config errors set the thread-local message") {
  vl_config* cfg = reinterpret_cast<vl_config*>(0x1);
  CHECK(vl_config_parse("experiment = dissipation\n", "inline", &cfg) == VL_CONFIG);
  CHECK(cfg == nullptr);
  CHECK(std::string(vl_last_error()).find("pressure.gamma") != std::string::npos);

  // Another thread sees its own (empty) message.
  std::string other = "unset";
  std::thread([&] { other = vl_last_error(); }).join();
  CHECK(other.empty());

  CHECK(vl_config_load("/nonexistent.cfg", &cfg) == VL_IO);
  CHECK(vl_config_parse(nullptr, "x", &cfg) == VL_INVALID_ARGUMENT);
}

TEST_CASE("config accessors") {
  vl_config* cfg = nullptr;
  REQUIRE(vl_config_parse("experiment = kernel_validation\npressure.gamma = 1.4\nsweep.eps = 1e-2, 1e-3\n",
                          "inline", &cfg) == VL_OK);
  CHECK(std::string(vl_last_error()).empty());
  CHECK(std::string(vl_config_experiment(cfg)) == "kernel_validation");
  CHECK(vl_config_eps_count(cfg) == 2);
  double e = 0.0;
  CHECK(vl_config_eps(cfg, 1, &e) == VL_OK);
  CHECK(e == 1e-3);
  CHECK(vl_config_eps(cfg, 2, &e) == VL_INVALID_ARGUMENT);
  CHECK(vl_config_set_output_dir(cfg, "") == VL_INVALID_ARGUMENT);
  CHECK(vl_config_set_output_dir(cfg, "elsewhere") == VL_OK);
  CHECK(std::string(vl_config_output_dir(cfg)) == "elsewhere");
  vl_config_free(cfg);
  vl_config_free(nullptr);

  CHECK(vl_config_key_count() > 30);
  const char *name, *doc;
  CHECK(vl_config_key(0, &name, &doc) == VL_OK);
  CHECK(std::string(name) == "experiment");
  CHECK(vl_config_key(-1, &name, &doc) == VL_INVALID_ARGUMENT);
}

TEST_CASE("presets enumerate experiments then initial data") {
  const int n = vl_preset_count();
  REQUIRE(n == 10);
  const char *name, *kind, *desc;
  CHECK(vl_preset(0, &name, &kind, &desc) == VL_OK);
  CHECK(std::string(kind) == "experiment");
  CHECK(vl_preset(n - 1, &name, &kind, &desc) == VL_OK);
  CHECK(std::string(kind) == "initial");
  CHECK(vl_preset(n, &name, &kind, &desc) == VL_INVALID_ARGUMENT);
}

TEST_CASE("pressure law handle") {
  vl_law* law = nullptr;
  REQUIRE(vl_law_create("gamma", 2.0, 0.5, 0.0, 0.0, &law) == VL_OK);
  double p, c, k;
  CHECK(vl_law_eval(law, 4.0, &p, &c, &k) == VL_OK);
  CHECK(p == doctest::Approx(8.0));
  CHECK(c == doctest::Approx(2.0));
  CHECK(k == doctest::Approx(4.0));
  CHECK(vl_law_eval(law, -1.0, &p, &c, &k) == VL_INVALID_ARGUMENT);
  vl_law_free(law);
  CHECK(vl_law_create("bogus", 1.4, 1, 1, 1, &law) == VL_INVALID_ARGUMENT);
  CHECK(vl_law_create("gamma", 0.5, 1, 1, 1, &law) != VL_OK);
}

TEST_CASE("run through the C API") {
  vl_config* cfg = nullptr;
  REQUIRE(vl_config_parse("experiment = kernel_validation\npressure.gamma = 1.4\n", "inline", &cfg) == VL_OK);
  const std::string dir = (std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp")) + "/viscolimit_capi_run";
  REQUIRE(vl_config_set_output_dir(cfg, dir.c_str()) == VL_OK);
  vl_outcome* res = nullptr;
  REQUIRE(vl_run(cfg, &res) == VL_OK);
  vl_config_free(cfg);
  CHECK(vl_outcome_exit_code(res) == 0);
  CHECK(vl_outcome_check_count(res) == 7);
  CHECK(vl_outcome_file_count(res) >= 8);
  const char *path, *kind, *desc;
  CHECK(vl_outcome_file(res, 0, &path, &kind, &desc) == VL_OK);
  CHECK(vl_outcome_check(res, 100, nullptr, nullptr, nullptr, nullptr, nullptr) == VL_INVALID_ARGUMENT);
  CHECK(vl_outcome_wall_seconds(res) > 0.0);
  vl_outcome_free(res);
}
