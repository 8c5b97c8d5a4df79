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

// Command-line front end: run / presets / validate.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "viscolimit/viscolimit.h"

namespace {

constexpr int kUsageExit = 2;

int report_failure(int status) {
  std::cerr << "error: " << vl_last_error() << '\n';
  return vl_exit_code(status);
}

// CSV field quoting for free text.
std::string quoted(const char* s) {
  std::string out = "\"";
  for (const char* p = s; *p; ++p) {
    if (*p == '"') out += '"';
    out += *p;
  }
  return out + '"';
}

int cmd_presets(bool csv) {
  const int n = vl_preset_count();
  if (csv) std::cout << "name,kind,description\n";
  for (int i = 0; i < n; ++i) {
    const char *name, *kind, *desc;
    if (const int st = vl_preset(i, &name, &kind, &desc)) return report_failure(st);
    if (csv)
      std::cout << name << ',' << kind << ',' << quoted(desc) << '\n';
    else
      std::printf("%-22s %-11s %s\n", name, kind, desc);
  }
  return 0;
}

int load(const std::string& path, vl_config** cfg) {
  const int st = vl_config_load(path.c_str(), cfg);
  return st ? report_failure(st) : 0;
}

int cmd_validate(const std::string& path) {
  vl_config* cfg = nullptr;
  if (const int rc = load(path, &cfg)) return rc;
  std::cout << path << ": ok (experiment " << vl_config_experiment(cfg) << ", "
            << vl_config_eps_count(cfg) << " viscosities, output " << vl_config_output_dir(cfg)
            << ")\n";
  vl_config_free(cfg);
  return 0;
}

int cmd_run(const std::string& path, const std::string& out_dir, bool quiet) {
  vl_config* cfg = nullptr;
  if (const int rc = load(path, &cfg)) return rc;
  if (!out_dir.empty()) {
    if (const int st = vl_config_set_output_dir(cfg, out_dir.c_str())) {
      vl_config_free(cfg);
      return report_failure(st);
    }
  }
  vl_outcome* res = nullptr;
  const int st = vl_run(cfg, &res);
  const std::string dir = vl_config_output_dir(cfg);
  vl_config_free(cfg);
  if (st) return report_failure(st);

  const int n = vl_outcome_check_count(res);
  int failed = 0;
  for (int i = 0; i < n; ++i) {
    const char *name, *detail;
    double value, threshold;
    int pass;
    vl_outcome_check(res, i, &name, &value, &threshold, &pass, &detail);
    failed += !pass;
    if (!quiet || !pass)
      std::printf("%s %-32s value=%-12.6g threshold=%-10.4g %s\n", pass ? "PASS" : "FAIL", name,
                  value, threshold, detail);
  }
  if (!quiet) {
    for (int i = 0; i < vl_outcome_summary_count(res); ++i) {
      const char* key;
      double v;
      vl_outcome_summary(res, i, &key, &v);
      std::printf("  %-30s %.10g\n", key, v);
    }
  }
  std::printf("%d checks, %d failed, %d files in %s (%.2f s)\n", n, failed,
              vl_outcome_file_count(res), dir.c_str(), vl_outcome_wall_seconds(res));
  const int code = vl_outcome_exit_code(res);
  vl_outcome_free(res);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vanishing-viscosity experiments for 1D isentropic Navier-Stokes", "viscolimit"};
  app.set_version_flag("--version", std::string(vl_version()));
  app.require_subcommand(1);

  std::string run_path, out_dir, validate_path;
  bool quiet = false, csv = false;
  auto* run = app.add_subcommand("run", "run the experiment described by a config file");
  run->add_option("config", run_path, "config file")->required();
  run->add_option("-o,--output-dir", out_dir, "override output.dir");
  run->add_flag("-q,--quiet", quiet, "print failing checks and the final line only");
  auto* presets = app.add_subcommand("presets", "list experiment and initial-data presets");
  presets->add_flag("--csv", csv, "machine-readable output");
  auto* validate = app.add_subcommand("validate", "parse and validate a config without running");
  validate->add_option("config", validate_path, "config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageExit;
  }
  if (*run) return cmd_run(run_path, out_dir, quiet);
  if (*presets) return cmd_presets(csv);
  return cmd_validate(validate_path);
}
