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

#ifndef VISCOLIMIT_EXPERIMENT_HPP_
#define VISCOLIMIT_EXPERIMENT_HPP_

#include <functional>
#include <string>
#include <vector>

#include "viscolimit/config.hpp"
#include "viscolimit/error.hpp"

namespace viscolimit {

/// One pass/fail check of an experiment; failing checks are falsifications.
struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = true;
  std::string detail;
};

struct ArtifactEntry {
  std::string path;  // relative to the output directory
  std::string kind;
  std::string description;
};

struct ExperimentOutcome {
  std::string experiment;
  std::vector<CheckResult> checks;
  std::vector<ArtifactEntry> files;
  std::vector<std::pair<std::string, double>> summary;
  double wall_seconds = 0.0;
  bool falsified() const;
  /// 0 if every check passed, 1 otherwise.
  int exit_code() const { return falsified() ? 1 : 0; }
};

/// Runs the configured experiment and writes its artifact tree
/// (manifest.csv, failures.csv, checks.csv, summary.csv, run.json and the
/// experiment's CSVs) into cfg.output_dir. Throws Error for config, I/O and
/// solver failures.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

/// Process exit status for an error code: 2 for usage/config/I/O errors,
/// 3 for runtime failures, 1 for falsification.
int exit_code_for(ErrorCode code);

/// Worker count for `tasks` independent jobs: hardware concurrency capped by
/// the VISCOLIMIT_THREADS environment variable (if set) and by `tasks`.
unsigned worker_count(std::size_t tasks);

/// Runs fn(0..n-1) on worker_count(n) threads; results must be written to
/// per-index slots. The first exception (lowest index) is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Version string (git-describe style).
const char* version_string();

}  // namespace viscolimit

#endif  // VISCOLIMIT_EXPERIMENT_HPP_
