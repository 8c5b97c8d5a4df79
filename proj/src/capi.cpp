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

#include "viscolimit/viscolimit.h"

#include <exception>
#include <new>
#include <string>

#include "viscolimit/config.hpp"
#include "viscolimit/error.hpp"
#include "viscolimit/experiment.hpp"
#include "viscolimit/presets.hpp"
#include "viscolimit/pressure.hpp"

struct vl_config {
  viscolimit::ExperimentConfig cfg;
};

struct vl_outcome {
  viscolimit::ExperimentOutcome res;
};

struct vl_law {
  viscolimit::PressureLaw law;
};

namespace {

using viscolimit::Error;
using viscolimit::ErrorCode;

thread_local std::string g_last_error;

int set_error(ErrorCode code, const std::string& msg) {
  g_last_error = msg;
  return static_cast<int>(code);
}

// Runs `fn`, translating exceptions into status codes and the thread-local
// message; clears the message on success.
template <typename F>
int guarded(F&& fn) {
  try {
    fn();
    g_last_error.clear();
    return VL_OK;
  } catch (const Error& e) {
    return set_error(e.code(), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(ErrorCode::kInternal, "out of memory");
  } catch (const std::exception& e) {
    return set_error(ErrorCode::kInternal, e.what());
  } catch (...) {
    return set_error(ErrorCode::kInternal, "unknown exception");
  }
}

void need(bool ok, const char* what) {
  if (!ok) viscolimit::fail(ErrorCode::kInvalidArgument, what);
}

template <typename V>
void need_index(const V& v, int i) {
  need(i >= 0 && static_cast<std::size_t>(i) < v.size(), "index out of range");
}

int preset_total() {
  return static_cast<int>(viscolimit::experiment_presets().size() +
                          viscolimit::initial_presets().size());
}

}  // namespace

extern "C" {

const char* vl_version(void) { return viscolimit::version_string(); }
const char* vl_last_error(void) { return g_last_error.c_str(); }

int vl_exit_code(int status) {
  if (status < 0 || status > VL_INTERNAL) return 3;
  return viscolimit::exit_code_for(static_cast<ErrorCode>(status));
}

int vl_config_load(const char* path, vl_config** out) {
  return guarded([&] {
    need(path && out, "vl_config_load: null argument");
    *out = nullptr;
    *out = new vl_config{viscolimit::load_experiment_config(path)};
  });
}

int vl_config_parse(const char* text, const char* source_name, vl_config** out) {
  return guarded([&] {
    need(text && out, "vl_config_parse: null argument");
    *out = nullptr;
    const auto kv = viscolimit::KeyValueFile::parse(text, source_name ? source_name : "config");
    *out = new vl_config{viscolimit::parse_experiment_config(kv)};
  });
}

void vl_config_free(vl_config* cfg) { delete cfg; }

const char* vl_config_experiment(const vl_config* cfg) {
  return cfg ? cfg->cfg.experiment.c_str() : "";
}

const char* vl_config_output_dir(const vl_config* cfg) {
  return cfg ? cfg->cfg.output_dir.c_str() : "";
}

int vl_config_set_output_dir(vl_config* cfg, const char* dir) {
  return guarded([&] {
    need(cfg && dir && *dir, "vl_config_set_output_dir: null or empty argument");
    cfg->cfg.output_dir = dir;
  });
}

int vl_config_eps_count(const vl_config* cfg) {
  return cfg ? static_cast<int>(cfg->cfg.eps.size()) : 0;
}

int vl_config_eps(const vl_config* cfg, int index, double* eps) {
  return guarded([&] {
    need(cfg && eps, "vl_config_eps: null argument");
    need_index(cfg->cfg.eps, index);
    *eps = cfg->cfg.eps[index];
  });
}

int vl_config_key_count(void) { return static_cast<int>(viscolimit::config_keys().size()); }

int vl_config_key(int index, const char** name, const char** doc) {
  return guarded([&] {
    const auto& keys = viscolimit::config_keys();
    need_index(keys, index);
    if (name) *name = keys[index].first.c_str();
    if (doc) *doc = keys[index].second.c_str();
  });
}

int vl_preset_count(void) { return preset_total(); }

int vl_preset(int index, const char** name, const char** kind, const char** description) {
  return guarded([&] {
    need(index >= 0 && index < preset_total(), "index out of range");
    const auto& ex = viscolimit::experiment_presets();
    const std::string* n;
    const std::string* d;
    const char* k;
    if (static_cast<std::size_t>(index) < ex.size()) {
      n = &ex[index].name;
      d = &ex[index].description;
      k = "experiment";
    } else {
      const auto& in = viscolimit::initial_presets()[index - ex.size()];
      n = &in.name;
      d = &in.description;
      k = "initial";
    }
    if (name) *name = n->c_str();
    if (kind) *kind = k;
    if (description) *description = d->c_str();
  });
}

int vl_run(const vl_config* cfg, vl_outcome** out) {
  return guarded([&] {
    need(cfg && out, "vl_run: null argument");
    *out = nullptr;
    *out = new vl_outcome{viscolimit::run_experiment(cfg->cfg)};
  });
}

void vl_outcome_free(vl_outcome* res) { delete res; }

int vl_outcome_exit_code(const vl_outcome* res) { return res ? res->res.exit_code() : 3; }

double vl_outcome_wall_seconds(const vl_outcome* res) { return res ? res->res.wall_seconds : 0.0; }

int vl_outcome_check_count(const vl_outcome* res) {
  return res ? static_cast<int>(res->res.checks.size()) : 0;
}

int vl_outcome_check(const vl_outcome* res, int index, const char** name, double* value,
                     double* threshold, int* pass, const char** detail) {
  return guarded([&] {
    need(res, "vl_outcome_check: null outcome");
    need_index(res->res.checks, index);
    const auto& c = res->res.checks[index];
    if (name) *name = c.name.c_str();
    if (value) *value = c.value;
    if (threshold) *threshold = c.threshold;
    if (pass) *pass = c.pass ? 1 : 0;
    if (detail) *detail = c.detail.c_str();
  });
}

int vl_outcome_file_count(const vl_outcome* res) {
  return res ? static_cast<int>(res->res.files.size()) : 0;
}

int vl_outcome_file(const vl_outcome* res, int index, const char** path, const char** kind,
                    const char** description) {
  return guarded([&] {
    need(res, "vl_outcome_file: null outcome");
    need_index(res->res.files, index);
    const auto& f = res->res.files[index];
    if (path) *path = f.path.c_str();
    if (kind) *kind = f.kind.c_str();
    if (description) *description = f.description.c_str();
  });
}

int vl_outcome_summary_count(const vl_outcome* res) {
  return res ? static_cast<int>(res->res.summary.size()) : 0;
}

int vl_outcome_summary(const vl_outcome* res, int index, const char** key, double* value) {
  return guarded([&] {
    need(res, "vl_outcome_summary: null outcome");
    need_index(res->res.summary, index);
    if (key) *key = res->res.summary[index].first.c_str();
    if (value) *value = res->res.summary[index].second;
  });
}

int vl_law_create(const char* law_kind, double gamma, double kappa, double rho_star,
                  double c_star, vl_law** out) {
  return guarded([&] {
    need(law_kind && out, "vl_law_create: null argument");
    *out = nullptr;
    const std::string kind = law_kind;
    if (kind == "gamma") {
      *out = new vl_law{viscolimit::PressureLaw::pure_gamma(gamma, kappa)};
    } else if (kind == "hybrid") {
      *out = new vl_law{viscolimit::PressureLaw::make(gamma, kappa, rho_star, c_star)};
    } else {
      viscolimit::fail(ErrorCode::kInvalidArgument, "vl_law_create: unknown law '" + kind + "'");
    }
  });
}

void vl_law_free(vl_law* law) { delete law; }

int vl_law_eval(const vl_law* law, double rho, double* p, double* c, double* k) {
  return guarded([&] {
    need(law, "vl_law_eval: null law");
    need(rho > 0.0, "vl_law_eval: rho must be positive");
    if (p) *p = law->law.p(rho);
    if (c) *c = law->law.sound_speed(rho);
    if (k) *k = law->law.k(rho);
  });
}

}  // extern "C"
