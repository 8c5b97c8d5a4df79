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

/* C interface to the viscolimit experiment runner.
 *
 * All functions returning int return a vl_status. On failure the message is
 * available from vl_last_error() in the calling thread until the next call.
 * Handles are opaque; every *_create/_load/_parse/_run result must be freed
 * with its matching *_free. Strings returned through out-parameters are owned
 * by the handle they came from and stay valid until it is freed. */
#ifndef VISCOLIMIT_H_
#define VISCOLIMIT_H_

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define VL_API __attribute__((visibility("default")))
#else
#define VL_API
#endif

typedef enum vl_status {
  VL_OK = 0,
  VL_INVALID_ARGUMENT = 1,
  VL_DOMAIN = 2,
  VL_CONFIG = 3,
  VL_SOLVER_FAILURE = 4,
  VL_FALSIFIED = 5,
  VL_IO = 6,
  VL_INTERNAL = 7
} vl_status;

typedef struct vl_config vl_config;
typedef struct vl_outcome vl_outcome;
typedef struct vl_law vl_law;

VL_API const char* vl_version(void);
/* Message of the last failed call on this thread ("" if none). */
VL_API const char* vl_last_error(void);
/* Process exit code for a status: 0 ok, 1 falsified, 2 config/usage/io, 3 runtime. */
VL_API int vl_exit_code(int status);

/* --- configuration ------------------------------------------------------ */
VL_API int vl_config_load(const char* path, vl_config** out);
VL_API int vl_config_parse(const char* text, const char* source_name, vl_config** out);
VL_API void vl_config_free(vl_config* cfg);
VL_API const char* vl_config_experiment(const vl_config* cfg);
VL_API const char* vl_config_output_dir(const vl_config* cfg);
VL_API int vl_config_set_output_dir(vl_config* cfg, const char* dir);
/* Number of sweep viscosities and their values. */
VL_API int vl_config_eps(const vl_config* cfg, int index, double* eps);
VL_API int vl_config_eps_count(const vl_config* cfg);

/* Catalog of accepted keys. */
VL_API int vl_config_key_count(void);
VL_API int vl_config_key(int index, const char** name, const char** doc);

/* --- presets -------------------------------------------------------------- */
/* kind is "experiment" or "initial". */
VL_API int vl_preset_count(void);
VL_API int vl_preset(int index, const char** name, const char** kind, const char** description);

/* --- running -------------------------------------------------------------- */
/* Runs the configured experiment and writes its files. A falsified run still
 * returns VL_OK with a populated outcome; inspect vl_outcome_exit_code. */
VL_API int vl_run(const vl_config* cfg, vl_outcome** out);
VL_API void vl_outcome_free(vl_outcome* res);
VL_API int vl_outcome_exit_code(const vl_outcome* res);
VL_API double vl_outcome_wall_seconds(const vl_outcome* res);
VL_API int vl_outcome_check_count(const vl_outcome* res);
VL_API int vl_outcome_check(const vl_outcome* res, int index, const char** name, double* value,
                            double* threshold, int* pass, const char** detail);
VL_API int vl_outcome_file_count(const vl_outcome* res);
VL_API int vl_outcome_file(const vl_outcome* res, int index, const char** path, const char** kind,
                           const char** description);
VL_API int vl_outcome_summary_count(const vl_outcome* res);
VL_API int vl_outcome_summary(const vl_outcome* res, int index, const char** key, double* value);

/* --- pressure laws -------------------------------------------------------- */
/* law_kind: "hybrid" (gamma law below rho_star, isothermal above) or "gamma". */
VL_API int vl_law_create(const char* law_kind, double gamma, double kappa, double rho_star,
                         double c_star, vl_law** out);
VL_API void vl_law_free(vl_law* law);
/* Pressure, sound speed and Riemann-invariant function k at rho > 0. */
VL_API int vl_law_eval(const vl_law* law, double rho, double* p, double* c, double* k);

#ifdef __cplusplus
}
#endif

#endif /* VISCOLIMIT_H_ */
