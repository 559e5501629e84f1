/* Copyright 2026 The cmaug Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C API of the compliant-motion-augmentation library. Objects are opaque
 * handles; every fallible call returns a cmaug_status and leaves a
 * human-readable message in cmaug_last_error() (thread-local) on failure.
 */

#ifndef CMAUG_CMAUG_H_
#define CMAUG_CMAUG_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CMAUG_API __declspec(dllexport)
#else
#define CMAUG_API __attribute__((visibility("default")))
#endif

typedef enum cmaug_status {
  CMAUG_OK = 0,
  CMAUG_ERR_INVALID_ARGUMENT = 1,
  CMAUG_ERR_PARSE = 2,
  CMAUG_ERR_VALIDATION = 3,
  CMAUG_ERR_SINGULAR = 4,
  CMAUG_ERR_DIVERGED = 5,
  CMAUG_ERR_IO = 6,
  CMAUG_ERR_INFEASIBLE = 7,
  CMAUG_ERR_INTERNAL = 8
} cmaug_status;

typedef struct cmaug_model cmaug_model;
typedef struct cmaug_clip cmaug_clip;

CMAUG_API const char* cmaug_version(void);

/* Message of the last failing call on this thread; empty string otherwise. */
CMAUG_API const char* cmaug_last_error(void);

/* Default run configuration as a JSON document (sampler, ik, weights,
 * limits). The returned pointer is owned by the library and stays valid. */
CMAUG_API const char* cmaug_default_config_json(void);

/* ---- model / clip -------------------------------------------------- */

CMAUG_API cmaug_status cmaug_model_load(const char* path, cmaug_model** out);
CMAUG_API void cmaug_model_free(cmaug_model* model);
CMAUG_API cmaug_status cmaug_model_info(const cmaug_model* model,
                                        int* n_links, int* n_joints,
                                        double* total_mass);

CMAUG_API cmaug_status cmaug_clip_load(const char* path,
                                       const cmaug_model* model,
                                       cmaug_clip** out);
CMAUG_API void cmaug_clip_free(cmaug_clip* clip);
CMAUG_API cmaug_status cmaug_clip_info(const cmaug_clip* clip, double* dt,
                                       int* n_frames);

/* Validates a model/clip pair and writes a report (out-of-limit joints per
 * frame, one line each) into `report`. Returns CMAUG_ERR_VALIDATION when
 * violations exist. `report` may be NULL. */
CMAUG_API cmaug_status cmaug_validate(const cmaug_model* model,
                                      const cmaug_clip* clip, char* report,
                                      size_t report_capacity);

/* ---- pipeline ------------------------------------------------------- */

/* Generates dataset.txt, events.csv, manifest.json (and dataset.bin when
 * write_binary != 0) into out_dir. config_json may be NULL for defaults or
 * a (partial) JSON document layered over them; invocation is echoed into
 * the manifest and may be NULL. */
CMAUG_API cmaug_status cmaug_generate(const cmaug_model* model,
                                      const cmaug_clip* clip,
                                      const char* model_path,
                                      const char* clip_path,
                                      const char* config_json, uint64_t seed,
                                      const char* out_dir,
                                      const char* invocation, int write_binary,
                                      int jobs);

/* ---- analysis ------------------------------------------------------- */

CMAUG_API cmaug_status cmaug_stiffness_bounds(double force_noise,
                                              double position_noise,
                                              double force_accuracy,
                                              double position_accuracy,
                                              double* k_min, double* k_max);

/* Reads a text dataset and writes the effective-stiffness curve CSV. */
CMAUG_API cmaug_status cmaug_analyze_stiffness(const char* dataset_path,
                                               int bins, const char* out_csv);

/* metrics[0..3] = joint mean (deg), joint SEM, keypoint mean (cm),
 * keypoint SEM. */
CMAUG_API cmaug_status cmaug_tracking_metrics(const cmaug_model* model,
                                              const char* clip_a_path,
                                              const char* clip_b_path,
                                              double metrics[4]);

/* ---- RL binding ----------------------------------------------------- */

/* Observation layout schema (JSON) for a model with `contact_feet` contact
 * flag columns. Writes up to capacity-1 bytes plus a terminator; returns
 * CMAUG_ERR_INVALID_ARGUMENT when the buffer is too small. */
CMAUG_API cmaug_status cmaug_observation_layout_json(const cmaug_model* model,
                                                     int contact_feet,
                                                     char* buffer,
                                                     size_t capacity);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CMAUG_CMAUG_H_ */
