// Copyright 2026 The cmaug Authors
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

#include "cmaug/cmaug.h"

#include <cstring>
#include <string>

#include "cmaug/analysis.hpp"
#include "cmaug/pipeline.hpp"
#include "cmaug/rlprep.hpp"

struct cmaug_model {
  cmaug::KinematicModel model;
};

struct cmaug_clip {
  cmaug::MotionClip clip;
  std::vector<cmaug::ClipLimitViolation> violations;
};

namespace {

thread_local std::string g_last_error;

cmaug_status status_of(const cmaug::Error& e) {
  using cmaug::ErrorCode;
  switch (e.code()) {
    case ErrorCode::kInvalidArgument:
      return CMAUG_ERR_INVALID_ARGUMENT;
    case ErrorCode::kParseError:
      return CMAUG_ERR_PARSE;
    case ErrorCode::kValidationError:
      return CMAUG_ERR_VALIDATION;
    case ErrorCode::kSingularRotation:
      return CMAUG_ERR_SINGULAR;
    case ErrorCode::kSolverDiverged:
      return CMAUG_ERR_DIVERGED;
    case ErrorCode::kIoError:
      return CMAUG_ERR_IO;
    case ErrorCode::kInfeasibleBudget:
      return CMAUG_ERR_INFEASIBLE;
  }
  return CMAUG_ERR_INTERNAL;
}

template <typename Fn>
cmaug_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return CMAUG_OK;
  } catch (const cmaug::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CMAUG_ERR_INTERNAL;
  }
}

cmaug_status require(bool ok, const char* what) {
  if (!ok) {
    g_last_error = what;
    return CMAUG_ERR_INVALID_ARGUMENT;
  }
  return CMAUG_OK;
}

}  // namespace

extern "C" {

const char* cmaug_version(void) { return cmaug::kToolVersion; }

const char* cmaug_last_error(void) { return g_last_error.c_str(); }

const char* cmaug_default_config_json(void) {
  static const std::string defaults = cmaug::config_to_json(cmaug::RunConfig{});
  return defaults.c_str();
}

cmaug_status cmaug_model_load(const char* path, cmaug_model** out) {
  if (auto s = require(path && out, "path and out must be non-null")) return s;
  return guarded([&] {
    auto* handle = new cmaug_model{cmaug::KinematicModel::load(path)};
    *out = handle;
  });
}

void cmaug_model_free(cmaug_model* model) { delete model; }

cmaug_status cmaug_model_info(const cmaug_model* model, int* n_links,
                              int* n_joints, double* total_mass) {
  if (auto s = require(model != nullptr, "model must be non-null")) return s;
  if (n_links) *n_links = static_cast<int>(model->model.links().size());
  if (n_joints) *n_joints = model->model.joint_count();
  if (total_mass) *total_mass = model->model.total_mass();
  return CMAUG_OK;
}

cmaug_status cmaug_clip_load(const char* path, const cmaug_model* model,
                             cmaug_clip** out) {
  if (auto s = require(path && model && out,
                       "path, model, and out must be non-null")) {
    return s;
  }
  return guarded([&] {
    auto* handle = new cmaug_clip;
    try {
      handle->clip =
          cmaug::MotionClip::load(path, model->model, &handle->violations);
    } catch (...) {
      delete handle;
      throw;
    }
    *out = handle;
  });
}

void cmaug_clip_free(cmaug_clip* clip) { delete clip; }

cmaug_status cmaug_clip_info(const cmaug_clip* clip, double* dt,
                             int* n_frames) {
  if (auto s = require(clip != nullptr, "clip must be non-null")) return s;
  if (dt) *dt = clip->clip.dt;
  if (n_frames) *n_frames = clip->clip.frame_count();
  return CMAUG_OK;
}

cmaug_status cmaug_validate(const cmaug_model* model, const cmaug_clip* clip,
                            char* report, size_t report_capacity) {
  if (auto s = require(model && clip, "model and clip must be non-null")) {
    return s;
  }
  std::string text;
  for (const auto& v : clip->violations) {
    text += "frame " + std::to_string(v.frame) + ": joint " + v.joint + " = " +
            std::to_string(v.value) + " outside [" + std::to_string(v.lower) +
            ", " + std::to_string(v.upper) + "]\n";
  }
  if (report != nullptr && report_capacity > 0) {
    const size_t n = std::min(text.size(), report_capacity - 1);
    std::memcpy(report, text.data(), n);
    report[n] = '\0';
  }
  if (!clip->violations.empty()) {
    g_last_error = std::to_string(clip->violations.size()) +
                   " joint-limit violation(s) in the clip";
    return CMAUG_ERR_VALIDATION;
  }
  return CMAUG_OK;
}

cmaug_status cmaug_generate(const cmaug_model* model, const cmaug_clip* clip,
                            const char* model_path, const char* clip_path,
                            const char* config_json, uint64_t seed,
                            const char* out_dir, const char* invocation,
                            int write_binary, int jobs) {
  if (auto s = require(model && clip && model_path && clip_path && out_dir,
                       "model, clip, paths, and out_dir must be non-null")) {
    return s;
  }
  return guarded([&] {
    cmaug::GenerateRequest req;
    req.model_path = model_path;
    req.clip_path = clip_path;
    if (config_json != nullptr && config_json[0] != '\0') {
      req.config = cmaug::config_from_json(config_json);
    }
    req.seed = seed;
    req.out_dir = out_dir;
    req.invocation = invocation != nullptr ? invocation : "";
    req.write_binary = write_binary != 0;
    req.jobs = jobs;
    cmaug::generate_dataset(req);
  });
}

cmaug_status cmaug_stiffness_bounds(double force_noise, double position_noise,
                                    double force_accuracy,
                                    double position_accuracy, double* k_min,
                                    double* k_max) {
  if (auto s = require(k_min && k_max, "k_min and k_max must be non-null")) {
    return s;
  }
  return guarded([&] {
    cmaug::NoiseBudget budget{force_noise, position_noise, force_accuracy,
                              position_accuracy};
    const auto bounds = cmaug::stiffness_bounds(budget);
    *k_min = bounds.k_min;
    *k_max = bounds.k_max;
  });
}

cmaug_status cmaug_analyze_stiffness(const char* dataset_path, int bins,
                                     const char* out_csv) {
  if (auto s = require(dataset_path && out_csv,
                       "dataset_path and out_csv must be non-null")) {
    return s;
  }
  return guarded([&] {
    const cmaug::Dataset ds = cmaug::read_dataset_text(dataset_path);
    const auto points = cmaug::effective_stiffness(ds, bins);
    cmaug::write_stiffness_csv(out_csv, points);
  });
}

cmaug_status cmaug_tracking_metrics(const cmaug_model* model,
                                    const char* clip_a_path,
                                    const char* clip_b_path,
                                    double metrics[4]) {
  if (auto s = require(model && clip_a_path && clip_b_path && metrics,
                       "model, clip paths, and metrics must be non-null")) {
    return s;
  }
  return guarded([&] {
    const cmaug::MotionClip a =
        cmaug::MotionClip::load(clip_a_path, model->model);
    const cmaug::MotionClip b =
        cmaug::MotionClip::load(clip_b_path, model->model);
    const auto m = cmaug::tracking_metrics(model->model, a, b);
    metrics[0] = m.joint_mean_deg;
    metrics[1] = m.joint_sem_deg;
    metrics[2] = m.keypoint_mean_cm;
    metrics[3] = m.keypoint_sem_cm;
  });
}

cmaug_status cmaug_observation_layout_json(const cmaug_model* model,
                                           int contact_feet, char* buffer,
                                           size_t capacity) {
  if (auto s = require(model && buffer && capacity > 0,
                       "model and a non-empty buffer are required")) {
    return s;
  }
  return guarded([&] {
    const auto layout = cmaug::observation_layout(
        model->model, contact_feet, cmaug::ObsParams{});
    const std::string json = layout.to_json();
    if (json.size() + 1 > capacity) {
      throw cmaug::Error(cmaug::ErrorCode::kInvalidArgument,
                         "layout buffer too small: need " +
                             std::to_string(json.size() + 1) + " bytes");
    }
    std::memcpy(buffer, json.data(), json.size() + 1);
  });
}

}  // extern "C"
