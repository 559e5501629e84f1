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

// Dataset serialization. The text form is line-delimited records with a
// documented fixed field order; the binary form is length-prefixed records
// with identical logical content. Both are deterministic byte for byte
// given the same dataset.
//
// Record field order (text: whitespace-separated on one line):
//   time  event_id  link  fx fy fz  tx ty tz  k_t k_r  f_peak
//   q_ref: base xyz, base quat wxyz, joints...
//   q_aug: base xyz, base quat wxyz, joints...
//   residuals: hand_pos hand_rot foot_pos com_xy keypoint_pos joint_posture
//   hand_ref xyz   hand_aug xyz   contact flags...
// Frames without an interaction carry event_id -1, link "-", and zeros in
// the wrench/stiffness/peak columns.

#ifndef CMAUG_DATASET_HPP_
#define CMAUG_DATASET_HPP_

#include <string>

#include "cmaug/augment.hpp"

namespace cmaug {

void write_dataset_text(const std::string& path, const Dataset& ds);
Dataset read_dataset_text(const std::string& path);

void write_dataset_binary(const std::string& path, const Dataset& ds);
Dataset read_dataset_binary(const std::string& path);

/// Comma-separated per-event outcome table with a header row.
void write_event_report(const std::string& path, const Dataset& ds);

struct ManifestInfo {
  std::string tool_version;
  std::string command;
  std::string model_path;
  std::string clip_path;
  uint64_t seed = 0;
  std::string config_json;  // resolved configuration echo
  std::vector<std::string> outputs;
  double wall_time_s = 0.0;
  int events_total = 0;
  int events_accepted = 0;
  int events_accepted_after_scaling = 0;
  int events_rejected = 0;
};

/// Written atomically (temp file + rename). Input hashes are FNV-1a 64 of
/// the file bytes.
void write_manifest(const std::string& path, const ManifestInfo& info);

}  // namespace cmaug

#endif  // CMAUG_DATASET_HPP_
