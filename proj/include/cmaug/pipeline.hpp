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

// Batch entry point: schedule + augment + serialize, with the run manifest.

#ifndef CMAUG_PIPELINE_HPP_
#define CMAUG_PIPELINE_HPP_

#include <string>

#include "cmaug/config.hpp"
#include "cmaug/dataset.hpp"

namespace cmaug {

extern const char kToolVersion[];

struct GenerateRequest {
  std::string model_path;
  std::string clip_path;
  RunConfig config;
  uint64_t seed = 0;
  std::string out_dir;
  std::string invocation;  // echoed into the manifest
  bool write_binary = false;
  int jobs = 1;            // reserved; output is independent of it
};

struct GenerateResult {
  std::string dataset_path;
  std::string binary_path;   // empty unless requested
  std::string report_path;
  std::string manifest_path;
  int events_total = 0;
  int events_accepted = 0;
  int events_accepted_after_scaling = 0;
  int events_rejected = 0;
};

/// Loads inputs, builds the seeded schedule, runs augmentation, and writes
/// dataset + event report + manifest into out_dir. All randomness flows
/// from the seed.
GenerateResult generate_dataset(const GenerateRequest& request);

/// In-memory variant used by tests and the library API.
Dataset generate_dataset(const KinematicModel& model, const MotionClip& clip,
                         const RunConfig& config, uint64_t seed);

}  // namespace cmaug

#endif  // CMAUG_PIPELINE_HPP_
