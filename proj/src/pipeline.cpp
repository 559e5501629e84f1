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

#include "cmaug/pipeline.hpp"

#include <chrono>
#include <filesystem>

namespace cmaug {

const char kToolVersion[] = "0.1.0";

Dataset generate_dataset(const KinematicModel& model, const MotionClip& clip,
                         const RunConfig& config, uint64_t seed) {
  config.validate();
  Rng rng(seed);
  const EventSchedule schedule = build_schedule(clip, model, config.sampler, rng);
  return augment_clip(model, clip, schedule, config.ik, config.weights,
                      config.limits);
}

GenerateResult generate_dataset(const GenerateRequest& request) {
  const auto t0 = std::chrono::steady_clock::now();
  if (request.jobs < 1) {
    throw Error(ErrorCode::kInvalidArgument, "jobs must be >= 1");
  }
  const KinematicModel model = KinematicModel::load(request.model_path);
  const MotionClip clip = MotionClip::load(request.clip_path, model);

  std::filesystem::create_directories(request.out_dir);
  const Dataset ds = generate_dataset(model, clip, request.config, request.seed);

  GenerateResult result;
  const std::filesystem::path out(request.out_dir);
  result.dataset_path = (out / "dataset.txt").string();
  result.report_path = (out / "events.csv").string();
  result.manifest_path = (out / "manifest.json").string();
  write_dataset_text(result.dataset_path, ds);
  write_event_report(result.report_path, ds);
  if (request.write_binary) {
    result.binary_path = (out / "dataset.bin").string();
    write_dataset_binary(result.binary_path, ds);
  }

  result.events_total = static_cast<int>(ds.outcomes.size());
  for (const auto& o : ds.outcomes) {
    switch (o.status) {
      case EventOutcome::Status::kAccepted:
        ++result.events_accepted;
        break;
      case EventOutcome::Status::kAcceptedAfterScaling:
        ++result.events_accepted_after_scaling;
        break;
      case EventOutcome::Status::kRejected:
        ++result.events_rejected;
        break;
    }
  }

  ManifestInfo info;
  info.tool_version = kToolVersion;
  info.command = request.invocation;
  info.model_path = request.model_path;
  info.clip_path = request.clip_path;
  info.seed = request.seed;
  info.config_json = config_to_json(request.config);
  info.outputs = {result.dataset_path, result.report_path};
  if (!result.binary_path.empty()) info.outputs.push_back(result.binary_path);
  info.events_total = result.events_total;
  info.events_accepted = result.events_accepted;
  info.events_accepted_after_scaling = result.events_accepted_after_scaling;
  info.events_rejected = result.events_rejected;
  info.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  write_manifest(result.manifest_path, info);
  return result;
}

}  // namespace cmaug
