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

// The end-to-end compliant-motion augmentation pipeline: per-frame IK under
// each event's wrench, feasibility validation against the hard rejection
// criteria, and the iterative 0.8-scaling rejection loop.

#ifndef CMAUG_AUGMENT_HPP_
#define CMAUG_AUGMENT_HPP_

#include <optional>
#include <string>
#include <vector>

#include "cmaug/events.hpp"
#include "cmaug/ik.hpp"

namespace cmaug {

struct FeasibilityLimits {
  double max_link_tracking_error = 0.05;      // m, hand vs compliant target
  double max_stance_foot_displacement = 0.05; // m, vs reference
  double max_com_tracking_error = 0.15;       // m, xy vs CoP-aware target
  double rejection_scale = 0.8;
  double min_event_force = 1.0;               // N

  void validate() const;
};

struct Violation {
  std::string criterion;  // "link tracking", "stance foot <name>", "CoM", "ik"
  double value = 0.0;
  double limit = 0.0;
  std::string message() const;
};

/// Empty result means the frame passes: hand within 0.05 m of its compliant
/// target, every stance foot within 0.05 m of its reference pose, CoM xy
/// within 0.15 m of the CoP-aware target.
std::vector<Violation> feasibility_check(const KinematicModel& model,
                                         const MotionClip& clip, int frame,
                                         int hand_link,
                                         const Configuration& q_solved,
                                         const CompliantTargets& targets,
                                         const FeasibilityLimits& limits);

/// Per-level residual norms recomputed from the solved configuration;
/// fixed-width so dataset records have a stable schema.
struct ResidualSummary {
  double hand_pos = 0.0;
  double hand_rot = 0.0;
  double foot_pos = 0.0;      // max over stance feet
  double com_xy = 0.0;
  double keypoint_pos = 0.0;  // max over keypoints
  double joint_posture = 0.0; // 2-norm over joints
};

struct EventContext {
  int event_id = -1;
  int link = -1;          // model link index; -1 when loaded from file
  std::string link_name;
  Wrench wrench;
  StiffnessCommand cmd;
  double event_peak_force = 0.0;  // final (scaled) event peak |F|
};

/// One dataset tuple (q_ref, w, K_cmd, q_aug) plus bookkeeping columns that
/// make the on-disk dataset self-contained for analysis.
struct AugmentedFrame {
  double time = 0.0;
  Configuration q_ref;
  Configuration q_aug;
  std::optional<EventContext> interaction;
  ResidualSummary residuals;
  Vec3 hand_ref{Vec3::Zero()};
  Vec3 hand_aug{Vec3::Zero()};
  std::vector<uint8_t> contacts;
};

struct EventOutcome {
  enum class Status { kAccepted, kAcceptedAfterScaling, kRejected };
  int event_index = -1;
  EventKind kind = EventKind::kRamp;
  std::string link;
  double start = 0.0;
  Status status = Status::kRejected;
  int scalings = 0;          // k, final magnitude scale = 0.8^k
  double final_scale = 1.0;
  double final_peak_force = 0.0;
  std::vector<std::string> attempt_failures;
};

struct SimulatedEvent {
  bool feasible = false;
  std::vector<AugmentedFrame> frames;
  int failure_frame = -1;
  std::vector<Violation> violations;
};

/// Simulates one event frame by frame, warm-starting each solve from the
/// previous frame's solution, and stops at the first feasibility violation.
SimulatedEvent simulate_event(const KinematicModel& model,
                              const MotionClip& clip,
                              const InteractionEvent& event,
                              const IkParams& ik_params,
                              const TaskWeights& weights,
                              const FeasibilityLimits& limits,
                              const Configuration& warm_start);

struct Dataset {
  double dt = 0.0;
  std::vector<std::string> joint_names;
  std::vector<std::string> foot_links;
  std::vector<AugmentedFrame> frames;
  std::vector<EventOutcome> outcomes;
};

/// Runs the full rejection-sampling pipeline over a schedule. Frames outside
/// events carry zero wrench and q_aug = q_ref; rejected events leave their
/// span unperturbed so time indexing stays aligned with the clip.
Dataset augment_clip(const KinematicModel& model, const MotionClip& clip,
                     const EventSchedule& schedule, const IkParams& ik_params,
                     const TaskWeights& weights,
                     const FeasibilityLimits& limits);

}  // namespace cmaug

#endif  // CMAUG_AUGMENT_HPP_
