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

#include "cmaug/augment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cmaug {

void FeasibilityLimits::validate() const {
  if (!(max_link_tracking_error > 0.0) ||
      !(max_stance_foot_displacement > 0.0) ||
      !(max_com_tracking_error > 0.0) || !(min_event_force > 0.0) ||
      !(rejection_scale > 0.0) || !(rejection_scale < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "feasibility limits must be positive, scale in (0,1)");
  }
}

std::string Violation::message() const {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%s %.3f > %g", criterion.c_str(), value,
                limit);
  return buf;
}

std::vector<Violation> feasibility_check(const KinematicModel& model,
                                         const MotionClip& clip, int frame,
                                         int hand_link,
                                         const Configuration& q_solved,
                                         const CompliantTargets& targets,
                                         const FeasibilityLimits& limits) {
  limits.validate();
  std::vector<Violation> violations;
  const auto poses = forward_kinematics(model, q_solved);
  const auto ref_poses = forward_kinematics(model, clip.frames[frame]);

  const double hand_err =
      (poses[hand_link].translation - targets.p_des).norm();
  if (hand_err > limits.max_link_tracking_error) {
    violations.push_back(
        {"link tracking", hand_err, limits.max_link_tracking_error});
  }

  for (size_t f = 0; f < clip.foot_links.size(); ++f) {
    if (!clip.foot_in_contact(frame, static_cast<int>(f))) continue;
    const int foot = model.link_index(clip.foot_links[f]);
    const double err =
        (poses[foot].translation - ref_poses[foot].translation).norm();
    if (err > limits.max_stance_foot_displacement) {
      violations.push_back({"stance foot " + clip.foot_links[f], err,
                            limits.max_stance_foot_displacement});
    }
  }

  const Vec3 com = center_of_mass(model, poses);
  const double com_err =
      (Eigen::Vector2d(com.x(), com.y()) - targets.com_target_xy).norm();
  if (com_err > limits.max_com_tracking_error) {
    violations.push_back({"CoM", com_err, limits.max_com_tracking_error});
  }
  return violations;
}

namespace {

ResidualSummary summarize(const KinematicModel& model, const MotionClip& clip,
                          int frame, int hand_link,
                          const Configuration& q_solved,
                          const CompliantTargets& targets) {
  ResidualSummary s;
  const auto poses = forward_kinematics(model, q_solved);
  const auto ref_poses = forward_kinematics(model, clip.frames[frame]);

  s.hand_pos = (poses[hand_link].translation - targets.p_des).norm();
  try {
    s.hand_rot =
        rot_log(targets.r_des.transposed() * poses[hand_link].rotation).norm();
  } catch (const Error&) {
    s.hand_rot = M_PI;
  }
  for (size_t f = 0; f < clip.foot_links.size(); ++f) {
    if (!clip.foot_in_contact(frame, static_cast<int>(f))) continue;
    const int foot = model.link_index(clip.foot_links[f]);
    s.foot_pos = std::max(
        s.foot_pos,
        (poses[foot].translation - ref_poses[foot].translation).norm());
  }
  const Vec3 com = center_of_mass(model, poses);
  s.com_xy =
      (Eigen::Vector2d(com.x(), com.y()) - targets.com_target_xy).norm();
  for (int kp : model.keypoint_links()) {
    s.keypoint_pos = std::max(
        s.keypoint_pos,
        (poses[kp].translation - ref_poses[kp].translation).norm());
  }
  s.joint_posture = (q_solved.joints - clip.frames[frame].joints).norm();
  return s;
}

Wrench event_wrench(const KinematicModel& model, const MotionClip& clip,
                    const InteractionEvent& event, int frame) {
  if (event.kind == EventKind::kRamp) {
    return wrench_profile(event, clip.frame_time(frame));
  }
  const double x = collision_penetration(clip, model, event, frame);
  const double f =
      series_spring_equilibrium(x, event.cmd.k_t, event.env.linear).force;
  Wrench w;
  w.force = -f * event.normal;  // the surface pushes back along its normal
  return w;
}

InteractionEvent scaled_event(const InteractionEvent& event, double scale) {
  InteractionEvent ev = event;
  if (event.kind == EventKind::kRamp) {
    ev.peak = event.peak.scaled(scale);
  } else {
    ev.duration = event.duration * scale;
  }
  return ev;
}

double event_peak_force(const KinematicModel& model, const MotionClip& clip,
                        const InteractionEvent& event) {
  if (event.kind == EventKind::kRamp) return event.peak.force.norm();
  return collision_peak_force(clip, model, event);
}

int first_frame(const MotionClip& clip, const InteractionEvent& event) {
  return std::max(
      0, static_cast<int>(std::ceil(event.start / clip.dt - 1e-9)));
}

int last_frame(const MotionClip& clip, const InteractionEvent& event) {
  return std::min(
      clip.frame_count() - 1,
      static_cast<int>(std::floor(event.end() / clip.dt + 1e-9)));
}

}  // namespace

SimulatedEvent simulate_event(const KinematicModel& model,
                              const MotionClip& clip,
                              const InteractionEvent& event,
                              const IkParams& ik_params,
                              const TaskWeights& weights,
                              const FeasibilityLimits& limits,
                              const Configuration& warm_start) {
  if (event.start < 0.0 || event.end() > clip.duration() + 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "event outside the clip span");
  }
  SimulatedEvent result;
  Configuration warm = warm_start;

  const int f0 = first_frame(clip, event);
  const int f1 = last_frame(clip, event);
  for (int f = f0; f <= f1; ++f) {
    const Wrench w = event_wrench(model, clip, event, f);
    const CompliantTargets targets =
        compliant_targets(model, clip, f, event.link, w, event.cmd);
    const auto tasks =
        build_task_set(model, clip, f, event.link, targets, weights);

    IkSolution sol;
    try {
      sol = solve_ik(model, warm, tasks, ik_params);
    } catch (const Error& e) {
      result.failure_frame = f;
      result.violations.push_back({std::string("ik ") + e.what(), 0.0, 0.0});
      return result;
    }

    auto violations =
        feasibility_check(model, clip, f, event.link, sol.q, targets, limits);
    if (!violations.empty()) {
      result.failure_frame = f;
      result.violations = std::move(violations);
      return result;
    }

    AugmentedFrame frame;
    frame.time = clip.frame_time(f);
    frame.q_ref = clip.frames[f];
    frame.q_aug = sol.q;
    frame.contacts = clip.contacts[f];
    EventContext ctx;
    ctx.link = event.link;
    ctx.link_name = model.link_name(event.link);
    ctx.wrench = w;
    ctx.cmd = event.cmd;
    frame.interaction = std::move(ctx);
    frame.residuals = summarize(model, clip, f, event.link, sol.q, targets);
    frame.hand_ref =
        forward_kinematics(model, clip.frames[f])[event.link].translation;
    frame.hand_aug = forward_kinematics(model, sol.q)[event.link].translation;
    result.frames.push_back(std::move(frame));
    warm = sol.q;
  }
  result.feasible = true;
  return result;
}

Dataset augment_clip(const KinematicModel& model, const MotionClip& clip,
                     const EventSchedule& schedule, const IkParams& ik_params,
                     const TaskWeights& weights,
                     const FeasibilityLimits& limits) {
  limits.validate();
  Dataset ds;
  ds.dt = clip.dt;
  ds.joint_names = model.joint_names();
  ds.foot_links = clip.foot_links;

  // Start from the unperturbed reference.
  ds.frames.resize(clip.frame_count());
  for (int f = 0; f < clip.frame_count(); ++f) {
    AugmentedFrame& frame = ds.frames[f];
    frame.time = clip.frame_time(f);
    frame.q_ref = clip.frames[f];
    frame.q_aug = clip.frames[f];
    frame.contacts = clip.contacts[f];
  }

  for (size_t e = 0; e < schedule.events.size(); ++e) {
    const InteractionEvent& event = schedule.events[e];
    EventOutcome outcome;
    outcome.event_index = static_cast<int>(e);
    outcome.kind = event.kind;
    outcome.link = model.link_name(event.link);
    outcome.start = event.start;

    const int f0 = first_frame(clip, event);
    const Configuration warm =
        f0 > 0 ? ds.frames[f0 - 1].q_aug : clip.frames[f0];

    double scale = 1.0;
    int k = 0;
    while (true) {
      const InteractionEvent attempt = scaled_event(event, scale);
      const double peak = event_peak_force(model, clip, attempt);
      if (peak < limits.min_event_force) {
        outcome.status = EventOutcome::Status::kRejected;
        outcome.scalings = k;
        outcome.final_scale = scale;
        outcome.final_peak_force = peak;
        break;
      }
      SimulatedEvent sim = simulate_event(model, clip, attempt, ik_params,
                                          weights, limits, warm);
      if (sim.feasible) {
        outcome.status = k == 0 ? EventOutcome::Status::kAccepted
                                : EventOutcome::Status::kAcceptedAfterScaling;
        outcome.scalings = k;
        outcome.final_scale = scale;
        outcome.final_peak_force = peak;
        for (auto& frame : sim.frames) {
          frame.interaction->event_id = static_cast<int>(e);
          frame.interaction->event_peak_force = peak;
          const int f = static_cast<int>(std::lround(frame.time / clip.dt));
          ds.frames[f] = std::move(frame);
        }
        break;
      }
      std::string why = "frame " + std::to_string(sim.failure_frame) + ":";
      for (const auto& v : sim.violations) why += " " + v.message();
      outcome.attempt_failures.push_back(std::move(why));
      scale *= limits.rejection_scale;
      ++k;
    }
    ds.outcomes.push_back(std::move(outcome));
  }
  return ds;
}

}  // namespace cmaug
