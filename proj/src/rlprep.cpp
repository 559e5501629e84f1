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

#include "cmaug/rlprep.hpp"

#include <cmath>

#include "json.hpp"

namespace cmaug {

int ObservationLayout::total_width() const {
  int total = 0;
  for (const auto& b : blocks) total += b.width * b.depth;
  return total;
}

std::string ObservationLayout::to_json() const {
  nlohmann::ordered_json j;
  j["blocks"] = nlohmann::ordered_json::array();
  for (const auto& b : blocks) {
    j["blocks"].push_back(
        {{"name", b.name}, {"width", b.width}, {"depth", b.depth}});
  }
  j["total_width"] = total_width();
  return j.dump(2);
}

ObservationLayout observation_layout(const KinematicModel& model,
                                     int contact_feet,
                                     const ObsParams& params) {
  const int n = model.joint_count();
  const int h = params.history_depth;
  ObservationLayout layout;
  layout.blocks = {
      {"joint_pos_rel_default", n, h},
      {"joint_vel", n, h},
      {"base_ang_vel", 3, h},
      {"projected_gravity", 3, h},
      // ref joints + root height + projected gravity + base lin/ang vel +
      // contact flags, for current + past history + future horizon points
      {"reference_motion", n + 1 + 3 + 3 + 3 + contact_feet,
       1 + h + params.future_points},
      {"log_stiffness_command", 2, h},
      {"action_history", n, h},
  };
  return layout;
}

namespace {

Vec3 projected_gravity_of(const Rotation& base_rotation) {
  return base_rotation.transposed() * Vec3(0, 0, -1);
}

Vec3 clip_base_lin_vel(const MotionClip& clip, int frame) {
  const int last = clip.frame_count() - 1;
  auto pos = [&](int f) { return clip.frames[f].base.translation; };
  if (frame == 0) return (pos(1) - pos(0)) / clip.dt;
  if (frame == last) return (pos(last) - pos(last - 1)) / clip.dt;
  return (pos(frame + 1) - pos(frame - 1)) / (2.0 * clip.dt);
}

Vec3 clip_base_ang_vel(const MotionClip& clip, int frame) {
  const int last = clip.frame_count() - 1;
  auto delta = [&](int f0, int f1) {
    return rot_log(clip.frames[f1].base.rotation *
                   clip.frames[f0].base.rotation.transposed()) /
           (clip.dt * (f1 - f0));
  };
  if (frame == 0) return delta(0, 1);
  if (frame == last) return delta(last - 1, last);
  return delta(frame - 1, frame + 1);
}

}  // namespace

Eigen::VectorXd assemble_observation(
    const KinematicModel& model, const MotionClip& clip, int frame,
    const std::vector<ProprioSample>& proprio_history,
    const std::vector<StiffnessCommand>& cmd_history,
    const std::vector<Eigen::VectorXd>& action_history,
    const ObsParams& params, ObservationLayout* layout_out) {
  if (frame < 0 || frame >= clip.frame_count()) {
    throw Error(ErrorCode::kInvalidArgument, "frame index out of clip range");
  }
  if (proprio_history.empty() || cmd_history.empty() ||
      action_history.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "histories need depth >= 1 (shallower ones are padded)");
  }
  const int n = model.joint_count();
  const int nfeet = static_cast<int>(clip.foot_links.size());
  const int h = params.history_depth;
  const ObservationLayout layout = observation_layout(model, nfeet, params);
  if (layout_out != nullptr) *layout_out = layout;

  Eigen::VectorXd defaults = params.default_joint_pos;
  if (defaults.size() == 0) defaults = Eigen::VectorXd::Zero(n);

  Eigen::VectorXd obs(layout.total_width());
  int at = 0;
  auto put = [&](const auto& v) {
    obs.segment(at, v.size()) = v;
    at += static_cast<int>(v.size());
  };

  // History accessor: index 0 = oldest of the window; shallow histories
  // repeat their oldest entry.
  auto hist = [&](const auto& v, int slot) -> const auto& {
    const int have = static_cast<int>(v.size());
    const int idx = std::max(0, have - h + slot);
    return v[std::min(idx, have - 1)];
  };

  for (int s = 0; s < h; ++s)
    put(Eigen::VectorXd(hist(proprio_history, s).joint_pos - defaults));
  for (int s = 0; s < h; ++s) put(hist(proprio_history, s).joint_vel);
  for (int s = 0; s < h; ++s) put(hist(proprio_history, s).base_ang_vel);
  for (int s = 0; s < h; ++s) put(hist(proprio_history, s).projected_gravity);

  // Reference block: current frame, h past frames, then future_points
  // sampled evenly over (0, future_horizon], all clamped to the clip.
  std::vector<int> ref_frames;
  ref_frames.push_back(frame);
  for (int s = 1; s <= h; ++s) ref_frames.push_back(std::max(0, frame - s));
  for (int k = 1; k <= params.future_points; ++k) {
    const double t = clip.frame_time(frame) +
                     params.future_horizon * k / params.future_points;
    ref_frames.push_back(
        std::min(clip.frame_count() - 1,
                 static_cast<int>(std::lround(t / clip.dt))));
  }
  for (int rf : ref_frames) {
    const Configuration& c = clip.frames[rf];
    put(c.joints);
    obs(at++) = c.base.translation.z();
    put(projected_gravity_of(c.base.rotation));
    put(clip_base_lin_vel(clip, rf));
    put(clip_base_ang_vel(clip, rf));
    for (int f = 0; f < nfeet; ++f)
      obs(at++) = clip.foot_in_contact(rf, f) ? 1.0 : 0.0;
  }

  for (int s = 0; s < h; ++s) {
    const StiffnessCommand& cmd = hist(cmd_history, s);
    cmd.validate();
    obs(at++) = std::log(cmd.k_t);
    obs(at++) = std::log(cmd.k_r);
  }
  for (int s = 0; s < h; ++s) put(hist(action_history, s));

  if (at != layout.total_width()) {
    throw Error(ErrorCode::kSolverDiverged,
                "observation assembly width mismatch (internal)");
  }
  return obs;
}

double RewardBreakdown::term(const std::string& name) const {
  for (const auto& [n, v] : terms) {
    if (n == name) return v;
  }
  return 0.0;
}

namespace {

double kernel(double err_sq, double sigma) {
  return std::exp(-err_sq / (sigma * sigma));
}

double log_err_norm(const Rotation& target, const Rotation& actual) {
  try {
    return rot_log(target * actual.transposed()).norm();
  } catch (const Error&) {
    return M_PI;
  }
}

}  // namespace

RewardBreakdown compute_rewards(const KinematicModel& model,
                                const Configuration& q,
                                const Configuration& q_prev,
                                const Eigen::VectorXd& action,
                                const Eigen::VectorXd& action_prev,
                                const AugmentedFrame& frame,
                                const AugmentedFrame* prev_frame,
                                const Wrench& applied,
                                const RewardParams& params) {
  const int n = model.joint_count();
  if (q.joints.size() != n || q_prev.joints.size() != n ||
      action.size() != n || action_prev.size() != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "reward inputs do not match the model's joint count");
  }
  RewardBreakdown out;
  auto add = [&](const std::string& name, double value) {
    out.terms.emplace_back(name, value);
    out.total += value;
  };

  const auto poses = forward_kinematics(model, q);
  const auto aug_poses = forward_kinematics(model, frame.q_aug);

  // Compliance terms exist when the frame carries an interaction; the
  // desired wrench is zero otherwise and only the applied-wrench terms
  // remain meaningful.
  Wrench desired;
  if (frame.interaction.has_value()) {
    desired = frame.interaction->wrench;
    const int hand = frame.interaction->link >= 0
                         ? frame.interaction->link
                         : model.link_index(frame.interaction->link_name);
    const auto ref_poses = forward_kinematics(model, frame.q_ref);
    const Vec3 p_des =
        ref_poses[hand].translation + desired.force / frame.interaction->cmd.k_t;
    const Rotation r_des =
        ref_poses[hand].rotation *
        rot_exp(desired.torque / frame.interaction->cmd.k_r);
    const double pos_err = (poses[hand].translation - p_des).squaredNorm();
    add("force_link_pos",
        params.w_force_link_pos * kernel(pos_err, params.sigma_keypoint));
    const double rot_err = log_err_norm(r_des, poses[hand].rotation);
    add("force_link_rot",
        params.w_force_link_rot *
            kernel(rot_err * rot_err, params.sigma_orientation));
  }
  add("applied_force",
      params.w_applied_force *
          kernel((applied.force - desired.force).squaredNorm(),
                 params.sigma_force));
  add("applied_torque",
      params.w_applied_torque *
          kernel((applied.torque - desired.torque).squaredNorm(),
                 params.sigma_torque));

  // Motion tracking against the augmented reference.
  double kp_pos = 0.0, kp_rot = 0.0;
  if (!model.keypoint_links().empty()) {
    for (int kp : model.keypoint_links()) {
      kp_pos +=
          (poses[kp].translation - aug_poses[kp].translation).squaredNorm();
      const double r = log_err_norm(aug_poses[kp].rotation, poses[kp].rotation);
      kp_rot += r * r;
    }
    kp_pos /= static_cast<double>(model.keypoint_links().size());
    kp_rot /= static_cast<double>(model.keypoint_links().size());
  }
  add("keypoint_pos",
      params.w_keypoint_pos * kernel(kp_pos, params.sigma_keypoint));
  add("keypoint_rot",
      params.w_keypoint_rot * kernel(kp_rot, params.sigma_orientation));

  const double base_rot_err =
      log_err_norm(frame.q_aug.base.rotation, q.base.rotation);
  add("base_orientation",
      params.w_base_orientation *
          kernel(base_rot_err * base_rot_err, params.sigma_orientation));

  const Vec3 lin_vel =
      (q.base.translation - q_prev.base.translation) / params.dt;
  const Vec3 lin_target =
      prev_frame != nullptr
          ? Vec3((frame.q_aug.base.translation -
                  prev_frame->q_aug.base.translation) /
                 params.dt)
          : Vec3::Zero();
  add("base_lin_vel",
      params.w_base_lin_vel *
          kernel((lin_vel - lin_target).squaredNorm(), params.sigma_lin_vel));

  Vec3 ang_vel = Vec3::Zero(), ang_target = Vec3::Zero();
  try {
    ang_vel = rot_log(q.base.rotation * q_prev.base.rotation.transposed()) /
              params.dt;
    if (prev_frame != nullptr) {
      ang_target = rot_log(frame.q_aug.base.rotation *
                           prev_frame->q_aug.base.rotation.transposed()) /
                   params.dt;
    }
  } catch (const Error&) {
  }
  add("base_ang_vel",
      params.w_base_ang_vel *
          kernel((ang_vel - ang_target).squaredNorm(), params.sigma_ang_vel));

  add("alive", params.w_alive);

  double limit_sq = 0.0;
  for (int d = 0; d < n; ++d) {
    const Joint& j = model.joints()[model.moving_joints()[d]];
    const double below = j.lower - q.joints[d];
    const double above = q.joints[d] - j.upper;
    const double excess = std::max({0.0, below, above});
    limit_sq += excess * excess;
  }
  add("joint_limits", params.w_joint_limits * limit_sq);

  const auto prev_poses = forward_kinematics(model, q_prev);
  double slide_sq = 0.0, stance_motion_sq = 0.0;
  // Contact columns follow the clip's foot order, which load_clip checks
  // against the model's foot links.
  const size_t nfeet =
      std::min(frame.contacts.size(), model.foot_links().size());
  for (size_t f = 0; f < nfeet; ++f) {
    if (frame.contacts[f] == 0) continue;
    const int foot = model.foot_links()[f];
    const Vec3 v = (poses[foot].translation - prev_poses[foot].translation) /
                   params.dt;
    slide_sq += v.head<2>().squaredNorm();
    for (int d : model.chain_dofs(foot)) {
      const double qd = (q.joints[d] - q_prev.joints[d]) / params.dt;
      stance_motion_sq += qd * qd;
    }
  }
  add("foot_sliding", params.w_foot_sliding * slide_sq);
  add("stance_joint_motion", params.w_stance_joint_motion * stance_motion_sq);

  add("joint_vel",
      params.w_joint_vel *
          ((q.joints - q_prev.joints) / params.dt).squaredNorm());
  add("action_rate",
      params.w_action_rate * (action - action_prev).squaredNorm());

  return out;
}

EpisodeAnchors episode_anchors(const Dataset& ds, double keypoint_threshold) {
  EpisodeAnchors anchors;
  anchors.keypoint_threshold = keypoint_threshold;
  anchors.rsi_frames.reserve(ds.frames.size());
  for (int f = 0; f < static_cast<int>(ds.frames.size()); ++f) {
    anchors.rsi_frames.push_back(f);
  }
  return anchors;
}

bool should_terminate(const KinematicModel& model, const Configuration& q,
                      const AugmentedFrame& frame, double keypoint_threshold) {
  const auto poses = forward_kinematics(model, q);
  const auto aug_poses = forward_kinematics(model, frame.q_aug);
  for (int kp : model.keypoint_links()) {
    if ((poses[kp].translation - aug_poses[kp].translation).norm() >
        keypoint_threshold) {
      return true;
    }
  }
  return false;
}

}  // namespace cmaug
