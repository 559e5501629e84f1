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

// Downstream-ready RL episode machinery as pure functions: observation
// assembly against the ORIGINAL reference clip, reward-term evaluation
// against the augmented targets, and RSI/termination bookkeeping.

#ifndef CMAUG_RLPREP_HPP_
#define CMAUG_RLPREP_HPP_

#include <string>
#include <vector>

#include "cmaug/augment.hpp"

namespace cmaug {

struct ObsBlock {
  std::string name;
  int width = 0;  // per time sample
  int depth = 1;  // number of time samples
};

struct ObservationLayout {
  std::vector<ObsBlock> blocks;
  int total_width() const;
  std::string to_json() const;  // machine-readable schema for external binding
};

/// One proprioceptive snapshot as the policy would sense it.
struct ProprioSample {
  Eigen::VectorXd joint_pos;
  Eigen::VectorXd joint_vel;
  Vec3 base_ang_vel{Vec3::Zero()};
  Vec3 projected_gravity{0, 0, -1};
};

struct ObsParams {
  int history_depth = 3;
  int future_points = 20;
  double future_horizon = 1.0;  // s
  Eigen::VectorXd default_joint_pos;  // empty = zeros
};

ObservationLayout observation_layout(const KinematicModel& model,
                                     int contact_feet, const ObsParams& params);

/// Concatenates, in the layout's fixed block order: proprioception history,
/// the reference-motion block (current + past + future points drawn from the
/// original clip, never from augmented data), log-stiffness command history,
/// and action history. Histories shallower than the configured depth are
/// left-padded by repeating their oldest entry; history spans are ordered
/// oldest first.
Eigen::VectorXd assemble_observation(
    const KinematicModel& model, const MotionClip& clip, int frame,
    const std::vector<ProprioSample>& proprio_history,
    const std::vector<StiffnessCommand>& cmd_history,
    const std::vector<Eigen::VectorXd>& action_history,
    const ObsParams& params, ObservationLayout* layout = nullptr);

/// Kernel widths and weights of the reward terms. Weights follow the
/// training reward table; sigmas are artifact defaults.
struct RewardParams {
  double dt = 0.02;

  double w_force_link_pos = 3.0;
  double w_force_link_rot = 3.0;
  double w_applied_force = 2.0;
  double w_applied_torque = 2.0;
  double w_keypoint_pos = 2.0;
  double w_keypoint_rot = 2.0;
  double w_base_orientation = 0.5;
  double w_base_lin_vel = 0.5;
  double w_base_ang_vel = 0.5;
  double w_alive = 1.5;
  double w_joint_limits = -10.0;
  double w_foot_sliding = -0.005;
  double w_joint_vel = -2.8e-4;
  double w_action_rate = -0.01;
  double w_stance_joint_motion = -0.4;

  double sigma_keypoint = 0.25;     // m
  double sigma_orientation = 0.5;   // rad
  double sigma_force = 25.0;        // N
  double sigma_torque = 2.5;        // N.m
  double sigma_lin_vel = 0.5;       // m/s
  double sigma_ang_vel = 1.0;       // rad/s
};

struct RewardBreakdown {
  std::vector<std::pair<std::string, double>> terms;  // weighted values
  double total = 0.0;
  double term(const std::string& name) const;  // 0 when absent
};

/// Tracking/compliance terms are weight * exp(-|e|^2 / sigma^2) against
/// targets derived from the frame's q_aug and desired wrench; penalties are
/// weight * squared norms. `prev_frame` supplies finite-difference velocity
/// targets (zero targets when null).
RewardBreakdown compute_rewards(const KinematicModel& model,
                                const Configuration& q,
                                const Configuration& q_prev,
                                const Eigen::VectorXd& action,
                                const Eigen::VectorXd& action_prev,
                                const AugmentedFrame& frame,
                                const AugmentedFrame* prev_frame,
                                const Wrench& applied,
                                const RewardParams& params);

struct EpisodeAnchors {
  std::vector<int> rsi_frames;  // uniform-weight candidates, all frames
  double keypoint_threshold = 0.5;
};

EpisodeAnchors episode_anchors(const Dataset& ds,
                               double keypoint_threshold = 0.5);

/// True when the max keypoint deviation from the frame's q_aug exceeds the
/// threshold.
bool should_terminate(const KinematicModel& model, const Configuration& q,
                      const AugmentedFrame& frame, double keypoint_threshold);

}  // namespace cmaug

#endif  // CMAUG_RLPREP_HPP_
