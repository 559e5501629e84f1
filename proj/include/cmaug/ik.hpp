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

// Spring-law compliant targets and the weighted differential-IK solve that
// realizes them. The task set is the five-level soft hierarchy: compliant
// interaction on the forced hand, stance-foot placement, CoP-aware CoM,
// keypoint posture, and a joint-posture tether.

#ifndef CMAUG_IK_HPP_
#define CMAUG_IK_HPP_

#include <Eigen/Core>
#include <string>
#include <vector>

#include "cmaug/kinematics.hpp"
#include "cmaug/model.hpp"

namespace cmaug {

inline constexpr double kGravity = 9.81;  // m/s^2

/// Commanded robot stiffness (K^t, K^r). The training range is
/// [40, 1000] N/m x [0.1, 10] N.m/rad; values outside it are legal for
/// analysis but flagged.
struct StiffnessCommand {
  double k_t = 0.0;  // N/m
  double k_r = 0.0;  // N.m/rad

  bool in_training_range() const {
    return k_t >= 40.0 && k_t <= 1000.0 && k_r >= 0.1 && k_r <= 10.0;
  }
  void validate() const;
};

struct IkTask {
  enum class Kind { kLinkPose, kComXy, kJointPosture };

  Kind kind = Kind::kLinkPose;
  double weight = 1.0;
  std::string label;

  int link = -1;               // kLinkPose
  RigidTransform target_pose;  // kLinkPose
  Eigen::Vector2d target_xy{0, 0};  // kComXy
  Configuration target_q;      // kJointPosture
};

struct IkParams {
  double damping = 1e-4;        // lambda
  int max_iterations = 100;
  double step_tolerance = 1e-6; // rad, inf-norm of the accepted step
  double step_cap = 0.2;        // rad, inf-norm cap per iteration
  bool lock_base = false;       // solve over joint DoF only (fixtures)

  void validate() const;
};

struct IkSolution {
  Configuration q;
  std::vector<double> task_residuals;  // unweighted norms, task order
  std::vector<std::string> task_labels;
  int iterations = 0;
  bool converged = false;
  double cost = 0.0;  // weighted sum of squared residual norms at q
  std::vector<double> cost_trace;  // initial cost, then each accepted iterate
};

/// Per-level weights of the task hierarchy.
struct TaskWeights {
  double interaction = 5.0;
  double foot = 2.5;
  double com = 0.1;
  double keypoint = 0.01;
  double posture = 1e-4;
};

/// Spring-law targets for one clip frame under `wrench` applied to
/// `hand_link`:
///   p_des = p_ref + F / k_t
///   R_des = R_ref * exp([tau / k_r]_x)
///   com_target_xy = com_ref_xy + (1 / M g) * [-m_y, m_x]
/// where m is the total external moment about the reference CoP (midpoint
/// of in-contact feet, or the single stance foot).
struct CompliantTargets {
  Vec3 p_des{Vec3::Zero()};
  Rotation r_des;
  Eigen::Vector2d com_target_xy{0, 0};
  Vec3 cop{Vec3::Zero()};
  Vec3 external_moment{Vec3::Zero()};
};

CompliantTargets compliant_targets(const KinematicModel& model,
                                   const MotionClip& clip, int frame,
                                   int hand_link, const Wrench& wrench,
                                   const StiffnessCommand& cmd);

std::vector<IkTask> build_task_set(const KinematicModel& model,
                                   const MotionClip& clip, int frame,
                                   int hand_link,
                                   const CompliantTargets& targets,
                                   const TaskWeights& weights = {});

/// Iterative damped least squares over the stacked, sqrt(weight)-scaled
/// task errors and Jacobians. Steps are inf-norm capped, joints clamped to
/// limits, and the weighted cost is non-increasing across accepted
/// iterations (a step is halved up to 8 times when the cost rises).
IkSolution solve_ik(const KinematicModel& model, const Configuration& q_init,
                    const std::vector<IkTask>& tasks, const IkParams& params);

}  // namespace cmaug

#endif  // CMAUG_IK_HPP_
