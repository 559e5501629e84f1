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

#include "cmaug/ik.hpp"

#include <Eigen/Cholesky>
#include <cmath>

namespace cmaug {

void StiffnessCommand::validate() const {
  if (!(k_t > 0.0) || !(k_r > 0.0) || !std::isfinite(k_t) ||
      !std::isfinite(k_r)) {
    throw Error(ErrorCode::kInvalidArgument,
                "stiffness command must be positive and finite");
  }
}

void IkParams::validate() const {
  if (damping < 0.0 || max_iterations <= 0 || step_tolerance <= 0.0 ||
      step_cap <= 0.0 || step_tolerance >= step_cap) {
    throw Error(ErrorCode::kInvalidArgument,
                "ik params: need damping >= 0, positive iteration budget, and "
                "0 < tolerance < step cap");
  }
}

CompliantTargets compliant_targets(const KinematicModel& model,
                                   const MotionClip& clip, int frame,
                                   int hand_link, const Wrench& wrench,
                                   const StiffnessCommand& cmd) {
  cmd.validate();
  if (!wrench.is_finite()) {
    throw Error(ErrorCode::kInvalidArgument, "wrench must be finite");
  }
  const auto poses = forward_kinematics(model, clip.frames[frame]);

  CompliantTargets t;
  t.p_des = poses[hand_link].translation + wrench.force / cmd.k_t;
  t.r_des = poses[hand_link].rotation * rot_exp(wrench.torque / cmd.k_r);

  // Reference CoP: midpoint of in-contact foot origins; with no stance feet
  // we fall back to the ground projection of the reference CoM.
  Vec3 com_ref = center_of_mass(model, poses);
  Vec3 cop = Vec3::Zero();
  int stance = 0;
  for (size_t f = 0; f < clip.foot_links.size(); ++f) {
    if (clip.foot_in_contact(frame, static_cast<int>(f))) {
      cop += poses[model.link_index(clip.foot_links[f])].translation;
      ++stance;
    }
  }
  if (stance > 0) {
    cop /= stance;
  } else {
    cop = Vec3(com_ref.x(), com_ref.y(), 0.0);
  }
  t.cop = cop;

  t.external_moment =
      (poses[hand_link].translation - cop).cross(wrench.force) + wrench.torque;
  const double mg = model.total_mass() * kGravity;
  t.com_target_xy =
      Eigen::Vector2d(com_ref.x() - t.external_moment.y() / mg,
                      com_ref.y() + t.external_moment.x() / mg);
  return t;
}

std::vector<IkTask> build_task_set(const KinematicModel& model,
                                   const MotionClip& clip, int frame,
                                   int hand_link,
                                   const CompliantTargets& targets,
                                   const TaskWeights& weights) {
  const Configuration& q_ref = clip.frames[frame];
  const auto poses = forward_kinematics(model, q_ref);
  std::vector<IkTask> tasks;

  IkTask hand;
  hand.kind = IkTask::Kind::kLinkPose;
  hand.weight = weights.interaction;
  hand.link = hand_link;
  hand.target_pose = {targets.r_des, targets.p_des};
  hand.label = "interaction:" + model.link_name(hand_link);
  tasks.push_back(std::move(hand));

  for (size_t f = 0; f < clip.foot_links.size(); ++f) {
    if (!clip.foot_in_contact(frame, static_cast<int>(f))) continue;
    IkTask foot;
    foot.kind = IkTask::Kind::kLinkPose;
    foot.weight = weights.foot;
    foot.link = model.link_index(clip.foot_links[f]);
    foot.target_pose = poses[foot.link];
    foot.label = "foot:" + clip.foot_links[f];
    tasks.push_back(std::move(foot));
  }

  IkTask com;
  com.kind = IkTask::Kind::kComXy;
  com.weight = weights.com;
  com.target_xy = targets.com_target_xy;
  com.label = "com";
  tasks.push_back(std::move(com));

  for (int kp : model.keypoint_links()) {
    IkTask key;
    key.kind = IkTask::Kind::kLinkPose;
    key.weight = weights.keypoint;
    key.link = kp;
    key.target_pose = poses[kp];
    key.label = "keypoint:" + model.link_name(kp);
    tasks.push_back(std::move(key));
  }

  IkTask posture;
  posture.kind = IkTask::Kind::kJointPosture;
  posture.weight = weights.posture;
  posture.target_q = q_ref;
  posture.label = "posture";
  tasks.push_back(std::move(posture));

  return tasks;
}

namespace {

int task_rows(const IkTask& task, int dof) {
  switch (task.kind) {
    case IkTask::Kind::kLinkPose:
      return 6;
    case IkTask::Kind::kComXy:
      return 2;
    case IkTask::Kind::kJointPosture:
      return dof;
  }
  return 0;
}

/// Residual r such that a step with J*dq = r reduces the error; world-frame
/// orientation error log(R_des * R^T) has the same norm as the body-frame
/// log(R_des^T * R) being penalized.
void task_residual(const KinematicModel& model, const Configuration& q,
                   const std::vector<RigidTransform>& poses,
                   const IkTask& task, Eigen::Ref<Eigen::VectorXd> out) {
  switch (task.kind) {
    case IkTask::Kind::kLinkPose: {
      const RigidTransform& pose = poses[task.link];
      out.segment<3>(0) =
          rot_log(task.target_pose.rotation * pose.rotation.transposed());
      out.segment<3>(3) = task.target_pose.translation - pose.translation;
      break;
    }
    case IkTask::Kind::kComXy: {
      const Vec3 com = center_of_mass(model, poses);
      out(0) = task.target_xy(0) - com.x();
      out(1) = task.target_xy(1) - com.y();
      break;
    }
    case IkTask::Kind::kJointPosture: {
      out.segment<3>(0) = task.target_q.base.translation - q.base.translation;
      out.segment<3>(3) =
          rot_log(task.target_q.base.rotation * q.base.rotation.transposed());
      out.tail(q.joints.size()) = task.target_q.joints - q.joints;
      break;
    }
  }
}

void task_jacobian(const KinematicModel& model, const Configuration& q,
                   const std::vector<RigidTransform>& poses,
                   const IkTask& task, Eigen::Ref<Eigen::MatrixXd> out) {
  switch (task.kind) {
    case IkTask::Kind::kLinkPose:
      out = frame_jacobian(model, q, task.link, poses);
      break;
    case IkTask::Kind::kComXy:
      out = com_jacobian(model, q, poses).topRows(2);
      break;
    case IkTask::Kind::kJointPosture:
      out.setIdentity();
      break;
  }
}

Configuration apply_step(const KinematicModel& model, const Configuration& q,
                         const Eigen::VectorXd& dq) {
  Configuration next = q;
  next.base.translation += dq.segment<3>(0);
  const Vec3 dtheta = dq.segment<3>(3);
  if (dtheta.norm() > 0.0) {
    next.base.rotation = rot_exp(dtheta) * q.base.rotation;
  }
  next.joints += dq.tail(q.joints.size());
  for (int d = 0; d < model.joint_count(); ++d) {
    const Joint& j = model.joints()[model.moving_joints()[d]];
    next.joints[d] = std::clamp(next.joints[d], j.lower, j.upper);
  }
  return next;
}

}  // namespace

IkSolution solve_ik(const KinematicModel& model, const Configuration& q_init,
                    const std::vector<IkTask>& tasks, const IkParams& params) {
  params.validate();
  if (q_init.joints.size() != model.joint_count()) {
    throw Error(ErrorCode::kInvalidArgument,
                "q_init width does not match the model");
  }
  for (int d = 0; d < model.joint_count(); ++d) {
    const Joint& j = model.joints()[model.moving_joints()[d]];
    if (q_init.joints[d] < j.lower - 1e-9 || q_init.joints[d] > j.upper + 1e-9) {
      throw Error(ErrorCode::kInvalidArgument,
                  "q_init violates limits of joint '" + j.name + "'");
    }
  }
  for (const IkTask& t : tasks) {
    if (!(t.weight > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "task '" + t.label + "' must have positive weight");
    }
  }

  const int dof = model.dof_count();
  int rows = 0;
  for (const IkTask& t : tasks) rows += task_rows(t, dof);

  Eigen::MatrixXd jac(rows, dof);
  Eigen::VectorXd res(rows);

  auto evaluate = [&](const Configuration& q, bool with_jacobian,
                      std::vector<double>* norms) {
    const auto poses = forward_kinematics(model, q);
    double cost = 0.0;
    int row = 0;
    for (const IkTask& t : tasks) {
      const int nr = task_rows(t, dof);
      task_residual(model, q, poses, t, res.segment(row, nr));
      if (with_jacobian) {
        task_jacobian(model, q, poses, t, jac.middleRows(row, nr));
      }
      const double norm = res.segment(row, nr).norm();
      cost += t.weight * norm * norm;
      if (norms != nullptr) norms->push_back(norm);
      const double sw = std::sqrt(t.weight);
      res.segment(row, nr) *= sw;
      if (with_jacobian) jac.middleRows(row, nr) *= sw;
      row += nr;
    }
    return cost;
  };

  Configuration q = q_init;
  double cost = evaluate(q, false, nullptr);

  IkSolution sol;
  sol.converged = false;
  sol.cost_trace.push_back(cost);
  int iter = 0;
  while (iter < params.max_iterations) {
    ++iter;
    cost = evaluate(q, true, nullptr);
    if (!std::isfinite(cost)) {
      throw Error(ErrorCode::kSolverDiverged, "ik: non-finite cost");
    }

    Eigen::MatrixXd j = jac;
    if (params.lock_base) j.leftCols(6).setZero();
    Eigen::MatrixXd hess = j.transpose() * j;
    hess.diagonal().array() += params.damping;
    Eigen::VectorXd dq = hess.ldlt().solve(j.transpose() * res);
    if (params.lock_base) dq.head(6).setZero();
    if (!dq.allFinite()) {
      throw Error(ErrorCode::kSolverDiverged, "ik: non-finite step");
    }

    const double mag = dq.lpNorm<Eigen::Infinity>();
    if (mag > params.step_cap) dq *= params.step_cap / mag;

    // Keep the cost non-increasing: halve the step when it rises.
    bool accepted = false;
    double accepted_norm = 0.0;
    for (int halving = 0; halving <= 8; ++halving) {
      Configuration candidate = apply_step(model, q, dq);
      const double c = evaluate(candidate, false, nullptr);
      if (c <= cost) {
        q = candidate;
        cost = c;
        accepted = true;
        accepted_norm = dq.lpNorm<Eigen::Infinity>();
        sol.cost_trace.push_back(c);
        break;
      }
      dq *= 0.5;
    }
    if (!accepted) break;
    if (accepted_norm < params.step_tolerance) {
      sol.converged = true;
      break;
    }
  }

  sol.q = q;
  sol.iterations = iter;
  sol.cost = evaluate(q, false, &sol.task_residuals);
  for (const IkTask& t : tasks) sol.task_labels.push_back(t.label);
  return sol;
}

}  // namespace cmaug
