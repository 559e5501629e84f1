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

#include "cmaug/kinematics.hpp"

namespace cmaug {

namespace {

RigidTransform joint_motion(const Joint& joint, double value) {
  RigidTransform t;
  switch (joint.type) {
    case JointType::kRevolute:
      t.rotation = rot_exp(joint.axis * value);
      break;
    case JointType::kPrismatic:
      t.translation = joint.axis * value;
      break;
    case JointType::kFixed:
      break;
  }
  return t;
}

/// Linear-velocity Jacobian of a world point rigidly attached to `link`,
/// written into the 3 x n block `out`.
void point_jacobian(const KinematicModel& model,
                    const std::vector<RigidTransform>& poses, int link,
                    const Vec3& point,
                    Eigen::Ref<Eigen::MatrixXd> out) {
  const Vec3 base_p = poses[model.base_link()].translation;
  out.setZero();
  out.block<3, 3>(0, 0).setIdentity();
  for (int i = 0; i < 3; ++i) {
    Vec3 e = Vec3::Zero();
    e[i] = 1.0;
    out.col(3 + i) = e.cross(point - base_p);
  }
  int cur = link;
  while (cur != model.base_link()) {
    const Joint& j = model.joints()[model.links()[cur].parent_joint];
    if (j.dof_index >= 0) {
      const RigidTransform joint_frame =
          compose(poses[j.parent_link], j.origin);
      const Vec3 axis_w = joint_frame.rotation * j.axis;
      if (j.type == JointType::kRevolute) {
        out.col(6 + j.dof_index) =
            axis_w.cross(point - joint_frame.translation);
      } else {
        out.col(6 + j.dof_index) = axis_w;
      }
    }
    cur = j.parent_link;
  }
}

}  // namespace

std::vector<RigidTransform> forward_kinematics(const KinematicModel& model,
                                               const Configuration& q) {
  if (q.joints.size() != model.joint_count()) {
    throw Error(ErrorCode::kInvalidArgument,
                "configuration width does not match the model");
  }
  std::vector<RigidTransform> poses(model.links().size());
  poses[model.base_link()] = q.base;
  for (int ji : model.traversal_order()) {
    const Joint& j = model.joints()[ji];
    const double value = j.dof_index >= 0 ? q.joints[j.dof_index] : 0.0;
    poses[j.child_link] =
        compose(compose(poses[j.parent_link], j.origin), joint_motion(j, value));
  }
  return poses;
}

Eigen::MatrixXd frame_jacobian(const KinematicModel& model,
                               const Configuration& q, int link_index,
                               const std::vector<RigidTransform>& poses) {
  if (link_index < 0 || link_index >= static_cast<int>(model.links().size())) {
    throw Error(ErrorCode::kInvalidArgument, "unknown link index");
  }
  const int n = model.dof_count();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(6, n);
  const Vec3 p = poses[link_index].translation;
  const Vec3 base_p = poses[model.base_link()].translation;

  // Base: translation moves the frame linearly; rotation is about the base
  // origin.
  jac.block<3, 3>(3, 0).setIdentity();
  for (int i = 0; i < 3; ++i) {
    Vec3 e = Vec3::Zero();
    e[i] = 1.0;
    jac.block<3, 1>(0, 3 + i) = e;
    jac.block<3, 1>(3, 3 + i) = e.cross(p - base_p);
  }

  int cur = link_index;
  while (cur != model.base_link()) {
    const Joint& j = model.joints()[model.links()[cur].parent_joint];
    if (j.dof_index >= 0) {
      const RigidTransform joint_frame = compose(poses[j.parent_link], j.origin);
      const Vec3 axis_w = joint_frame.rotation * j.axis;
      const int col = 6 + j.dof_index;
      if (j.type == JointType::kRevolute) {
        jac.block<3, 1>(0, col) = axis_w;
        jac.block<3, 1>(3, col) = axis_w.cross(p - joint_frame.translation);
      } else {
        jac.block<3, 1>(3, col) = axis_w;
      }
    }
    cur = j.parent_link;
  }
  return jac;
}

Eigen::MatrixXd frame_jacobian(const KinematicModel& model,
                               const Configuration& q, int link_index) {
  return frame_jacobian(model, q, link_index, forward_kinematics(model, q));
}

Vec3 center_of_mass(const KinematicModel& model,
                    const std::vector<RigidTransform>& poses) {
  Vec3 weighted = Vec3::Zero();
  for (size_t i = 0; i < model.links().size(); ++i) {
    const Link& l = model.links()[i];
    if (l.mass > 0.0) weighted += l.mass * poses[i].apply(l.com);
  }
  return weighted / model.total_mass();
}

Vec3 center_of_mass(const KinematicModel& model, const Configuration& q) {
  return center_of_mass(model, forward_kinematics(model, q));
}

Eigen::MatrixXd com_jacobian(const KinematicModel& model,
                             const Configuration& q,
                             const std::vector<RigidTransform>& poses) {
  const int n = model.dof_count();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(3, n);
  Eigen::MatrixXd jp(3, n);
  for (size_t i = 0; i < model.links().size(); ++i) {
    const Link& l = model.links()[i];
    if (l.mass <= 0.0) continue;
    point_jacobian(model, poses, static_cast<int>(i), poses[i].apply(l.com), jp);
    jac += (l.mass / model.total_mass()) * jp;
  }
  return jac;
}

Eigen::MatrixXd com_jacobian(const KinematicModel& model,
                             const Configuration& q) {
  return com_jacobian(model, q, forward_kinematics(model, q));
}

}  // namespace cmaug
