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

// Forward kinematics, world-frame Jacobians, and center of mass on the
// kinematic tree. Pure functions of immutable inputs.

#ifndef CMAUG_KINEMATICS_HPP_
#define CMAUG_KINEMATICS_HPP_

#include <Eigen/Core>
#include <vector>

#include "cmaug/model.hpp"

namespace cmaug {

/// World poses for every link, indexed by link index.
std::vector<RigidTransform> forward_kinematics(const KinematicModel& model,
                                               const Configuration& q);

/// 6 x (6 + joint_count) world-frame Jacobian of a link frame about its
/// origin. Rows 0-2 angular, rows 3-5 linear. Columns 0-2 are base
/// translation, 3-5 base rotation about the base origin, then joints in
/// DoF order.
Eigen::MatrixXd frame_jacobian(const KinematicModel& model,
                               const Configuration& q, int link_index);
Eigen::MatrixXd frame_jacobian(const KinematicModel& model,
                               const Configuration& q, int link_index,
                               const std::vector<RigidTransform>& poses);

Vec3 center_of_mass(const KinematicModel& model, const Configuration& q);
Vec3 center_of_mass(const KinematicModel& model,
                    const std::vector<RigidTransform>& poses);

/// 3 x (6 + joint_count) mass-weighted average of the per-link CoM point
/// Jacobians; same column convention as frame_jacobian.
Eigen::MatrixXd com_jacobian(const KinematicModel& model,
                             const Configuration& q);
Eigen::MatrixXd com_jacobian(const KinematicModel& model,
                             const Configuration& q,
                             const std::vector<RigidTransform>& poses);

}  // namespace cmaug

#endif  // CMAUG_KINEMATICS_HPP_
