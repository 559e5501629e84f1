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

// The virtual-spring interaction law: a force field pulling a link toward a
// setpoint with environment stiffness K_env, and the quasi-static
// series-spring equilibrium of the commanded robot spring against it.
// K_env -> 0 approaches a constant-force source, K_env -> inf an immovable
// object.

#ifndef CMAUG_FORCEFIELD_HPP_
#define CMAUG_FORCEFIELD_HPP_

#include "cmaug/spatial.hpp"

namespace cmaug {

struct EnvironmentStiffness {
  double linear = 0.0;   // N/m
  double angular = 0.0;  // N.m/rad

  void validate() const {
    if (!(linear > 0.0) || !(angular > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "environment stiffness must be positive");
    }
  }
};

/// Distance-proportional wrench pulling `link` toward `setpoint`:
///   F   = k_lin * (p_set - p_link)
///   tau = k_ang * R_link * log(R_link^T * R_set)
Wrench forcefield_wrench(const RigidTransform& link,
                         const RigidTransform& setpoint,
                         const EnvironmentStiffness& k_env);

struct SeriesSpringResult {
  double force = 0.0;              // N
  double robot_displacement = 0.0; // m, F / k_cmd
  double env_displacement = 0.0;   // m, F / k_env
};

/// Equilibrium of the commanded robot spring in series with the environment
/// spring across a given penetration of the reference path:
///   F = penetration * k_cmd * k_env / (k_cmd + k_env)
/// The displacements always partition the penetration exactly.
SeriesSpringResult series_spring_equilibrium(double penetration, double k_cmd,
                                             double k_env);

}  // namespace cmaug

#endif  // CMAUG_FORCEFIELD_HPP_
