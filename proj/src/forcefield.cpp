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

#include "cmaug/forcefield.hpp"

namespace cmaug {

Wrench forcefield_wrench(const RigidTransform& link,
                         const RigidTransform& setpoint,
                         const EnvironmentStiffness& k_env) {
  k_env.validate();
  Wrench w;
  w.force = k_env.linear * (setpoint.translation - link.translation);
  const Vec3 offset =
      rot_log(link.rotation.transposed() * setpoint.rotation);  // link frame
  w.torque = k_env.angular * (link.rotation * offset);
  return w;
}

SeriesSpringResult series_spring_equilibrium(double penetration, double k_cmd,
                                             double k_env) {
  if (penetration < 0.0 || !(k_cmd > 0.0) || !(k_env > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "series spring: need penetration >= 0 and positive stiffness");
  }
  SeriesSpringResult r;
  r.force = penetration * k_cmd * k_env / (k_cmd + k_env);
  r.robot_displacement = r.force / k_cmd;
  r.env_displacement = r.force / k_env;
  return r;
}

}  // namespace cmaug
