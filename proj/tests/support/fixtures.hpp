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

// Shared test fixtures: a ~30-DoF humanoid, small planar arms, and clip
// builders. Everything is constructed programmatically so tests own their
// geometry.

#ifndef CMAUG_TESTS_SUPPORT_FIXTURES_HPP_
#define CMAUG_TESTS_SUPPORT_FIXTURES_HPP_

#include <string>

#include "cmaug/model.hpp"

namespace cmaug::testing {

/// Floating-base humanoid: 12 leg DoF, 2 waist, 10 arm (24 joints, 30 DoF
/// with the base), hands l_hand/r_hand, feet l_foot/r_foot, keypoints
/// torso + forearms + shins.
KinematicModel make_humanoid();

/// Nominal double-support posture for the humanoid, base height chosen so
/// the foot origins sit at z = 0.
Configuration humanoid_standing_pose(const KinematicModel& model);

/// Constant-posture clip in double support.
MotionClip make_standing_clip(const KinematicModel& model, double seconds,
                              double dt);

/// Clip that sweeps the right hand forward and back by pitching the right
/// shoulder; used for collision-event fixtures.
MotionClip make_arm_sweep_clip(const KinematicModel& model, double seconds,
                               double dt, double amplitude = 0.7);

/// Planar 2-link arm (unit links, revolute about z) with an "end" hand link.
KinematicModel make_planar2();

/// One revolute joint about z with the end link at (1, 0, 0).
KinematicModel make_one_link();

/// Two 1-DoF arms whose hands circle their shoulder joints at the same
/// radius; used for velocity-ratio collision sampling tests.
KinematicModel make_two_hand_rig();

/// Clip for the two-hand rig where the left joint advances `rate_ratio`
/// times faster than the right.
MotionClip make_spinning_clip(const KinematicModel& rig, int frames, double dt,
                              double right_rate, double rate_ratio);

/// Fresh temp directory under the system temp root.
std::string make_temp_dir(const std::string& tag);

}  // namespace cmaug::testing

#endif  // CMAUG_TESTS_SUPPORT_FIXTURES_HPP_
