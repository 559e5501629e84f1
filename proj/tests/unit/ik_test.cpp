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

#include <algorithm>
#include <set>

#include "doctest.h"
#include "support/fixtures.hpp"

namespace cmaug {
namespace {

using testing::make_humanoid;
using testing::make_planar2;
using testing::make_standing_clip;

TEST_CASE("spring law: 10 N at 100 N/m displaces the target by 0.10 m") {
  const KinematicModel model = make_humanoid();
  const MotionClip clip = make_standing_clip(model, 0.1, 0.02);
  const int hand = model.link_index("r_hand");
  Wrench w;
  w.force = Vec3(10, 0, 0);
  const auto targets =
      compliant_targets(model, clip, 0, hand, w, {100.0, 1.0});
  const Vec3 p_ref = forward_kinematics(model, clip.frames[0])[hand].translation;
  CHECK((targets.p_des - p_ref - Vec3(0.10, 0, 0)).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("zero wrench leaves every target at the reference") {
  const KinematicModel model = make_humanoid();
  const MotionClip clip = make_standing_clip(model, 0.1, 0.02);
  const int hand = model.link_index("l_hand");
  const auto targets =
      compliant_targets(model, clip, 0, hand, Wrench{}, {200.0, 2.0});
  const auto poses = forward_kinematics(model, clip.frames[0]);
  CHECK((targets.p_des - poses[hand].translation).norm() == 0.0);
  CHECK((targets.r_des.matrix() - poses[hand].rotation.matrix()).norm() == 0.0);
  const Vec3 com = center_of_mass(model, poses);
  CHECK((targets.com_target_xy - Eigen::Vector2d(com.x(), com.y())).norm() ==
        0.0);
}

TEST_CASE("CoM target shift follows the moment formula at M = 35 kg") {
  // Single 35 kg body with a hand; a pure torque (0, 7, 0) N.m makes the
  // external moment about the CoP exactly that torque.
  std::vector<Link> links;
  Link body;
  body.name = "body";
  body.mass = 35.0;
  links.push_back(body);
  Link hand;
  hand.name = "hand";
  hand.mass = 0.0;
  links.push_back(hand);
  std::vector<Joint> joints;
  Joint fix;
  fix.name = "hand_fix";
  fix.type = JointType::kFixed;
  fix.parent_link = 0;
  fix.child_link = 1;
  fix.origin.translation = Vec3(0.3, 0, 0.2);
  joints.push_back(fix);
  const KinematicModel model =
      KinematicModel::build("block", links, joints, "body", {"hand"}, {}, {});

  MotionClip clip;
  clip.dt = 0.02;
  Configuration q;
  q.joints.resize(0);
  clip.frames = {q, q};
  clip.contacts = {{}, {}};

  Wrench w;
  w.torque = Vec3(0, 7, 0);
  const auto targets =
      compliant_targets(model, clip, 0, model.link_index("hand"), w,
                        {100.0, 1.0});
  // Direct evaluation of the shift (1 / M g) * [-m_y, m_x].
  const double expected_x = -7.0 / (35.0 * kGravity);
  CHECK(targets.com_target_xy(0) ==
        doctest::Approx(expected_x).epsilon(1e-12));
  CHECK(targets.com_target_xy(0) == doctest::Approx(-0.02039).epsilon(2e-4));
  CHECK(targets.com_target_xy(1) == doctest::Approx(0.0));
}

TEST_CASE("task set carries the exact weight multiset in double support") {
  const KinematicModel model = make_humanoid();
  const MotionClip clip = make_standing_clip(model, 0.1, 0.02);
  const int hand = model.link_index("r_hand");
  const auto targets =
      compliant_targets(model, clip, 0, hand, Wrench{}, {100.0, 1.0});
  const auto tasks = build_task_set(model, clip, 0, hand, targets);

  REQUIRE(tasks.size() == 10);  // 1 hand + 2 feet + 1 com + 5 keypoints + 1
  std::multiset<double> weights;
  for (const auto& t : tasks) weights.insert(t.weight);
  const std::multiset<double> expected{5.0,  2.5,  2.5,    0.1,  0.01,
                                       0.01, 0.01, 0.01, 0.01, 1e-4};
  CHECK(weights == expected);
}

TEST_CASE("single support keeps exactly one foot task") {
  const KinematicModel model = make_humanoid();
  MotionClip clip = make_standing_clip(model, 0.1, 0.02);
  for (auto& row : clip.contacts) row = {1, 0};  // left stance only
  const int hand = model.link_index("r_hand");
  const auto targets =
      compliant_targets(model, clip, 0, hand, Wrench{}, {100.0, 1.0});
  const auto tasks = build_task_set(model, clip, 0, hand, targets);
  int feet = 0;
  for (const auto& t : tasks) {
    if (t.label.rfind("foot:", 0) == 0) ++feet;
  }
  CHECK(feet == 1);
  CHECK(tasks.size() == 9);
}

TEST_CASE("weights are frame independent") {
  const KinematicModel model = make_humanoid();
  const MotionClip clip = make_standing_clip(model, 0.5, 0.02);
  const int hand = model.link_index("l_hand");
  std::vector<double> first;
  for (int f : {0, 10, 20}) {
    const auto targets =
        compliant_targets(model, clip, f, hand, Wrench{}, {100.0, 1.0});
    const auto tasks = build_task_set(model, clip, f, hand, targets);
    std::vector<double> weights;
    for (const auto& t : tasks) weights.push_back(t.weight);
    if (first.empty()) {
      first = weights;
    } else {
      CHECK(weights == first);
    }
  }
}

TEST_CASE("already-satisfied tasks converge immediately at the fixed point") {
  const KinematicModel model = make_planar2();
  Configuration q;
  q.joints.resize(2);
  q.joints << 0.4, 0.6;
  const auto poses = forward_kinematics(model, q);

  IkTask task;
  task.kind = IkTask::Kind::kLinkPose;
  task.weight = 5.0;
  task.link = model.link_index("end");
  task.target_pose = poses[task.link];
  task.label = "hold";

  IkParams params;
  params.lock_base = true;
  const IkSolution sol = solve_ik(model, q, {task}, params);
  CHECK(sol.converged);
  CHECK(sol.iterations <= 1);
  CHECK((sol.q.joints - q.joints).cwiseAbs().maxCoeff() < 1e-12);
}

/// Dense grid search over (q1, q2), the independent oracle for the planar
/// solve. Forward kinematics inlined analytically so the oracle shares no
/// code with the implementation.
struct GridBest {
  double q1 = 0.0, q2 = 0.0, cost = 1e300;
};

GridBest grid_search(const Vec3& target, double w_pos, double w_post,
                     double q1_ref, double q2_ref, double step) {
  GridBest best;
  for (double q1 = -2.6; q1 <= 2.6; q1 += step) {
    const double x1 = std::cos(q1), y1 = std::sin(q1);
    for (double q2 = -2.6; q2 <= 2.6; q2 += step) {
      const double x = x1 + std::cos(q1 + q2);
      const double y = y1 + std::sin(q1 + q2);
      const double dx = x - target.x(), dy = y - target.y();
      const double d1 = q1 - q1_ref, d2 = q2 - q2_ref;
      const double cost =
          w_pos * (dx * dx + dy * dy) + w_post * (d1 * d1 + d2 * d2);
      if (cost < best.cost) {
        best = {q1, q2, cost};
      }
    }
  }
  return best;
}

TEST_CASE("planar solve matches the dense grid-search oracle") {
  const KinematicModel model = make_planar2();
  Configuration q_init;
  q_init.joints.resize(2);
  q_init.joints << 0.3, 0.4;

  const Vec3 target(1.3, 0.7, 0.0);
  IkTask reach;
  reach.kind = IkTask::Kind::kLinkPose;
  reach.weight = 5.0;
  reach.link = model.link_index("end");
  reach.target_pose.translation = target;
  reach.label = "reach";

  IkTask posture;
  posture.kind = IkTask::Kind::kJointPosture;
  posture.weight = 1e-4;
  posture.target_q = q_init;
  posture.label = "posture";

  IkParams params;
  params.lock_base = true;
  params.max_iterations = 300;
  params.step_tolerance = 1e-9;

  // The grid oracle scores position + posture only, so re-target the pose
  // task's rotation at the reached orientation until its rows vanish.
  IkSolution sol;
  for (int pass = 0; pass < 3; ++pass) {
    sol = solve_ik(model, q_init, {reach, posture}, params);
    reach.target_pose.rotation =
        forward_kinematics(model, sol.q)[reach.link].rotation;
  }

  CHECK(sol.converged);
  const Vec3 reached = forward_kinematics(model, sol.q)[reach.link].translation;
  CHECK((reached - target).norm() < 1e-6);

  const GridBest best = grid_search(target, 5.0, 1e-4, 0.3, 0.4, 0.001);
  CHECK(std::abs(sol.q.joints[0] - best.q1) <= 2 * 0.001);
  CHECK(std::abs(sol.q.joints[1] - best.q2) <= 2 * 0.001);
}

TEST_CASE("conflicting position tasks settle at the weighted mean") {
  const KinematicModel model = make_planar2();
  Configuration q_init;
  q_init.joints.resize(2);
  q_init.joints << 0.3, 0.5;
  const int end = model.link_index("end");

  const Vec3 p1(1.2, 0.8, 0.0);
  const Vec3 p2 = p1 + Vec3(0.1, 0, 0);
  auto pose_task = [&](const Vec3& p, double w, const char* label) {
    IkTask t;
    t.kind = IkTask::Kind::kLinkPose;
    t.weight = w;
    t.link = end;
    t.target_pose.translation = p;
    t.label = label;
    return t;
  };
  IkTask strong = pose_task(p1, 5.0, "strong");
  IkTask weak = pose_task(p2, 0.01, "weak");

  IkParams params;
  params.lock_base = true;
  params.max_iterations = 300;
  params.step_tolerance = 1e-9;

  // As above, neutralize orientation rows by targeting the reached rotation.
  IkSolution sol;
  for (int pass = 0; pass < 3; ++pass) {
    sol = solve_ik(model, q_init, {strong, weak}, params);
    const Rotation reached = forward_kinematics(model, sol.q)[end].rotation;
    strong.target_pose.rotation = reached;
    weak.target_pose.rotation = reached;
  }

  // Weighted least-squares point of the linearized problem (shared frame
  // Jacobian, both targets reachable): the weighted mean of the targets.
  const Vec3 expected = (5.0 * p1 + 0.01 * p2) / 5.01;
  const Vec3 reached = forward_kinematics(model, sol.q)[end].translation;
  CHECK((reached - expected).norm() < 0.0005);
}

TEST_CASE("zero-wrench task set returns the reference configuration") {
  const KinematicModel model = make_humanoid();
  const MotionClip clip = make_standing_clip(model, 0.1, 0.02);
  const int hand = model.link_index("r_hand");
  const auto targets =
      compliant_targets(model, clip, 2, hand, Wrench{}, {300.0, 3.0});
  const auto tasks = build_task_set(model, clip, 2, hand, targets);
  const IkSolution sol = solve_ik(model, clip.frames[2], tasks, IkParams{});
  CHECK(sol.converged);
  CHECK((sol.q.joints - clip.frames[2].joints).lpNorm<Eigen::Infinity>() <
        1e-6);
}

TEST_CASE("accepted-iterate cost sequence is non-increasing") {
  const KinematicModel model = make_humanoid();
  const MotionClip clip = make_standing_clip(model, 0.1, 0.02);
  const int hand = model.link_index("r_hand");
  Wrench w;
  w.force = Vec3(30, -20, 10);
  w.torque = Vec3(1.0, 0.5, -0.5);
  const auto targets = compliant_targets(model, clip, 0, hand, w, {80.0, 0.5});
  const auto tasks = build_task_set(model, clip, 0, hand, targets);
  const IkSolution sol = solve_ik(model, clip.frames[0], tasks, IkParams{});
  REQUIRE(sol.cost_trace.size() >= 1);
  for (size_t i = 1; i < sol.cost_trace.size(); ++i) {
    CHECK(sol.cost_trace[i] <= sol.cost_trace[i - 1] + 1e-12);
  }
}

TEST_CASE("solutions respect joint limits exactly") {
  const KinematicModel model = make_planar2();
  Configuration q_init;
  q_init.joints.resize(2);
  q_init.joints << 0.0, 0.0;
  IkTask reach;
  reach.kind = IkTask::Kind::kLinkPose;
  reach.weight = 5.0;
  reach.link = model.link_index("end");
  reach.target_pose.translation = Vec3(-2.5, -0.5, 0.0);  // behind the limits
  reach.label = "reach";
  IkParams params;
  params.lock_base = true;
  const IkSolution sol = solve_ik(model, q_init, {reach}, params);
  for (int d = 0; d < 2; ++d) {
    CHECK(sol.q.joints[d] >= -2.6);
    CHECK(sol.q.joints[d] <= 2.6);
  }
}

TEST_CASE("q_init outside the limits is rejected") {
  const KinematicModel model = make_planar2();
  Configuration q;
  q.joints.resize(2);
  q.joints << 3.0, 0.0;
  CHECK_THROWS_AS(solve_ik(model, q, {}, IkParams{}), Error);
}

TEST_CASE("spring-law consistency at convergence") {
  const KinematicModel model = make_humanoid();
  const MotionClip clip = make_standing_clip(model, 0.1, 0.02);
  const int hand = model.link_index("r_hand");
  Wrench w;
  w.force = Vec3(0, -25, 0);
  const StiffnessCommand cmd{500.0, 5.0};
  const auto targets = compliant_targets(model, clip, 0, hand, w, cmd);
  const auto tasks = build_task_set(model, clip, 0, hand, targets);
  const IkSolution sol = solve_ik(model, clip.frames[0], tasks, IkParams{});

  const Vec3 p_aug = forward_kinematics(model, sol.q)[hand].translation;
  const Vec3 p_ref =
      forward_kinematics(model, clip.frames[0])[hand].translation;
  const double eps = (p_aug - targets.p_des).norm();
  // (p_aug - p_ref) - F/k equals p_aug - p_des by construction.
  CHECK(std::abs(((p_aug - p_ref) - w.force / cmd.k_t).norm() - eps) < 1e-12);
  CHECK(eps < 0.01);
}

TEST_CASE("invalid stiffness or params are invalid-argument errors") {
  CHECK_THROWS_AS(StiffnessCommand{-1.0, 1.0}.validate(), Error);
  IkParams bad;
  bad.step_tolerance = 0.5;
  bad.step_cap = 0.1;
  CHECK_THROWS_AS(bad.validate(), Error);
}

}  // namespace
}  // namespace cmaug
