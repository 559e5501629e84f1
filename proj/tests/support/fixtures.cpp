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

#include "support/fixtures.hpp"

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <filesystem>

#include "cmaug/kinematics.hpp"

namespace cmaug::testing {

namespace {

Link link(const std::string& name, double mass, Vec3 com = Vec3::Zero()) {
  Link l;
  l.name = name;
  l.mass = mass;
  l.com = com;
  return l;
}

struct Builder {
  std::vector<Link> links;
  std::vector<Joint> joints;

  int link_id(const std::string& name) const {
    for (int i = 0; i < static_cast<int>(links.size()); ++i) {
      if (links[i].name == name) return i;
    }
    throw Error(ErrorCode::kInvalidArgument, "fixture link '" + name + "'");
  }

  void revolute(const std::string& name, const std::string& parent,
                const std::string& child, Vec3 origin, Vec3 axis, double lo,
                double hi) {
    Joint j;
    j.name = name;
    j.type = JointType::kRevolute;
    j.parent_link = link_id(parent);
    j.child_link = link_id(child);
    j.origin.translation = origin;
    j.axis = axis;
    j.lower = lo;
    j.upper = hi;
    joints.push_back(std::move(j));
  }

  void fixed(const std::string& name, const std::string& parent,
             const std::string& child, Vec3 origin) {
    Joint j;
    j.name = name;
    j.type = JointType::kFixed;
    j.parent_link = link_id(parent);
    j.child_link = link_id(child);
    j.origin.translation = origin;
    joints.push_back(std::move(j));
  }
};

void add_leg(Builder& b, const std::string& s, double side) {
  b.links.push_back(link(s + "_hip1", 0.05));
  b.links.push_back(link(s + "_hip2", 0.05));
  b.links.push_back(link(s + "_thigh", 2.6, {0, 0, -0.19}));
  b.links.push_back(link(s + "_shin", 1.6, {0, 0, -0.19}));
  b.links.push_back(link(s + "_ankle", 0.05));
  b.links.push_back(link(s + "_foot", 0.9, {0.03, 0, -0.03}));
  b.revolute(s + "_hip_yaw", "pelvis", s + "_hip1", {0, side * 0.09, -0.10},
             {0, 0, 1}, -1.0, 1.0);
  b.revolute(s + "_hip_roll", s + "_hip1", s + "_hip2", {0, 0, 0}, {1, 0, 0},
             -0.8, 0.8);
  b.revolute(s + "_hip_pitch", s + "_hip2", s + "_thigh", {0, 0, 0}, {0, 1, 0},
             -2.0, 1.2);
  b.revolute(s + "_knee", s + "_thigh", s + "_shin", {0, 0, -0.38}, {0, 1, 0},
             0.0, 2.4);
  b.revolute(s + "_ankle_pitch", s + "_shin", s + "_ankle", {0, 0, -0.38},
             {0, 1, 0}, -1.0, 1.0);
  b.revolute(s + "_ankle_roll", s + "_ankle", s + "_foot", {0, 0, 0}, {1, 0, 0},
             -0.6, 0.6);
}

void add_arm(Builder& b, const std::string& s, double side) {
  b.links.push_back(link(s + "_shoulder1", 0.05));
  b.links.push_back(link(s + "_shoulder2", 0.05));
  b.links.push_back(link(s + "_upper_arm", 1.1, {0, 0, -0.12}));
  b.links.push_back(link(s + "_forearm", 0.7, {0, 0, -0.11}));
  b.links.push_back(link(s + "_hand", 0.4, {0, 0, -0.05}));
  b.revolute(s + "_shoulder_pitch", "torso", s + "_shoulder1",
             {0, side * 0.20, 0.25}, {0, 1, 0}, -2.5, 2.5);
  b.revolute(s + "_shoulder_roll", s + "_shoulder1", s + "_shoulder2",
             {0, 0, 0}, {1, 0, 0}, -2.2, 2.2);
  b.revolute(s + "_shoulder_yaw", s + "_shoulder2", s + "_upper_arm",
             {0, side * 0.03, 0}, {0, 0, 1}, -2.0, 2.0);
  b.revolute(s + "_elbow", s + "_upper_arm", s + "_forearm", {0, 0, -0.25},
             {0, 1, 0}, -0.1, 2.6);
  b.revolute(s + "_wrist_roll", s + "_forearm", s + "_hand", {0, 0, -0.22},
             {0, 0, 1}, -1.8, 1.8);
}

int dof_of(const KinematicModel& model, const std::string& joint) {
  for (int ji : model.moving_joints()) {
    if (model.joints()[ji].name == joint) {
      return model.joints()[ji].dof_index;
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "fixture joint '" + joint + "'");
}

}  // namespace

KinematicModel make_humanoid() {
  Builder b;
  b.links.push_back(link("pelvis", 7.0, {0, 0, 0.05}));
  add_leg(b, "l", 1.0);
  add_leg(b, "r", -1.0);
  b.links.push_back(link("waist", 0.5, {0, 0, 0.03}));
  b.links.push_back(link("torso", 9.0, {0, 0, 0.15}));
  b.revolute("waist_yaw", "pelvis", "waist", {0, 0, 0.10}, {0, 0, 1}, -1.2,
             1.2);
  b.revolute("waist_pitch", "waist", "torso", {0, 0, 0.05}, {0, 1, 0}, -1.0,
             1.0);
  add_arm(b, "l", 1.0);
  add_arm(b, "r", -1.0);
  return KinematicModel::build(
      "humanoid", b.links, b.joints, "pelvis", {"l_hand", "r_hand"},
      {"l_foot", "r_foot"},
      {"torso", "l_forearm", "r_forearm", "l_shin", "r_shin"});
}

Configuration humanoid_standing_pose(const KinematicModel& model) {
  Configuration q;
  q.joints = Eigen::VectorXd::Zero(model.joint_count());
  for (const std::string s : {"l", "r"}) {
    q.joints[dof_of(model, s + "_hip_pitch")] = -0.25;
    q.joints[dof_of(model, s + "_knee")] = 0.5;
    q.joints[dof_of(model, s + "_ankle_pitch")] = -0.25;
    q.joints[dof_of(model, s + "_elbow")] = 0.6;
  }
  q.joints[dof_of(model, "l_shoulder_roll")] = 0.3;
  q.joints[dof_of(model, "r_shoulder_roll")] = -0.3;

  // Drop the base so the foot origins land on the ground plane.
  const auto poses = forward_kinematics(model, q);
  const double foot_z = poses[model.link_index("l_foot")].translation.z();
  q.base.translation = Vec3(0, 0, -foot_z);
  return q;
}

MotionClip make_standing_clip(const KinematicModel& model, double seconds,
                              double dt) {
  MotionClip clip;
  clip.dt = dt;
  clip.foot_links = {"l_foot", "r_foot"};
  const Configuration q = humanoid_standing_pose(model);
  const int frames = static_cast<int>(std::lround(seconds / dt)) + 1;
  clip.frames.assign(frames, q);
  clip.contacts.assign(frames, {1, 1});
  return clip;
}

MotionClip make_arm_sweep_clip(const KinematicModel& model, double seconds,
                               double dt, double amplitude) {
  MotionClip clip = make_standing_clip(model, seconds, dt);
  const int pitch = dof_of(model, "r_shoulder_pitch");
  const int n = clip.frame_count();
  for (int f = 0; f < n; ++f) {
    // Half sine: forward sweep then return.
    const double phase = static_cast<double>(f) / (n - 1);
    clip.frames[f].joints[pitch] = -amplitude * std::sin(M_PI * phase);
  }
  return clip;
}

KinematicModel make_planar2() {
  Builder b;
  b.links.push_back(link("mount", 1.0));
  b.links.push_back(link("link1", 1.0, {0.5, 0, 0}));
  b.links.push_back(link("link2", 1.0, {0.5, 0, 0}));
  b.links.push_back(link("end", 0.1));
  b.revolute("j1", "mount", "link1", {0, 0, 0}, {0, 0, 1}, -2.6, 2.6);
  b.revolute("j2", "link1", "link2", {1, 0, 0}, {0, 0, 1}, -2.6, 2.6);
  b.fixed("end_fix", "link2", "end", {1, 0, 0});
  return KinematicModel::build("planar2", b.links, b.joints, "mount", {"end"},
                               {}, {"link2"});
}

KinematicModel make_one_link() {
  Builder b;
  b.links.push_back(link("mount", 1.0));
  b.links.push_back(link("link1", 1.0, {0.5, 0, 0}));
  b.links.push_back(link("end", 0.1));
  b.revolute("j1", "mount", "link1", {0, 0, 0}, {0, 0, 1}, -3.0, 3.0);
  b.fixed("end_fix", "link1", "end", {1, 0, 0});
  return KinematicModel::build("one_link", b.links, b.joints, "mount", {"end"},
                               {}, {"end"});
}

KinematicModel make_two_hand_rig() {
  Builder b;
  b.links.push_back(link("trunk", 1.0));
  b.links.push_back(link("l_arm", 0.5));
  b.links.push_back(link("r_arm", 0.5));
  b.links.push_back(link("l_hand", 0.1));
  b.links.push_back(link("r_hand", 0.1));
  b.revolute("l_spin", "trunk", "l_arm", {0, 0.5, 0}, {0, 0, 1}, -1e9, 1e9);
  b.revolute("r_spin", "trunk", "r_arm", {0, -0.5, 0}, {0, 0, 1}, -1e9, 1e9);
  b.fixed("l_hand_fix", "l_arm", "l_hand", {0.4, 0, 0});
  b.fixed("r_hand_fix", "r_arm", "r_hand", {0.4, 0, 0});
  return KinematicModel::build("two_hand_rig", b.links, b.joints, "trunk",
                               {"l_hand", "r_hand"}, {}, {});
}

MotionClip make_spinning_clip(const KinematicModel& rig, int frames, double dt,
                              double right_rate, double rate_ratio) {
  MotionClip clip;
  clip.dt = dt;
  clip.frames.resize(frames);
  clip.contacts.assign(frames, {});
  for (int f = 0; f < frames; ++f) {
    Configuration q;
    q.joints = Eigen::VectorXd::Zero(rig.joint_count());
    q.joints[0] = rate_ratio * right_rate * f * dt;  // l_spin
    q.joints[1] = right_rate * f * dt;               // r_spin
    clip.frames[f] = std::move(q);
  }
  return clip;
}

std::string make_temp_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  const auto dir = std::filesystem::temp_directory_path() /
                   ("cmaug_test_" + tag + "_" +
                    std::to_string(::getpid()) + "_" +
                    std::to_string(counter.fetch_add(1)));
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace cmaug::testing
