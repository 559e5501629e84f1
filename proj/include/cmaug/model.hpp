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

// Robot description and reference motion clips. Models and clips are
// immutable after load and shareable across threads.

#ifndef CMAUG_MODEL_HPP_
#define CMAUG_MODEL_HPP_

#include <Eigen/Core>
#include <string>
#include <vector>

#include "cmaug/spatial.hpp"

namespace cmaug {

enum class JointType { kRevolute, kPrismatic, kFixed };

struct Link {
  std::string name;
  double mass = 0.0;       // kg
  Vec3 com{Vec3::Zero()};  // CoM offset in the link frame, m
  int parent_joint = -1;   // -1 for the base link
};

struct Joint {
  std::string name;
  JointType type = JointType::kRevolute;
  int parent_link = -1;
  int child_link = -1;
  RigidTransform origin;   // child joint frame in the parent link frame
  Vec3 axis{0, 0, 1};      // unit, in the joint frame; unused for fixed
  double lower = 0.0;      // rad or m
  double upper = 0.0;
  int dof_index = -1;      // index into Configuration::joints; -1 for fixed
};

/// Tree of links rooted at a floating base. The base 6-DoF free joint is
/// implicit: its pose lives in Configuration, not in the joints array.
/// Joint (and DoF) ordering is the file order.
class KinematicModel {
 public:
  static KinematicModel load(const std::string& path);
  static KinematicModel from_json_text(const std::string& text);
  void save(const std::string& path) const;
  std::string to_json_text() const;  // canonical serialization

  /// Builds a model from parts and validates every invariant (tree shape,
  /// unit axes, limit ordering, positive total mass, known set members).
  static KinematicModel build(std::string name, std::vector<Link> links,
                              std::vector<Joint> joints, std::string base_link,
                              std::vector<std::string> hand_links,
                              std::vector<std::string> foot_links,
                              std::vector<std::string> keypoint_links);

  const std::string& name() const { return name_; }
  const std::vector<Link>& links() const { return links_; }
  const std::vector<Joint>& joints() const { return joints_; }
  int base_link() const { return base_link_; }
  const std::vector<int>& hand_links() const { return hand_links_; }
  const std::vector<int>& foot_links() const { return foot_links_; }
  const std::vector<int>& keypoint_links() const { return keypoint_links_; }

  int link_index(const std::string& name) const;  // throws on unknown link
  int find_link(const std::string& name) const;   // -1 on unknown
  const std::string& link_name(int index) const { return links_[index].name; }

  int joint_count() const { return static_cast<int>(moving_joints_.size()); }
  int dof_count() const { return 6 + joint_count(); }
  double total_mass() const { return total_mass_; }

  /// Non-fixed joints in DoF order.
  const std::vector<int>& moving_joints() const { return moving_joints_; }
  std::vector<std::string> joint_names() const;

  /// Joints in an order where every parent link is visited first.
  const std::vector<int>& traversal_order() const { return traversal_; }

  /// Non-fixed joints on the chain base -> link, in DoF indices.
  std::vector<int> chain_dofs(int link_index) const;

 private:
  KinematicModel() = default;
  void validate_and_index();

  std::string name_;
  std::vector<Link> links_;
  std::vector<Joint> joints_;
  int base_link_ = -1;
  std::vector<int> hand_links_, foot_links_, keypoint_links_;
  std::vector<int> moving_joints_;
  std::vector<int> traversal_;
  double total_mass_ = 0.0;
};

/// Base pose plus one scalar per non-fixed joint.
struct Configuration {
  RigidTransform base;
  Eigen::VectorXd joints;
};

struct ClipLimitViolation {
  int frame;
  std::string joint;
  double value;
  double lower;
  double upper;
};

struct MotionClip {
  double dt = 0.0;
  std::vector<Configuration> frames;
  std::vector<std::string> foot_links;            // contact column order
  std::vector<std::vector<uint8_t>> contacts;     // frames x feet

  double duration() const {
    return (static_cast<double>(frames.size()) - 1.0) * dt;
  }
  int frame_count() const { return static_cast<int>(frames.size()); }
  double frame_time(int frame) const { return frame * dt; }
  bool foot_in_contact(int frame, int foot) const {
    return contacts[frame][foot] != 0;
  }

  /// Out-of-limit joints, if any, are reported through `violations`
  /// (never an error: the clip loads and is otherwise validated).
  static MotionClip load(const std::string& path, const KinematicModel& model,
                         std::vector<ClipLimitViolation>* violations = nullptr);
  void save(const std::string& path, const KinematicModel& model) const;

  void validate(const KinematicModel& model,
                std::vector<ClipLimitViolation>* violations = nullptr) const;
};

/// World-frame velocity of a link origin by finite differences on the clip
/// (central in the interior, one-sided at the endpoints).
Vec3 clip_link_velocity(const MotionClip& clip, const KinematicModel& model,
                        int link_index, int frame);

}  // namespace cmaug

#endif  // CMAUG_MODEL_HPP_
