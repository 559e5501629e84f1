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

#include "cmaug/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "cmaug/kinematics.hpp"
#include "cmaug/textio.hpp"
#include "json.hpp"

namespace cmaug {

namespace {

using ordered_json = nlohmann::ordered_json;

JointType joint_type_from_string(const std::string& s) {
  if (s == "revolute") return JointType::kRevolute;
  if (s == "prismatic") return JointType::kPrismatic;
  if (s == "fixed") return JointType::kFixed;
  throw Error(ErrorCode::kParseError, "unknown joint type '" + s + "'");
}

const char* joint_type_to_string(JointType t) {
  switch (t) {
    case JointType::kRevolute:
      return "revolute";
    case JointType::kPrismatic:
      return "prismatic";
    case JointType::kFixed:
      return "fixed";
  }
  return "revolute";
}

Vec3 vec3_from_json(const ordered_json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) {
    throw Error(ErrorCode::kParseError, what + " must be a 3-array");
  }
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

ordered_json vec3_to_json(const Vec3& v) {
  return ordered_json::array({v.x(), v.y(), v.z()});
}

RigidTransform transform_from_json(const ordered_json& j,
                                   const std::string& what) {
  RigidTransform t;
  if (j.contains("xyz")) t.translation = vec3_from_json(j["xyz"], what + ".xyz");
  if (j.contains("quat")) {
    const auto& q = j["quat"];
    if (!q.is_array() || q.size() != 4) {
      throw Error(ErrorCode::kParseError, what + ".quat must be a 4-array");
    }
    t.rotation = Rotation::from_quaternion(q[0].get<double>(), q[1].get<double>(),
                                           q[2].get<double>(), q[3].get<double>());
  }
  return t;
}

ordered_json transform_to_json(const RigidTransform& t) {
  ordered_json j;
  j["xyz"] = vec3_to_json(t.translation);
  Eigen::Vector4d q = t.rotation.quaternion_wxyz();
  j["quat"] = ordered_json::array({q(0), q(1), q(2), q(3)});
  return j;
}

}  // namespace

KinematicModel KinematicModel::build(std::string name, std::vector<Link> links,
                                     std::vector<Joint> joints,
                                     std::string base_link,
                                     std::vector<std::string> hand_links,
                                     std::vector<std::string> foot_links,
                                     std::vector<std::string> keypoint_links) {
  KinematicModel m;
  m.name_ = std::move(name);
  m.links_ = std::move(links);
  m.joints_ = std::move(joints);

  std::map<std::string, int> by_name;
  for (int i = 0; i < static_cast<int>(m.links_.size()); ++i) {
    if (!by_name.emplace(m.links_[i].name, i).second) {
      throw Error(ErrorCode::kValidationError,
                  "duplicate link name '" + m.links_[i].name + "'");
    }
  }
  auto resolve = [&](const std::string& n, const std::string& what) {
    auto it = by_name.find(n);
    if (it == by_name.end()) {
      throw Error(ErrorCode::kValidationError,
                  what + " references unknown link '" + n + "'");
    }
    return it->second;
  };
  m.base_link_ = resolve(base_link, "base_link");
  for (auto& n : hand_links) m.hand_links_.push_back(resolve(n, "hand_links"));
  for (auto& n : foot_links) m.foot_links_.push_back(resolve(n, "foot_links"));
  for (auto& n : keypoint_links)
    m.keypoint_links_.push_back(resolve(n, "keypoint_links"));

  m.validate_and_index();
  return m;
}

void KinematicModel::validate_and_index() {
  const int nl = static_cast<int>(links_.size());
  for (auto& l : links_) l.parent_joint = -1;

  for (int j = 0; j < static_cast<int>(joints_.size()); ++j) {
    Joint& joint = joints_[j];
    if (joint.parent_link < 0 || joint.parent_link >= nl ||
        joint.child_link < 0 || joint.child_link >= nl) {
      throw Error(ErrorCode::kValidationError,
                  "joint '" + joint.name + "' references an unknown link");
    }
    if (joint.child_link == base_link_) {
      throw Error(ErrorCode::kValidationError,
                  "joint '" + joint.name + "' names the base link as child");
    }
    if (links_[joint.child_link].parent_joint != -1) {
      throw Error(ErrorCode::kValidationError,
                  "link '" + links_[joint.child_link].name +
                      "' has more than one parent joint");
    }
    links_[joint.child_link].parent_joint = j;
    if (joint.type != JointType::kFixed) {
      if (std::abs(joint.axis.norm() - 1.0) > 1e-9) {
        throw Error(ErrorCode::kValidationError,
                    "joint '" + joint.name + "' axis is not unit length");
      }
      if (joint.lower > joint.upper) {
        throw Error(ErrorCode::kValidationError,
                    "joint '" + joint.name + "' has lower limit > upper limit");
      }
      joint.dof_index = static_cast<int>(moving_joints_.size());
      moving_joints_.push_back(j);
    } else {
      joint.dof_index = -1;
    }
  }

  for (int l = 0; l < nl; ++l) {
    if (l != base_link_ && links_[l].parent_joint == -1) {
      throw Error(ErrorCode::kValidationError,
                  "link '" + links_[l].name + "' is not connected to the tree");
    }
  }

  // Cycle check + traversal order: walk each link's ancestry to the base.
  traversal_.clear();
  std::vector<int> depth(nl, -1);
  depth[base_link_] = 0;
  for (int l = 0; l < nl; ++l) {
    int cur = l;
    int steps = 0;
    while (depth[cur] == -1) {
      cur = joints_[links_[cur].parent_joint].parent_link;
      if (++steps > nl) {
        throw Error(ErrorCode::kValidationError,
                    "cycle detected at link '" + links_[l].name + "'");
      }
    }
  }
  // parent-before-child joint order
  std::vector<int> order(joints_.size());
  for (size_t i = 0; i < joints_.size(); ++i) order[i] = static_cast<int>(i);
  auto link_depth = [&](int link) {
    int d = 0;
    while (link != base_link_) {
      link = joints_[links_[link].parent_joint].parent_link;
      ++d;
    }
    return d;
  };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return link_depth(joints_[a].child_link) < link_depth(joints_[b].child_link);
  });
  traversal_ = order;

  total_mass_ = 0.0;
  for (const auto& l : links_) {
    if (l.mass < 0.0 || !std::isfinite(l.mass)) {
      throw Error(ErrorCode::kValidationError,
                  "link '" + l.name + "' has an invalid mass");
    }
    total_mass_ += l.mass;
  }
  if (total_mass_ <= 0.0) {
    throw Error(ErrorCode::kValidationError, "total mass must be positive");
  }
}

int KinematicModel::find_link(const std::string& name) const {
  for (int i = 0; i < static_cast<int>(links_.size()); ++i) {
    if (links_[i].name == name) return i;
  }
  return -1;
}

int KinematicModel::link_index(const std::string& name) const {
  int i = find_link(name);
  if (i < 0) {
    throw Error(ErrorCode::kInvalidArgument, "unknown link '" + name + "'");
  }
  return i;
}

std::vector<std::string> KinematicModel::joint_names() const {
  std::vector<std::string> names;
  names.reserve(moving_joints_.size());
  for (int j : moving_joints_) names.push_back(joints_[j].name);
  return names;
}

std::vector<int> KinematicModel::chain_dofs(int link_index) const {
  std::vector<int> dofs;
  int cur = link_index;
  while (cur != base_link_) {
    const Joint& j = joints_[links_[cur].parent_joint];
    if (j.dof_index >= 0) dofs.push_back(j.dof_index);
    cur = j.parent_link;
  }
  std::reverse(dofs.begin(), dofs.end());
  return dofs;
}

KinematicModel KinematicModel::from_json_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("model parse: ") + e.what());
  }
  if (!j.contains("format_version") || j["format_version"].get<int>() != 1) {
    throw Error(ErrorCode::kParseError,
                "model file missing format_version = 1");
  }
  std::vector<Link> links;
  for (const auto& lj : j.at("links")) {
    Link l;
    l.name = lj.at("name").get<std::string>();
    l.mass = lj.at("mass").get<double>();
    if (lj.contains("com")) l.com = vec3_from_json(lj["com"], l.name + ".com");
    links.push_back(std::move(l));
  }
  std::map<std::string, int> by_name;
  for (int i = 0; i < static_cast<int>(links.size()); ++i)
    by_name[links[i].name] = i;

  std::vector<Joint> joints;
  for (const auto& jj : j.at("joints")) {
    Joint q;
    q.name = jj.at("name").get<std::string>();
    q.type = joint_type_from_string(jj.at("type").get<std::string>());
    auto link_of = [&](const char* key) {
      const std::string n = jj.at(key).get<std::string>();
      auto it = by_name.find(n);
      if (it == by_name.end()) {
        throw Error(ErrorCode::kValidationError,
                    "joint '" + q.name + "' references unknown link '" + n + "'");
      }
      return it->second;
    };
    q.parent_link = link_of("parent");
    q.child_link = link_of("child");
    if (jj.contains("origin"))
      q.origin = transform_from_json(jj["origin"], q.name + ".origin");
    if (q.type != JointType::kFixed) {
      q.axis = vec3_from_json(jj.at("axis"), q.name + ".axis");
      const auto& lim = jj.at("limits");
      q.lower = lim[0].get<double>();
      q.upper = lim[1].get<double>();
    }
    joints.push_back(std::move(q));
  }

  auto strings = [&](const char* key) {
    std::vector<std::string> out;
    if (j.contains(key)) {
      for (const auto& s : j[key]) out.push_back(s.get<std::string>());
    }
    return out;
  };
  return build(j.value("name", std::string("model")), std::move(links),
               std::move(joints), j.at("base_link").get<std::string>(),
               strings("hand_links"), strings("foot_links"),
               strings("keypoint_links"));
}

KinematicModel KinematicModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open model file '" + path + "'");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string KinematicModel::to_json_text() const {
  ordered_json j;
  j["format_version"] = 1;
  j["name"] = name_;
  j["base_link"] = links_[base_link_].name;
  j["links"] = ordered_json::array();
  for (const auto& l : links_) {
    ordered_json lj;
    lj["name"] = l.name;
    lj["mass"] = l.mass;
    lj["com"] = vec3_to_json(l.com);
    j["links"].push_back(lj);
  }
  j["joints"] = ordered_json::array();
  for (const auto& q : joints_) {
    ordered_json jj;
    jj["name"] = q.name;
    jj["type"] = joint_type_to_string(q.type);
    jj["parent"] = links_[q.parent_link].name;
    jj["child"] = links_[q.child_link].name;
    jj["origin"] = transform_to_json(q.origin);
    if (q.type != JointType::kFixed) {
      jj["axis"] = vec3_to_json(q.axis);
      jj["limits"] = ordered_json::array({q.lower, q.upper});
    }
    j["joints"].push_back(jj);
  }
  auto names = [&](const std::vector<int>& idx) {
    ordered_json arr = ordered_json::array();
    for (int i : idx) arr.push_back(links_[i].name);
    return arr;
  };
  j["hand_links"] = names(hand_links_);
  j["foot_links"] = names(foot_links_);
  j["keypoint_links"] = names(keypoint_links_);
  return j.dump(2) + "\n";
}

void KinematicModel::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot write model file '" + path + "'");
  }
  out << to_json_text();
}

// ---------------------------------------------------------------------------
// MotionClip

void MotionClip::validate(const KinematicModel& model,
                          std::vector<ClipLimitViolation>* violations) const {
  if (dt <= 0.0 || !std::isfinite(dt)) {
    throw Error(ErrorCode::kValidationError, "clip dt must be positive");
  }
  if (frames.size() < 2) {
    throw Error(ErrorCode::kValidationError, "clip needs at least 2 frames");
  }
  const int n = model.joint_count();
  for (int f = 0; f < static_cast<int>(frames.size()); ++f) {
    const Configuration& c = frames[f];
    if (c.joints.size() != n) {
      throw Error(ErrorCode::kValidationError,
                  "frame " + std::to_string(f) + " has width " +
                      std::to_string(c.joints.size()) + ", model expects " +
                      std::to_string(n));
    }
    if (!c.joints.allFinite() || !c.base.translation.allFinite()) {
      throw Error(ErrorCode::kValidationError,
                  "frame " + std::to_string(f) + " contains non-finite values");
    }
    if (violations != nullptr) {
      for (int d = 0; d < n; ++d) {
        const Joint& j = model.joints()[model.moving_joints()[d]];
        if (c.joints[d] < j.lower - 1e-9 || c.joints[d] > j.upper + 1e-9) {
          violations->push_back({f, j.name, c.joints[d], j.lower, j.upper});
        }
      }
    }
  }
  if (contacts.size() != frames.size()) {
    throw Error(ErrorCode::kValidationError,
                "contact schedule length does not match frame count");
  }
}

MotionClip MotionClip::load(const std::string& path,
                            const KinematicModel& model,
                            std::vector<ClipLimitViolation>* violations) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open clip file '" + path + "'");
  }
  std::string line;
  if (!std::getline(in, line) || line.rfind("cmaug-clip 1", 0) != 0) {
    throw Error(ErrorCode::kParseError,
                "clip file '" + path + "' missing 'cmaug-clip 1' header");
  }

  MotionClip clip;
  std::vector<std::string> joint_names;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "dt") {
      ls >> clip.dt;
    } else if (key == "joints") {
      std::string n;
      while (ls >> n) joint_names.push_back(n);
    } else if (key == "feet") {
      std::string n;
      while (ls >> n) clip.foot_links.push_back(n);
    } else if (key == "data") {
      break;
    } else {
      throw Error(ErrorCode::kParseError,
                  "clip header: unknown key '" + key + "'");
    }
  }
  if (clip.dt <= 0.0) {
    throw Error(ErrorCode::kValidationError, "clip dt must be positive");
  }

  const auto expected = model.joint_names();
  if (joint_names != expected) {
    throw Error(ErrorCode::kValidationError,
                "clip joint list does not match the model's non-fixed joints "
                "(expected " + std::to_string(expected.size()) + " names in "
                "model order)");
  }
  for (const auto& foot : clip.foot_links) {
    bool known = false;
    for (int fl : model.foot_links()) {
      if (model.link_name(fl) == foot) known = true;
    }
    if (!known) {
      throw Error(ErrorCode::kValidationError,
                  "clip foot link '" + foot + "' is not a model foot link");
    }
  }

  const int n = model.joint_count();
  const int nfeet = static_cast<int>(clip.foot_links.size());
  const int width = 3 + 4 + n + nfeet;
  int frame_index = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    if (static_cast<int>(row.size()) != width) {
      throw Error(ErrorCode::kValidationError,
                  "clip frame " + std::to_string(frame_index) + " has " +
                      std::to_string(row.size()) + " values, expected " +
                      std::to_string(width));
    }
    for (double x : row) {
      if (!std::isfinite(x)) {
        throw Error(ErrorCode::kValidationError,
                    "clip frame " + std::to_string(frame_index) +
                        " contains a non-finite value");
      }
    }
    Configuration c;
    c.base.translation = Vec3(row[0], row[1], row[2]);
    c.base.rotation = Rotation::from_quaternion(row[3], row[4], row[5], row[6]);
    c.joints = Eigen::Map<Eigen::VectorXd>(row.data() + 7, n);
    std::vector<uint8_t> flags(nfeet);
    for (int i = 0; i < nfeet; ++i) flags[i] = row[7 + n + i] != 0.0 ? 1 : 0;
    clip.frames.push_back(std::move(c));
    clip.contacts.push_back(std::move(flags));
    ++frame_index;
  }

  clip.validate(model, violations);
  return clip;
}

void MotionClip::save(const std::string& path,
                      const KinematicModel& model) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot write clip file '" + path + "'");
  }
  out << "cmaug-clip 1\n";
  out << "dt " << format_double(dt) << "\n";
  out << "joints";
  for (const auto& n : model.joint_names()) out << " " << n;
  out << "\nfeet";
  for (const auto& n : foot_links) out << " " << n;
  out << "\ndata\n";
  for (size_t f = 0; f < frames.size(); ++f) {
    const Configuration& c = frames[f];
    out << format_double(c.base.translation.x()) << " "
        << format_double(c.base.translation.y()) << " "
        << format_double(c.base.translation.z());
    Eigen::Vector4d q = c.base.rotation.quaternion_wxyz();
    for (int i = 0; i < 4; ++i) out << " " << format_double(q(i));
    for (int i = 0; i < c.joints.size(); ++i)
      out << " " << format_double(c.joints[i]);
    for (uint8_t flag : contacts[f]) out << " " << int(flag);
    out << "\n";
  }
}

Vec3 clip_link_velocity(const MotionClip& clip, const KinematicModel& model,
                        int link_index, int frame) {
  const int last = clip.frame_count() - 1;
  if (frame < 0 || frame > last) {
    throw Error(ErrorCode::kInvalidArgument, "frame index out of clip range");
  }
  auto pos = [&](int f) {
    return forward_kinematics(model, clip.frames[f])[link_index].translation;
  };
  if (frame == 0) return (pos(1) - pos(0)) / clip.dt;
  if (frame == last) return (pos(last) - pos(last - 1)) / clip.dt;
  return (pos(frame + 1) - pos(frame - 1)) / (2.0 * clip.dt);
}

}  // namespace cmaug
