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

// Minimal rigid-body math: rotations, transforms, wrenches, and the
// exponential/log maps on SO(3). Rotations are stored as matrices;
// quaternions appear only at file boundaries.

#ifndef CMAUG_SPATIAL_HPP_
#define CMAUG_SPATIAL_HPP_

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "cmaug/error.hpp"

namespace cmaug {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// A 3x3 orthonormal matrix with det +1. Construction through the public
/// factory methods validates or guarantees the invariant; all products of
/// valid rotations stay valid.
class Rotation {
 public:
  Rotation() : m_(Mat3::Identity()) {}

  /// Validates orthonormality (R*R^T = I and det R = +1, both to 1e-9).
  static Rotation from_matrix(const Mat3& m);

  /// Quaternion in wxyz order. Normalized on input; a norm further than
  /// 1e-6 from 1 is rejected.
  static Rotation from_quaternion(double w, double x, double y, double z);

  static Rotation identity() { return Rotation(); }

  const Mat3& matrix() const { return m_; }
  Rotation transposed() const { return Rotation(m_.transpose(), Trusted{}); }

  Vec3 operator*(const Vec3& v) const { return m_ * v; }
  Rotation operator*(const Rotation& o) const {
    return Rotation(m_ * o.m_, Trusted{});
  }

  /// wxyz, with w >= 0 (canonical sign for serialization).
  Eigen::Vector4d quaternion_wxyz() const;

  bool is_valid(double tol = 1e-9) const;

 private:
  struct Trusted {};
  Rotation(const Mat3& m, Trusted) : m_(m) {}
  Mat3 m_;

  friend Rotation rot_exp(const Vec3&);
};

/// Matrix exponential of the skew-symmetric matrix of `axis_angle`
/// (Rodrigues). Inputs with norm below 1e-12 give the identity.
Rotation rot_exp(const Vec3& axis_angle);

/// Principal-branch logarithm. Rotation angles within 1e-6 of pi raise
/// ErrorCode::kSingularRotation; callers that can encounter that regime
/// (the IK loop) treat it as a rejection, not a special case.
Vec3 rot_log(const Rotation& r);

/// Skew-symmetric (cross-product) matrix of v.
Mat3 skew(const Vec3& v);

struct RigidTransform {
  Rotation rotation;
  Vec3 translation{Vec3::Zero()};

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
};

RigidTransform compose(const RigidTransform& a, const RigidTransform& b);
RigidTransform inverse(const RigidTransform& a);

/// External wrench on a link, expressed in the world frame.
struct Wrench {
  Vec3 force{Vec3::Zero()};
  Vec3 torque{Vec3::Zero()};

  bool is_finite() const {
    return force.allFinite() && torque.allFinite();
  }
  Wrench scaled(double s) const { return {force * s, torque * s}; }
};

}  // namespace cmaug

#endif  // CMAUG_SPATIAL_HPP_
