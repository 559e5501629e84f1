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

#include "cmaug/spatial.hpp"

#include <Eigen/LU>
#include <cmath>

namespace cmaug {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid-argument";
    case ErrorCode::kParseError:
      return "parse-error";
    case ErrorCode::kValidationError:
      return "validation-error";
    case ErrorCode::kSingularRotation:
      return "singular-rotation";
    case ErrorCode::kSolverDiverged:
      return "solver-diverged";
    case ErrorCode::kIoError:
      return "io-error";
    case ErrorCode::kInfeasibleBudget:
      return "infeasible-budget";
  }
  return "unknown";
}

bool Rotation::is_valid(double tol) const {
  return (m_ * m_.transpose() - Mat3::Identity()).cwiseAbs().maxCoeff() <=
             tol &&
         std::abs(m_.determinant() - 1.0) <= tol;
}

Rotation Rotation::from_matrix(const Mat3& m) {
  Rotation r(m, Trusted{});
  if (!m.allFinite() || !r.is_valid()) {
    throw Error(ErrorCode::kInvalidArgument,
                "matrix is not a rotation (orthonormality or det check "
                "failed at 1e-9)");
  }
  return r;
}

Rotation Rotation::from_quaternion(double w, double x, double y, double z) {
  const double norm = std::sqrt(w * w + x * x + y * y + z * z);
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > 1e-6) {
    throw Error(ErrorCode::kValidationError,
                "quaternion norm deviates from 1 by more than 1e-6");
  }
  w /= norm;
  x /= norm;
  y /= norm;
  z /= norm;
  Mat3 m;
  m << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
      2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
      2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return Rotation(m, Trusted{});
}

Eigen::Vector4d Rotation::quaternion_wxyz() const {
  // Shepperd's method: pick the largest divisor for stability.
  const Mat3& m = m_;
  const double tr = m.trace();
  double w, x, y, z;
  if (tr > 0) {
    double s = std::sqrt(tr + 1.0) * 2;
    w = 0.25 * s;
    x = (m(2, 1) - m(1, 2)) / s;
    y = (m(0, 2) - m(2, 0)) / s;
    z = (m(1, 0) - m(0, 1)) / s;
  } else if (m(0, 0) > m(1, 1) && m(0, 0) > m(2, 2)) {
    double s = std::sqrt(1.0 + m(0, 0) - m(1, 1) - m(2, 2)) * 2;
    w = (m(2, 1) - m(1, 2)) / s;
    x = 0.25 * s;
    y = (m(0, 1) + m(1, 0)) / s;
    z = (m(0, 2) + m(2, 0)) / s;
  } else if (m(1, 1) > m(2, 2)) {
    double s = std::sqrt(1.0 + m(1, 1) - m(0, 0) - m(2, 2)) * 2;
    w = (m(0, 2) - m(2, 0)) / s;
    x = (m(0, 1) + m(1, 0)) / s;
    y = 0.25 * s;
    z = (m(1, 2) + m(2, 1)) / s;
  } else {
    double s = std::sqrt(1.0 + m(2, 2) - m(0, 0) - m(1, 1)) * 2;
    w = (m(1, 0) - m(0, 1)) / s;
    x = (m(0, 2) + m(2, 0)) / s;
    y = (m(1, 2) + m(2, 1)) / s;
    z = 0.25 * s;
  }
  Eigen::Vector4d q(w, x, y, z);
  q.normalize();
  if (q(0) < 0) q = -q;
  return q;
}

Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return m;
}

Rotation rot_exp(const Vec3& axis_angle) {
  if (!axis_angle.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "rot_exp: non-finite input");
  }
  const double theta = axis_angle.norm();
  if (theta < 1e-12) {
    return Rotation();
  }
  const double theta2 = theta * theta;
  double a, b;  // sin(t)/t and (1-cos(t))/t^2
  if (theta < 1e-4) {
    a = 1.0 - theta2 / 6.0;
    b = 0.5 - theta2 / 24.0;
  } else {
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / theta2;
  }
  const Mat3 k = skew(axis_angle);
  Mat3 m = Mat3::Identity() + a * k + b * (k * k);
  return Rotation(m, Rotation::Trusted{});
}

Vec3 rot_log(const Rotation& r) {
  const Mat3& m = r.matrix();
  // s = sin(theta) * axis, c = cos(theta)
  const Vec3 s(0.5 * (m(2, 1) - m(1, 2)), 0.5 * (m(0, 2) - m(2, 0)),
               0.5 * (m(1, 0) - m(0, 1)));
  const double c = 0.5 * (m.trace() - 1.0);
  const double theta = std::atan2(s.norm(), c);
  if (theta > M_PI - 1e-6) {
    throw Error(ErrorCode::kSingularRotation,
                "rot_log: rotation angle within 1e-6 of pi");
  }
  if (theta < 1e-8) {
    return s;
  }
  return (theta / std::sin(theta)) * s;
}

RigidTransform compose(const RigidTransform& a, const RigidTransform& b) {
  return {a.rotation * b.rotation, a.rotation * b.translation + a.translation};
}

RigidTransform inverse(const RigidTransform& a) {
  Rotation rt = a.rotation.transposed();
  return {rt, -(rt * a.translation)};
}

}  // namespace cmaug
