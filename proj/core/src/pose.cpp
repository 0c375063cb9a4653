// Copyright 2026 The mmplan Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mmplan/geometry/pose.hpp"

#include <cmath>
#include <string>

#include <Eigen/Geometry>
#include <Eigen/SVD>

#include "mmplan/error.hpp"

namespace mmplan {

bool is_proper_rotation(const Mat3& r, double tol) {
  if (!r.allFinite()) return false;
  const Mat3 err = r.transpose() * r - Mat3::Identity();
  return err.cwiseAbs().maxCoeff() <= tol && std::abs(r.determinant() - 1.0) <= tol;
}

Mat3 orthonormalize(const Mat3& r) {
  Eigen::JacobiSVD<Mat3> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 d = Mat3::Identity();
  d(2, 2) = (svd.matrixU() * svd.matrixV().transpose()).determinant() < 0 ? -1 : 1;
  return svd.matrixU() * d * svd.matrixV().transpose();
}

Pose Pose::from_yaw(double yaw, const Vec3& t) {
  Pose p;
  p.rotation = Eigen::AngleAxisd(yaw, Vec3::UnitZ()).toRotationMatrix();
  p.translation = t;
  return p;
}

Pose Pose::from_rotation(const Mat3& r, const Vec3& t, double tol) {
  if (!mmplan::is_proper_rotation(r, tol)) {
    throw Error(ErrorCode::kInvalidRotation, "matrix is not a proper rotation");
  }
  Pose p;
  p.rotation = r;
  p.translation = t;
  return p;
}

Mat3 Pose::rotation_from_row_major(std::span<const double> m9) {
  if (m9.size() != 9) {
    throw Error(ErrorCode::kParse, "rotation needs 9 values, got " +
                                       std::to_string(m9.size()));
  }
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = m9[3 * i + j];
  return r;
}

Pose Pose::from_row_major(std::span<const double> m16, double tol) {
  if (m16.size() != 16) {
    throw Error(ErrorCode::kParse, "pose needs 16 values, got " +
                                       std::to_string(m16.size()));
  }
  if (std::abs(m16[12]) > tol || std::abs(m16[13]) > tol ||
      std::abs(m16[14]) > tol || std::abs(m16[15] - 1.0) > tol) {
    throw Error(ErrorCode::kInvalidRotation, "pose last row must be 0 0 0 1");
  }
  Mat3 r;
  Vec3 t;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) r(i, j) = m16[4 * i + j];
    t(i) = m16[4 * i + 3];
  }
  return from_rotation(r, t, tol);
}

Pose Pose::inverse() const {
  Pose inv;
  inv.rotation = rotation.transpose();
  inv.translation = -(inv.rotation * translation);
  return inv;
}

Pose Pose::operator*(const Pose& rhs) const {
  Pose out;
  out.rotation = rotation * rhs.rotation;
  out.translation = rotation * rhs.translation + translation;
  return out;
}

Mat4 Pose::matrix() const {
  Mat4 m = Mat4::Identity();
  m.topLeftCorner<3, 3>() = rotation;
  m.topRightCorner<3, 1>() = translation;
  return m;
}

std::array<double, 16> Pose::to_row_major() const {
  std::array<double, 16> out{};
  const Mat4 m = matrix();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[4 * i + j] = m(i, j);
  return out;
}

bool Pose::is_proper_rotation(double tol) const {
  return mmplan::is_proper_rotation(rotation, tol);
}

Mat3 look_rotation(const Vec3& forward, const Vec3& down) {
  const Vec3 z = forward.normalized();
  Vec3 y = down - down.dot(z) * z;
  if (y.norm() < 1e-9) {
    // forward is parallel to `down`; pick any perpendicular.
    y = z.unitOrthogonal();
  }
  y.normalize();
  const Vec3 x = y.cross(z);
  Mat3 r;
  r.col(0) = x;
  r.col(1) = y;
  r.col(2) = z;
  return r;
}

}  // namespace mmplan
