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

#pragma once

#include <array>
#include <span>

#include "mmplan/geometry/types.hpp"

namespace mmplan {

// Rigid transform. Read as "target <- source": apply() maps source-frame
// points into the target frame.
struct Pose {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  static Pose identity() { return {}; }

  // Rotation about +z by `yaw` radians, translated by `t`.
  static Pose from_yaw(double yaw, const Vec3& t = Vec3::Zero());

  // Throws kInvalidRotation if `r` is not a proper rotation within `tol`.
  static Pose from_rotation(const Mat3& r, const Vec3& t, double tol = 1e-6);

  // 16 values, row-major homogeneous matrix. Last row must be 0 0 0 1.
  static Pose from_row_major(std::span<const double> m16, double tol = 1e-6);

  // 9 values, row-major rotation.
  static Mat3 rotation_from_row_major(std::span<const double> m9);

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
  Vec3 apply_direction(const Vec3& d) const { return rotation * d; }

  Pose inverse() const;
  Pose operator*(const Pose& rhs) const;

  Mat4 matrix() const;
  std::array<double, 16> to_row_major() const;

  bool is_proper_rotation(double tol = 1e-6) const;
};

bool is_proper_rotation(const Mat3& r, double tol = 1e-6);

// Nearest proper rotation in the Frobenius sense.
Mat3 orthonormalize(const Mat3& r);

// Rotation whose +z axis points along `forward` and whose +y axis is as
// close as possible to `down` (camera convention: x right, y down, z forward).
Mat3 look_rotation(const Vec3& forward, const Vec3& down = Vec3(0, 0, -1));

}  // namespace mmplan
