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

#include "mmplan/geometry/pose.hpp"

namespace mmplan {

struct CameraIntrinsics {
  double fx = 0;
  double fy = 0;
  double cx = 0;
  double cy = 0;
  int width = 0;
  int height = 0;

  // Throws kInvalidArgument when focal lengths or principal point are invalid.
  void validate() const;

  bool contains(double u, double v) const {
    return u >= 0 && v >= 0 && u < width && v < height;
  }
};

struct PixelProjection {
  double u = 0;
  double v = 0;
  double depth = 0;  // camera-frame z
};

// Lift pixel (u, v) with camera-frame depth into the world. `cam_pose` maps
// camera coordinates (x right, y down, z forward) to world coordinates.
Vec3 backproject(double u, double v, double depth, const CameraIntrinsics& k,
                 const Pose& cam_pose);

// Pinhole projection of a world point. Throws kBehindCamera when the point
// does not have positive camera-frame depth. Does not check image bounds.
PixelProjection project(const Vec3& p, const CameraIntrinsics& k,
                        const Pose& cam_pose);

}  // namespace mmplan
