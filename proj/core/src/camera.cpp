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

#include "mmplan/geometry/camera.hpp"

#include <cmath>
#include <sstream>

#include "mmplan/error.hpp"

namespace mmplan {

void CameraIntrinsics::validate() const {
  if (!(fx > 0) || !(fy > 0) || width <= 0 || height <= 0 || !(cx >= 0) ||
      !(cy >= 0) || cx >= width || cy >= height) {
    std::ostringstream os;
    os << "invalid intrinsics: fx=" << fx << " fy=" << fy << " cx=" << cx
       << " cy=" << cy << " size=" << width << "x" << height;
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
}

Vec3 backproject(double u, double v, double depth, const CameraIntrinsics& k,
                 const Pose& cam_pose) {
  if (!(depth > 0) || !std::isfinite(depth)) {
    throw Error(ErrorCode::kInvalidDepth, "depth must be positive");
  }
  if (!k.contains(u, v)) {
    std::ostringstream os;
    os << "pixel (" << u << ", " << v << ") outside " << k.width << "x"
       << k.height << " image";
    throw Error(ErrorCode::kOutOfBounds, os.str());
  }
  const Vec3 p_cam((u - k.cx) * depth / k.fx, (v - k.cy) * depth / k.fy, depth);
  return cam_pose.apply(p_cam);
}

PixelProjection project(const Vec3& p, const CameraIntrinsics& k,
                        const Pose& cam_pose) {
  const Vec3 p_cam = cam_pose.rotation.transpose() * (p - cam_pose.translation);
  if (!(p_cam.z() > 0)) {
    throw Error(ErrorCode::kBehindCamera, "point is not in front of the camera");
  }
  return {k.fx * p_cam.x() / p_cam.z() + k.cx, k.fy * p_cam.y() / p_cam.z() + k.cy,
          p_cam.z()};
}

}  // namespace mmplan
