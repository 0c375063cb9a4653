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

#include <algorithm>

namespace mmplan {

// Axis-aligned pixel box.
struct BBox2D {
  double xmin = 0;
  double ymin = 0;
  double xmax = 0;
  double ymax = 0;

  bool valid() const { return xmin <= xmax && ymin <= ymax; }
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return valid() ? width() * height() : 0.0; }
  double center_x() const { return 0.5 * (xmin + xmax); }
  double center_y() const { return 0.5 * (ymin + ymax); }

  bool contains(double x, double y) const {
    return x >= xmin && x <= xmax && y >= ymin && y <= ymax;
  }
  bool contains(const BBox2D& o) const {
    return o.xmin >= xmin && o.xmax <= xmax && o.ymin >= ymin && o.ymax <= ymax;
  }
};

inline double intersection_area(const BBox2D& a, const BBox2D& b) {
  const double w = std::min(a.xmax, b.xmax) - std::max(a.xmin, b.xmin);
  const double h = std::min(a.ymax, b.ymax) - std::max(a.ymin, b.ymin);
  return (w > 0 && h > 0) ? w * h : 0.0;
}

}  // namespace mmplan
