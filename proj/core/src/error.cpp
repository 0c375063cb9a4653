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

#include "mmplan/error.hpp"

namespace mmplan {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kInvalidDepth: return "invalid-depth";
    case ErrorCode::kOutOfBounds: return "out-of-bounds";
    case ErrorCode::kBehindCamera: return "behind-camera";
    case ErrorCode::kDegenerateInput: return "degenerate-input";
    case ErrorCode::kNoPlaneFound: return "no-plane-found";
    case ErrorCode::kParse: return "parse-error";
    case ErrorCode::kInvalidIndex: return "invalid-index";
    case ErrorCode::kOverlappingInstances: return "overlapping-instances";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kUnsupportedQuery: return "unsupported-query";
    case ErrorCode::kNotFound: return "not-found";
    case ErrorCode::kEmptyScene: return "empty-scene";
    case ErrorCode::kInvalidRotation: return "invalid-rotation";
    case ErrorCode::kDegenerateGeometry: return "degenerate-geometry";
    case ErrorCode::kNoGrasp: return "no-grasp";
    case ErrorCode::kNoPose: return "no-pose";
    case ErrorCode::kDegenerateBBox: return "degenerate-bbox";
    case ErrorCode::kMissingDepth: return "missing-depth";
    case ErrorCode::kInvalidAxis: return "invalid-axis";
    case ErrorCode::kInvalidConfig: return "invalid-config";
    case ErrorCode::kGeneration: return "generation-error";
  }
  return "unknown";
}

}  // namespace mmplan
