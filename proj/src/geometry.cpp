// Copyright 2026 The RCLC Authors.
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

#include "rclc/geometry.hpp"

#include <algorithm>

#include "rclc/error.hpp"

namespace rclc {

std::string to_string(const BoundingBox& b) {
  return "(" + std::to_string(b.x0) + "," + std::to_string(b.y0) + "," + std::to_string(b.x1) +
         "," + std::to_string(b.y1) + ")";
}

BoundingBox union_box(const BoundingBox& a, const BoundingBox& b) {
  return {std::min(a.x0, b.x0), std::min(a.y0, b.y0), std::max(a.x1, b.x1),
          std::max(a.y1, b.y1)};
}

std::optional<BoundingBox> intersect(const BoundingBox& a, const BoundingBox& b) {
  const BoundingBox r{std::max(a.x0, b.x0), std::max(a.y0, b.y0), std::min(a.x1, b.x1),
                      std::min(a.y1, b.y1)};
  if (r.x0 >= r.x1 || r.y0 >= r.y1) return std::nullopt;
  return r;
}

BoundingBox compressed_area(const BoundingBox& current_roi, const BoundingBox& reference_roi) {
  return union_box(current_roi, reference_roi);
}

namespace {

int FloorTo(int v, int grid) { return v / grid * grid; }
int CeilTo(int v, int grid) { return (v + grid - 1) / grid * grid; }

}  // namespace

BoundingBox align_box(const BoundingBox& b, int grid, int frame_w, int frame_h) {
  if (grid != 2 && grid != 4 && grid != 8 && grid != 16) {
    throw Error(ErrorCode::kInvalidArgument, "alignment grid must be 2, 4, 8 or 16, got " +
                                                 std::to_string(grid));
  }
  const auto clipped = intersect(b, BoundingBox::full(frame_w, frame_h));
  if (!clipped) {
    throw Error(ErrorCode::kEmptyIntersection,
                "box " + to_string(b) + " misses the " + std::to_string(frame_w) + "x" +
                    std::to_string(frame_h) + " frame");
  }
  return {FloorTo(clipped->x0, grid), FloorTo(clipped->y0, grid),
          std::min(CeilTo(clipped->x1, grid), frame_w),
          std::min(CeilTo(clipped->y1, grid), frame_h)};
}

}  // namespace rclc
