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

#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace rclc {

// Axis-aligned pixel rectangle; (x0, y0) inclusive, (x1, y1) exclusive.
struct BoundingBox {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  constexpr int width() const { return x1 - x0; }
  constexpr int height() const { return y1 - y0; }
  constexpr std::int64_t area() const {
    return static_cast<std::int64_t>(width()) * height();
  }
  constexpr bool valid() const { return 0 <= x0 && x0 < x1 && 0 <= y0 && y0 < y1; }

  constexpr bool contains(const BoundingBox& other) const {
    return x0 <= other.x0 && y0 <= other.y0 && other.x1 <= x1 && other.y1 <= y1;
  }
  constexpr bool contains_point(int x, int y) const {
    return x0 <= x && x < x1 && y0 <= y && y < y1;
  }
  constexpr bool within(int frame_w, int frame_h) const {
    return valid() && x1 <= frame_w && y1 <= frame_h;
  }

  static constexpr BoundingBox full(int w, int h) { return {0, 0, w, h}; }

  friend constexpr bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

std::string to_string(const BoundingBox& b);

// Smallest box containing both inputs.
BoundingBox union_box(const BoundingBox& a, const BoundingBox& b);

std::optional<BoundingBox> intersect(const BoundingBox& a, const BoundingBox& b);

// The rectangle an RU frame must actually code: its own ROI plus the ROI
// the reference frame still shows, so the decoder overwrites every stale
// foreground pixel. A single covering rectangle, one codec call per frame.
BoundingBox compressed_area(const BoundingBox& current_roi, const BoundingBox& reference_roi);

// Expands b outwards to multiples of `grid` (2, 4, 8 or 16), then clips to
// the frame. Throws kEmptyIntersection when b misses the frame entirely.
BoundingBox align_box(const BoundingBox& b, int grid, int frame_w, int frame_h);

}  // namespace rclc
