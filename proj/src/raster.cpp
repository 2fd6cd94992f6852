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

#include "rclc/raster.hpp"

#include <algorithm>

#include "rclc/error.hpp"

namespace rclc {

Plane::Plane(int width, int height, std::uint8_t fill)
    : width_(width),
      height_(height),
      samples_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {}

void validate_dimensions(int width, int height, ColorLayout layout) {
  if (width < 2 || height < 2) {
    throw Error(ErrorCode::kInvalidArgument, "raster must be at least 2x2, got " +
                                                 std::to_string(width) + "x" +
                                                 std::to_string(height));
  }
  if (layout == ColorLayout::kI420 && (width % 2 != 0 || height % 2 != 0)) {
    throw Error(ErrorCode::kInvalidArgument, "I420 raster needs even dimensions, got " +
                                                 std::to_string(width) + "x" +
                                                 std::to_string(height));
  }
}

Raster::Raster(int width, int height, ColorLayout layout, std::uint8_t luma_fill,
               std::uint8_t chroma_fill)
    : width_(width), height_(height), layout_(layout) {
  validate_dimensions(width, height, layout);
  planes_.emplace_back(width, height, luma_fill);
  if (layout == ColorLayout::kI420) {
    planes_.emplace_back(chroma_extent(width), chroma_extent(height), chroma_fill);
    planes_.emplace_back(chroma_extent(width), chroma_extent(height), chroma_fill);
  }
}

Raster Raster::from_planes(ColorLayout layout, std::vector<Plane> planes) {
  const std::size_t expected = layout == ColorLayout::kI420 ? 3 : 1;
  if (planes.size() != expected) {
    throw Error(ErrorCode::kDimensionMismatch, "layout needs " + std::to_string(expected) +
                                                   " planes, got " +
                                                   std::to_string(planes.size()));
  }
  const int w = planes[0].width();
  const int h = planes[0].height();
  validate_dimensions(w, h, layout);
  for (std::size_t i = 1; i < planes.size(); ++i) {
    if (planes[i].width() != chroma_extent(w) || planes[i].height() != chroma_extent(h)) {
      throw Error(ErrorCode::kDimensionMismatch, "chroma plane size does not match luma");
    }
  }
  Raster r;
  r.width_ = w;
  r.height_ = h;
  r.layout_ = layout;
  r.planes_ = std::move(planes);
  return r;
}

std::size_t Raster::byte_size() const {
  std::size_t n = 0;
  for (const Plane& p : planes_) n += p.size();
  return n;
}

std::size_t frame_byte_size(int width, int height, ColorLayout layout) {
  const auto luma = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (layout == ColorLayout::kLumaOnly) return luma;
  const auto chroma = static_cast<std::size_t>(chroma_extent(width)) *
                      static_cast<std::size_t>(chroma_extent(height));
  return luma + 2 * chroma;
}

BoundingBox chroma_box(const BoundingBox& b) { return {b.x0 / 2, b.y0 / 2, b.x1 / 2, b.y1 / 2}; }

namespace {

void CheckRegion(const Raster& frame, const BoundingBox& box) {
  if (!box.within(frame.width(), frame.height())) {
    throw Error(ErrorCode::kOutOfBounds, "box " + to_string(box) + " outside " +
                                             std::to_string(frame.width()) + "x" +
                                             std::to_string(frame.height()) + " frame");
  }
  if (frame.has_chroma() &&
      ((box.x0 | box.y0 | box.x1 | box.y1) & 1) != 0) {
    throw Error(ErrorCode::kOddCoordinateWithChroma, "box " + to_string(box) +
                                                         " has odd coordinates on I420 frame");
  }
}

BoundingBox PlaneBox(const BoundingBox& box, std::size_t plane) {
  return plane == 0 ? box : chroma_box(box);
}

}  // namespace

Raster crop(const Raster& frame, const BoundingBox& box) {
  CheckRegion(frame, box);
  std::vector<Plane> planes;
  for (std::size_t p = 0; p < frame.plane_count(); ++p) {
    const BoundingBox pb = PlaneBox(box, p);
    const Plane& src = frame.plane(p);
    Plane dst(pb.width(), pb.height());
    for (int y = 0; y < pb.height(); ++y) {
      const auto row = src.row(pb.y0 + y).subspan(pb.x0, pb.width());
      std::copy(row.begin(), row.end(), dst.row(y).begin());
    }
    planes.push_back(std::move(dst));
  }
  return Raster::from_planes(frame.layout(), std::move(planes));
}

void paste_into(Raster& frame, const Raster& patch, const BoundingBox& box) {
  CheckRegion(frame, box);
  if (patch.width() != box.width() || patch.height() != box.height() ||
      patch.layout() != frame.layout()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(patch.width()) + "x" + std::to_string(patch.height()) +
                    " patch does not fit box " + to_string(box));
  }
  for (std::size_t p = 0; p < frame.plane_count(); ++p) {
    const BoundingBox pb = PlaneBox(box, p);
    Plane& dst = frame.plane(p);
    const Plane& src = patch.plane(p);
    for (int y = 0; y < pb.height(); ++y) {
      const auto row = src.row(y);
      std::copy(row.begin(), row.end(), dst.row(pb.y0 + y).begin() + pb.x0);
    }
  }
}

Raster paste(const Raster& frame, const Raster& patch, const BoundingBox& box) {
  Raster out = frame;
  paste_into(out, patch, box);
  return out;
}

}  // namespace rclc
