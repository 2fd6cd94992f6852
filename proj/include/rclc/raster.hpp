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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rclc/geometry.hpp"

namespace rclc {

enum class ColorLayout : std::uint8_t { kLumaOnly = 0, kI420 = 1 };

inline constexpr int chroma_extent(int luma_extent) { return (luma_extent + 1) / 2; }

// One 8-bit sample grid, row-major, no padding.
class Plane {
 public:
  Plane() = default;
  Plane(int width, int height, std::uint8_t fill = 0);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return samples_.size(); }

  std::span<std::uint8_t> row(int y) {
    return {samples_.data() + static_cast<std::size_t>(y) * width_,
            static_cast<std::size_t>(width_)};
  }
  std::span<const std::uint8_t> row(int y) const {
    return {samples_.data() + static_cast<std::size_t>(y) * width_,
            static_cast<std::size_t>(width_)};
  }
  std::uint8_t& at(int x, int y) { return samples_[static_cast<std::size_t>(y) * width_ + x]; }
  std::uint8_t at(int x, int y) const {
    return samples_[static_cast<std::size_t>(y) * width_ + x];
  }

  std::span<std::uint8_t> samples() { return samples_; }
  std::span<const std::uint8_t> samples() const { return samples_; }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> samples_;
};

// Planar 8-bit picture: luma only, or luma plus two half-resolution chroma
// planes (I420). Width and height are at least 2, and even under I420.
class Raster {
 public:
  Raster() = default;
  Raster(int width, int height, ColorLayout layout, std::uint8_t luma_fill = 0,
         std::uint8_t chroma_fill = 128);

  // Validates plane geometry against the layout invariants.
  static Raster from_planes(ColorLayout layout, std::vector<Plane> planes);

  int width() const { return width_; }
  int height() const { return height_; }
  ColorLayout layout() const { return layout_; }
  bool has_chroma() const { return layout_ == ColorLayout::kI420; }
  bool empty() const { return planes_.empty(); }

  std::size_t plane_count() const { return planes_.size(); }
  Plane& plane(std::size_t i) { return planes_[i]; }
  const Plane& plane(std::size_t i) const { return planes_[i]; }
  Plane& luma() { return planes_[0]; }
  const Plane& luma() const { return planes_[0]; }

  // Bytes of all planes, tightly packed.
  std::size_t byte_size() const;

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  ColorLayout layout_ = ColorLayout::kLumaOnly;
  std::vector<Plane> planes_;
};

std::size_t frame_byte_size(int width, int height, ColorLayout layout);

// Throws kInvalidArgument when the dimensions violate the layout rules.
void validate_dimensions(int width, int height, ColorLayout layout);

// Box in chroma-plane coordinates for an even-aligned luma box.
BoundingBox chroma_box(const BoundingBox& luma_box);

// Copies out `box`. Chroma is cropped at halved coordinates, so under I420
// every coordinate must be even (kOddCoordinateWithChroma).
Raster crop(const Raster& frame, const BoundingBox& box);

// Returns a copy of `frame` with `patch` written over `box`.
Raster paste(const Raster& frame, const Raster& patch, const BoundingBox& box);

// In-place form of paste.
void paste_into(Raster& frame, const Raster& patch, const BoundingBox& box);

}  // namespace rclc
