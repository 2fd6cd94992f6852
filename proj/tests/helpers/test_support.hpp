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
#include <random>

#include "rclc/container.hpp"
#include "rclc/raster.hpp"
#include "rclc/video.hpp"

namespace rclc::testing {

inline Raster random_raster(std::mt19937& rng, int w, int h, ColorLayout layout) {
  Raster r(w, h, layout);
  for (std::size_t p = 0; p < r.plane_count(); ++p) {
    for (auto& v : r.plane(p).samples()) v = static_cast<std::uint8_t>(rng() & 0xFF);
  }
  return r;
}

inline int random_int(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Luma 0..15 row-major.
inline Raster ramp_4x4(ColorLayout layout = ColorLayout::kLumaOnly) {
  Raster r(4, 4, layout);
  for (int i = 0; i < 16; ++i) r.luma().samples()[i] = static_cast<std::uint8_t>(i);
  return r;
}

// Valid stream with random geometry, roles, boxes and payload bytes.
inline Stream random_stream(std::mt19937& rng) {
  Stream s;
  StreamHeader& h = s.header;
  h.width = static_cast<std::uint16_t>(random_int(rng, 1, 4000));
  h.height = static_cast<std::uint16_t>(random_int(rng, 1, 3000));
  h.frame_rate_num = static_cast<std::uint32_t>(random_int(rng, 1, 1 << 30));
  h.frame_rate_den = static_cast<std::uint32_t>(random_int(rng, 1, 1001));
  h.gof_size = static_cast<std::uint32_t>(random_int(rng, 0, 64));
  h.blend_mode = random_int(rng, 0, 1) ? BlendMode::kRuBlending : BlendMode::kBuBlending;
  h.codec = random_int(rng, 0, 1) ? CodecTag::kExtern : CodecTag::kMock;
  h.layout = random_int(rng, 0, 1) ? ColorLayout::kI420 : ColorLayout::kLumaOnly;
  const int n = random_int(rng, 0, 12);
  h.frame_count = static_cast<std::uint32_t>(n);
  const auto box_in = [&](int w, int hh) {
    const int x0 = random_int(rng, 0, w - 1), y0 = random_int(rng, 0, hh - 1);
    return BoundingBox{x0, y0, random_int(rng, x0 + 1, w), random_int(rng, y0 + 1, hh)};
  };
  for (int i = 0; i < n; ++i) {
    FrameRecord r;
    r.role = (i == 0 || random_int(rng, 0, 2) == 0) ? FrameKind::kBu : FrameKind::kRu;
    r.qp = static_cast<std::uint8_t>(random_int(rng, 0, 51));
    r.roi_box = box_in(h.width, h.height);
    if (r.role == FrameKind::kBu) {
      r.compressed_box = r.roi_box;
    } else {
      r.compressed_box = {random_int(rng, 0, r.roi_box.x0), random_int(rng, 0, r.roi_box.y0),
                          random_int(rng, r.roi_box.x1, h.width),
                          random_int(rng, r.roi_box.y1, h.height)};
      r.reference_index = static_cast<std::uint32_t>(random_int(rng, 0, i - 1));
    }
    r.payload.resize(static_cast<std::size_t>(random_int(rng, 0, 300)));
    for (auto& b : r.payload) b = static_cast<std::uint8_t>(rng() & 0xFF);
    s.records.push_back(std::move(r));
  }
  return s;
}

}  // namespace rclc::testing
