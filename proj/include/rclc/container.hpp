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
#include <optional>
#include <span>
#include <vector>

#include "rclc/codec.hpp"
#include "rclc/geometry.hpp"
#include "rclc/raster.hpp"
#include "rclc/scheduler.hpp"

namespace rclc {

// RCLC stream, little-endian throughout (docs/container.md has the byte map).
struct StreamHeader {
  static constexpr std::uint16_t kVersion = 1;
  static constexpr std::size_t kSize = 28;

  std::uint16_t version = kVersion;
  std::uint16_t width = 0;
  std::uint16_t height = 0;
  std::uint32_t frame_rate_num = 30;
  std::uint32_t frame_rate_den = 1;
  std::uint32_t gof_size = 2;  // 0 = one_BU
  BlendMode blend_mode = BlendMode::kBuBlending;
  CodecTag codec = CodecTag::kMock;
  ColorLayout layout = ColorLayout::kI420;  // packed into the codec_tag byte
  std::uint32_t frame_count = 0;

  friend bool operator==(const StreamHeader&, const StreamHeader&) = default;
};

struct FrameRecord {
  static constexpr std::size_t kFixedSize = 26;
  static constexpr std::uint32_t kNoReference = 0xFFFFFFFFu;

  FrameKind role = FrameKind::kBu;
  std::uint8_t qp = 0;
  BoundingBox roi_box;
  BoundingBox compressed_box;  // == roi_box for BU
  std::optional<std::uint32_t> reference_index;  // RU only
  std::vector<std::uint8_t> payload;

  std::size_t byte_size() const { return kFixedSize + payload.size(); }

  friend bool operator==(const FrameRecord&, const FrameRecord&) = default;
};

struct Stream {
  StreamHeader header;
  std::vector<FrameRecord> records;

  friend bool operator==(const Stream&, const Stream&) = default;
};

// Throws kInconsistentCount, kBoxOutOfFrame (any box invariant) or
// kMissingReference (reference not strictly earlier) or kInvalidRecord.
std::vector<std::uint8_t> write_stream(const StreamHeader& header,
                                       std::span<const FrameRecord> records);

// Throws kBadMagic, kUnsupportedVersion, kTruncated, or the write-side
// invariant errors for structurally complete but inconsistent streams.
Stream read_stream(std::span<const std::uint8_t> bytes);

// Serialized size in bytes: header plus every record.
std::size_t stream_size(const StreamHeader& header, std::span<const FrameRecord> records);

}  // namespace rclc
