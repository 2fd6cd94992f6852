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
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "rclc/raster.hpp"

namespace rclc {

struct FrameRate {
  std::uint32_t num = 30;
  std::uint32_t den = 1;

  double fps() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const FrameRate&, const FrameRate&) = default;
};

// Ordered frames sharing one geometry and layout.
struct VideoSequence {
  int width = 0;
  int height = 0;
  FrameRate rate;
  ColorLayout layout = ColorLayout::kI420;
  std::vector<Raster> frames;
  // Y4M header tokens other than W/H/F, verbatim and in stream order
  // (e.g. "Ip", "A1:1", "C420jpeg", "XYSCSS=420JPEG").
  std::vector<std::string> y4m_tags;

  // Canonical empty sequence; luma-only ones carry an explicit "Cmono" tag
  // so parse_y4m(write_y4m(s)) == s.
  static VideoSequence make(int width, int height, FrameRate rate, ColorLayout layout);

  // Throws kInvalidArgument on mixed geometry or an empty frame list.
  void validate() const;

  friend bool operator==(const VideoSequence&, const VideoSequence&) = default;
};

// YUV4MPEG2 with 4:2:0 chroma (any C420* tag, or none) or Cmono.
VideoSequence parse_y4m(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> write_y4m(const VideoSequence& seq);

// Headerless planar frames back to back.
VideoSequence parse_raw_i420(std::span<const std::uint8_t> bytes, int width, int height,
                             FrameRate rate, ColorLayout layout = ColorLayout::kI420);
std::vector<std::uint8_t> write_raw_i420(const VideoSequence& seq);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace rclc
