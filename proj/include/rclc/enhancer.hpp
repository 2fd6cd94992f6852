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
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rclc/geometry.hpp"
#include "rclc/raster.hpp"

namespace rclc {

// Cross-fades a ring of `band` pixels on each side of the box border along
// the edge normal: each ring pixel becomes a linear mix of the first
// untouched sample inside and outside. Borders lying on the frame edge are
// left alone. Chroma planes use max(1, band / 2) at halved coordinates.
Raster feather_seam(const Raster& frame, const BoundingBox& box, int band);
void feather_seam_into(Raster& frame, const BoundingBox& box, int band);

// ---------------------------------------------------------------------------
// Enhancer subprocess protocol (docs/enhancer_protocol.md). All integers
// little-endian.
//
//   request : "RCEN" | u8 task | u16 width | u16 height | u8 planes |
//             u16 box x0, y0, x1, y1 (patch coordinates) | plane bytes
//   response: "RCEN" | u8 status | plane bytes (status 0 only)

enum class EnhanceTask : std::uint8_t { kBuEnhance = 0, kRuSeam = 1 };

inline constexpr std::size_t kEnhancerRequestHeaderSize = 18;
inline constexpr std::size_t kEnhancerResponseHeaderSize = 5;

enum class EnhancerStatus : std::uint8_t { kOk = 0, kBadMagic = 1, kBadRequest = 2 };

struct EnhancerRequest {
  EnhanceTask task = EnhanceTask::kBuEnhance;
  BoundingBox box;
  Raster patch;

  friend bool operator==(const EnhancerRequest&, const EnhancerRequest&) = default;
};

std::vector<std::uint8_t> encode_enhancer_request(const EnhancerRequest& request);

struct RequestHeader {
  EnhanceTask task;
  int width;
  int height;
  int planes;
  BoundingBox box;
};

// Header parse for server implementations; status explains a rejection.
EnhancerStatus parse_enhancer_request_header(std::span<const std::uint8_t> header,
                                             RequestHeader& out);
std::size_t request_plane_bytes(const RequestHeader& header);

std::vector<std::uint8_t> encode_enhancer_response(EnhancerStatus status, const Raster* patch);

class ChildProcess;

// Decoder-side post-processing: enhancement of a BU's ROI and treatment of
// RU paste seams. One object serves both tasks.
class EnhancerClient {
 public:
  enum class Kind { kNone, kFeather, kExternal };

  static EnhancerClient none();
  static EnhancerClient feather(int band);
  // `margin` pixels of blended background accompany each RU seam patch.
  static EnhancerClient external(std::string command, int margin = 8);

  Kind kind() const { return kind_; }
  int band() const { return band_; }
  const std::string& command() const { return command_; }
  std::string describe() const;

  // Both act on `frame` in place.
  void enhance_bu(Raster& frame, const BoundingBox& roi_box);
  void smooth_seam(Raster& frame, const BoundingBox& compressed_box);

  // One synchronous request to the external child (spawned on first use).
  Raster request(EnhanceTask task, const Raster& patch, const BoundingBox& box);

 private:
  EnhancerClient(Kind kind, int band, std::string command);

  Kind kind_ = Kind::kNone;
  int band_ = 0;
  std::string command_;
  std::shared_ptr<ChildProcess> child_;
};

// Conformance probe for enhancer servers: shape preservation on several
// sizes, determinism, and survival after a malformed message.
struct ConformanceCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};
std::vector<ConformanceCheck> run_enhancer_conformance(const std::string& command);

}  // namespace rclc
