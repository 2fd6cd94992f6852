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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rclc/raster.hpp"

namespace rclc {

enum class CodecTag : std::uint8_t { kMock = 0, kExtern = 1 };

struct EncodedRegion {
  std::vector<std::uint8_t> payload;
  int qp = 0;
  int width = 0;
  int height = 0;
  ColorLayout layout = ColorLayout::kI420;

  friend bool operator==(const EncodedRegion&, const EncodedRegion&) = default;
};

// A region codec. decode(encode(p, qp)) has p's geometry; identical inputs
// give identical output. Implementations are stateless after construction
// and may be called concurrently.
class CodecBackend {
 public:
  virtual ~CodecBackend() = default;
  virtual std::string name() const = 0;
  virtual CodecTag tag() const = 0;
  // Highest QP that still reconstructs exactly, if the backend has one.
  virtual std::optional<int> lossless_qp_threshold() const = 0;
  virtual EncodedRegion encode(const Raster& patch, int qp) const = 0;
  virtual Raster decode(const EncodedRegion& region) const = 0;
};

// ---------------------------------------------------------------------------
// Mock codec: pixel-domain uniform quantizer with an HEVC-like step schedule
// (step doubles every 6 QP), followed by run-length coding. Payload layout:
//
//   u16 width | u16 height | u8 plane count | u8 qp |
//   per plane: (u8 value, LEB128 run length >= 1)* covering the plane exactly
//
// all little-endian.

// 1 for qp <= 4, else round(2^((qp - 4) / 6)).
int mock_step(int qp);

EncodedRegion mock_encode(const Raster& patch, int qp);
// Throws kCorruptPayload when the runs do not tile the declared planes.
Raster mock_decode(const EncodedRegion& region);

class MockCodec final : public CodecBackend {
 public:
  std::string name() const override { return "mock"; }
  CodecTag tag() const override { return CodecTag::kMock; }
  std::optional<int> lossless_qp_threshold() const override { return 4; }
  EncodedRegion encode(const Raster& patch, int qp) const override {
    return mock_encode(patch, qp);
  }
  Raster decode(const EncodedRegion& region) const override { return mock_decode(region); }
};

// ---------------------------------------------------------------------------
// External encoder adapter. Commands run through /bin/sh with {input},
// {output}, {qp}, {w} and {h} substituted; every call works in its own
// temporary directory.

enum class ExternFormat { kRawI420, kY4m };

struct ExternTemplates {
  std::string encode;
  std::string decode;
  ExternFormat format = ExternFormat::kRawI420;

  // "key = value" lines with keys encode, decode, format (yuv|y4m).
  static ExternTemplates parse(std::string_view text);
  // Each template must reference at least {input}; throws kInvalidTemplate.
  void validate() const;
};

void validate_command_template(std::string_view command_template);

std::string expand_template(std::string_view command_template, const std::string& input,
                            const std::string& output, int qp, int w, int h);

EncodedRegion extern_encode(const Raster& patch, int qp, std::string_view command_template,
                            ExternFormat format = ExternFormat::kRawI420);
Raster extern_decode(const EncodedRegion& region, std::string_view command_template,
                     ExternFormat format = ExternFormat::kRawI420);

class ExternCodec final : public CodecBackend {
 public:
  explicit ExternCodec(ExternTemplates templates);
  std::string name() const override { return "extern"; }
  CodecTag tag() const override { return CodecTag::kExtern; }
  std::optional<int> lossless_qp_threshold() const override { return std::nullopt; }
  EncodedRegion encode(const Raster& patch, int qp) const override;
  Raster decode(const EncodedRegion& region) const override;

 private:
  ExternTemplates templates_;
};

}  // namespace rclc
