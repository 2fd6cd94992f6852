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

#include <doctest.h>

#include <random>
#include <string>

#include "rclc/error.hpp"
#include "rclc/synth.hpp"
#include "rclc/video.hpp"
#include "test_support.hpp"

using rclc::ColorLayout;
using rclc::ErrorCode;
using rclc::VideoSequence;
using rclc::testing::random_int;
using rclc::testing::random_raster;

namespace {

std::vector<std::uint8_t> Bytes(const std::string& s) { return {s.begin(), s.end()}; }

ErrorCode ParseCode(const std::vector<std::uint8_t>& bytes) {
  try {
    rclc::parse_y4m(bytes);
  } catch (const rclc::Error& e) {
    return e.code();
  }
  FAIL("parse succeeded");
  return ErrorCode::kIo;
}

}  // namespace

TEST_CASE("minimal conforming stream") {
  auto bytes = Bytes("YUV4MPEG2 W4 H4 F30:1\nFRAME\n");
  for (int i = 0; i < 24; ++i) bytes.push_back(static_cast<std::uint8_t>(i));
  const VideoSequence seq = rclc::parse_y4m(bytes);
  CHECK(seq.frames.size() == 1);
  CHECK(seq.width == 4);
  CHECK(seq.height == 4);
  CHECK(seq.rate == rclc::FrameRate{30, 1});
  CHECK(seq.rate.fps() == doctest::Approx(30.0));
  CHECK(seq.frames[0].plane(2).at(1, 1) == 23);
  CHECK(rclc::write_y4m(seq) == bytes);
}

TEST_CASE("truncated payload") {
  auto bytes = Bytes("YUV4MPEG2 W4 H4 F30:1\nFRAME\n");
  bytes.resize(bytes.size() + 23, 0);
  CHECK(ParseCode(bytes) == ErrorCode::kTruncatedFrame);
}

TEST_CASE("header errors") {
  CHECK(ParseCode(Bytes("YUV4MPEG2 W4 F30:1\nFRAME\n")) == ErrorCode::kMalformedHeader);
  CHECK(ParseCode(Bytes("YUV4MPEG W4 H4 F30:1\n")) == ErrorCode::kMalformedHeader);
  CHECK(ParseCode(Bytes("YUV4MPEG2 W4 H4 F30:0\n")) == ErrorCode::kMalformedHeader);
  CHECK(ParseCode(Bytes("YUV4MPEG2 W4 H4 F30:1 C444\nFRAME\n")) ==
        ErrorCode::kUnsupportedColorSpace);
  CHECK(ParseCode(Bytes("YUV4MPEG2 W4 H4 F30:1 C422\nFRAME\n")) ==
        ErrorCode::kUnsupportedColorSpace);
  CHECK(ParseCode(Bytes("YUV4MPEG2 W4 H4 F30:1\n")) == ErrorCode::kTruncatedFrame);
}

TEST_CASE("tags and mono survive the round trip") {
  auto bytes = Bytes("YUV4MPEG2 W6 H2 F25:2 Ip A1:1 C420jpeg XYSCSS=420JPEG\nFRAME\n");
  bytes.resize(bytes.size() + 18, 9);
  const VideoSequence seq = rclc::parse_y4m(bytes);
  CHECK(seq.layout == ColorLayout::kI420);
  CHECK(seq.y4m_tags.size() == 4);
  CHECK(rclc::write_y4m(seq) == bytes);

  auto mono = Bytes("YUV4MPEG2 W3 H3 F30:1 Cmono\nFRAME\n");
  mono.resize(mono.size() + 9, 1);
  const VideoSequence m = rclc::parse_y4m(mono);
  CHECK(m.layout == ColorLayout::kLumaOnly);
  CHECK(m.frames[0].plane_count() == 1);
  CHECK(rclc::write_y4m(m) == mono);
}

TEST_CASE("generator stream round trip") {
  rclc::SynthSpec spec = rclc::synth_preset("moving-box");
  spec.frames = 8;
  spec.background = rclc::SynthSpec::Background::kNoise;
  spec.noise_seed = 3;
  const auto bytes = rclc::write_y4m(rclc::generate(spec).sequence);
  CHECK(rclc::write_y4m(rclc::parse_y4m(bytes)) == bytes);
}

TEST_CASE("randomized sequences round trip") {
  std::mt19937 rng(7);
  for (int i = 0; i < 100; ++i) {
    const ColorLayout layout = i % 3 == 0 ? ColorLayout::kLumaOnly : ColorLayout::kI420;
    const int w = 2 * random_int(rng, 1, 12), h = 2 * random_int(rng, 1, 12);
    VideoSequence seq = VideoSequence::make(
        w, h, {static_cast<std::uint32_t>(random_int(rng, 1, 60000)), 1001}, layout);
    const int n = random_int(rng, 1, 4);
    for (int f = 0; f < n; ++f) seq.frames.push_back(random_raster(rng, w, h, layout));
    const auto bytes = rclc::write_y4m(seq);
    CHECK(rclc::parse_y4m(bytes) == seq);
    CHECK(rclc::write_y4m(rclc::parse_y4m(bytes)) == bytes);
  }
}

TEST_CASE("raw I420 ingestion") {
  std::mt19937 rng(8);
  VideoSequence seq = VideoSequence::make(8, 6, {30, 1}, ColorLayout::kI420);
  for (int f = 0; f < 3; ++f) seq.frames.push_back(random_raster(rng, 8, 6, ColorLayout::kI420));
  const auto raw = rclc::write_raw_i420(seq);
  CHECK(raw.size() == 3 * 72);
  CHECK(rclc::parse_raw_i420(raw, 8, 6, {30, 1}) == seq);
  std::vector<std::uint8_t> cut(raw.begin(), raw.end() - 1);
  CHECK_THROWS_AS(rclc::parse_raw_i420(cut, 8, 6, {30, 1}), rclc::Error);
}

TEST_CASE("file helpers") {
  CHECK_THROWS_AS(rclc::read_file("/nonexistent/dir/file.y4m"), rclc::Error);
}
