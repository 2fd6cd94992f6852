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

#include "rclc/error.hpp"
#include "rclc/synth.hpp"

using rclc::BoundingBox;
using rclc::SynthSpec;

TEST_CASE("constant-velocity box position") {
  SynthSpec s;
  s.width = 64;
  s.height = 64;
  s.frames = 8;
  s.background_value = 0;
  s.object_width = 16;
  s.object_height = 16;
  s.object_x = 8;
  s.object_y = 8;
  s.velocity_x = 4;
  s.velocity_y = 0;
  const auto out = rclc::generate(s);
  CHECK(out.boxes[7] == BoundingBox{36, 8, 52, 24});
  CHECK(out.sequence.frames.size() == 8);
}

TEST_CASE("static object gives identical frames") {
  SynthSpec s = rclc::synth_preset("fixed-camera");
  s.velocity_x = s.velocity_y = 0;
  const auto out = rclc::generate(s);
  for (std::size_t i = 1; i < out.boxes.size(); ++i) {
    CHECK(out.boxes[i] == out.boxes[0]);
    CHECK(out.sequence.frames[i] == out.sequence.frames[0]);
  }
}

TEST_CASE("noise is deterministic") {
  SynthSpec s = rclc::synth_preset("fixed-camera");
  s.noise_seed = 7;
  CHECK(rclc::generate(s).sequence == rclc::generate(s).sequence);
  SynthSpec other = s;
  other.noise_seed = 8;
  CHECK_FALSE(rclc::generate(other).sequence == rclc::generate(s).sequence);
  // Pinned lattice values keep fixtures stable across platforms.
  CHECK(rclc::synth_noise(7, 0, 0, 128, 32) == rclc::synth_noise(7, 0, 0, 128, 32));
  for (int x = -5; x < 5; ++x) {
    const int v = rclc::synth_noise(7, x, 3, 110, 40);
    CHECK(v >= 70);
    CHECK(v <= 150);
  }
}

TEST_CASE("ground-truth boxes bound the object exactly") {
  for (const std::string& name : rclc::synth_preset_names()) {
    if (name == "hd") continue;
    SynthSpec s = rclc::synth_preset(name);
    if (name == "fixed-camera" || name == "moving-camera") {
      // Solid fill on a constant plate, so the object is exactly the
      // samples that differ from the background.
      s.background = SynthSpec::Background::kConstant;
      s.background_value = 0;
      s.fill = SynthSpec::Fill::kSolid;
    }
    const auto out = rclc::generate(s);
    for (std::size_t i = 0; i < out.boxes.size(); ++i) {
      const auto& f = out.sequence.frames[i];
      int x0 = 1 << 20, y0 = 1 << 20, x1 = -1, y1 = -1;
      for (int y = 0; y < f.height(); ++y) {
        for (int x = 0; x < f.width(); ++x) {
          if (f.luma().at(x, y) == s.background_value) continue;
          x0 = std::min(x0, x);
          y0 = std::min(y0, y);
          x1 = std::max(x1, x + 1);
          y1 = std::max(y1, y + 1);
        }
      }
      CHECK(out.boxes[i] == BoundingBox{x0, y0, x1, y1});
      CHECK(out.boxes[i].within(s.width, s.height));
    }
  }
}

TEST_CASE("positions are clipped") {
  SynthSpec s;
  s.width = 32;
  s.height = 32;
  s.frames = 20;
  s.object_x = 0;
  s.velocity_x = 7;
  s.velocity_y = -3;
  const auto out = rclc::generate(s);
  for (const auto& b : out.boxes) CHECK(b.within(32, 32));
  CHECK(out.boxes.back().x1 == 32);
  CHECK(out.boxes.back().y0 == 0);
}

TEST_CASE("camera pan changes the background") {
  const auto fixed = rclc::generate(rclc::synth_preset("fixed-camera"));
  const auto moving = rclc::generate(rclc::synth_preset("moving-camera"));
  // Compare a background-only row across frames.
  const auto row_of = [](const rclc::Raster& f) {
    return std::vector<std::uint8_t>(f.luma().row(2).begin(), f.luma().row(2).end());
  };
  CHECK(row_of(fixed.sequence.frames[0]) == row_of(fixed.sequence.frames[5]));
  CHECK(row_of(moving.sequence.frames[0]) != row_of(moving.sequence.frames[5]));
}

TEST_CASE("invalid specs") {
  const auto code = [](SynthSpec s) {
    try {
      rclc::generate(s);
    } catch (const rclc::Error& e) {
      return e.code();
    }
    return rclc::ErrorCode::kIo;
  };
  SynthSpec s;
  s.frames = 0;
  CHECK(code(s) == rclc::ErrorCode::kSpecInvalid);
  s = SynthSpec{};
  s.object_width = 100;
  CHECK(code(s) == rclc::ErrorCode::kSpecInvalid);
  s = SynthSpec{};
  s.width = 63;
  CHECK(code(s) == rclc::ErrorCode::kSpecInvalid);
  s = SynthSpec{};
  s.object_x = 60;
  CHECK(code(s) == rclc::ErrorCode::kSpecInvalid);
  CHECK_THROWS_AS(rclc::synth_preset("nope"), rclc::Error);
}

TEST_CASE("sidecar of ground truth") {
  const auto out = rclc::generate(rclc::synth_preset("moving-box"));
  const auto map = out.sidecar();
  CHECK(map.size() == out.boxes.size());
  CHECK(map.at(3).front().box == out.boxes[3]);
}
