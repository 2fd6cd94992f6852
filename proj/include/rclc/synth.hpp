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
#include <string>
#include <string_view>
#include <vector>

#include "rclc/detector.hpp"
#include "rclc/geometry.hpp"
#include "rclc/video.hpp"

namespace rclc {

// Synthetic stand-ins for fixed- and moving-camera ROI test material: one
// rectangular "person" moving over a background, optionally with a panning
// camera.
struct SynthSpec {
  enum class Background { kConstant, kGradient, kNoise };
  enum class Fill { kSolid, kChecker, kTexture };

  int width = 64;
  int height = 64;
  int frames = 8;
  ColorLayout layout = ColorLayout::kI420;
  FrameRate rate{30, 1};

  Background background = Background::kConstant;
  int background_value = 0;        // kConstant
  std::uint64_t noise_seed = 0;    // kNoise
  int noise_base = 128;            // kNoise: base ± amplitude
  int noise_amplitude = 32;

  int object_width = 16;
  int object_height = 16;
  int object_x = 8;
  int object_y = 8;
  int velocity_x = 4;  // px/frame
  int velocity_y = 0;
  Fill fill = Fill::kSolid;
  int fill_value = 255;
  int checker_cell = 4;
  std::uint8_t object_u = 90;
  std::uint8_t object_v = 240;

  int pan_x = 0;  // px/frame, shifts the background
  int pan_y = 0;

  // Throws kSpecInvalid.
  void validate() const;
};

struct SynthOutput {
  VideoSequence sequence;
  std::vector<BoundingBox> boxes;  // exact object bounds per frame

  DetectionMap sidecar() const;
};

// Deterministic for a fixed spec. Object positions are clipped so the
// object never leaves the frame.
SynthOutput generate(const SynthSpec& spec);

// Lattice noise used by Background::kNoise: splitmix64 of
// seed ^ (u32(x) << 32 | u32(y)), reduced to base ± amplitude and clipped.
std::uint8_t synth_noise(std::uint64_t seed, int x, int y, int base, int amplitude);

// "moving-box", "fixed-camera", "moving-camera", "constant-velocity", "hd".
SynthSpec synth_preset(std::string_view name);
std::vector<std::string> synth_preset_names();

}  // namespace rclc
