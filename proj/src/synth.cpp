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

#include "rclc/synth.hpp"

#include <algorithm>

#include "rclc/error.hpp"

namespace rclc {

namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint8_t Clip(int v) { return static_cast<std::uint8_t>(std::clamp(v, 0, 255)); }

Error Invalid(const std::string& why) { return Error(ErrorCode::kSpecInvalid, why); }

}  // namespace

std::uint8_t synth_noise(std::uint64_t seed, int x, int y, int base, int amplitude) {
  const std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
                            static_cast<std::uint32_t>(y);
  const std::uint64_t h = SplitMix64(seed ^ key);
  const int span = 2 * amplitude + 1;
  return Clip(base - amplitude + static_cast<int>(h % static_cast<std::uint64_t>(span)));
}

void SynthSpec::validate() const {
  try {
    validate_dimensions(width, height, layout);
  } catch (const Error& e) {
    throw Invalid(e.what());
  }
  if (frames < 1) throw Invalid("frame count must be >= 1");
  if (rate.num == 0 || rate.den == 0) throw Invalid("frame rate must be nonzero");
  if (object_width < 1 || object_height < 1 || object_width > width || object_height > height) {
    throw Invalid("object must fit inside the frame");
  }
  if (object_x < 0 || object_y < 0 || object_x + object_width > width ||
      object_y + object_height > height) {
    throw Invalid("object start position outside the frame");
  }
  if (noise_amplitude < 0 || checker_cell < 1) throw Invalid("bad noise or checker parameter");
  if (background_value < 0 || background_value > 255 || fill_value < 0 || fill_value > 255) {
    throw Invalid("sample values must be 0..255");
  }
}

DetectionMap SynthOutput::sidecar() const {
  DetectionMap map;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    map[static_cast<std::uint32_t>(i)].push_back({boxes[i], 1.0});
  }
  return map;
}

SynthOutput generate(const SynthSpec& spec) {
  spec.validate();
  SynthOutput out;
  out.sequence = VideoSequence::make(spec.width, spec.height, spec.rate, spec.layout);

  const auto background = [&](int gx, int gy) -> std::uint8_t {
    switch (spec.background) {
      case SynthSpec::Background::kConstant:
        return static_cast<std::uint8_t>(spec.background_value);
      case SynthSpec::Background::kGradient: {
        // Triangle wave over x + y so panning never runs off the ramp.
        const int g = ((gx + gy) % 510 + 510) % 510;
        return static_cast<std::uint8_t>(g < 256 ? g : 509 - g);
      }
      case SynthSpec::Background::kNoise:
        return synth_noise(spec.noise_seed, gx, gy, spec.noise_base, spec.noise_amplitude);
    }
    return 0;
  };
  const auto fill = [&](int lx, int ly) -> std::uint8_t {
    switch (spec.fill) {
      case SynthSpec::Fill::kSolid:
        return static_cast<std::uint8_t>(spec.fill_value);
      case SynthSpec::Fill::kChecker:
        return ((lx / spec.checker_cell + ly / spec.checker_cell) & 1) != 0
                   ? static_cast<std::uint8_t>(spec.fill_value)
                   : static_cast<std::uint8_t>(spec.fill_value / 2);
      case SynthSpec::Fill::kTexture:
        return static_cast<std::uint8_t>(40 + (lx * 7 + ly * 11) % 176);
    }
    return 0;
  };

  for (int t = 0; t < spec.frames; ++t) {
    const int ox = std::clamp(spec.object_x + t * spec.velocity_x, 0, spec.width - spec.object_width);
    const int oy =
        std::clamp(spec.object_y + t * spec.velocity_y, 0, spec.height - spec.object_height);
    const BoundingBox box{ox, oy, ox + spec.object_width, oy + spec.object_height};
    const int px = t * spec.pan_x;
    const int py = t * spec.pan_y;

    Raster frame(spec.width, spec.height, spec.layout);
    Plane& y_plane = frame.luma();
    for (int y = 0; y < spec.height; ++y) {
      auto row = y_plane.row(y);
      for (int x = 0; x < spec.width; ++x) {
        row[x] = box.contains_point(x, y) ? fill(x - ox, y - oy) : background(x + px, y + py);
      }
    }
    if (frame.has_chroma()) {
      for (int cy = 0; cy < frame.plane(1).height(); ++cy) {
        for (int cx = 0; cx < frame.plane(1).width(); ++cx) {
          const bool inside = box.contains_point(2 * cx, 2 * cy);
          frame.plane(1).at(cx, cy) = inside ? spec.object_u : 128;
          frame.plane(2).at(cx, cy) = inside ? spec.object_v : 128;
        }
      }
    }
    out.sequence.frames.push_back(std::move(frame));
    out.boxes.push_back(box);
  }
  return out;
}

SynthSpec synth_preset(std::string_view name) {
  SynthSpec s;
  if (name == "moving-box") {
    s.width = 64;
    s.height = 64;
    s.frames = 16;
    s.object_x = 4;
    s.object_y = 8;
    s.velocity_x = 2;
    s.velocity_y = 1;
  } else if (name == "constant-velocity") {
    s.width = 128;
    s.height = 64;
    s.frames = 16;
    s.background_value = 16;
    s.object_width = 20;
    s.object_height = 20;
    s.object_x = 4;
    s.object_y = 20;
    s.velocity_x = 5;
    s.velocity_y = 0;
    s.fill_value = 200;
  } else if (name == "fixed-camera" || name == "moving-camera") {
    s.width = 128;
    s.height = 96;
    s.frames = 32;
    s.background = SynthSpec::Background::kNoise;
    s.noise_seed = 7;
    s.noise_base = 110;
    s.noise_amplitude = 40;
    s.object_width = 24;
    s.object_height = 32;
    s.object_x = 16;
    s.object_y = 32;
    s.velocity_x = 1;
    s.velocity_y = 0;
    s.fill = SynthSpec::Fill::kTexture;
    if (name == "moving-camera") s.pan_x = 2;
  } else if (name == "hd") {
    s.width = 1920;
    s.height = 1080;
    s.frames = 8;
    s.background = SynthSpec::Background::kNoise;
    s.noise_seed = 11;
    s.noise_base = 110;
    s.noise_amplitude = 40;
    s.object_width = 320;
    s.object_height = 480;
    s.object_x = 800;
    s.object_y = 300;
    s.velocity_x = 4;
    s.velocity_y = 2;
    s.fill = SynthSpec::Fill::kTexture;
  } else {
    throw Error(ErrorCode::kSpecInvalid, "unknown synth preset '" + std::string(name) + "'");
  }
  return s;
}

std::vector<std::string> synth_preset_names() {
  return {"moving-box", "constant-velocity", "fixed-camera", "moving-camera", "hd"};
}

}  // namespace rclc
