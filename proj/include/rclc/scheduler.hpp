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
#include <optional>
#include <set>
#include <string>

namespace rclc {

enum class FrameKind : std::uint8_t { kBu = 0, kRu = 1 };
enum class BlendMode : std::uint8_t { kBuBlending = 0, kRuBlending = 1 };

std::string to_string(FrameKind kind);
std::string to_string(BlendMode mode);

// Encoder control surface. gof_size 0 stands for one_BU: only frame 0
// refreshes the background.
struct GofConfig {
  static constexpr std::uint32_t kOneBu = 0;

  std::uint32_t gof_size = 2;
  BlendMode blend_mode = BlendMode::kBuBlending;
  int qp_roi = 22;
  int qp_bg = 32;

  bool one_bu() const { return gof_size == kOneBu; }

  // Throws kInvalidArgument unless 0 <= qp_roi <= qp_bg <= 51.
  void validate() const;
};

struct FrameRole {
  FrameKind kind = FrameKind::kBu;
  std::optional<std::uint32_t> reference_index;  // RU only
};

// Pure role assignment from the GOF period.
FrameKind classify_frame(std::uint32_t index, const GofConfig& cfg);

// Frame an RU blends against: the latest BU under BU blending, the previous
// reconstructed frame under RU blending. Throws kCalledOnBu for BU indices.
std::uint32_t reference_for(std::uint32_t index, const GofConfig& cfg);

// GOF schedule plus optional forced background refreshes (e.g. known scene
// changes). Forced BUs also restart the BU-blending reference.
class Scheduler {
 public:
  explicit Scheduler(GofConfig cfg, std::set<std::uint32_t> forced_bu = {});

  FrameKind classify(std::uint32_t index) const;
  std::uint32_t reference_for(std::uint32_t index) const;
  FrameRole role(std::uint32_t index) const;
  std::uint32_t last_bu_at_or_before(std::uint32_t index) const;

  const GofConfig& config() const { return cfg_; }

 private:
  GofConfig cfg_;
  std::set<std::uint32_t> forced_bu_;
};

}  // namespace rclc
