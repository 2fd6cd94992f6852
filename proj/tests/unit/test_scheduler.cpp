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

#include <vector>

#include "rclc/error.hpp"
#include "rclc/scheduler.hpp"

using rclc::BlendMode;
using rclc::FrameKind;
using rclc::GofConfig;

namespace {

std::vector<FrameKind> Roles(const GofConfig& cfg, std::uint32_t n) {
  std::vector<FrameKind> out;
  for (std::uint32_t i = 0; i < n; ++i) out.push_back(rclc::classify_frame(i, cfg));
  return out;
}

constexpr FrameKind B = FrameKind::kBu;
constexpr FrameKind R = FrameKind::kRu;

}  // namespace

TEST_CASE("classify_frame examples") {
  GofConfig cfg;
  cfg.gof_size = 2;
  CHECK(Roles(cfg, 6) == std::vector<FrameKind>{B, R, B, R, B, R});
  cfg.gof_size = GofConfig::kOneBu;
  CHECK(Roles(cfg, 5) == std::vector<FrameKind>{B, R, R, R, R});
  cfg.gof_size = 1;
  CHECK(Roles(cfg, 4) == std::vector<FrameKind>{B, B, B, B});
}

TEST_CASE("reference_for examples") {
  GofConfig cfg;
  cfg.gof_size = 4;
  cfg.blend_mode = BlendMode::kBuBlending;
  CHECK(rclc::reference_for(3, cfg) == 0);
  cfg.blend_mode = BlendMode::kRuBlending;
  CHECK(rclc::reference_for(3, cfg) == 2);
  cfg.gof_size = GofConfig::kOneBu;
  cfg.blend_mode = BlendMode::kBuBlending;
  CHECK(rclc::reference_for(100, cfg) == 0);
  try {
    rclc::reference_for(4, GofConfig{4, BlendMode::kBuBlending, 22, 32});
    FAIL("no error");
  } catch (const rclc::Error& e) {
    CHECK(e.code() == rclc::ErrorCode::kCalledOnBu);
  }
}

TEST_CASE("schedule properties") {
  for (std::uint32_t gof : {0u, 1u, 2u, 3u, 4u, 8u, 13u}) {
    for (BlendMode mode : {BlendMode::kBuBlending, BlendMode::kRuBlending}) {
      const GofConfig cfg{gof, mode, 22, 32};
      CHECK(rclc::classify_frame(0, cfg) == B);
      const std::uint32_t n = 64;
      if (gof > 0) {
        for (std::uint32_t start = 0; start + gof <= n; start += gof) {
          int bus = 0;
          for (std::uint32_t i = start; i < start + gof; ++i) {
            bus += rclc::classify_frame(i, cfg) == B;
          }
          CHECK(bus == 1);
        }
      }
      for (std::uint32_t i = 1; i < n; ++i) {
        if (rclc::classify_frame(i, cfg) == B) continue;
        CHECK(rclc::reference_for(i, cfg) < i);
        // The reference chain ends at a BU.
        std::uint32_t j = i;
        int steps = 0;
        while (rclc::classify_frame(j, cfg) == R && steps++ < 100) j = rclc::reference_for(j, cfg);
        CHECK(rclc::classify_frame(j, cfg) == B);
      }
    }
  }
}

TEST_CASE("config validation") {
  CHECK_NOTHROW(GofConfig{2, BlendMode::kBuBlending, 22, 32}.validate());
  CHECK_THROWS_AS((GofConfig{2, BlendMode::kBuBlending, 33, 32}.validate()), rclc::Error);
  CHECK_THROWS_AS((GofConfig{2, BlendMode::kBuBlending, 22, 52}.validate()), rclc::Error);
  CHECK_THROWS_AS((GofConfig{2, BlendMode::kBuBlending, -1, 32}.validate()), rclc::Error);
}

TEST_CASE("forced BU restarts the schedule reference") {
  rclc::Scheduler s(GofConfig{8, BlendMode::kBuBlending, 22, 32}, {5});
  CHECK(s.classify(5) == B);
  CHECK(s.classify(4) == R);
  CHECK(s.reference_for(4) == 0);
  CHECK(s.reference_for(6) == 5);
  CHECK(s.last_bu_at_or_before(7) == 5);
  CHECK(s.role(6).reference_index == 5u);
  CHECK_FALSE(s.role(8).reference_index.has_value());
  rclc::Scheduler ru(GofConfig{8, BlendMode::kRuBlending, 22, 32}, {5});
  CHECK(ru.reference_for(6) == 5);
  CHECK(ru.reference_for(7) == 6);
}
