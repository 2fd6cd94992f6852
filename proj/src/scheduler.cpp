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

#include "rclc/scheduler.hpp"

#include <algorithm>

#include "rclc/error.hpp"

namespace rclc {

std::string to_string(FrameKind kind) { return kind == FrameKind::kBu ? "BU" : "RU"; }

std::string to_string(BlendMode mode) {
  return mode == BlendMode::kBuBlending ? "BU_blending" : "RU_blending";
}

void GofConfig::validate() const {
  if (qp_roi < 0 || qp_roi > 51 || qp_bg < 0 || qp_bg > 51) {
    throw Error(ErrorCode::kInvalidArgument, "QPs must lie in 0..51");
  }
  if (qp_roi > qp_bg) {
    throw Error(ErrorCode::kInvalidArgument,
                "qp_roi (" + std::to_string(qp_roi) + ") must not exceed qp_bg (" +
                    std::to_string(qp_bg) + ")");
  }
}

Scheduler::Scheduler(GofConfig cfg, std::set<std::uint32_t> forced_bu)
    : cfg_(cfg), forced_bu_(std::move(forced_bu)) {}

FrameKind Scheduler::classify(std::uint32_t index) const {
  if (forced_bu_.contains(index)) return FrameKind::kBu;
  if (cfg_.one_bu()) return index == 0 ? FrameKind::kBu : FrameKind::kRu;
  return index % cfg_.gof_size == 0 ? FrameKind::kBu : FrameKind::kRu;
}

std::uint32_t Scheduler::last_bu_at_or_before(std::uint32_t index) const {
  std::uint32_t last = cfg_.one_bu() ? 0 : index - index % cfg_.gof_size;
  auto it = forced_bu_.upper_bound(index);
  if (it != forced_bu_.begin()) last = std::max(last, *std::prev(it));
  return last;
}

std::uint32_t Scheduler::reference_for(std::uint32_t index) const {
  if (classify(index) == FrameKind::kBu) {
    throw Error(ErrorCode::kCalledOnBu, "frame " + std::to_string(index) + " is a BU");
  }
  return cfg_.blend_mode == BlendMode::kRuBlending ? index - 1 : last_bu_at_or_before(index);
}

FrameRole Scheduler::role(std::uint32_t index) const {
  FrameRole r;
  r.kind = classify(index);
  if (r.kind == FrameKind::kRu) r.reference_index = reference_for(index);
  return r;
}

FrameKind classify_frame(std::uint32_t index, const GofConfig& cfg) {
  return Scheduler(cfg).classify(index);
}

std::uint32_t reference_for(std::uint32_t index, const GofConfig& cfg) {
  return Scheduler(cfg).reference_for(index);
}

}  // namespace rclc
