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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rclc/geometry.hpp"
#include "rclc/raster.hpp"

namespace rclc {

struct Detection {
  BoundingBox box;
  double confidence = 1.0;  // [0, 1]

  friend bool operator==(const Detection&, const Detection&) = default;
};

using DetectionMap = std::map<std::uint32_t, std::vector<Detection>>;

// Owned by the encoder loop; resolve_roi and the pipeline update it in
// frame order.
struct DetectorState {
  std::optional<BoundingBox> last_roi;
  std::optional<Plane> background_model;  // luma of the latest BU
};

struct DiffDetectorParams {
  int threshold = 25;
  std::int64_t min_area = 64;
};

// Background differencing: 4-connected components of
// |frame - background| > threshold, keeping components of at least
// min_area pixels. Confidence is component area over box area.
std::vector<Detection> detect_diff(const Plane& frame_luma, const Plane& background_luma,
                                   const DiffDetectorParams& params = {});
std::vector<Detection> detect_diff(const Raster& frame, const Raster& background,
                                   const DiffDetectorParams& params = {});

// Text sidecar, one detection per line: "index x0 y0 x1 y1 confidence".
// '#' starts a comment. Throws kParseError (with line number) or kInvalidBox.
DetectionMap load_sidecar(std::string_view text);
std::string write_sidecar(const DetectionMap& detections);

// Collapses a frame's detections to the single ROI: union of all boxes
// clipped to the frame, else the previous ROI, else the whole frame.
BoundingBox resolve_roi(const std::vector<Detection>& detections, DetectorState& state,
                        int frame_w, int frame_h);

class Detector {
 public:
  virtual ~Detector() = default;
  virtual std::string name() const = 0;
  virtual std::vector<Detection> detect(std::uint32_t index, const Raster& frame,
                                        const DetectorState& state) = 0;
};

// Replays precomputed boxes (e.g. an external person detector's output).
class SidecarDetector final : public Detector {
 public:
  explicit SidecarDetector(DetectionMap detections) : detections_(std::move(detections)) {}
  std::string name() const override { return "sidecar"; }
  std::vector<Detection> detect(std::uint32_t index, const Raster& frame,
                                const DetectorState& state) override;

 private:
  DetectionMap detections_;
};

// Differences against a fixed clean plate when given, otherwise against the
// luma of the latest BU. Without either (frame 0) it reports nothing.
class DiffDetector final : public Detector {
 public:
  explicit DiffDetector(DiffDetectorParams params = {}, std::optional<Plane> clean_plate = {})
      : params_(params), clean_plate_(std::move(clean_plate)) {}
  std::string name() const override { return "diff"; }
  std::vector<Detection> detect(std::uint32_t index, const Raster& frame,
                                const DetectorState& state) override;

 private:
  DiffDetectorParams params_;
  std::optional<Plane> clean_plate_;
};

}  // namespace rclc
