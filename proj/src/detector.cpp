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

#include "rclc/detector.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "rclc/error.hpp"
#include "rclc/simd/kernels.hpp"

namespace rclc {

std::vector<Detection> detect_diff(const Plane& frame_luma, const Plane& background_luma,
                                   const DiffDetectorParams& params) {
  if (frame_luma.width() != background_luma.width() ||
      frame_luma.height() != background_luma.height()) {
    throw Error(ErrorCode::kDimensionMismatch, "frame and background differ in size");
  }
  if (params.threshold < 0 || params.threshold > 255) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must be 0..255");
  }
  const int w = frame_luma.width();
  const int h = frame_luma.height();
  std::vector<std::uint8_t> mask(frame_luma.size());
  simd::active().absdiff_mask(frame_luma.samples().data(), background_luma.samples().data(),
                              mask.size(), static_cast<std::uint8_t>(params.threshold),
                              mask.data());

  // Flood fill; visited pixels are cleared from the mask.
  std::vector<Detection> out;
  std::vector<int> stack;
  for (int start = 0; start < w * h; ++start) {
    if (mask[start] == 0) continue;
    mask[start] = 0;
    stack.assign(1, start);
    std::int64_t area = 0;
    BoundingBox box{start % w, start / w, start % w + 1, start / w + 1};
    while (!stack.empty()) {
      const int p = stack.back();
      stack.pop_back();
      ++area;
      const int x = p % w;
      const int y = p / w;
      box = union_box(box, {x, y, x + 1, y + 1});
      const auto visit = [&](int q) {
        if (mask[q] != 0) {
          mask[q] = 0;
          stack.push_back(q);
        }
      };
      if (x > 0) visit(p - 1);
      if (x + 1 < w) visit(p + 1);
      if (y > 0) visit(p - w);
      if (y + 1 < h) visit(p + w);
    }
    if (area >= params.min_area) {
      out.push_back({box, static_cast<double>(area) / static_cast<double>(box.area())});
    }
  }
  return out;
}

std::vector<Detection> detect_diff(const Raster& frame, const Raster& background,
                                   const DiffDetectorParams& params) {
  if (frame.width() != background.width() || frame.height() != background.height()) {
    throw Error(ErrorCode::kDimensionMismatch, "frame and background differ in size");
  }
  return detect_diff(frame.luma(), background.luma(), params);
}

namespace {

template <typename T>
bool ParseField(std::string_view s, T& value) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (pos < line.size()) {
    while (pos < line.size() && is_space(line[pos])) ++pos;
    std::size_t end = pos;
    while (end < line.size() && !is_space(line[end])) ++end;
    if (end > pos) fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

}  // namespace

DetectionMap load_sidecar(std::string_view text) {
  DetectionMap map;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto fields = SplitWhitespace(line);
    if (fields.empty()) continue;
    const auto fail = [&](const std::string& why) {
      return Error(ErrorCode::kParseError, "sidecar line " + std::to_string(line_no) + ": " + why);
    };
    if (fields.size() != 6) throw fail("expected 6 fields, got " + std::to_string(fields.size()));
    std::uint32_t index = 0;
    Detection d;
    if (!ParseField(fields[0], index)) throw fail("bad frame index");
    if (!ParseField(fields[1], d.box.x0) || !ParseField(fields[2], d.box.y0) ||
        !ParseField(fields[3], d.box.x1) || !ParseField(fields[4], d.box.y1)) {
      throw fail("bad box coordinate");
    }
    if (!ParseField(fields[5], d.confidence) || !(d.confidence >= 0.0 && d.confidence <= 1.0)) {
      throw fail("confidence must be a number in [0, 1]");
    }
    if (!d.box.valid()) {
      throw Error(ErrorCode::kInvalidBox,
                  "sidecar line " + std::to_string(line_no) + ": box " + to_string(d.box));
    }
    map[index].push_back(d);
  }
  return map;
}

std::string write_sidecar(const DetectionMap& detections) {
  std::ostringstream out;
  out << "# index x0 y0 x1 y1 confidence\n";
  for (const auto& [index, list] : detections) {
    for (const Detection& d : list) {
      char conf[32];
      const auto res = std::to_chars(conf, conf + sizeof(conf), d.confidence);
      out << index << ' ' << d.box.x0 << ' ' << d.box.y0 << ' ' << d.box.x1 << ' ' << d.box.y1
          << ' ' << std::string_view(conf, static_cast<std::size_t>(res.ptr - conf)) << '\n';
    }
  }
  return out.str();
}

BoundingBox resolve_roi(const std::vector<Detection>& detections, DetectorState& state,
                        int frame_w, int frame_h) {
  const BoundingBox frame = BoundingBox::full(frame_w, frame_h);
  std::optional<BoundingBox> roi;
  for (const Detection& d : detections) {
    const auto clipped = intersect(d.box, frame);
    if (!clipped) continue;
    roi = roi ? union_box(*roi, *clipped) : *clipped;
  }
  if (!roi) {
    if (state.last_roi) {
      roi = intersect(*state.last_roi, frame);
    }
    if (!roi) roi = frame;
  }
  state.last_roi = roi;
  return *roi;
}

std::vector<Detection> SidecarDetector::detect(std::uint32_t index, const Raster&,
                                               const DetectorState&) {
  const auto it = detections_.find(index);
  return it == detections_.end() ? std::vector<Detection>{} : it->second;
}

std::vector<Detection> DiffDetector::detect(std::uint32_t, const Raster& frame,
                                            const DetectorState& state) {
  if (clean_plate_) return detect_diff(frame.luma(), *clean_plate_, params_);
  if (state.background_model) return detect_diff(frame.luma(), *state.background_model, params_);
  return {};
}

}  // namespace rclc
