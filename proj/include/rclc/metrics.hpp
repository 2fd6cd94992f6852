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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rclc/codec.hpp"
#include "rclc/detector.hpp"
#include "rclc/enhancer.hpp"
#include "rclc/geometry.hpp"
#include "rclc/pipeline.hpp"
#include "rclc/raster.hpp"
#include "rclc/video.hpp"

namespace rclc {

inline constexpr double kPsnrCap = 99.0;

enum class PsnrWeighting { kLumaOnly, kYuv611 };

// 10·log10(255² / MSE) over `region` (whole frame when absent), capped at
// kPsnrCap for identical samples. Luma only unless 6:1:1 YUV weighting is
// requested.
double psnr(const Raster& a, const Raster& b, std::optional<BoundingBox> region = std::nullopt,
            PsnrWeighting weighting = PsnrWeighting::kLumaOnly);

struct SequenceQuality {
  std::vector<double> per_frame;
  double mean = 0;  // mean of per-frame PSNR, not pooled MSE
};

// Per-frame ROI PSNR. Throws kMismatchedLengths when frame or box counts
// disagree.
SequenceQuality roi_psnr(const VideoSequence& reference, const VideoSequence& distorted,
                         std::span<const BoundingBox> roi_boxes,
                         PsnrWeighting weighting = PsnrWeighting::kLumaOnly);

// One ROI per frame from a detection map, using resolve_roi's fallback.
std::vector<BoundingBox> rois_from_detections(const DetectionMap& detections,
                                              std::size_t frame_count, int width, int height);

// kilobits per second: bits · fps / frames / 1000.
double bitrate_kbps(std::uint64_t stream_bits, const FrameRate& rate, std::size_t frame_count);

struct RdPoint {
  double bitrate_kbps = 0;
  double psnr_db = 0;

  friend bool operator==(const RdPoint&, const RdPoint&) = default;
};

struct RdCurve {
  std::vector<RdPoint> points;

  // Points sorted by bitrate; throws kDegenerateFit unless there are at
  // least four, with strictly increasing bitrate and PSNR.
  std::vector<RdPoint> sorted_validated() const;
};

// Cubic log10(bitrate) as a function of PSNR: exact interpolation through
// four points, least squares beyond. Coefficients are for powers of
// (psnr - center).
struct LogRateFit {
  double center = 0;
  double coeff[4] = {0, 0, 0, 0};

  double operator()(double psnr_db) const;
  // ∫ fit d(psnr) over [lo, hi].
  double integrate(double lo, double hi) const;
};

LogRateFit fit_log_rate(std::span<const RdPoint> points, double center);

// Bjontegaard delta rate in percent over the shared PSNR interval;
// negative when `test` needs fewer bits. Throws kNoOverlap/kDegenerateFit.
double bd_rate(const RdCurve& anchor, const RdCurve& test);

// "bitrate_kbps,psnr_db" per line; '#' comment lines and an optional
// header line naming those columns are skipped.
std::vector<RdPoint> parse_rd_csv(std::string_view text);
std::string write_rd_csv(std::span<const RdPoint> points);

// One point per stream: bitrate from container size, quality = mean
// per-frame ROI PSNR against `reference`.
RdCurve build_rd_curve(std::span<const std::vector<std::uint8_t>> streams,
                       const VideoSequence& reference, std::span<const BoundingBox> roi_boxes,
                       const CodecBackend& backend, EnhancerClient& enhancer,
                       PsnrWeighting weighting = PsnrWeighting::kLumaOnly);

struct QpPair {
  int qp_roi = 22;
  int qp_bg = 32;
};

// Background QP paired with each ROI QP (qp_bg = qp_roi + 10).
std::vector<QpPair> rclc_ladder();
// Uniform whole-frame anchor: every frame a BU at qp 32/37/42/47.
std::vector<QpPair> anchor_ladder();

struct RdSweepEntry {
  QpPair qps;
  EncodeStats stats;
  RdPoint point;
};

// Encodes `seq` once per QP pair (other settings from `base`), decodes, and
// scores against `roi_boxes`.
std::vector<RdSweepEntry> rd_sweep(const VideoSequence& seq, const EncoderOptions& base,
                                   std::span<const QpPair> ladder, Detector& detector,
                                   const CodecBackend& backend, EnhancerClient& enhancer,
                                   std::span<const BoundingBox> roi_boxes,
                                   PsnrWeighting weighting = PsnrWeighting::kLumaOnly);

}  // namespace rclc
