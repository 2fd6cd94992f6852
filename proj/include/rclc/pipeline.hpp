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
#include <span>
#include <string>
#include <vector>

#include "rclc/codec.hpp"
#include "rclc/container.hpp"
#include "rclc/detector.hpp"
#include "rclc/enhancer.hpp"
#include "rclc/scheduler.hpp"
#include "rclc/video.hpp"

namespace rclc {

struct EncoderOptions {
  GofConfig gof;
  std::set<std::uint32_t> forced_bu;
  int align_grid = 16;
  // Seam/enhancement treatment the decoder will apply; the encoder's
  // reconstruction mirror must apply the same to stay bit-identical.
  EnhancerClient mirror_enhancer = EnhancerClient::none();
  // Keep mirrored reconstructions in the result. The mirror itself always
  // runs under RU blending; this forces it on for BU blending too.
  bool capture_mirror = false;
  // BU detection runs on a worker thread while the frame compresses.
  bool concurrent_bu_detection = true;
};

struct FrameStats {
  std::uint32_t index = 0;
  FrameKind role = FrameKind::kBu;
  int qp = 0;
  BoundingBox roi_box;
  // Union of the current and reference ROIs before grid alignment (RU);
  // the ROI itself for BU.
  BoundingBox raw_compressed_box;
  // Region actually coded: aligned compressed area (RU) or the frame (BU).
  BoundingBox coded_box;
  std::optional<std::uint32_t> reference_index;
  std::uint64_t payload_bits = 0;
  double detection_ms = 0;
  double roi_calc_ms = 0;
  double compression_ms = 0;
};

struct EncodeStats {
  std::vector<FrameStats> frames;
  std::uint64_t total_payload_bits = 0;  // Σ frames[i].payload_bits
  std::uint64_t stream_bits = 0;         // 8 * container size
  double wall_ms = 0;
};

struct EncodeResult {
  std::vector<std::uint8_t> bytes;
  EncodeStats stats;
  std::vector<Raster> mirror;  // filled when capture_mirror is set
};

EncodeResult encode_video(const VideoSequence& seq, const EncoderOptions& options,
                          Detector& detector, const CodecBackend& backend);

struct DecodeFrameTiming {
  FrameKind role = FrameKind::kBu;
  double decompression_ms = 0;
  double enhancement_ms = 0;  // BU
  double blending_ms = 0;     // RU
  double smoothing_ms = 0;    // RU
};

// Rebuilds frames record by record. Shared by the decoder and the encoder's
// mirror so both apply identical operations.
class Reconstructor {
 public:
  Reconstructor(const StreamHeader& header, const CodecBackend& backend, EnhancerClient& enhancer,
                bool keep_all);

  // Throws kMissingReference when the record's reference is unavailable.
  const Raster& push(const FrameRecord& record, DecodeFrameTiming* timing = nullptr);

  std::vector<Raster> take_frames() { return std::move(frames_); }

 private:
  const Raster* find(std::uint32_t index) const;

  StreamHeader header_;
  const CodecBackend& backend_;
  EnhancerClient& enhancer_;
  bool keep_all_;
  std::uint32_t next_index_ = 0;
  std::vector<Raster> frames_;  // keep_all
  std::optional<std::uint32_t> last_bu_index_;
  Raster last_bu_;
  Raster previous_;
};

VideoSequence decode_video(std::span<const std::uint8_t> bytes, const CodecBackend& backend,
                           EnhancerClient& enhancer,
                           std::vector<DecodeFrameTiming>* timings = nullptr);

// ---------------------------------------------------------------------------
// Latency accounting. BU frames overlap detection with compression; RU
// stages run back to back.

double encoder_latency_ms(const FrameStats& frame);
double decoder_latency_ms(const DecodeFrameTiming& frame);

struct RoleLatency {
  std::size_t frames = 0;
  double mean_ms = 0;
  double fps = 0;  // +inf when mean_ms == 0
};

struct LatencySummary {
  std::vector<double> encoder_ms;
  std::vector<double> decoder_ms;
  RoleLatency encode_bu, encode_ru, encode_all;
  RoleLatency decode_bu, decode_ru, decode_all;
};

LatencySummary timing_report(const EncodeStats& stats,
                             std::span<const DecodeFrameTiming> decode_durations);
std::string format_timing_report(const LatencySummary& summary);

// Line-oriented per-frame report written next to an encoded stream.
std::string format_encode_stats(const EncodeStats& stats);

}  // namespace rclc
