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

#include "rclc/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <iomanip>
#include <limits>
#include <sstream>

#include "rclc/error.hpp"

namespace rclc {

namespace {

using Clock = std::chrono::steady_clock;

double MsSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct TimedDetections {
  std::vector<Detection> detections;
  double ms = 0;
};

TimedDetections RunDetector(Detector& detector, std::uint32_t index, const Raster& frame,
                            const DetectorState& state) {
  const auto start = Clock::now();
  TimedDetections out{detector.detect(index, frame, state), 0};
  out.ms = MsSince(start);
  return out;
}

}  // namespace

EncodeResult encode_video(const VideoSequence& seq, const EncoderOptions& options,
                          Detector& detector, const CodecBackend& backend) {
  seq.validate();
  options.gof.validate();
  if (seq.width > 0xFFFF || seq.height > 0xFFFF) {
    throw Error(ErrorCode::kInvalidArgument, "frame dimensions exceed 65535");
  }
  const auto wall_start = Clock::now();
  const Scheduler scheduler(options.gof, options.forced_bu);

  StreamHeader header;
  header.width = static_cast<std::uint16_t>(seq.width);
  header.height = static_cast<std::uint16_t>(seq.height);
  header.frame_rate_num = seq.rate.num;
  header.frame_rate_den = seq.rate.den;
  header.gof_size = options.gof.gof_size;
  header.blend_mode = options.gof.blend_mode;
  header.codec = backend.tag();
  header.layout = seq.layout;
  header.frame_count = static_cast<std::uint32_t>(seq.frames.size());

  const bool mirror_on =
      options.capture_mirror || options.gof.blend_mode == BlendMode::kRuBlending;
  EnhancerClient mirror_enhancer = options.mirror_enhancer;
  std::optional<Reconstructor> mirror;
  if (mirror_on) mirror.emplace(header, backend, mirror_enhancer, options.capture_mirror);

  EncodeResult result;
  std::vector<FrameRecord> records;
  records.reserve(seq.frames.size());
  std::vector<BoundingBox> rois;
  rois.reserve(seq.frames.size());
  DetectorState state;
  const BoundingBox full = BoundingBox::full(seq.width, seq.height);

  for (std::uint32_t i = 0; i < seq.frames.size(); ++i) {
    const Raster& frame = seq.frames[i];
    const FrameRole role = scheduler.role(i);
    FrameStats fs;
    fs.index = i;
    fs.role = role.kind;
    FrameRecord rec;
    rec.role = role.kind;

    if (role.kind == FrameKind::kBu) {
      fs.qp = options.gof.qp_bg;
      TimedDetections det;
      EncodedRegion region;
      double compress_ms = 0;
      const auto compress = [&] {
        const auto start = Clock::now();
        region = backend.encode(frame, options.gof.qp_bg);
        compress_ms = MsSince(start);
      };
      if (options.concurrent_bu_detection) {
        auto pending = std::async(std::launch::async, RunDetector, std::ref(detector), i,
                                  std::cref(frame), std::cref(state));
        try {
          compress();
        } catch (...) {
          pending.wait();
          throw;
        }
        det = pending.get();
      } else {
        det = RunDetector(detector, i, frame, state);
        compress();
      }
      const BoundingBox roi = resolve_roi(det.detections, state, seq.width, seq.height);
      state.background_model = frame.luma();
      fs.roi_box = roi;
      fs.raw_compressed_box = roi;
      fs.coded_box = full;
      fs.detection_ms = det.ms;
      fs.compression_ms = compress_ms;
      rec.roi_box = roi;
      rec.compressed_box = roi;
      rec.payload = std::move(region.payload);
    } else {
      fs.qp = options.gof.qp_roi;
      const TimedDetections det = RunDetector(detector, i, frame, state);
      const auto calc_start = Clock::now();
      const BoundingBox roi = resolve_roi(det.detections, state, seq.width, seq.height);
      const std::uint32_t ref = *role.reference_index;
      // Under BU blending the reference is the latest BU; under RU blending
      // the previous frame. Either way its ROI is what the decoder still shows.
      const BoundingBox raw = compressed_area(roi, rois[ref]);
      const BoundingBox coded = align_box(raw, options.align_grid, seq.width, seq.height);
      fs.roi_calc_ms = MsSince(calc_start);
      const auto compress_start = Clock::now();
      EncodedRegion region = backend.encode(crop(frame, coded), options.gof.qp_roi);
      fs.compression_ms = MsSince(compress_start);
      fs.detection_ms = det.ms;
      fs.roi_box = roi;
      fs.raw_compressed_box = raw;
      fs.coded_box = coded;
      fs.reference_index = ref;
      rec.roi_box = roi;
      rec.compressed_box = coded;
      rec.reference_index = ref;
      rec.payload = std::move(region.payload);
    }
    rec.qp = static_cast<std::uint8_t>(fs.qp);
    fs.payload_bits = 8ull * rec.payload.size();
    result.stats.total_payload_bits += fs.payload_bits;
    rois.push_back(fs.roi_box);
    if (mirror) mirror->push(rec);
    result.stats.frames.push_back(fs);
    records.push_back(std::move(rec));
  }

  result.bytes = write_stream(header, records);
  result.stats.stream_bits = 8ull * result.bytes.size();
  if (mirror && options.capture_mirror) result.mirror = mirror->take_frames();
  result.stats.wall_ms = MsSince(wall_start);
  return result;
}

// ---------------------------------------------------------------------------

Reconstructor::Reconstructor(const StreamHeader& header, const CodecBackend& backend,
                             EnhancerClient& enhancer, bool keep_all)
    : header_(header), backend_(backend), enhancer_(enhancer), keep_all_(keep_all) {
  if (header.codec != backend.tag()) {
    throw Error(ErrorCode::kInvalidArgument,
                "stream was coded with codec tag " +
                    std::to_string(static_cast<int>(header.codec)) + " but backend is " +
                    backend.name());
  }
}

const Raster* Reconstructor::find(std::uint32_t index) const {
  if (index >= next_index_) return nullptr;
  if (keep_all_) return &frames_[index];
  if (index + 1 == next_index_) return &previous_;
  if (last_bu_index_ && *last_bu_index_ == index) return &last_bu_;
  return nullptr;
}

const Raster& Reconstructor::push(const FrameRecord& record, DecodeFrameTiming* timing) {
  DecodeFrameTiming t;
  t.role = record.role;
  Raster frame;
  if (record.role == FrameKind::kBu) {
    auto start = Clock::now();
    frame = backend_.decode({record.payload, record.qp, header_.width, header_.height,
                             header_.layout});
    t.decompression_ms = MsSince(start);
    start = Clock::now();
    enhancer_.enhance_bu(frame, record.roi_box);
    t.enhancement_ms = MsSince(start);
  } else {
    const Raster* ref = record.reference_index ? find(*record.reference_index) : nullptr;
    if (ref == nullptr) {
      throw Error(ErrorCode::kMissingReference,
                  "frame " + std::to_string(next_index_) + " references unavailable frame " +
                      (record.reference_index ? std::to_string(*record.reference_index)
                                              : std::string("<none>")));
    }
    const BoundingBox& box = record.compressed_box;
    auto start = Clock::now();
    const Raster patch = backend_.decode({record.payload, record.qp, box.width(), box.height(),
                                          header_.layout});
    t.decompression_ms = MsSince(start);
    start = Clock::now();
    frame = *ref;
    paste_into(frame, patch, box);
    t.blending_ms = MsSince(start);
    start = Clock::now();
    enhancer_.smooth_seam(frame, box);
    t.smoothing_ms = MsSince(start);
  }
  if (frame.width() != header_.width || frame.height() != header_.height ||
      frame.layout() != header_.layout) {
    throw Error(ErrorCode::kCorruptPayload, "decoded frame geometry disagrees with the header");
  }
  if (timing != nullptr) *timing = t;

  if (record.role == FrameKind::kBu && !keep_all_) {
    last_bu_ = frame;
    last_bu_index_ = next_index_;
  }
  ++next_index_;
  if (keep_all_) {
    frames_.push_back(std::move(frame));
    return frames_.back();
  }
  previous_ = std::move(frame);
  return previous_;
}

VideoSequence decode_video(std::span<const std::uint8_t> bytes, const CodecBackend& backend,
                           EnhancerClient& enhancer, std::vector<DecodeFrameTiming>* timings) {
  const Stream stream = read_stream(bytes);
  const StreamHeader& h = stream.header;
  Reconstructor rec(h, backend, enhancer, true);
  if (timings != nullptr) timings->clear();
  for (const FrameRecord& r : stream.records) {
    DecodeFrameTiming t;
    rec.push(r, &t);
    if (timings != nullptr) timings->push_back(t);
  }
  VideoSequence seq = VideoSequence::make(h.width, h.height, {h.frame_rate_num, h.frame_rate_den},
                                          h.layout);
  seq.frames = rec.take_frames();
  return seq;
}

// ---------------------------------------------------------------------------

double encoder_latency_ms(const FrameStats& f) {
  if (f.role == FrameKind::kBu) return std::max(f.detection_ms, f.compression_ms);
  return f.detection_ms + f.roi_calc_ms + f.compression_ms;
}

double decoder_latency_ms(const DecodeFrameTiming& f) {
  if (f.role == FrameKind::kBu) return f.decompression_ms + f.enhancement_ms;
  return f.decompression_ms + f.blending_ms + f.smoothing_ms;
}

namespace {

void Accumulate(RoleLatency& r, double ms) {
  r.mean_ms += ms;  // sum until Finish
  ++r.frames;
}

void Finish(RoleLatency& r) {
  if (r.frames == 0) return;
  r.mean_ms /= static_cast<double>(r.frames);
  r.fps = r.mean_ms > 0 ? 1000.0 / r.mean_ms : std::numeric_limits<double>::infinity();
}

}  // namespace

LatencySummary timing_report(const EncodeStats& stats,
                             std::span<const DecodeFrameTiming> decode_durations) {
  LatencySummary s;
  for (const FrameStats& f : stats.frames) {
    if (f.detection_ms < 0 || f.roi_calc_ms < 0 || f.compression_ms < 0) {
      throw Error(ErrorCode::kInvalidArgument, "negative stage duration");
    }
    const double ms = encoder_latency_ms(f);
    s.encoder_ms.push_back(ms);
    Accumulate(f.role == FrameKind::kBu ? s.encode_bu : s.encode_ru, ms);
    Accumulate(s.encode_all, ms);
  }
  for (const DecodeFrameTiming& f : decode_durations) {
    if (f.decompression_ms < 0 || f.enhancement_ms < 0 || f.blending_ms < 0 ||
        f.smoothing_ms < 0) {
      throw Error(ErrorCode::kInvalidArgument, "negative stage duration");
    }
    const double ms = decoder_latency_ms(f);
    s.decoder_ms.push_back(ms);
    Accumulate(f.role == FrameKind::kBu ? s.decode_bu : s.decode_ru, ms);
    Accumulate(s.decode_all, ms);
  }
  for (RoleLatency* r : {&s.encode_bu, &s.encode_ru, &s.encode_all, &s.decode_bu, &s.decode_ru,
                         &s.decode_all}) {
    Finish(*r);
  }
  return s;
}

namespace {

std::string FormatFps(const RoleLatency& r) {
  if (r.frames == 0) return "n/a";
  if (std::isinf(r.fps)) return "unbounded";
  std::ostringstream out;
  out << std::fixed << std::setprecision(2) << r.fps;
  return out.str();
}

void Line(std::ostringstream& out, const char* label, const RoleLatency& r) {
  out << label << " frames=" << r.frames << " mean_ms=" << std::fixed << std::setprecision(3)
      << r.mean_ms << " fps=" << FormatFps(r) << '\n';
}

}  // namespace

std::string format_timing_report(const LatencySummary& s) {
  std::ostringstream out;
  if (!s.encoder_ms.empty()) {
    Line(out, "encoder BU ", s.encode_bu);
    Line(out, "encoder RU ", s.encode_ru);
    Line(out, "encoder all", s.encode_all);
  }
  if (!s.decoder_ms.empty()) {
    Line(out, "decoder BU ", s.decode_bu);
    Line(out, "decoder RU ", s.decode_ru);
    Line(out, "decoder all", s.decode_all);
  }
  return out.str();
}

std::string format_encode_stats(const EncodeStats& stats) {
  std::ostringstream out;
  out << "# frame role qp roi compressed coded ref bits detection_ms roi_calc_ms compression_ms\n";
  for (const FrameStats& f : stats.frames) {
    out << f.index << ' ' << to_string(f.role) << ' ' << f.qp << ' ' << to_string(f.roi_box)
        << ' ' << to_string(f.raw_compressed_box) << ' ' << to_string(f.coded_box) << ' '
        << (f.reference_index ? std::to_string(*f.reference_index) : std::string("-")) << ' '
        << f.payload_bits << ' ' << std::fixed << std::setprecision(3) << f.detection_ms << ' '
        << f.roi_calc_ms << ' ' << f.compression_ms << '\n';
  }
  out << "total_payload_bits " << stats.total_payload_bits << '\n';
  out << "stream_bits " << stats.stream_bits << '\n';
  out << "wall_ms " << std::fixed << std::setprecision(3) << stats.wall_ms << '\n';
  return out.str();
}

}  // namespace rclc
