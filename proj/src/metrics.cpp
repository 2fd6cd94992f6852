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

#include "rclc/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "rclc/error.hpp"
#include "rclc/pipeline.hpp"
#include "rclc/simd/kernels.hpp"

namespace rclc {

namespace {

double PlanePsnr(const Plane& a, const Plane& b, const BoundingBox& region) {
  const simd::Kernels& k = simd::active();
  std::uint64_t sse = 0;
  for (int y = region.y0; y < region.y1; ++y) {
    sse += k.sum_squared_diff(a.row(y).data() + region.x0, b.row(y).data() + region.x0,
                              static_cast<std::size_t>(region.width()));
  }
  if (sse == 0) return kPsnrCap;
  const double mse = static_cast<double>(sse) / static_cast<double>(region.area());
  return std::min(kPsnrCap, 10.0 * std::log10(255.0 * 255.0 / mse));
}

}  // namespace

double psnr(const Raster& a, const Raster& b, std::optional<BoundingBox> region,
            PsnrWeighting weighting) {
  if (a.width() != b.width() || a.height() != b.height() || a.layout() != b.layout()) {
    throw Error(ErrorCode::kDimensionMismatch, "PSNR inputs differ in geometry");
  }
  const BoundingBox r = region.value_or(BoundingBox::full(a.width(), a.height()));
  if (!r.within(a.width(), a.height())) {
    throw Error(ErrorCode::kOutOfBounds, "PSNR region " + to_string(r) + " outside frame");
  }
  const double luma = PlanePsnr(a.luma(), b.luma(), r);
  if (weighting == PsnrWeighting::kLumaOnly || !a.has_chroma()) return luma;
  const BoundingBox c{r.x0 / 2, r.y0 / 2, chroma_extent(r.x1), chroma_extent(r.y1)};
  const double u = PlanePsnr(a.plane(1), b.plane(1), c);
  const double v = PlanePsnr(a.plane(2), b.plane(2), c);
  return (6.0 * luma + u + v) / 8.0;
}

SequenceQuality roi_psnr(const VideoSequence& reference, const VideoSequence& distorted,
                         std::span<const BoundingBox> roi_boxes, PsnrWeighting weighting) {
  if (reference.frames.size() != distorted.frames.size()) {
    throw Error(ErrorCode::kMismatchedLengths,
                "reference has " + std::to_string(reference.frames.size()) +
                    " frames, distorted " + std::to_string(distorted.frames.size()));
  }
  if (roi_boxes.size() != reference.frames.size()) {
    throw Error(ErrorCode::kMismatchedLengths, std::to_string(roi_boxes.size()) +
                                                   " ROI boxes for " +
                                                   std::to_string(reference.frames.size()) +
                                                   " frames");
  }
  SequenceQuality q;
  for (std::size_t i = 0; i < reference.frames.size(); ++i) {
    q.per_frame.push_back(psnr(reference.frames[i], distorted.frames[i], roi_boxes[i], weighting));
  }
  double sum = 0;
  for (double v : q.per_frame) sum += v;
  q.mean = q.per_frame.empty() ? 0 : sum / static_cast<double>(q.per_frame.size());
  return q;
}

std::vector<BoundingBox> rois_from_detections(const DetectionMap& detections,
                                              std::size_t frame_count, int width, int height) {
  std::vector<BoundingBox> out;
  DetectorState state;
  for (std::size_t i = 0; i < frame_count; ++i) {
    const auto it = detections.find(static_cast<std::uint32_t>(i));
    const std::vector<Detection> none;
    out.push_back(resolve_roi(it == detections.end() ? none : it->second, state, width, height));
  }
  return out;
}

double bitrate_kbps(std::uint64_t stream_bits, const FrameRate& rate, std::size_t frame_count) {
  if (frame_count == 0) throw Error(ErrorCode::kInvalidArgument, "no frames");
  return static_cast<double>(stream_bits) * rate.fps() / static_cast<double>(frame_count) / 1000.0;
}

// ---------------------------------------------------------------------------

std::vector<RdPoint> RdCurve::sorted_validated() const {
  if (points.size() < 4) {
    throw Error(ErrorCode::kDegenerateFit,
                "RD curve needs at least 4 points, has " + std::to_string(points.size()));
  }
  std::vector<RdPoint> sorted = points;
  std::sort(sorted.begin(), sorted.end(),
            [](const RdPoint& a, const RdPoint& b) { return a.bitrate_kbps < b.bitrate_kbps; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const RdPoint& p = sorted[i];
    if (!(p.bitrate_kbps > 0) || !std::isfinite(p.bitrate_kbps) || !std::isfinite(p.psnr_db)) {
      throw Error(ErrorCode::kDegenerateFit, "RD point with non-positive or non-finite value");
    }
    if (i > 0 && !(p.bitrate_kbps > sorted[i - 1].bitrate_kbps &&
                   p.psnr_db > sorted[i - 1].psnr_db)) {
      throw Error(ErrorCode::kDegenerateFit, "RD curve is not strictly monotone");
    }
  }
  return sorted;
}

double LogRateFit::operator()(double psnr_db) const {
  const double t = psnr_db - center;
  return coeff[0] + t * (coeff[1] + t * (coeff[2] + t * coeff[3]));
}

double LogRateFit::integrate(double lo, double hi) const {
  const auto antiderivative = [&](double x) {
    const double t = x - center;
    return t * (coeff[0] + t * (coeff[1] / 2 + t * (coeff[2] / 3 + t * coeff[3] / 4)));
  };
  return antiderivative(hi) - antiderivative(lo);
}

LogRateFit fit_log_rate(std::span<const RdPoint> points, double center) {
  // Normal equations (Vᵀ V) c = Vᵀ y; for four points this is the exact
  // interpolant. Solved by Gaussian elimination with partial pivoting.
  long double a[4][5] = {};
  for (const RdPoint& p : points) {
    const long double t = static_cast<long double>(p.psnr_db) - center;
    const long double y = std::log10(static_cast<long double>(p.bitrate_kbps));
    long double pow_t[7];
    pow_t[0] = 1;
    for (int k = 1; k < 7; ++k) pow_t[k] = pow_t[k - 1] * t;
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) a[r][c] += pow_t[r + c];
      a[r][4] += pow_t[r] * y;
    }
  }
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    }
    if (std::fabs(a[pivot][col]) < 1e-300L) {
      throw Error(ErrorCode::kDegenerateFit, "singular RD fit");
    }
    for (int c = 0; c < 5; ++c) std::swap(a[col][c], a[pivot][c]);
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const long double f = a[r][col] / a[col][col];
      for (int c = col; c < 5; ++c) a[r][c] -= f * a[col][c];
    }
  }
  LogRateFit fit;
  fit.center = center;
  for (int k = 0; k < 4; ++k) fit.coeff[k] = static_cast<double>(a[k][4] / a[k][k]);
  return fit;
}

double bd_rate(const RdCurve& anchor, const RdCurve& test) {
  const auto a = anchor.sorted_validated();
  const auto t = test.sorted_validated();
  const double lo = std::max(a.front().psnr_db, t.front().psnr_db);
  const double hi = std::min(a.back().psnr_db, t.back().psnr_db);
  if (!(hi > lo)) {
    throw Error(ErrorCode::kNoOverlap, "PSNR ranges of the two curves do not overlap");
  }
  const double center = 0.5 * (lo + hi);
  const LogRateFit fa = fit_log_rate(a, center);
  const LogRateFit ft = fit_log_rate(t, center);
  const double mean_diff = (ft.integrate(lo, hi) - fa.integrate(lo, hi)) / (hi - lo);
  return (std::pow(10.0, mean_diff) - 1.0) * 100.0;
}

std::vector<RdPoint> parse_rd_csv(std::string_view text) {
  std::vector<RdPoint> out;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;
    if (out.empty() && line.starts_with("bitrate")) continue;
    const std::size_t comma = line.find(',');
    RdPoint p;
    const auto parse = [](std::string_view s, double& v) {
      while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
      while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      return ec == std::errc() && ptr == s.data() + s.size();
    };
    if (comma == std::string_view::npos || !parse(line.substr(0, comma), p.bitrate_kbps) ||
        !parse(line.substr(comma + 1), p.psnr_db)) {
      throw Error(ErrorCode::kParseError, "RD line " + std::to_string(line_no) +
                                              ": expected bitrate_kbps,psnr_db");
    }
    out.push_back(p);
  }
  return out;
}

std::string write_rd_csv(std::span<const RdPoint> points) {
  std::ostringstream out;
  out << "bitrate_kbps,psnr_db\n";
  out << std::setprecision(17);
  for (const RdPoint& p : points) out << p.bitrate_kbps << ',' << p.psnr_db << '\n';
  return out.str();
}

RdCurve build_rd_curve(std::span<const std::vector<std::uint8_t>> streams,
                       const VideoSequence& reference, std::span<const BoundingBox> roi_boxes,
                       const CodecBackend& backend, EnhancerClient& enhancer,
                       PsnrWeighting weighting) {
  RdCurve curve;
  for (const auto& stream : streams) {
    const VideoSequence decoded = decode_video(stream, backend, enhancer);
    const SequenceQuality q = roi_psnr(reference, decoded, roi_boxes, weighting);
    curve.points.push_back({bitrate_kbps(8ull * stream.size(), decoded.rate, decoded.frames.size()),
                            q.mean});
  }
  return curve;
}

std::vector<QpPair> rclc_ladder() { return {{22, 32}, {27, 37}, {32, 42}, {37, 47}}; }

std::vector<QpPair> anchor_ladder() { return {{32, 32}, {37, 37}, {42, 42}, {47, 47}}; }

std::vector<RdSweepEntry> rd_sweep(const VideoSequence& seq, const EncoderOptions& base,
                                   std::span<const QpPair> ladder, Detector& detector,
                                   const CodecBackend& backend, EnhancerClient& enhancer,
                                   std::span<const BoundingBox> roi_boxes,
                                   PsnrWeighting weighting) {
  std::vector<RdSweepEntry> out;
  for (const QpPair& qps : ladder) {
    EncoderOptions options = base;
    options.gof.qp_roi = qps.qp_roi;
    options.gof.qp_bg = qps.qp_bg;
    EncodeResult encoded = encode_video(seq, options, detector, backend);
    const VideoSequence decoded = decode_video(encoded.bytes, backend, enhancer);
    const SequenceQuality q = roi_psnr(seq, decoded, roi_boxes, weighting);
    const double kbps = bitrate_kbps(encoded.stats.stream_bits, seq.rate, seq.frames.size());
    out.push_back({qps, std::move(encoded.stats), {kbps, q.mean}});
  }
  return out;
}

}  // namespace rclc
