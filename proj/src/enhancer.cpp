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

#include "rclc/enhancer.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "rclc/error.hpp"
#include "rclc/process.hpp"
#include "rclc/simd/kernels.hpp"

namespace rclc {

namespace {

int RampWeight(int j, int n) {
  // Weight of the inside sample for ring position j (0 = outermost) of n.
  return ((j + 1) * 512 + (n + 1)) / (2 * (n + 1));
}

std::uint8_t Mix(std::uint8_t inside, std::uint8_t outside, int w) {
  return static_cast<std::uint8_t>((inside * w + outside * (256 - w) + 128) >> 8);
}

void FeatherPlane(Plane& plane, const BoundingBox& b, int band) {
  const int width = plane.width();
  const int height = plane.height();

  // Left and right borders, rows inside the box.
  {
    const Plane src = plane;
    const int inner = std::min(band, b.width() / 2);
    for (int side = 0; side < 2 && inner > 0; ++side) {
      const bool left = side == 0;
      const int edge = left ? b.x0 : b.x1;
      const int outer = std::min(band, left ? edge : width - edge);
      if (outer == 0) continue;
      const int n = inner + outer;
      // Reference columns just beyond the ring, clamped to the frame/box.
      const int out_ref = left ? std::max(edge - outer - 1, 0) : std::min(edge + outer, width - 1);
      const int in_ref = left ? edge + inner : edge - inner - 1;
      for (int y = b.y0; y < b.y1; ++y) {
        const std::uint8_t o = src.at(out_ref, y);
        const std::uint8_t i = src.at(in_ref, y);
        for (int j = 0; j < n; ++j) {
          const int x = left ? edge - outer + j : edge + outer - 1 - j;
          plane.at(x, y) = Mix(i, o, RampWeight(j, n));
        }
      }
    }
  }

  // Top and bottom borders, columns inside the box; whole row segments.
  {
    const Plane src = plane;
    const simd::Kernels& k = simd::active();
    const int inner = std::min(band, b.height() / 2);
    const auto seg = static_cast<std::size_t>(b.width());
    for (int side = 0; side < 2 && inner > 0; ++side) {
      const bool top = side == 0;
      const int edge = top ? b.y0 : b.y1;
      const int outer = std::min(band, top ? edge : height - edge);
      if (outer == 0) continue;
      const int n = inner + outer;
      const int out_ref = top ? std::max(edge - outer - 1, 0) : std::min(edge + outer, height - 1);
      const int in_ref = top ? edge + inner : edge - inner - 1;
      const std::uint8_t* o = src.row(out_ref).data() + b.x0;
      const std::uint8_t* i = src.row(in_ref).data() + b.x0;
      for (int j = 0; j < n; ++j) {
        const int y = top ? edge - outer + j : edge + outer - 1 - j;
        k.blend(i, o, seg, RampWeight(j, n), plane.row(y).data() + b.x0);
      }
    }
  }
}

}  // namespace

void feather_seam_into(Raster& frame, const BoundingBox& box, int band) {
  if (band < 1) throw Error(ErrorCode::kInvalidArgument, "feather band must be >= 1");
  if (!box.within(frame.width(), frame.height())) {
    throw Error(ErrorCode::kOutOfBounds, "seam box " + to_string(box) + " outside frame");
  }
  FeatherPlane(frame.luma(), box, band);
  if (frame.has_chroma()) {
    const BoundingBox cb = chroma_box(box);
    if (cb.valid()) {
      for (std::size_t p = 1; p < frame.plane_count(); ++p) {
        FeatherPlane(frame.plane(p), cb, std::max(1, band / 2));
      }
    }
  }
}

Raster feather_seam(const Raster& frame, const BoundingBox& box, int band) {
  Raster out = frame;
  feather_seam_into(out, box, band);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::array<std::uint8_t, 4> kMagic = {'R', 'C', 'E', 'N'};

void PutU16(std::vector<std::uint8_t>& out, int v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
}

int GetU16(std::span<const std::uint8_t> in, std::size_t at) { return in[at] | (in[at + 1] << 8); }

}  // namespace

std::vector<std::uint8_t> encode_enhancer_request(const EnhancerRequest& request) {
  const Raster& p = request.patch;
  std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
  out.reserve(kEnhancerRequestHeaderSize + p.byte_size());
  out.push_back(static_cast<std::uint8_t>(request.task));
  PutU16(out, p.width());
  PutU16(out, p.height());
  out.push_back(static_cast<std::uint8_t>(p.plane_count()));
  PutU16(out, request.box.x0);
  PutU16(out, request.box.y0);
  PutU16(out, request.box.x1);
  PutU16(out, request.box.y1);
  for (std::size_t i = 0; i < p.plane_count(); ++i) {
    const auto s = p.plane(i).samples();
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

EnhancerStatus parse_enhancer_request_header(std::span<const std::uint8_t> header,
                                             RequestHeader& out) {
  if (header.size() < kEnhancerRequestHeaderSize ||
      !std::equal(kMagic.begin(), kMagic.end(), header.begin())) {
    return EnhancerStatus::kBadMagic;
  }
  if (header[4] > 1) return EnhancerStatus::kBadRequest;
  out.task = static_cast<EnhanceTask>(header[4]);
  out.width = GetU16(header, 5);
  out.height = GetU16(header, 7);
  out.planes = header[9];
  out.box = {GetU16(header, 10), GetU16(header, 12), GetU16(header, 14), GetU16(header, 16)};
  if (out.planes != 1 && out.planes != 3) return EnhancerStatus::kBadRequest;
  if (out.width < 2 || out.height < 2) return EnhancerStatus::kBadRequest;
  if (out.planes == 3 && (out.width % 2 != 0 || out.height % 2 != 0)) {
    return EnhancerStatus::kBadRequest;
  }
  return EnhancerStatus::kOk;
}

std::size_t request_plane_bytes(const RequestHeader& header) {
  return frame_byte_size(header.width, header.height,
                         header.planes == 3 ? ColorLayout::kI420 : ColorLayout::kLumaOnly);
}

std::vector<std::uint8_t> encode_enhancer_response(EnhancerStatus status, const Raster* patch) {
  std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
  out.push_back(static_cast<std::uint8_t>(status));
  if (status == EnhancerStatus::kOk && patch != nullptr) {
    for (std::size_t i = 0; i < patch->plane_count(); ++i) {
      const auto s = patch->plane(i).samples();
      out.insert(out.end(), s.begin(), s.end());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

EnhancerClient::EnhancerClient(Kind kind, int band, std::string command)
    : kind_(kind), band_(band), command_(std::move(command)) {}

EnhancerClient EnhancerClient::none() { return EnhancerClient(Kind::kNone, 0, {}); }

EnhancerClient EnhancerClient::feather(int band) {
  if (band < 1) throw Error(ErrorCode::kInvalidArgument, "feather band must be >= 1");
  return EnhancerClient(Kind::kFeather, band, {});
}

EnhancerClient EnhancerClient::external(std::string command, int margin) {
  if (command.empty()) throw Error(ErrorCode::kInvalidArgument, "empty enhancer command");
  if (margin < 0) throw Error(ErrorCode::kInvalidArgument, "negative seam margin");
  return EnhancerClient(Kind::kExternal, margin, std::move(command));
}

std::string EnhancerClient::describe() const {
  switch (kind_) {
    case Kind::kNone: return "none";
    case Kind::kFeather: return "feather:" + std::to_string(band_);
    case Kind::kExternal: return "extern:" + command_;
  }
  return "unknown";
}

Raster EnhancerClient::request(EnhanceTask task, const Raster& patch, const BoundingBox& box) {
  if (!child_) child_ = std::make_shared<ChildProcess>(command_);
  const auto bytes = encode_enhancer_request({task, box, patch});
  auto reply = child_->exchange(bytes, kEnhancerResponseHeaderSize);
  if (reply.size() < kEnhancerResponseHeaderSize ||
      !std::equal(kMagic.begin(), kMagic.end(), reply.begin())) {
    child_.reset();
    throw Error(ErrorCode::kEnhancerFailed, "enhancer reply lacks the RCEN magic");
  }
  if (reply[4] != 0) {
    throw Error(ErrorCode::kEnhancerFailed,
                "enhancer rejected the request with status " + std::to_string(reply[4]));
  }
  const std::size_t want = kEnhancerResponseHeaderSize + patch.byte_size();
  if (reply.size() < want) {
    const auto rest = child_->read_exact(want - reply.size());
    reply.insert(reply.end(), rest.begin(), rest.end());
  }
  if (reply.size() != want) {
    child_.reset();
    throw Error(ErrorCode::kEnhancerFailed, "enhancer reply has the wrong size");
  }
  Raster out(patch.width(), patch.height(), patch.layout());
  std::size_t pos = kEnhancerResponseHeaderSize;
  for (std::size_t i = 0; i < out.plane_count(); ++i) {
    auto dst = out.plane(i).samples();
    std::copy_n(reply.begin() + static_cast<std::ptrdiff_t>(pos), dst.size(), dst.begin());
    pos += dst.size();
  }
  return out;
}

namespace {

// Crop-safe version of a box: even-aligned under I420, clipped to the frame.
BoundingBox PatchBox(const Raster& frame, const BoundingBox& b) {
  return align_box(b, 2, frame.width(), frame.height());
}

}  // namespace

void EnhancerClient::enhance_bu(Raster& frame, const BoundingBox& roi_box) {
  if (kind_ != Kind::kExternal) return;
  const BoundingBox region = PatchBox(frame, roi_box);
  const Raster patch = crop(frame, region);
  const Raster enhanced =
      request(EnhanceTask::kBuEnhance, patch, BoundingBox::full(region.width(), region.height()));
  paste_into(frame, enhanced, region);
}

void EnhancerClient::smooth_seam(Raster& frame, const BoundingBox& compressed_box) {
  switch (kind_) {
    case Kind::kNone:
      return;
    case Kind::kFeather:
      feather_seam_into(frame, compressed_box, band_);
      return;
    case Kind::kExternal: {
      const BoundingBox grown{compressed_box.x0 - band_, compressed_box.y0 - band_,
                              compressed_box.x1 + band_, compressed_box.y1 + band_};
      const BoundingBox region = PatchBox(frame, grown);
      const Raster patch = crop(frame, region);
      const BoundingBox local{compressed_box.x0 - region.x0, compressed_box.y0 - region.y0,
                              compressed_box.x1 - region.x0, compressed_box.y1 - region.y0};
      paste_into(frame, request(EnhanceTask::kRuSeam, patch, local), region);
      return;
    }
  }
}

// ---------------------------------------------------------------------------

std::vector<ConformanceCheck> run_enhancer_conformance(const std::string& command) {
  std::vector<ConformanceCheck> checks;
  std::mt19937 rng(20260101);
  const auto random_patch = [&](int w, int h, ColorLayout layout) {
    Raster r(w, h, layout);
    for (std::size_t p = 0; p < r.plane_count(); ++p) {
      for (auto& v : r.plane(p).samples()) v = static_cast<std::uint8_t>(rng() & 0xFF);
    }
    return r;
  };
  const auto record = [&](std::string name, auto&& fn) {
    ConformanceCheck c{std::move(name), false, {}};
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.passed = false;
      c.detail = e.what();
    }
    checks.push_back(std::move(c));
  };

  EnhancerClient client = EnhancerClient::external(command);
  record("shape preservation", [&](ConformanceCheck& c) {
    const std::array<std::array<int, 2>, 4> sizes = {{{2, 2}, {16, 8}, {64, 48}, {130, 66}}};
    for (const auto& [w, h] : sizes) {
      for (ColorLayout layout : {ColorLayout::kI420, ColorLayout::kLumaOnly}) {
        for (EnhanceTask task : {EnhanceTask::kBuEnhance, EnhanceTask::kRuSeam}) {
          const Raster in = random_patch(w, h, layout);
          const Raster out = client.request(task, in, BoundingBox::full(w, h));
          if (out.width() != w || out.height() != h || out.layout() != layout) {
            c.detail = "size " + std::to_string(w) + "x" + std::to_string(h) + " changed";
            return;
          }
        }
      }
    }
    c.passed = true;
  });
  record("determinism", [&](ConformanceCheck& c) {
    const Raster in = random_patch(48, 32, ColorLayout::kI420);
    const BoundingBox box{8, 8, 40, 24};
    const Raster a = client.request(EnhanceTask::kRuSeam, in, box);
    const Raster b = client.request(EnhanceTask::kRuSeam, in, box);
    c.passed = a == b;
    if (!c.passed) c.detail = "identical requests gave different replies";
  });
  record("malformed message survival", [&](ConformanceCheck& c) {
    ChildProcess child(command);
    std::vector<std::uint8_t> bad(kEnhancerRequestHeaderSize, 0);
    bad[0] = 'X';
    bad[1] = 'X';
    bad[2] = 'X';
    bad[3] = 'X';
    const auto reply = child.exchange(bad, kEnhancerResponseHeaderSize);
    if (reply.size() < kEnhancerResponseHeaderSize || reply[4] == 0) {
      c.detail = "malformed magic was not answered with a nonzero status";
      return;
    }
    const Raster in = random_patch(16, 16, ColorLayout::kI420);
    const auto good = encode_enhancer_request({EnhanceTask::kBuEnhance, {0, 0, 16, 16}, in});
    const std::size_t want = kEnhancerResponseHeaderSize + in.byte_size();
    auto next = child.exchange(good, want);
    c.passed = next.size() == want && next[4] == 0;
    if (!c.passed) c.detail = "server did not answer a valid request after a malformed one";
  });
  return checks;
}

}  // namespace rclc
