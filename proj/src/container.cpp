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

#include "rclc/container.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <string>

#include "rclc/error.hpp"

namespace rclc {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic = {'R', 'C', 'L', 'C'};
constexpr std::uint8_t kLumaOnlyBit = 0x80;

class Writer {
 public:
  explicit Writer(std::vector<std::uint8_t>& out) : out_(out) {}
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    u8(static_cast<std::uint8_t>(v));
    u8(static_cast<std::uint8_t>(v >> 8));
  }
  void u32(std::uint32_t v) {
    u16(static_cast<std::uint16_t>(v));
    u16(static_cast<std::uint16_t>(v >> 16));
  }
  void box(const BoundingBox& b) {
    u16(static_cast<std::uint16_t>(b.x0));
    u16(static_cast<std::uint16_t>(b.y0));
    u16(static_cast<std::uint16_t>(b.x1));
    u16(static_cast<std::uint16_t>(b.y1));
  }
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }

 private:
  std::vector<std::uint8_t>& out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}
  void need(std::size_t n, const char* what) const {
    if (in_.size() - pos_ < n) {
      throw Error(ErrorCode::kTruncated, std::string("stream ends inside ") + what + " at byte " +
                                             std::to_string(pos_));
    }
  }
  std::uint8_t u8() { return in_[pos_++]; }
  std::uint16_t u16() {
    const std::uint16_t lo = u8();
    return static_cast<std::uint16_t>(lo | (u8() << 8));
  }
  std::uint32_t u32() {
    const std::uint32_t lo = u16();
    return lo | (static_cast<std::uint32_t>(u16()) << 16);
  }
  BoundingBox box() {
    BoundingBox b;
    b.x0 = u16();
    b.y0 = u16();
    b.x1 = u16();
    b.y1 = u16();
    return b;
  }
  std::span<const std::uint8_t> bytes(std::size_t n) {
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

void CheckHeader(const StreamHeader& h) {
  if (h.width == 0 || h.height == 0) {
    throw Error(ErrorCode::kInvalidRecord, "stream dimensions must be nonzero");
  }
  if (h.frame_rate_num == 0 || h.frame_rate_den == 0) {
    throw Error(ErrorCode::kInvalidRecord, "frame rate must be nonzero");
  }
}

void CheckRecord(const StreamHeader& h, const FrameRecord& r, std::size_t index) {
  const auto where = [&] { return "frame " + std::to_string(index) + ": "; };
  if (!r.roi_box.within(h.width, h.height) || !r.compressed_box.within(h.width, h.height)) {
    throw Error(ErrorCode::kBoxOutOfFrame, where() + "box outside the " + std::to_string(h.width) +
                                               "x" + std::to_string(h.height) + " frame");
  }
  if (r.qp > 51) throw Error(ErrorCode::kInvalidRecord, where() + "qp above 51");
  if (r.payload.size() > 0xFFFFFFFFu) {
    throw Error(ErrorCode::kInvalidRecord, where() + "payload too large");
  }
  if (r.role == FrameKind::kBu) {
    if (r.reference_index) throw Error(ErrorCode::kInvalidRecord, where() + "BU with a reference");
    if (r.compressed_box != r.roi_box) {
      throw Error(ErrorCode::kBoxOutOfFrame, where() + "BU compressed_box must equal roi_box");
    }
  } else {
    if (!r.reference_index) throw Error(ErrorCode::kInvalidRecord, where() + "RU without reference");
    if (*r.reference_index >= index) {
      throw Error(ErrorCode::kMissingReference,
                  where() + "references frame " + std::to_string(*r.reference_index));
    }
    if (!r.compressed_box.contains(r.roi_box)) {
      throw Error(ErrorCode::kBoxOutOfFrame, where() + "compressed_box " +
                                                 to_string(r.compressed_box) + " does not cover " +
                                                 to_string(r.roi_box));
    }
  }
}

}  // namespace

std::vector<std::uint8_t> write_stream(const StreamHeader& header,
                                       std::span<const FrameRecord> records) {
  CheckHeader(header);
  if (records.size() != header.frame_count) {
    throw Error(ErrorCode::kInconsistentCount,
                "header announces " + std::to_string(header.frame_count) + " frames, got " +
                    std::to_string(records.size()));
  }
  std::size_t total = StreamHeader::kSize;
  for (std::size_t i = 0; i < records.size(); ++i) {
    CheckRecord(header, records[i], i);
    total += records[i].byte_size();
  }

  std::vector<std::uint8_t> out;
  out.reserve(total);
  Writer w(out);
  w.bytes(kMagic);
  w.u16(header.version);
  w.u16(header.width);
  w.u16(header.height);
  w.u32(header.frame_rate_num);
  w.u32(header.frame_rate_den);
  w.u32(header.gof_size);
  w.u8(static_cast<std::uint8_t>(header.blend_mode));
  w.u8(static_cast<std::uint8_t>(static_cast<std::uint8_t>(header.codec) |
                                 (header.layout == ColorLayout::kLumaOnly ? kLumaOnlyBit : 0)));
  w.u32(header.frame_count);
  for (const FrameRecord& r : records) {
    w.u8(static_cast<std::uint8_t>(r.role));
    w.u8(r.qp);
    w.box(r.roi_box);
    w.box(r.compressed_box);
    w.u32(r.reference_index.value_or(FrameRecord::kNoReference));
    w.u32(static_cast<std::uint32_t>(r.payload.size()));
    w.bytes(r.payload);
  }
  return out;
}

Stream read_stream(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  r.need(kMagic.size(), "magic");
  const auto magic = r.bytes(kMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) {
    throw Error(ErrorCode::kBadMagic, "not an RCLC stream");
  }
  r.need(StreamHeader::kSize - kMagic.size(), "header");
  Stream s;
  StreamHeader& h = s.header;
  h.version = r.u16();
  if (h.version != StreamHeader::kVersion) {
    throw Error(ErrorCode::kUnsupportedVersion, "version " + std::to_string(h.version));
  }
  h.width = r.u16();
  h.height = r.u16();
  h.frame_rate_num = r.u32();
  h.frame_rate_den = r.u32();
  h.gof_size = r.u32();
  const std::uint8_t blend = r.u8();
  if (blend > 1) throw Error(ErrorCode::kInvalidRecord, "unknown blend mode " + std::to_string(blend));
  h.blend_mode = static_cast<BlendMode>(blend);
  const std::uint8_t codec = r.u8();
  const std::uint8_t codec_id = codec & ~kLumaOnlyBit;
  if (codec_id > 1) throw Error(ErrorCode::kInvalidRecord, "unknown codec tag " + std::to_string(codec_id));
  h.codec = static_cast<CodecTag>(codec_id);
  h.layout = (codec & kLumaOnlyBit) != 0 ? ColorLayout::kLumaOnly : ColorLayout::kI420;
  h.frame_count = r.u32();
  CheckHeader(h);

  s.records.reserve(std::min<std::size_t>(h.frame_count, r.remaining() / FrameRecord::kFixedSize));
  for (std::uint32_t i = 0; i < h.frame_count; ++i) {
    r.need(FrameRecord::kFixedSize, "frame record");
    FrameRecord rec;
    const std::uint8_t role = r.u8();
    if (role > 1) throw Error(ErrorCode::kInvalidRecord, "unknown role " + std::to_string(role));
    rec.role = static_cast<FrameKind>(role);
    rec.qp = r.u8();
    rec.roi_box = r.box();
    rec.compressed_box = r.box();
    const std::uint32_t ref = r.u32();
    if (ref != FrameRecord::kNoReference) rec.reference_index = ref;
    const std::uint32_t len = r.u32();
    r.need(len, "payload");
    const auto payload = r.bytes(len);
    rec.payload.assign(payload.begin(), payload.end());
    CheckRecord(h, rec, i);
    s.records.push_back(std::move(rec));
  }
  if (r.remaining() != 0) {
    throw Error(ErrorCode::kInvalidRecord,
                std::to_string(r.remaining()) + " trailing bytes after the last record");
  }
  return s;
}

std::size_t stream_size(const StreamHeader&, std::span<const FrameRecord> records) {
  std::size_t total = StreamHeader::kSize;
  for (const FrameRecord& r : records) total += r.byte_size();
  return total;
}

}  // namespace rclc
