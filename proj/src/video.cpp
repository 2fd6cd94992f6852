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

#include "rclc/video.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <optional>
#include <string_view>

#include "rclc/error.hpp"

namespace rclc {

VideoSequence VideoSequence::make(int width, int height, FrameRate rate, ColorLayout layout) {
  VideoSequence seq;
  seq.width = width;
  seq.height = height;
  seq.rate = rate;
  seq.layout = layout;
  if (layout == ColorLayout::kLumaOnly) seq.y4m_tags.push_back("Cmono");
  return seq;
}

void VideoSequence::validate() const {
  if (frames.empty()) throw Error(ErrorCode::kInvalidArgument, "sequence has no frames");
  if (rate.num == 0 || rate.den == 0) {
    throw Error(ErrorCode::kInvalidArgument, "frame rate must be nonzero");
  }
  validate_dimensions(width, height, layout);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const Raster& f = frames[i];
    if (f.width() != width || f.height() != height || f.layout() != layout) {
      throw Error(ErrorCode::kInvalidArgument,
                  "frame " + std::to_string(i) + " does not match sequence geometry");
    }
  }
}

namespace {

constexpr std::string_view kSignature = "YUV4MPEG2";
constexpr std::string_view kFrameMarker = "FRAME";

template <typename T>
std::optional<T> ParseNumber(std::string_view s) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::vector<std::string_view> SplitTokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    const std::size_t end = std::min(line.find(' ', pos), line.size());
    if (end > pos) tokens.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

ColorLayout LayoutFromTag(std::string_view colorspace) {
  if (colorspace.starts_with("420")) return ColorLayout::kI420;
  if (colorspace == "mono") return ColorLayout::kLumaOnly;
  throw Error(ErrorCode::kUnsupportedColorSpace,
              "color space C" + std::string(colorspace) + " is not 4:2:0");
}

void ReadPlanes(std::span<const std::uint8_t> src, Raster& frame) {
  std::size_t offset = 0;
  for (std::size_t p = 0; p < frame.plane_count(); ++p) {
    auto dst = frame.plane(p).samples();
    std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(offset), dst.size(), dst.begin());
    offset += dst.size();
  }
}

void AppendPlanes(const Raster& frame, std::vector<std::uint8_t>& out) {
  for (std::size_t p = 0; p < frame.plane_count(); ++p) {
    const auto s = frame.plane(p).samples();
    out.insert(out.end(), s.begin(), s.end());
  }
}

}  // namespace

VideoSequence parse_y4m(std::span<const std::uint8_t> bytes) {
  const std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  const std::size_t eol = text.find('\n');
  if (eol == std::string_view::npos) {
    throw Error(ErrorCode::kMalformedHeader, "missing header line terminator");
  }
  const auto tokens = SplitTokens(text.substr(0, eol));
  if (tokens.empty() || tokens[0] != kSignature) {
    throw Error(ErrorCode::kMalformedHeader, "missing YUV4MPEG2 signature");
  }

  VideoSequence seq;
  std::optional<int> width;
  std::optional<int> height;
  std::optional<FrameRate> rate;
  ColorLayout layout = ColorLayout::kI420;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const std::string_view tok = tokens[i];
    const std::string_view value = tok.substr(1);
    switch (tok[0]) {
      case 'W':
        width = ParseNumber<int>(value);
        if (!width || *width <= 0) throw Error(ErrorCode::kMalformedHeader, "bad W token");
        break;
      case 'H':
        height = ParseNumber<int>(value);
        if (!height || *height <= 0) throw Error(ErrorCode::kMalformedHeader, "bad H token");
        break;
      case 'F': {
        const std::size_t colon = value.find(':');
        const auto num = ParseNumber<std::uint32_t>(value.substr(0, colon));
        const auto den = colon == std::string_view::npos
                             ? std::nullopt
                             : ParseNumber<std::uint32_t>(value.substr(colon + 1));
        if (!num || !den || *num == 0 || *den == 0) {
          throw Error(ErrorCode::kMalformedHeader, "bad F token");
        }
        rate = FrameRate{*num, *den};
        break;
      }
      case 'C':
        layout = LayoutFromTag(value);
        seq.y4m_tags.emplace_back(tok);
        break;
      default:
        seq.y4m_tags.emplace_back(tok);
        break;
    }
  }
  if (!width || !height || !rate) {
    throw Error(ErrorCode::kMalformedHeader, "header lacks one of the W, H, F tokens");
  }
  try {
    validate_dimensions(*width, *height, layout);
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformedHeader, e.what());
  }
  seq.width = *width;
  seq.height = *height;
  seq.rate = *rate;
  seq.layout = layout;

  const std::size_t frame_size = frame_byte_size(*width, *height, layout);
  std::size_t pos = eol + 1;
  while (pos < bytes.size()) {
    const std::size_t line_end = text.find('\n', pos);
    if (line_end == std::string_view::npos ||
        !text.substr(pos, line_end - pos).starts_with(kFrameMarker)) {
      throw Error(ErrorCode::kMalformedHeader,
                  "expected FRAME marker at byte " + std::to_string(pos));
    }
    pos = line_end + 1;
    if (bytes.size() - pos < frame_size) {
      throw Error(ErrorCode::kTruncatedFrame,
                  "frame " + std::to_string(seq.frames.size()) + " has " +
                      std::to_string(bytes.size() - pos) + " of " + std::to_string(frame_size) +
                      " bytes");
    }
    Raster frame(*width, *height, layout);
    ReadPlanes(bytes.subspan(pos, frame_size), frame);
    seq.frames.push_back(std::move(frame));
    pos += frame_size;
  }
  if (seq.frames.empty()) throw Error(ErrorCode::kTruncatedFrame, "stream has no frames");
  return seq;
}

std::vector<std::uint8_t> write_y4m(const VideoSequence& seq) {
  seq.validate();
  std::string header = std::string(kSignature) + " W" + std::to_string(seq.width) + " H" +
                       std::to_string(seq.height) + " F" + std::to_string(seq.rate.num) + ":" +
                       std::to_string(seq.rate.den);
  bool has_colorspace = false;
  for (const std::string& tag : seq.y4m_tags) {
    if (tag.empty()) continue;
    if (tag[0] == 'C') {
      if (LayoutFromTag(std::string_view(tag).substr(1)) != seq.layout) {
        throw Error(ErrorCode::kInvalidArgument, "tag " + tag + " contradicts sequence layout");
      }
      has_colorspace = true;
    }
    header += " " + tag;
  }
  if (!has_colorspace && seq.layout == ColorLayout::kLumaOnly) header += " Cmono";
  header += "\n";

  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() +
              seq.frames.size() * (6 + frame_byte_size(seq.width, seq.height, seq.layout)));
  for (const Raster& frame : seq.frames) {
    out.insert(out.end(), kFrameMarker.begin(), kFrameMarker.end());
    out.push_back('\n');
    AppendPlanes(frame, out);
  }
  return out;
}

VideoSequence parse_raw_i420(std::span<const std::uint8_t> bytes, int width, int height,
                             FrameRate rate, ColorLayout layout) {
  validate_dimensions(width, height, layout);
  VideoSequence seq = VideoSequence::make(width, height, rate, layout);
  const std::size_t frame_size = frame_byte_size(width, height, layout);
  if (bytes.empty()) throw Error(ErrorCode::kTruncatedFrame, "raw stream is empty");
  if (bytes.size() % frame_size != 0) {
    throw Error(ErrorCode::kTruncatedFrame, "raw stream of " + std::to_string(bytes.size()) +
                                                " bytes is not a multiple of the " +
                                                std::to_string(frame_size) + "-byte frame");
  }
  for (std::size_t pos = 0; pos < bytes.size(); pos += frame_size) {
    Raster frame(width, height, layout);
    ReadPlanes(bytes.subspan(pos, frame_size), frame);
    seq.frames.push_back(std::move(frame));
  }
  return seq;
}

std::vector<std::uint8_t> write_raw_i420(const VideoSequence& seq) {
  seq.validate();
  std::vector<std::uint8_t> out;
  out.reserve(seq.frames.size() * frame_byte_size(seq.width, seq.height, seq.layout));
  for (const Raster& frame : seq.frames) AppendPlanes(frame, out);
  return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "short write to " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return {bytes.begin(), bytes.end()};
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace rclc
