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

#include "rclc/codec.hpp"

#include <cmath>
#include <filesystem>

#include "rclc/error.hpp"
#include "rclc/process.hpp"
#include "rclc/simd/kernels.hpp"
#include "rclc/video.hpp"

namespace rclc {

int mock_step(int qp) {
  if (qp < 0 || qp > 51) {
    throw Error(ErrorCode::kInvalidArgument, "qp " + std::to_string(qp) + " outside 0..51");
  }
  if (qp <= 4) return 1;
  return static_cast<int>(std::lround(std::pow(2.0, (qp - 4) / 6.0)));
}

namespace {

constexpr std::size_t kMockHeaderSize = 6;

void PutU16(std::vector<std::uint8_t>& out, int v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
}

void PutVarint(std::vector<std::uint8_t>& out, std::size_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<std::uint8_t>((v & 0x7F) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(v));
}

Error Corrupt(const std::string& why) { return Error(ErrorCode::kCorruptPayload, why); }

}  // namespace

EncodedRegion mock_encode(const Raster& patch, int qp) {
  const int step = mock_step(qp);
  if (patch.width() > 0xFFFF || patch.height() > 0xFFFF) {
    throw Error(ErrorCode::kInvalidArgument, "patch too large for the mock codec");
  }
  EncodedRegion region;
  region.qp = qp;
  region.width = patch.width();
  region.height = patch.height();
  region.layout = patch.layout();

  auto& out = region.payload;
  PutU16(out, patch.width());
  PutU16(out, patch.height());
  out.push_back(static_cast<std::uint8_t>(patch.plane_count()));
  out.push_back(static_cast<std::uint8_t>(qp));

  const simd::Kernels& k = simd::active();
  std::vector<std::uint8_t> quantized;
  for (std::size_t p = 0; p < patch.plane_count(); ++p) {
    const auto src = patch.plane(p).samples();
    quantized.resize(src.size());
    k.quantize(src.data(), src.size(), step, quantized.data());
    std::size_t i = 0;
    while (i < quantized.size()) {
      const std::size_t run = k.run_length(quantized.data() + i, quantized.size() - i);
      out.push_back(quantized[i]);
      PutVarint(out, run);
      i += run;
    }
  }
  return region;
}

Raster mock_decode(const EncodedRegion& region) {
  const auto& in = region.payload;
  if (in.size() < kMockHeaderSize) throw Corrupt("payload shorter than its header");
  const int width = in[0] | (in[1] << 8);
  const int height = in[2] | (in[3] << 8);
  const std::size_t planes = in[4];
  const ColorLayout layout = planes == 3 ? ColorLayout::kI420 : ColorLayout::kLumaOnly;
  if (planes != 1 && planes != 3) throw Corrupt("plane count " + std::to_string(planes));
  if (width != region.width || height != region.height || layout != region.layout) {
    throw Corrupt("payload geometry " + std::to_string(width) + "x" + std::to_string(height) +
                  " disagrees with the declared region");
  }
  Raster out;
  try {
    out = Raster(width, height, layout);
  } catch (const Error& e) {
    throw Corrupt(e.what());
  }

  std::size_t pos = kMockHeaderSize;
  for (std::size_t p = 0; p < planes; ++p) {
    auto dst = out.plane(p).samples();
    std::size_t filled = 0;
    while (filled < dst.size()) {
      if (pos >= in.size()) throw Corrupt("payload ends inside plane " + std::to_string(p));
      const std::uint8_t value = in[pos++];
      std::size_t run = 0;
      int shift = 0;
      while (true) {
        if (pos >= in.size()) throw Corrupt("payload ends inside a run length");
        if (shift > 56) throw Corrupt("run length overflows");
        const std::uint8_t byte = in[pos++];
        run |= static_cast<std::size_t>(byte & 0x7F) << shift;
        shift += 7;
        if ((byte & 0x80) == 0) break;
      }
      if (run == 0 || run > dst.size() - filled) {
        throw Corrupt("run of " + std::to_string(run) + " overruns plane " + std::to_string(p));
      }
      std::fill_n(dst.begin() + static_cast<std::ptrdiff_t>(filled), run, value);
      filled += run;
    }
  }
  if (pos != in.size()) throw Corrupt("trailing bytes after the last plane");
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

void validate_command_template(std::string_view command_template) {
  if (command_template.find("{input}") == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidTemplate,
                "command template lacks the {input} placeholder: " + std::string(command_template));
  }
}

ExternTemplates ExternTemplates::parse(std::string_view text) {
  ExternTemplates t;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string line = Trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kInvalidTemplate, "line " + std::to_string(line_no) + " has no '='");
    }
    const std::string key = Trim(std::string_view(line).substr(0, eq));
    const std::string value = Trim(std::string_view(line).substr(eq + 1));
    if (key == "encode") {
      t.encode = value;
    } else if (key == "decode") {
      t.decode = value;
    } else if (key == "format") {
      if (value == "yuv") {
        t.format = ExternFormat::kRawI420;
      } else if (value == "y4m") {
        t.format = ExternFormat::kY4m;
      } else {
        throw Error(ErrorCode::kInvalidTemplate, "format must be yuv or y4m");
      }
    } else {
      throw Error(ErrorCode::kInvalidTemplate, "unknown key '" + key + "'");
    }
  }
  t.validate();
  return t;
}

void ExternTemplates::validate() const {
  validate_command_template(encode);
  validate_command_template(decode);
}

std::string expand_template(std::string_view command_template, const std::string& input,
                            const std::string& output, int qp, int w, int h) {
  std::string out;
  std::size_t pos = 0;
  while (pos < command_template.size()) {
    const std::size_t open = command_template.find('{', pos);
    if (open == std::string_view::npos) {
      out.append(command_template.substr(pos));
      break;
    }
    out.append(command_template.substr(pos, open - pos));
    const std::size_t close = command_template.find('}', open);
    const std::string_view key = close == std::string_view::npos
                                     ? std::string_view{}
                                     : command_template.substr(open + 1, close - open - 1);
    if (key == "input") {
      out += input;
    } else if (key == "output") {
      out += output;
    } else if (key == "qp") {
      out += std::to_string(qp);
    } else if (key == "w") {
      out += std::to_string(w);
    } else if (key == "h") {
      out += std::to_string(h);
    } else {
      out += '{';
      pos = open + 1;
      continue;
    }
    pos = close + 1;
  }
  return out;
}

namespace {

// External encoders get 4:2:0 input; luma-only patches carry neutral chroma.
VideoSequence SingleFrame(const Raster& patch) {
  VideoSequence seq = VideoSequence::make(patch.width(), patch.height(), {30, 1}, ColorLayout::kI420);
  if (patch.has_chroma()) {
    seq.frames.push_back(patch);
  } else {
    Raster full(patch.width(), patch.height(), ColorLayout::kI420);
    const auto src = patch.luma().samples();
    std::copy(src.begin(), src.end(), full.luma().samples().begin());
    seq.frames.push_back(std::move(full));
  }
  return seq;
}

const char* Extension(ExternFormat format) { return format == ExternFormat::kY4m ? ".y4m" : ".yuv"; }

void RunChecked(const std::string& command) {
  const CommandResult r = run_shell(command);
  if (r.exit_code != 0) {
    throw Error(ErrorCode::kCommandFailed, "`" + command + "` exited with " +
                                               std::to_string(r.exit_code) + ": " + r.output);
  }
}

std::vector<std::uint8_t> ReadOutput(const std::filesystem::path& path, const std::string& cmd) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0) {
    throw Error(ErrorCode::kOutputMissing, "`" + cmd + "` produced no " + path.string());
  }
  return read_file(path);
}

}  // namespace

EncodedRegion extern_encode(const Raster& patch, int qp, std::string_view command_template,
                            ExternFormat format) {
  validate_command_template(command_template);
  TempDir dir;
  const auto input = dir.path() / (std::string("input") + Extension(format));
  const auto output = dir.path() / "output.bin";
  const VideoSequence seq = SingleFrame(patch);
  write_file(input, format == ExternFormat::kY4m ? write_y4m(seq) : write_raw_i420(seq));
  const std::string cmd = expand_template(command_template, input.string(), output.string(), qp,
                                          patch.width(), patch.height());
  RunChecked(cmd);
  EncodedRegion region;
  region.payload = ReadOutput(output, cmd);
  region.qp = qp;
  region.width = patch.width();
  region.height = patch.height();
  region.layout = patch.layout();
  return region;
}

Raster extern_decode(const EncodedRegion& region, std::string_view command_template,
                     ExternFormat format) {
  validate_command_template(command_template);
  TempDir dir;
  const auto input = dir.path() / "input.bin";
  const auto output = dir.path() / (std::string("output") + Extension(format));
  write_file(input, region.payload);
  const std::string cmd = expand_template(command_template, input.string(), output.string(),
                                          region.qp, region.width, region.height);
  RunChecked(cmd);
  const auto bytes = ReadOutput(output, cmd);
  VideoSequence seq;
  try {
    seq = format == ExternFormat::kY4m
              ? parse_y4m(bytes)
              : parse_raw_i420(bytes, region.width, region.height, {30, 1}, ColorLayout::kI420);
  } catch (const Error& e) {
    throw Error(ErrorCode::kCorruptPayload, std::string("decoder output unreadable: ") + e.what());
  }
  if (seq.frames.size() != 1 || seq.width != region.width || seq.height != region.height ||
      seq.layout != ColorLayout::kI420) {
    throw Error(ErrorCode::kCorruptPayload, "decoder output does not match the region geometry");
  }
  Raster frame = std::move(seq.frames.front());
  if (region.layout == ColorLayout::kLumaOnly) {
    std::vector<Plane> planes;
    planes.push_back(std::move(frame.luma()));
    return Raster::from_planes(ColorLayout::kLumaOnly, std::move(planes));
  }
  return frame;
}

ExternCodec::ExternCodec(ExternTemplates templates) : templates_(std::move(templates)) {
  templates_.validate();
}

EncodedRegion ExternCodec::encode(const Raster& patch, int qp) const {
  return extern_encode(patch, qp, templates_.encode, templates_.format);
}

Raster ExternCodec::decode(const EncodedRegion& region) const {
  return extern_decode(region, templates_.decode, templates_.format);
}

}  // namespace rclc
