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

#include "rclc/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "rclc/container.hpp"
#include "rclc/error.hpp"
#include "rclc/metrics.hpp"
#include "rclc/pipeline.hpp"
#include "rclc/synth.hpp"

namespace rclc::cli {

namespace {

template <typename T>
std::optional<T> ParseNumber(std::string_view text) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::vector<std::string_view> Split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::pair<int, int> ParsePair(std::string_view text, const std::string& flag) {
  const auto parts = Split(text, ',');
  if (parts.size() != 2) throw UsageError(flag, "expected X,Y");
  const auto a = ParseNumber<int>(parts[0]);
  const auto b = ParseNumber<int>(parts[1]);
  if (!a || !b) throw UsageError(flag, "expected integers X,Y");
  return {*a, *b};
}

std::vector<int> ParseIntList(std::string_view text, const std::string& flag) {
  std::vector<int> values;
  for (std::string_view part : Split(text, ',')) {
    const auto v = ParseNumber<int>(part);
    if (!v) throw UsageError(flag, "expected a comma-separated integer list");
    values.push_back(*v);
  }
  return values;
}

BlendMode ParseBlend(const std::string& text) {
  if (text == "bu") return BlendMode::kBuBlending;
  if (text == "ru") return BlendMode::kRuBlending;
  throw UsageError("blend", "expected bu or ru");
}

// Shared encoder flags.
struct EncodeFlags {
  std::string input;
  std::string input_size;
  std::string fps = "30";
  std::uint32_t gof = 2;
  std::string blend = "bu";
  int qp_roi = 22;
  int qp_bg = 32;
  std::string detector;
  std::string codec = "mock";
  std::string enhancer = "none";
  int grid = 16;
  std::string force_bu;
};

void AddEncodeFlags(CLI::App* cmd, EncodeFlags& f, bool with_qps) {
  cmd->add_option("--input", f.input, "source .y4m or raw I420 file")->required();
  cmd->add_option("--input-size", f.input_size, "WxH for raw I420 input");
  cmd->add_option("--fps", f.fps, "frame rate for raw input (n or n/d)");
  cmd->add_option("--gof", f.gof, "frames per GOF; 0 = one_BU");
  cmd->add_option("--blend", f.blend, "RU reference: bu | ru");
  if (with_qps) {
    cmd->add_option("--qp-roi", f.qp_roi, "QP for RU ROI regions");
    cmd->add_option("--qp-bg", f.qp_bg, "QP for BU frames");
  }
  cmd->add_option("--detector", f.detector, "sidecar:<file> | diff[:threshold[:min_area]]")
      ->required();
  cmd->add_option("--codec", f.codec, "mock | extern:<template-file>");
  cmd->add_option("--enhancer", f.enhancer,
                  "decoder treatment mirrored by the encoder: none | feather:<band> | "
                  "extern:<command>");
  cmd->add_option("--grid", f.grid, "compressed-area alignment grid (2, 4, 8, 16)");
  cmd->add_option("--force-bu", f.force_bu, "comma-separated frame indices coded as BU");
}

struct PreparedEncode {
  CodecSpec codec;
  DetectorSpec detector;
  EnhancerClient enhancer = EnhancerClient::none();
  EncoderOptions options;
  std::optional<std::pair<int, int>> raw_size;
  FrameRate rate{30, 1};
};

// Every flag is checked here, before any file is read.
PreparedEncode PrepareEncode(const EncodeFlags& f) {
  PreparedEncode p;
  p.codec = parse_codec_spec(f.codec);
  p.detector = parse_detector_spec(f.detector);
  p.enhancer = parse_enhancer_spec(f.enhancer);
  if (!f.input_size.empty()) p.raw_size = parse_size(f.input_size, "input-size");
  p.rate = parse_rate(f.fps, "fps");
  p.options.gof.gof_size = f.gof;
  p.options.gof.blend_mode = ParseBlend(f.blend);
  p.options.gof.qp_roi = f.qp_roi;
  p.options.gof.qp_bg = f.qp_bg;
  try {
    p.options.gof.validate();
  } catch (const Error& e) {
    throw UsageError("qp-roi", e.what());
  }
  if (f.grid != 2 && f.grid != 4 && f.grid != 8 && f.grid != 16) {
    throw UsageError("grid", "expected 2, 4, 8 or 16");
  }
  p.options.align_grid = f.grid;
  if (!f.force_bu.empty()) {
    for (int i : ParseIntList(f.force_bu, "force-bu")) {
      if (i < 0) throw UsageError("force-bu", "indices must be nonnegative");
      p.options.forced_bu.insert(static_cast<std::uint32_t>(i));
    }
  }
  p.options.mirror_enhancer = p.enhancer;
  return p;
}

std::string FormatDb(double db) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << db;
  return s.str();
}

int RunSynth(const std::string& preset, const std::optional<int>& frames,
             const std::string& velocity, const std::string& pan,
             const std::optional<std::uint64_t>& seed, bool luma_only, const std::string& out_path,
             const std::string& roi_path, std::ostream& out) {
  SynthSpec spec;
  try {
    spec = synth_preset(preset);
  } catch (const Error& e) {
    throw UsageError("preset", e.what());
  }
  if (frames) spec.frames = *frames;
  if (!velocity.empty()) std::tie(spec.velocity_x, spec.velocity_y) = ParsePair(velocity, "velocity");
  if (!pan.empty()) std::tie(spec.pan_x, spec.pan_y) = ParsePair(pan, "pan");
  if (seed) spec.noise_seed = *seed;
  if (luma_only) spec.layout = ColorLayout::kLumaOnly;

  const SynthOutput synth = generate(spec);
  write_file(out_path, write_y4m(synth.sequence));
  if (!roi_path.empty()) write_text_file(roi_path, write_sidecar(synth.sidecar()));
  out << "synth " << preset << ": " << spec.width << 'x' << spec.height << ", "
      << spec.frames << " frames -> " << out_path << '\n';
  return kExitOk;
}

int RunEncode(const EncodeFlags& f, const std::string& out_path, const std::string& stats_path,
              bool timing, std::ostream& out) {
  PreparedEncode p = PrepareEncode(f);
  const VideoSequence seq = load_video(f.input, p.raw_size, p.rate);
  const auto backend = make_codec(p.codec);
  const auto detector = make_detector(p.detector);
  const EncodeResult result = encode_video(seq, p.options, *detector, *backend);
  write_file(out_path, result.bytes);
  const std::string report = format_encode_stats(result.stats);
  if (!stats_path.empty()) write_text_file(stats_path, report);

  std::size_t bu = 0;
  for (const FrameStats& s : result.stats.frames) bu += s.role == FrameKind::kBu;
  out << "frames " << result.stats.frames.size() << " (BU " << bu << ", RU "
      << result.stats.frames.size() - bu << ")\n";
  out << "stream_bits " << result.stats.stream_bits << '\n';
  out << "bitrate_kbps " << bitrate_kbps(result.stats.stream_bits, seq.rate, seq.frames.size())
      << '\n';
  if (timing) out << format_timing_report(timing_report(result.stats, {}));
  return kExitOk;
}

int RunDecode(const std::string& input, const std::string& codec_text,
              const std::string& enhancer_text, const std::string& out_path, bool timing,
              std::ostream& out) {
  const CodecSpec codec = parse_codec_spec(codec_text);
  EnhancerClient enhancer = parse_enhancer_spec(enhancer_text);
  const auto backend = make_codec(codec);
  const std::vector<std::uint8_t> bytes = read_file(input);
  std::vector<DecodeFrameTiming> timings;
  const VideoSequence seq = decode_video(bytes, *backend, enhancer, &timings);
  write_file(out_path, write_y4m(seq));
  out << "decoded " << seq.frames.size() << " frames " << seq.width << 'x' << seq.height
      << " -> " << out_path << '\n';
  if (timing) out << format_timing_report(timing_report(EncodeStats{}, timings));
  return kExitOk;
}

int RunEval(const std::string& ref_path, const std::string& dist_path, const std::string& roi_path,
            const std::string& stream_path, bool yuv, std::ostream& out) {
  const VideoSequence ref = load_video(ref_path, std::nullopt, {30, 1});
  const VideoSequence dist = load_video(dist_path, std::nullopt, {30, 1});
  std::vector<BoundingBox> boxes;
  if (!roi_path.empty()) {
    boxes = rois_from_detections(load_sidecar(read_text_file(roi_path)), ref.frames.size(),
                                 ref.width, ref.height);
  } else {
    boxes.assign(ref.frames.size(), BoundingBox::full(ref.width, ref.height));
  }
  const SequenceQuality q =
      roi_psnr(ref, dist, boxes, yuv ? PsnrWeighting::kYuv611 : PsnrWeighting::kLumaOnly);
  const char* label = roi_path.empty() ? "PSNR" : "ROI-PSNR";
  for (std::size_t i = 0; i < q.per_frame.size(); ++i) {
    out << "frame " << i << ' ' << label << ' ' << FormatDb(q.per_frame[i]) << " dB\n";
  }
  out << "mean " << label << ": " << FormatDb(q.mean) << " dB\n";
  if (!stream_path.empty()) {
    const auto bytes = read_file(stream_path);
    out << "bitrate: " << bitrate_kbps(8ull * bytes.size(), ref.rate, ref.frames.size())
        << " kbps\n";
  }
  return kExitOk;
}

int RunBdrate(const std::string& anchor_path, const std::string& test_path, std::ostream& out) {
  const RdCurve anchor{parse_rd_csv(read_text_file(anchor_path))};
  const RdCurve test{parse_rd_csv(read_text_file(test_path))};
  const double bd = bd_rate(anchor, test);
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << bd;
  std::string text = s.str();
  if (text == "-0.00") text = "0.00";
  out << "BD-rate: " << text << "%\n";
  return kExitOk;
}

int RunRd(const EncodeFlags& f, const std::string& ladder, const std::string& qp_roi_list,
          const std::string& qp_bg_list, const std::string& roi_path, const std::string& out_path,
          std::ostream& out) {
  PreparedEncode p = PrepareEncode(f);
  std::vector<QpPair> pairs;
  if (!qp_roi_list.empty() || !qp_bg_list.empty()) {
    const std::vector<int> roi = ParseIntList(qp_roi_list, "qp-roi");
    const std::vector<int> bg = ParseIntList(qp_bg_list, "qp-bg");
    if (roi.size() != bg.size()) throw UsageError("qp-bg", "list length must match --qp-roi");
    for (std::size_t i = 0; i < roi.size(); ++i) pairs.push_back({roi[i], bg[i]});
  } else if (ladder == "rclc") {
    pairs = rclc_ladder();
  } else if (ladder == "anchor") {
    pairs = anchor_ladder();
    p.options.gof.gof_size = 1;
  } else {
    throw UsageError("ladder", "expected rclc or anchor");
  }
  const VideoSequence seq = load_video(f.input, p.raw_size, p.rate);
  const auto backend = make_codec(p.codec);
  const auto detector = make_detector(p.detector);
  std::vector<BoundingBox> boxes =
      rois_from_detections(load_sidecar(read_text_file(roi_path)), seq.frames.size(), seq.width,
                           seq.height);
  const std::vector<RdSweepEntry> sweep =
      rd_sweep(seq, p.options, pairs, *detector, *backend, p.enhancer, boxes);
  std::vector<RdPoint> points;
  for (const RdSweepEntry& e : sweep) {
    out << "qp_roi " << e.qps.qp_roi << " qp_bg " << e.qps.qp_bg << " bitrate_kbps "
        << e.point.bitrate_kbps << " roi_psnr " << FormatDb(e.point.psnr_db) << '\n';
    points.push_back(e.point);
  }
  if (!out_path.empty()) write_text_file(out_path, write_rd_csv(points));
  return kExitOk;
}

int RunEnhancerCheck(const std::string& command, std::ostream& out) {
  bool all = true;
  for (const ConformanceCheck& c : run_enhancer_conformance(command)) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << '\n';
    all = all && c.passed;
  }
  return all ? kExitOk : kExitRuntime;
}

}  // namespace

CodecSpec parse_codec_spec(std::string_view text) {
  CodecSpec spec;
  if (text == "mock") return spec;
  if (text.starts_with("extern:") && text.size() > 7) {
    spec.external = true;
    spec.template_file = std::string(text.substr(7));
    return spec;
  }
  throw UsageError("codec", "expected mock or extern:<template-file>");
}

std::unique_ptr<CodecBackend> make_codec(const CodecSpec& spec) {
  if (!spec.external) return std::make_unique<MockCodec>();
  ExternTemplates templates = ExternTemplates::parse(read_text_file(spec.template_file));
  return std::make_unique<ExternCodec>(std::move(templates));
}

DetectorSpec parse_detector_spec(std::string_view text) {
  DetectorSpec spec;
  if (text.starts_with("sidecar:") && text.size() > 8) {
    spec.sidecar_file = std::string(text.substr(8));
    return spec;
  }
  const auto parts = Split(text, ':');
  if (parts[0] == "diff" && parts.size() <= 3) {
    spec.diff = true;
    if (parts.size() >= 2) {
      const auto t = ParseNumber<int>(parts[1]);
      if (!t || *t < 0 || *t > 255) throw UsageError("detector", "diff threshold must be 0..255");
      spec.params.threshold = *t;
    }
    if (parts.size() == 3) {
      const auto a = ParseNumber<std::int64_t>(parts[2]);
      if (!a || *a < 1) throw UsageError("detector", "diff min_area must be >= 1");
      spec.params.min_area = *a;
    }
    return spec;
  }
  throw UsageError("detector", "expected sidecar:<file> or diff[:threshold[:min_area]]");
}

std::unique_ptr<Detector> make_detector(const DetectorSpec& spec) {
  if (spec.diff) return std::make_unique<DiffDetector>(spec.params);
  return std::make_unique<SidecarDetector>(load_sidecar(read_text_file(spec.sidecar_file)));
}

EnhancerClient parse_enhancer_spec(std::string_view text) {
  if (text == "none") return EnhancerClient::none();
  if (text.starts_with("feather:")) {
    const auto band = ParseNumber<int>(text.substr(8));
    if (!band || *band < 1) throw UsageError("enhancer", "feather band must be >= 1");
    return EnhancerClient::feather(*band);
  }
  if (text.starts_with("extern:") && text.size() > 7) {
    return EnhancerClient::external(std::string(text.substr(7)));
  }
  throw UsageError("enhancer", "expected none, feather:<band> or extern:<command>");
}

std::pair<int, int> parse_size(std::string_view text, const std::string& flag) {
  const auto parts = Split(text, 'x');
  if (parts.size() == 2) {
    const auto w = ParseNumber<int>(parts[0]);
    const auto h = ParseNumber<int>(parts[1]);
    if (w && h && *w > 0 && *h > 0) return {*w, *h};
  }
  throw UsageError(flag, "expected WxH");
}

FrameRate parse_rate(std::string_view text, const std::string& flag) {
  const char sep = text.find('/') != std::string_view::npos ? '/' : ':';
  const auto parts = Split(text, sep);
  const auto num = ParseNumber<std::uint32_t>(parts[0]);
  std::optional<std::uint32_t> den = 1u;
  if (parts.size() == 2) den = ParseNumber<std::uint32_t>(parts[1]);
  if (parts.size() > 2 || !num || !den || *num == 0 || *den == 0) {
    throw UsageError(flag, "expected a positive rate n or n/d");
  }
  return {*num, *den};
}

VideoSequence load_video(const std::string& path, std::optional<std::pair<int, int>> raw_size,
                         FrameRate raw_rate) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  static constexpr std::string_view kY4mMagic = "YUV4MPEG2";
  if (bytes.size() >= kY4mMagic.size() &&
      std::string_view(reinterpret_cast<const char*>(bytes.data()), kY4mMagic.size()) ==
          kY4mMagic) {
    return parse_y4m(bytes);
  }
  if (!raw_size) throw UsageError("input-size", "required for raw I420 input");
  return parse_raw_i420(bytes, raw_size->first, raw_size->second, raw_rate);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"RCLC: ROI-based joint conventional/learning video compression", "rclc"};
  app.require_subcommand(1);

  std::string out_path;
  std::string stats_path;
  bool timing = false;

  EncodeFlags enc;
  CLI::App* encode = app.add_subcommand("encode", "encode a sequence into an .rclc stream");
  AddEncodeFlags(encode, enc, true);
  encode->add_option("--out", out_path, "output .rclc file")->required();
  encode->add_option("--stats", stats_path, "per-frame stats report");
  encode->add_flag("--timing", timing, "print the encoder latency report");

  std::string dec_input;
  std::string dec_codec = "mock";
  std::string dec_enhancer = "none";
  CLI::App* decode = app.add_subcommand("decode", "decode an .rclc stream to Y4M");
  decode->add_option("--input", dec_input, "input .rclc file")->required();
  decode->add_option("--codec", dec_codec, "mock | extern:<template-file>");
  decode->add_option("--enhancer", dec_enhancer, "none | feather:<band> | extern:<command>");
  decode->add_option("--out", out_path, "output .y4m file")->required();
  decode->add_flag("--timing", timing, "print the decoder latency report");

  std::string ref_path, dist_path, roi_path, stream_path;
  bool yuv = false;
  CLI::App* eval = app.add_subcommand("eval", "per-frame and mean (ROI-)PSNR");
  eval->add_option("--ref", ref_path, "reference video")->required();
  eval->add_option("--dist", dist_path, "distorted video")->required();
  eval->add_option("--roi", roi_path, "ROI sidecar; whole frame when omitted");
  eval->add_option("--stream", stream_path, "encoded stream for the bitrate line");
  eval->add_flag("--yuv", yuv, "6:1:1 YUV-weighted PSNR");

  std::string anchor_path, test_path;
  CLI::App* bdrate = app.add_subcommand("bdrate", "BD-rate of two RD curves");
  bdrate->add_option("--anchor", anchor_path, "anchor RD csv")->required();
  bdrate->add_option("--test", test_path, "test RD csv")->required();

  std::string preset = "moving-box", velocity, pan;
  std::optional<int> frames;
  std::optional<std::uint64_t> seed;
  bool luma_only = false;
  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic sequence and sidecar");
  synth->add_option("--preset", preset, "moving-box | constant-velocity | fixed-camera | "
                                        "moving-camera | hd");
  synth->add_option("--frames", frames, "override the frame count");
  synth->add_option("--velocity", velocity, "object velocity dx,dy");
  synth->add_option("--pan", pan, "camera pan dx,dy");
  synth->add_option("--seed", seed, "noise seed");
  synth->add_flag("--luma-only", luma_only, "emit Cmono");
  synth->add_option("--out", out_path, "output .y4m file")->required();
  synth->add_option("--roi", roi_path, "ground-truth sidecar");

  EncodeFlags rd_flags;
  std::string ladder = "rclc", qp_roi_list, qp_bg_list, rd_roi;
  CLI::App* rd = app.add_subcommand("rd", "encode a QP ladder and write an RD csv");
  AddEncodeFlags(rd, rd_flags, false);
  rd->add_option("--ladder", ladder, "rclc | anchor");
  rd->add_option("--qp-roi", qp_roi_list, "explicit ROI QP list");
  rd->add_option("--qp-bg", qp_bg_list, "explicit background QP list");
  rd->add_option("--roi", rd_roi, "ROI sidecar for scoring")->required();
  rd->add_option("--out", out_path, "output csv");

  std::string check_command;
  CLI::App* check = app.add_subcommand("enhancer-check", "protocol conformance of an enhancer");
  check->add_option("--command", check_command, "enhancer server command")->required();

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.push_back("rclc");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    const auto sub = app.get_subcommands();
    err << (sub.empty() ? app.help() : sub.front()->help());
    return kExitUsage;
  }

  try {
    if (encode->parsed()) return RunEncode(enc, out_path, stats_path, timing, out);
    if (decode->parsed()) {
      return RunDecode(dec_input, dec_codec, dec_enhancer, out_path, timing, out);
    }
    if (eval->parsed()) return RunEval(ref_path, dist_path, roi_path, stream_path, yuv, out);
    if (bdrate->parsed()) return RunBdrate(anchor_path, test_path, out);
    if (synth->parsed()) {
      return RunSynth(preset, frames, velocity, pan, seed, luma_only, out_path, roi_path, out);
    }
    if (rd->parsed()) {
      return RunRd(rd_flags, ladder, qp_roi_list, qp_bg_list, rd_roi, out_path, out);
    }
    if (check->parsed()) return RunEnhancerCheck(check_command, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace rclc::cli
