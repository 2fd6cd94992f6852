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

#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rclc/codec.hpp"
#include "rclc/detector.hpp"
#include "rclc/enhancer.hpp"
#include "rclc/video.hpp"

namespace rclc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

// Bad flag value; exits with kExitUsage.
class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& flag, const std::string& why)
      : std::runtime_error("--" + flag + ": " + why), flag_(flag) {}
  const std::string& flag() const { return flag_; }

 private:
  std::string flag_;
};

// Parsed selector flags. Parsing only checks syntax; files are opened
// when the backend, detector or enhancer is built.
struct CodecSpec {
  bool external = false;
  std::string template_file;  // extern:<file>
};
CodecSpec parse_codec_spec(std::string_view text);
std::unique_ptr<CodecBackend> make_codec(const CodecSpec& spec);

// sidecar:<file> | diff | diff:<threshold> | diff:<threshold>:<min_area>
struct DetectorSpec {
  bool diff = false;
  std::string sidecar_file;
  DiffDetectorParams params;
};
DetectorSpec parse_detector_spec(std::string_view text);
std::unique_ptr<Detector> make_detector(const DetectorSpec& spec);

// none | feather:<band> | extern:<command>
EnhancerClient parse_enhancer_spec(std::string_view text);

// "WxH"
std::pair<int, int> parse_size(std::string_view text, const std::string& flag);
// "num/den", "num:den" or an integer.
FrameRate parse_rate(std::string_view text, const std::string& flag);

// .y4m by content; anything else is raw I420 and needs a size.
VideoSequence load_video(const std::string& path, std::optional<std::pair<int, int>> raw_size,
                         FrameRate raw_rate);

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rclc::cli
