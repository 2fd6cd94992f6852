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

// Minimal enhancer server for protocol tests. Echoes each patch, optionally
// adding a constant to the luma samples inside the request box.
//
//   echo_enhancer [--offset N] [--task-offset]
//
// --task-offset adds N only for RU_SEAM requests.

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "rclc/enhancer.hpp"

namespace {

bool ReadAll(std::uint8_t* dst, std::size_t n) {
  while (n > 0) {
    const ssize_t got = ::read(0, dst, n);
    if (got <= 0) return false;
    dst += got;
    n -= static_cast<std::size_t>(got);
  }
  return true;
}

bool WriteAll(const std::vector<std::uint8_t>& bytes) {
  std::size_t done = 0;
  while (done < bytes.size()) {
    const ssize_t put = ::write(1, bytes.data() + done, bytes.size() - done);
    if (put <= 0) return false;
    done += static_cast<std::size_t>(put);
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  int offset = 0;
  bool seam_only = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--offset") == 0 && i + 1 < argc) {
      offset = std::atoi(argv[++i]);
    } else if (std::strcmp(argv[i], "--task-offset") == 0) {
      seam_only = true;
    }
  }
  std::vector<std::uint8_t> header(rclc::kEnhancerRequestHeaderSize);
  while (ReadAll(header.data(), header.size())) {
    rclc::RequestHeader req{};
    const rclc::EnhancerStatus status = rclc::parse_enhancer_request_header(header, req);
    if (status != rclc::EnhancerStatus::kOk) {
      if (!WriteAll(rclc::encode_enhancer_response(status, nullptr))) return 1;
      continue;
    }
    std::vector<std::uint8_t> planes(rclc::request_plane_bytes(req));
    if (!ReadAll(planes.data(), planes.size())) return 1;
    const bool apply = offset != 0 && (!seam_only || req.task == rclc::EnhanceTask::kRuSeam);
    if (apply) {
      const int x1 = std::min(req.box.x1, req.width);
      const int y1 = std::min(req.box.y1, req.height);
      for (int y = std::max(0, req.box.y0); y < y1; ++y) {
        for (int x = std::max(0, req.box.x0); x < x1; ++x) {
          std::uint8_t& v = planes[static_cast<std::size_t>(y) * req.width + x];
          v = static_cast<std::uint8_t>(std::clamp(v + offset, 0, 255));
        }
      }
    }
    std::vector<std::uint8_t> reply = rclc::encode_enhancer_response(status, nullptr);
    reply.insert(reply.end(), planes.begin(), planes.end());
    if (!WriteAll(reply)) return 1;
  }
  return 0;
}
