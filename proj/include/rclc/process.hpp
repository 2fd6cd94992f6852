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

#include <sys/types.h>

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace rclc {

struct CommandResult {
  int exit_code = 0;   // -1 when the child did not exit normally
  std::string output;  // combined stdout and stderr
};

// Runs `command` through /bin/sh and waits for it.
CommandResult run_shell(const std::string& command);

// Unique directory removed (recursively) on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Long-lived child speaking a binary protocol over its stdin/stdout.
class ChildProcess {
 public:
  explicit ChildProcess(const std::string& command);
  ~ChildProcess();
  ChildProcess(const ChildProcess&) = delete;
  ChildProcess& operator=(const ChildProcess&) = delete;

  // Writes `request` while draining the reply, so a child that answers
  // before reading everything cannot deadlock us. Returns once the request
  // is written and at least `min_reply` bytes arrived (fewer only on EOF);
  // the result may hold more than `min_reply` bytes.
  std::vector<std::uint8_t> exchange(std::span<const std::uint8_t> request,
                                     std::size_t min_reply);

  // Reads exactly n more bytes (fewer on EOF).
  std::vector<std::uint8_t> read_exact(std::size_t n);

  bool alive();

 private:
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
};

}  // namespace rclc
