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

#include <doctest.h>

#include <set>
#include <string>

#include "rclc/error.hpp"

using rclc::Error;
using rclc::ErrorCode;

TEST_CASE("error message carries the code name") {
  const Error e(ErrorCode::kTruncatedFrame, "23 bytes");
  CHECK(e.code() == ErrorCode::kTruncatedFrame);
  CHECK(std::string(e.what()) == "TruncatedFrame: 23 bytes");
}

TEST_CASE("every code has a distinct name") {
  std::set<std::string_view> names;
  for (int c = 0; c <= static_cast<int>(ErrorCode::kIo); ++c) {
    const auto name = rclc::error_code_name(static_cast<ErrorCode>(c));
    CHECK(!name.empty());
    CHECK(names.insert(name).second);
  }
}
