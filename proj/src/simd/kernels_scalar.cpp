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

#include <algorithm>
#include <cstdlib>

#include "rclc/simd/kernels.hpp"

namespace rclc::simd::scalar {
namespace {

std::uint64_t SumSquaredDiff(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const int d = int{a[i]} - int{b[i]};
    sum += static_cast<std::uint64_t>(d * d);
  }
  return sum;
}

void AbsdiffMask(const std::uint8_t* a, const std::uint8_t* b, std::size_t n,
                 std::uint8_t threshold, std::uint8_t* mask) {
  for (std::size_t i = 0; i < n; ++i) {
    mask[i] = std::abs(int{a[i]} - int{b[i]}) > threshold ? 1 : 0;
  }
}

void Quantize(const std::uint8_t* src, std::size_t n, int step, std::uint8_t* dst) {
  const int half = step / 2;
  for (std::size_t i = 0; i < n; ++i) {
    const int q = (int{src[i]} + half) / step * step;
    dst[i] = static_cast<std::uint8_t>(std::min(q, 255));
  }
}

void Blend(const std::uint8_t* inside, const std::uint8_t* outside, std::size_t n, int weight,
           std::uint8_t* dst) {
  const int inv = 256 - weight;
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] = static_cast<std::uint8_t>((inside[i] * weight + outside[i] * inv + 128) >> 8);
  }
}

std::size_t RunLength(const std::uint8_t* p, std::size_t n) {
  if (n == 0) return 0;
  std::size_t i = 1;
  while (i < n && p[i] == p[0]) ++i;
  return i;
}

}  // namespace

const Kernels kTable = {Isa::kScalar, SumSquaredDiff, AbsdiffMask, Quantize, Blend, RunLength};

}  // namespace rclc::simd::scalar
