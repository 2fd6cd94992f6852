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

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

#include <algorithm>

#include "rclc/simd/kernels.hpp"

namespace rclc::simd::neon {
namespace {

std::uint64_t SumSquaredDiff(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
  uint64x2_t acc64 = vdupq_n_u64(0);
  std::size_t i = 0;
  while (i + 16 <= n) {
    uint32x4_t acc32 = vdupq_n_u32(0);
    const std::size_t block_end = std::min(n - n % 16, i + 16 * 4096);
    for (; i < block_end; i += 16) {
      const uint8x16_t d = vabdq_u8(vld1q_u8(a + i), vld1q_u8(b + i));
      acc32 = vpadalq_u16(acc32, vmull_u8(vget_low_u8(d), vget_low_u8(d)));
      acc32 = vpadalq_u16(acc32, vmull_high_u8(d, d));
    }
    acc64 = vpadalq_u32(acc64, acc32);
  }
  std::uint64_t sum = vaddvq_u64(acc64);
  for (; i < n; ++i) {
    const int d = int{a[i]} - int{b[i]};
    sum += static_cast<std::uint64_t>(d * d);
  }
  return sum;
}

void AbsdiffMask(const std::uint8_t* a, const std::uint8_t* b, std::size_t n,
                 std::uint8_t threshold, std::uint8_t* mask) {
  const uint8x16_t t = vdupq_n_u8(threshold);
  const uint8x16_t one = vdupq_n_u8(1);
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    const uint8x16_t d = vabdq_u8(vld1q_u8(a + i), vld1q_u8(b + i));
    vst1q_u8(mask + i, vandq_u8(vcgtq_u8(d, t), one));
  }
  scalar::kTable.absdiff_mask(a + i, b + i, n - i, threshold, mask + i);
}

void Blend(const std::uint8_t* inside, const std::uint8_t* outside, std::size_t n, int weight,
           std::uint8_t* dst) {
  const uint16x8_t w = vdupq_n_u16(static_cast<std::uint16_t>(weight));
  const uint16x8_t inv = vdupq_n_u16(static_cast<std::uint16_t>(256 - weight));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const uint16x8_t vi = vmovl_u8(vld1_u8(inside + i));
    const uint16x8_t vo = vmovl_u8(vld1_u8(outside + i));
    const uint16x8_t sum = vmlaq_u16(vmulq_u16(vi, w), vo, inv);
    vst1_u8(dst + i, vmovn_u16(vrshrq_n_u16(sum, 8)));
  }
  scalar::kTable.blend(inside + i, outside + i, n - i, weight, dst + i);
}

std::size_t RunLength(const std::uint8_t* p, std::size_t n) {
  if (n == 0) return 0;
  const uint8x16_t v = vdupq_n_u8(p[0]);
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    if (vminvq_u8(vceqq_u8(vld1q_u8(p + i), v)) == 0) break;
  }
  while (i < n && p[i] == p[0]) ++i;
  return i;
}

}  // namespace

// Quantization stays scalar here: the per-lane division has no cheap exact
// NEON form for arbitrary steps.
extern const Kernels kTable;
const Kernels kTable = {Isa::kNeon, SumSquaredDiff, AbsdiffMask, scalar::kTable.quantize, Blend,
                        RunLength};

}  // namespace rclc::simd::neon

#endif
