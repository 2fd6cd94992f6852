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

// Pixel inner loops shared by the codec, detector, seam feathering and
// metrics. Every kernel has a scalar reference; vector variants must produce
// bit-identical results (see tests/unit/simd_equivalence_test.cpp).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rclc::simd {

enum class Isa { kScalar, kAvx2, kNeon };

const char* isa_name(Isa isa);

struct Kernels {
  Isa isa;

  // Σ (a[i] - b[i])².
  std::uint64_t (*sum_squared_diff)(const std::uint8_t* a, const std::uint8_t* b,
                                    std::size_t n);

  // mask[i] = |a[i] - b[i]| > threshold ? 1 : 0.
  void (*absdiff_mask)(const std::uint8_t* a, const std::uint8_t* b, std::size_t n,
                       std::uint8_t threshold, std::uint8_t* mask);

  // dst[i] = min(255, round_half_up(src[i] / step) * step), 1 <= step <= 255.
  void (*quantize)(const std::uint8_t* src, std::size_t n, int step, std::uint8_t* dst);

  // dst[i] = (inside[i] * w + outside[i] * (256 - w) + 128) >> 8, 0 <= w <= 256.
  void (*blend)(const std::uint8_t* inside, const std::uint8_t* outside, std::size_t n,
                int weight, std::uint8_t* dst);

  // Number of leading elements equal to p[0]; 0 when n == 0.
  std::size_t (*run_length)(const std::uint8_t* p, std::size_t n);
};

// Kernel table picked once per process: the widest ISA the CPU supports,
// unless RCLC_SIMD=scalar|avx2|neon narrows the choice.
const Kernels& active();

// nullptr when the ISA is not compiled in or not supported by this CPU.
const Kernels* kernels_for(Isa isa);

std::vector<Isa> available_isas();

namespace scalar {
extern const Kernels kTable;
}

// Span conveniences over the active table.
inline std::uint64_t sum_squared_diff(std::span<const std::uint8_t> a,
                                      std::span<const std::uint8_t> b) {
  return active().sum_squared_diff(a.data(), b.data(), a.size());
}

inline void quantize(std::span<const std::uint8_t> src, int step, std::span<std::uint8_t> dst) {
  active().quantize(src.data(), src.size(), step, dst.data());
}

inline std::size_t run_length(std::span<const std::uint8_t> p) {
  return active().run_length(p.data(), p.size());
}

}  // namespace rclc::simd
