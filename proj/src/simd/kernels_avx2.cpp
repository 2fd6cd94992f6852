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

// Compiled with -mavx2; only reached through the dispatcher after a CPUID check.

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <algorithm>

#include "rclc/simd/kernels.hpp"

namespace rclc::simd::avx2 {
namespace {

std::uint64_t SumSquaredDiff(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
  const __m256i zero = _mm256_setzero_si256();
  __m256i acc64 = _mm256_setzero_si256();
  std::size_t i = 0;
  while (i + 32 <= n) {
    // Each 32-bit lane gains at most 2 * 2 * 255² per iteration; flush well
    // before that can wrap.
    __m256i acc32 = _mm256_setzero_si256();
    const std::size_t block_end = std::min(n - n % 32, i + 32 * 2048);
    for (; i < block_end; i += 32) {
      const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
      const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
      const __m256i dlo = _mm256_sub_epi16(_mm256_unpacklo_epi8(va, zero),
                                           _mm256_unpacklo_epi8(vb, zero));
      const __m256i dhi = _mm256_sub_epi16(_mm256_unpackhi_epi8(va, zero),
                                           _mm256_unpackhi_epi8(vb, zero));
      acc32 = _mm256_add_epi32(acc32, _mm256_madd_epi16(dlo, dlo));
      acc32 = _mm256_add_epi32(acc32, _mm256_madd_epi16(dhi, dhi));
    }
    acc64 = _mm256_add_epi64(acc64, _mm256_unpacklo_epi32(acc32, zero));
    acc64 = _mm256_add_epi64(acc64, _mm256_unpackhi_epi32(acc32, zero));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc64);
  std::uint64_t sum = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) {
    const int d = int{a[i]} - int{b[i]};
    sum += static_cast<std::uint64_t>(d * d);
  }
  return sum;
}

void AbsdiffMask(const std::uint8_t* a, const std::uint8_t* b, std::size_t n,
                 std::uint8_t threshold, std::uint8_t* mask) {
  const __m256i t = _mm256_set1_epi8(static_cast<char>(threshold));
  const __m256i one = _mm256_set1_epi8(1);
  const __m256i zero = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const __m256i d = _mm256_or_si256(_mm256_subs_epu8(va, vb), _mm256_subs_epu8(vb, va));
    const __m256i not_above = _mm256_cmpeq_epi8(_mm256_subs_epu8(d, t), zero);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(mask + i), _mm256_andnot_si256(not_above, one));
  }
  scalar::kTable.absdiff_mask(a + i, b + i, n - i, threshold, mask + i);
}

inline __m256 QuantizeLane(__m256i v32, __m256 half, __m256 step) {
  // Division (not reciprocal multiply) keeps exact multiples exact; the
  // quotient is non-negative so truncation equals floor.
  const __m256 q = _mm256_div_ps(_mm256_add_ps(_mm256_cvtepi32_ps(v32), half), step);
  return _mm256_mul_ps(_mm256_round_ps(q, _MM_FROUND_TO_ZERO | _MM_FROUND_NO_EXC), step);
}

void Quantize(const std::uint8_t* src, std::size_t n, int step, std::uint8_t* dst) {
  const __m256 half = _mm256_set1_ps(static_cast<float>(step / 2));
  const __m256 vstep = _mm256_set1_ps(static_cast<float>(step));
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    const __m128i bytes = _mm_loadu_si128(reinterpret_cast<const __m128i*>(src + i));
    const __m256i lo = _mm256_cvtepu8_epi32(bytes);
    const __m256i hi = _mm256_cvtepu8_epi32(_mm_srli_si128(bytes, 8));
    const __m256i qlo = _mm256_cvtps_epi32(QuantizeLane(lo, half, vstep));
    const __m256i qhi = _mm256_cvtps_epi32(QuantizeLane(hi, half, vstep));
    // packs saturate to [0, 65535] then [0, 255], which is the clip.
    const __m256i words = _mm256_permute4x64_epi64(_mm256_packus_epi32(qlo, qhi), 0xD8);
    const __m128i packed = _mm_packus_epi16(_mm256_castsi256_si128(words),
                                            _mm256_extracti128_si256(words, 1));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i), packed);
  }
  scalar::kTable.quantize(src + i, n - i, step, dst + i);
}

void Blend(const std::uint8_t* inside, const std::uint8_t* outside, std::size_t n, int weight,
           std::uint8_t* dst) {
  const __m256i w = _mm256_set1_epi16(static_cast<short>(weight));
  const __m256i inv = _mm256_set1_epi16(static_cast<short>(256 - weight));
  const __m256i rounding = _mm256_set1_epi16(128);
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    const __m256i vi = _mm256_cvtepu8_epi16(
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(inside + i)));
    const __m256i vo = _mm256_cvtepu8_epi16(
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(outside + i)));
    // The weighted sum never exceeds 255 * 256 + 128, so 16-bit lanes hold it.
    __m256i sum = _mm256_add_epi16(_mm256_mullo_epi16(vi, w), _mm256_mullo_epi16(vo, inv));
    sum = _mm256_srli_epi16(_mm256_add_epi16(sum, rounding), 8);
    const __m128i packed = _mm_packus_epi16(_mm256_castsi256_si128(sum),
                                            _mm256_extracti128_si256(sum, 1));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i), packed);
  }
  scalar::kTable.blend(inside + i, outside + i, n - i, weight, dst + i);
}

std::size_t RunLength(const std::uint8_t* p, std::size_t n) {
  if (n == 0) return 0;
  const std::uint8_t first = p[0];
  const __m256i v = _mm256_set1_epi8(static_cast<char>(first));
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i chunk = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
    const auto eq = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(chunk, v)));
    if (eq != 0xFFFFFFFFu) return i + static_cast<std::size_t>(__builtin_ctz(~eq));
  }
  while (i < n && p[i] == first) ++i;
  return i;
}

}  // namespace

extern const Kernels kTable;
const Kernels kTable = {Isa::kAvx2, SumSquaredDiff, AbsdiffMask, Quantize, Blend, RunLength};

}  // namespace rclc::simd::avx2

#endif
