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

#include <cstdlib>
#include <string_view>

#include "rclc/simd/kernels.hpp"

namespace rclc::simd {

#if defined(__x86_64__) || defined(__i386__)
namespace avx2 {
extern const Kernels kTable;
}
#endif
#if defined(__aarch64__) && defined(__ARM_NEON)
namespace neon {
extern const Kernels kTable;
}
#endif

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

const Kernels* kernels_for(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return &scalar::kTable;
    case Isa::kAvx2:
#if defined(__x86_64__) || defined(__i386__)
      if (__builtin_cpu_supports("avx2")) return &avx2::kTable;
#endif
      return nullptr;
    case Isa::kNeon:
#if defined(__aarch64__) && defined(__ARM_NEON)
      return &neon::kTable;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
    if (kernels_for(isa) != nullptr) out.push_back(isa);
  }
  return out;
}

namespace {

const Kernels& Select() {
  if (const char* forced = std::getenv("RCLC_SIMD")) {
    const std::string_view want(forced);
    for (Isa isa : available_isas()) {
      if (want == isa_name(isa)) return *kernels_for(isa);
    }
  }
  const std::vector<Isa> isas = available_isas();
  return *kernels_for(isas.back());
}

}  // namespace

const Kernels& active() {
  static const Kernels& table = Select();
  return table;
}

}  // namespace rclc::simd
