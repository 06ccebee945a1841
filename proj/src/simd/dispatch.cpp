/*
 * Copyright 2026 The ExAL Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdlib>
#include <string>

#include "exal/error.hpp"
#include "kernels_impl.hpp"

namespace exal::simd {
namespace {

bool cpu_has_avx2() {
#if defined(EXAL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& select_default() {
  if (const char* forced = std::getenv("EXAL_SIMD"); forced != nullptr && *forced != '\0') {
    const std::string name(forced);
    for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
      if (name == isa_name(isa)) return table(isa);
    }
    throw ConfigError("EXAL_SIMD: unknown instruction set '" + name + "'");
  }
  if (supported(Isa::kNeon)) return table(Isa::kNeon);
  if (supported(Isa::kAvx2)) return table(Isa::kAvx2);
  return detail::kScalarTable;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

const KernelTable& scalar_table() { return detail::kScalarTable; }

bool supported(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
      return cpu_has_avx2();
    case Isa::kNeon:
#if defined(EXAL_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!supported(isa)) {
    throw ConfigError("instruction set '" + std::string(isa_name(isa)) + "' is not available here");
  }
  switch (isa) {
#if defined(EXAL_HAVE_AVX2)
    case Isa::kAvx2:
      return detail::kAvx2Table;
#endif
#if defined(EXAL_HAVE_NEON)
    case Isa::kNeon:
      return detail::kNeonTable;
#endif
    default:
      return detail::kScalarTable;
  }
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
    if (supported(isa)) out.push_back(isa);
  }
  return out;
}

const KernelTable& active() {
  static const KernelTable& selected = select_default();
  return selected;
}

}  // namespace exal::simd
