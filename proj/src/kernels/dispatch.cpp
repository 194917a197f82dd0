// Copyright 2026 The fiberjac Authors
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
#include <limits>
#include <string>

#include "fiberjac/error.hpp"
#include "fiberjac/kernels.hpp"

namespace fiberjac::kernels {

std::string_view to_string(Backend backend) {
  switch (backend) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "?";
}

Backend parse_backend(std::string_view name) {
  if (name == "auto") return best_available();
  if (name == "scalar") return Backend::Scalar;
  if (name == "avx2") return Backend::Avx2;
  if (name == "neon") return Backend::Neon;
  throw InvalidInput("unknown kernel backend '" + std::string(name) + "'");
}

bool available(Backend backend) {
  switch (backend) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(FIBERJAC_HAVE_AVX2_KERNEL)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(FIBERJAC_HAVE_NEON_KERNEL)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend best_available() {
  if (available(Backend::Avx2)) return Backend::Avx2;
  if (available(Backend::Neon)) return Backend::Neon;
  return Backend::Scalar;
}

bool fits_int32(const SubcurveTable& table, std::int64_t max_abs_degree) {
  constexpr std::int64_t limit = std::numeric_limits<std::int32_t>::max();
  std::int64_t max_weight = 1;
  for (auto w : table.weights) max_weight = std::max<std::int64_t>(max_weight, w);
  for (std::size_t k = 0; k < table.size(); ++k) {
    const std::int64_t chi =
        std::abs(static_cast<std::int64_t>(table.offsets[k])) +
        max_abs_degree * __builtin_popcount(table.masks[k]);
    if (chi > limit / max_weight) return false;
  }
  return true;
}

void max_slope_scan(Backend backend, const SubcurveTable& table,
                    std::span<const std::int32_t> degrees, std::size_t lanes,
                    std::span<std::int32_t> best_chi, std::span<std::int32_t> best_index) {
  if (table.size() == 0) throw InvalidInput("slope scan needs at least one subcurve");
  if (table.offsets.size() != table.size() || table.weights.size() != table.size())
    throw InvalidInput("subcurve table columns differ in length");
  if (degrees.size() != lanes * static_cast<std::size_t>(table.components) ||
      best_chi.size() < lanes || best_index.size() < lanes)
    throw InvalidInput("slope scan buffer sizes do not match the lane count");
  if (!available(backend))
    throw InvalidInput("kernel backend '" + std::string(to_string(backend)) +
                       "' is not available on this machine");

  switch (backend) {
    case Backend::Scalar:
      detail::scan_scalar(table, degrees.data(), lanes, 0, lanes, best_chi.data(),
                          best_index.data());
      break;
    case Backend::Avx2:
#if defined(FIBERJAC_HAVE_AVX2_KERNEL)
      detail::scan_avx2(table, degrees.data(), lanes, 0, lanes, best_chi.data(),
                        best_index.data());
#endif
      break;
    case Backend::Neon:
#if defined(FIBERJAC_HAVE_NEON_KERNEL)
      detail::scan_neon(table, degrees.data(), lanes, 0, lanes, best_chi.data(),
                        best_index.data());
#endif
      break;
  }
}

}  // namespace fiberjac::kernels
