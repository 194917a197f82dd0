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

// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include "fiberjac/curve_model.hpp"
#include "fiberjac/kernels.hpp"

namespace fiberjac::kernels::detail {

void scan_avx2(const SubcurveTable& table, const std::int32_t* degrees, std::size_t stride,
               std::size_t begin, std::size_t end, std::int32_t* best_chi,
               std::int32_t* best_index) {
  const std::size_t rows = table.size();
  const int n = table.components;
  __m256i d[kMaxComponents];

  std::size_t lane = begin;
  for (; lane + 8 <= end; lane += 8) {
    for (int c = 0; c < n; ++c)
      d[c] = _mm256_loadu_si256(
          reinterpret_cast<const __m256i*>(degrees + static_cast<std::size_t>(c) * stride + lane));

    __m256i chi_best = _mm256_setzero_si256();
    __m256i w_best = _mm256_set1_epi32(1);
    __m256i k_best = _mm256_setzero_si256();
    for (std::size_t k = 0; k < rows; ++k) {
      __m256i chi = _mm256_set1_epi32(table.offsets[k]);
      for (std::uint32_t m = table.masks[k]; m != 0; m &= m - 1U)
        chi = _mm256_add_epi32(chi, d[__builtin_ctz(m)]);
      const __m256i w = _mm256_set1_epi32(table.weights[k]);
      if (k == 0) {
        chi_best = chi;
        w_best = w;
        continue;
      }
      const __m256i lhs = _mm256_mullo_epi32(chi, w_best);
      const __m256i rhs = _mm256_mullo_epi32(chi_best, w);
      const __m256i gt = _mm256_cmpgt_epi32(lhs, rhs);
      chi_best = _mm256_blendv_epi8(chi_best, chi, gt);
      w_best = _mm256_blendv_epi8(w_best, w, gt);
      k_best = _mm256_blendv_epi8(k_best, _mm256_set1_epi32(static_cast<int>(k)), gt);
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(best_chi + lane), chi_best);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(best_index + lane), k_best);
  }
  if (lane < end) scan_scalar(table, degrees, stride, lane, end, best_chi, best_index);
}

}  // namespace fiberjac::kernels::detail
