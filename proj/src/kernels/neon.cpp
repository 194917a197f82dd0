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

// Built only for AArch64 targets, where Advanced SIMD is baseline.

#include <arm_neon.h>

#include "fiberjac/curve_model.hpp"
#include "fiberjac/kernels.hpp"

namespace fiberjac::kernels::detail {

void scan_neon(const SubcurveTable& table, const std::int32_t* degrees, std::size_t stride,
               std::size_t begin, std::size_t end, std::int32_t* best_chi,
               std::int32_t* best_index) {
  const std::size_t rows = table.size();
  const int n = table.components;
  int32x4_t d[kMaxComponents];

  std::size_t lane = begin;
  for (; lane + 4 <= end; lane += 4) {
    for (int c = 0; c < n; ++c) d[c] = vld1q_s32(degrees + static_cast<std::size_t>(c) * stride + lane);

    int32x4_t chi_best = vdupq_n_s32(0);
    int32x4_t w_best = vdupq_n_s32(1);
    int32x4_t k_best = vdupq_n_s32(0);
    for (std::size_t k = 0; k < rows; ++k) {
      int32x4_t chi = vdupq_n_s32(table.offsets[k]);
      for (std::uint32_t m = table.masks[k]; m != 0; m &= m - 1U)
        chi = vaddq_s32(chi, d[__builtin_ctz(m)]);
      const int32x4_t w = vdupq_n_s32(table.weights[k]);
      if (k == 0) {
        chi_best = chi;
        w_best = w;
        continue;
      }
      const uint32x4_t gt = vcgtq_s32(vmulq_s32(chi, w_best), vmulq_s32(chi_best, w));
      chi_best = vbslq_s32(gt, chi, chi_best);
      w_best = vbslq_s32(gt, w, w_best);
      k_best = vbslq_s32(gt, vdupq_n_s32(static_cast<std::int32_t>(k)), k_best);
    }
    vst1q_s32(best_chi + lane, chi_best);
    vst1q_s32(best_index + lane, k_best);
  }
  if (lane < end) scan_scalar(table, degrees, stride, lane, end, best_chi, best_index);
}

}  // namespace fiberjac::kernels::detail
