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

#include "fiberjac/kernels.hpp"

namespace fiberjac::kernels::detail {

void scan_scalar(const SubcurveTable& table, const std::int32_t* degrees, std::size_t stride,
                 std::size_t begin, std::size_t end, std::int32_t* best_chi,
                 std::int32_t* best_index) {
  const std::size_t rows = table.size();
  for (std::size_t lane = begin; lane < end; ++lane) {
    std::int32_t chi_best = 0;
    std::int32_t w_best = 1;
    std::int32_t k_best = 0;
    for (std::size_t k = 0; k < rows; ++k) {
      std::int32_t chi = table.offsets[k];
      for (std::uint32_t m = table.masks[k]; m != 0; m &= m - 1U)
        chi += degrees[static_cast<std::size_t>(__builtin_ctz(m)) * stride + lane];
      const std::int32_t w = table.weights[k];
      if (k == 0 || chi * w_best > chi_best * w) {
        chi_best = chi;
        w_best = w;
        k_best = static_cast<std::int32_t>(k);
      }
    }
    best_chi[lane] = chi_best;
    best_index[lane] = k_best;
  }
}

}  // namespace fiberjac::kernels::detail
