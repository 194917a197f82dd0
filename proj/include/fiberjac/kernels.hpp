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

#pragma once

// Batched destabilizer scan. For every lane (one multidegree) the kernel walks
// a fixed list of subcurves D and finds the first D maximizing the slope
//   chi_D / h_D,   chi_D = offset_D + sum_{i in D} d_i,
// comparing slopes by cross-multiplication so the result is exact. The scalar
// kernel is the reference; the vector kernels must agree with it bit for bit.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace fiberjac::kernels {

enum class Backend { Scalar, Avx2, Neon };

std::string_view to_string(Backend backend);
/// "auto" resolves to best_available(). Throws InvalidInput otherwise.
Backend parse_backend(std::string_view name);
/// Compiled in and supported by the running CPU.
bool available(Backend backend);
Backend best_available();

/// Per-subcurve constants, in scan order (ties resolve to the earliest row).
struct SubcurveTable {
  int components = 0;
  std::vector<std::uint32_t> masks;
  std::vector<std::int32_t> offsets;
  std::vector<std::int32_t> weights;  // must be >= 1

  std::size_t size() const noexcept { return masks.size(); }
};

/// `degrees` is component-major: degrees[c * lanes + lane]. Writes the best
/// chi and the index of the first maximizing row for every lane.
/// Callers keep |chi| * weight below 2^31; see fits_int32().
void max_slope_scan(Backend backend, const SubcurveTable& table,
                    std::span<const std::int32_t> degrees, std::size_t lanes,
                    std::span<std::int32_t> best_chi, std::span<std::int32_t> best_index);

/// True when every product formed by the scan stays inside int32 for
/// degrees bounded by `max_abs_degree`.
bool fits_int32(const SubcurveTable& table, std::int64_t max_abs_degree);

namespace detail {

// Each variant processes lanes [begin, end) with row stride `stride`.
void scan_scalar(const SubcurveTable& table, const std::int32_t* degrees, std::size_t stride,
                 std::size_t begin, std::size_t end, std::int32_t* best_chi,
                 std::int32_t* best_index);
void scan_avx2(const SubcurveTable& table, const std::int32_t* degrees, std::size_t stride,
               std::size_t begin, std::size_t end, std::int32_t* best_chi,
               std::int32_t* best_index);
void scan_neon(const SubcurveTable& table, const std::int32_t* degrees, std::size_t stride,
               std::size_t begin, std::size_t end, std::int32_t* best_chi,
               std::int32_t* best_index);

}  // namespace detail
}  // namespace fiberjac::kernels
