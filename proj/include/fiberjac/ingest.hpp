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

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fiberjac/curve_model.hpp"
#include "fiberjac/jacobian.hpp"
#include "fiberjac/polynomial.hpp"

namespace fiberjac {

/// y^2 = x^3 + a(t) x + b(t) over Q[t].
struct WeierstrassModel {
  Polynomial a;
  Polynomial b;

  /// Converts y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 to
  /// y^2 = x^3 - 27 c4 x - 54 c6, which is isomorphic over Q.
  static WeierstrassModel from_long_form(const Polynomial& a1, const Polynomial& a2, const Polynomial& a3,
                                         const Polynomial& a4, const Polynomial& a6);
};

struct Invariants {
  Polynomial c4;
  Polynomial c6;
  Polynomial discriminant;
};

/// c4 = -48a, c6 = -864b, discriminant = -16(4a^3 + 27b^2).
/// Throws IsotriviallySingular when the discriminant vanishes identically.
Invariants invariants(const WeierstrassModel& w);

struct ReductionData {
  Valuation v_c4;
  Valuation v_delta;
};

struct UnsupportedReduction {
  std::string reason;
};

using ReductionOutcome = std::variant<KodairaType, UnsupportedReduction>;

/// Fiber type from valuations, assuming a minimal model. Throws
/// NonMinimalModel when v_c4 >= 4 and v_delta >= 12.
ReductionOutcome classify_reduction(const ReductionData& r);

struct DiscriminantPoint {
  /// "t=-4" for a rational point, "roots of t^2 + 1" otherwise.
  std::string label;
  std::optional<BigRational> t0;
  Polynomial factor;
  int degree = 1;
  std::optional<ReductionData> data;
  std::optional<KodairaType> type;
  /// Set when the point could not be classified.
  std::string error;
};

struct ScanResult {
  Invariants invariants;
  std::vector<DiscriminantPoint> points;

  /// Discriminant points plus a "generic" smooth entry, over a 1-dimensional base.
  FibrationDescription fibration() const;
};

/// Finds and classifies every point of the discriminant over Q.
ScanResult scan_discriminant(const WeierstrassModel& w);

}  // namespace fiberjac
