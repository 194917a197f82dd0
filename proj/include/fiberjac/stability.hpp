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

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "fiberjac/curve_model.hpp"
#include "fiberjac/kernels.hpp"

namespace fiberjac {

/// Exact slopes, ranks and degrees.
using Rational = boost::rational<std::int64_t>;

/// Degrees of a sheaf's restrictions to the components, in component order.
struct MultiDegree {
  std::vector<int> values;

  int size() const noexcept { return static_cast<int>(values.size()); }
  int total() const noexcept;
  /// Sum of the degrees over the components in `mask`.
  int on(std::uint32_t mask) const noexcept;
  int operator[](int i) const { return values[static_cast<std::size_t>(i)]; }

  /// Parses "1,-1,0".
  static MultiDegree parse(std::string_view text);
  std::string to_string() const;

  bool operator==(const MultiDegree&) const = default;
  auto operator<=>(const MultiDegree&) const = default;
};

MultiDegree operator-(const MultiDegree& d);

enum class PointTag { Cusp, Tacnode, Triple };

/// A line bundle, determined up to Pic^0 of the components by its multidegree.
struct LineBundle {
  MultiDegree degrees;
  bool operator==(const LineBundle&) const = default;
};

/// Rank-1 torsion-free sheaf that fails to be locally free at one node of an
/// I_N fiber: the pushforward of a line bundle from the partial normalization
/// at that node. `degrees` is the multidegree of that line bundle; its total
/// is -1 so the pushforward has chi = 0.
struct NodalTorsionFree {
  int node = 0;
  MultiDegree degrees;
  bool operator==(const NodalTorsionFree&) const = default;
};

/// Dual of the ideal of a non-nodal singular point twisted by a line bundle of
/// multidegree `degrees` (total -1): the sheaf J_p^* (x) L at the cusp of II,
/// the tacnode of III or the triple point of IV.
struct SingularPointDual {
  PointTag point = PointTag::Cusp;
  MultiDegree degrees;
  bool operator==(const SingularPointDual&) const = default;
};

/// A rank-1, degree-0, pure dimension one sheaf class on a fiber.
struct SheafClass {
  std::variant<LineBundle, NodalTorsionFree, SingularPointDual> value;

  static SheafClass line_bundle(MultiDegree d) { return {LineBundle{std::move(d)}}; }
  static SheafClass nodal(int node, MultiDegree d) { return {NodalTorsionFree{node, std::move(d)}}; }
  static SheafClass singular_dual(PointTag tag, MultiDegree d) {
    return {SingularPointDual{tag, std::move(d)}};
  }

  bool locally_free() const noexcept { return std::holds_alternative<LineBundle>(value); }
  const MultiDegree& degrees() const noexcept;
  std::string describe() const;

  bool operator==(const SheafClass&) const = default;
};

/// Throws InvalidInput unless `cls` is a rank-1 degree-0 class on `g`.
void validate(const FiberGraph& g, const SheafClass& cls);

/// Index in g.singular_points() where `cls` is not locally free.
std::optional<int> singular_support(const FiberGraph& g, const SheafClass& cls);

/// chi of the maximal subsheaf of `cls` supported on the components in
/// `mask`. The empty and full masks give 0.
int subsheaf_chi(const FiberGraph& g, const SheafClass& cls, std::uint32_t mask);

/// Polarized rank, degree and slope read off the Hilbert polynomial
/// P(F, n, H) = h rk n + dg + rk chi(O_C).
struct HilbertData {
  Rational rank;
  Rational degree;
  Rational slope;

  /// Evaluates P(F, n, H) for a fiber with chi(O_C) = 0 and total weight h.
  Rational polynomial(std::int64_t h, std::int64_t n) const;
  bool operator==(const HilbertData&) const = default;
};

/// The subsheaf of `cls` supported on `support` (a mask over components).
struct SubsheafDescriptor {
  SheafClass cls;
  std::uint32_t support = 0;
};

HilbertData hilbert_data(const FiberGraph& g, const Polarization& pol, const SheafClass& cls);
/// Throws InvalidInput when the support is empty (a rank-0 sheaf).
HilbertData hilbert_data(const FiberGraph& g, const Polarization& pol, const SubsheafDescriptor& s);

enum class Verdict { Stable, StrictlySemistable, Unstable };

std::string_view to_string(Verdict v);

struct StabilityVerdict {
  Verdict verdict = Verdict::Stable;
  /// Destabilizing (or slope-0) subcurve; present iff not stable.
  std::optional<Subcurve> witness;
  /// Slope of the subsheaf supported on the witness.
  std::optional<Rational> witness_slope;
};

struct OracleOptions {
  /// Also test subsheaves supported on disconnected subcurves.
  bool include_disconnected = false;
};

/// Combinatorial rule on the cyclic order of components. Witness-free.
StabilityVerdict classify_by_rule(const FiberGraph& g, const MultiDegree& d);

/// Slope test against the maximal subsheaf supported on every proper
/// (connected) subcurve, in exact arithmetic. Witness is the first
/// slope-maximizing subcurve in lexicographic order.
StabilityVerdict oracle_classify(const FiberGraph& g, const Polarization& pol,
                                 const SheafClass& cls, OracleOptions options = {});
StabilityVerdict oracle_classify(const FiberGraph& g, const Polarization& pol,
                                 const MultiDegree& d, OracleOptions options = {});

/// One Jordan-Holder quotient: a stable sheaf of the given degree on the
/// components in `support`.
struct GradedFactor {
  std::vector<int> support;
  int degree = 0;

  bool operator==(const GradedFactor&) const = default;
  auto operator<=>(const GradedFactor&) const = default;
};

/// Gr(F), kept sorted. A stable class is its own graded object and is
/// recorded in `stable_class` alongside the single whole-curve factor.
struct GradedObject {
  std::vector<GradedFactor> factors;
  std::optional<SheafClass> stable_class;

  bool stable() const noexcept { return stable_class.has_value(); }
};

/// Builds a Jordan-Holder filtration by repeatedly splitting off the first
/// minimal slope-0 subsheaf. Throws InvalidInput for unstable classes.
GradedObject graded_object(const FiberGraph& g, const SheafClass& cls);
GradedObject graded_object(const FiberGraph& g, const MultiDegree& d);

bool s_equivalent(const GradedObject& a, const GradedObject& b);

/// Calls `visit` for every integer vector of length `n` with entries in
/// [-bound, bound] summing to zero, in lexicographic order.
template <class Visit>
void for_each_balanced_vector(int n, int bound, Visit&& visit);

/// (2 bound + 1)^(n - 1), saturating at UINT64_MAX.
std::uint64_t search_space(int n, int bound);

struct StratificationOptions {
  int bound = 1;
  std::optional<Polarization> polarization;  // default: all weights 1
  bool include_disconnected = false;
  std::uint64_t cap = 10'000'000;
  kernels::Backend backend = kernels::best_available();
};

struct VerdictBuckets {
  std::array<std::vector<MultiDegree>, 3> vectors;  // indexed by Verdict

  const std::vector<MultiDegree>& of(Verdict v) const {
    return vectors[static_cast<std::size_t>(v)];
  }
  std::size_t count(Verdict v) const { return of(v).size(); }
};

struct Disagreement {
  MultiDegree degrees;
  Verdict rule;
  Verdict oracle;
};

struct StratificationReport {
  KodairaType fiber = KodairaType::smooth();
  int bound = 0;
  std::vector<std::int64_t> polarization;
  bool include_disconnected = false;
  std::string backend;
  std::uint64_t examined = 0;
  VerdictBuckets rule;
  VerdictBuckets oracle;
  std::vector<Disagreement> disagreements;
};

/// Classifies every balanced vector in the box with both the rule and the
/// batched oracle. Throws CapExceeded when the box is larger than the cap.
StratificationReport enumerate_stratification(const FiberGraph& g,
                                              const StratificationOptions& options);

/// Batched oracle verdicts for line bundles, backed by the SIMD slope scan.
std::vector<Verdict> oracle_classify_batch(const FiberGraph& g, const Polarization& pol,
                                           std::span<const MultiDegree> batch,
                                           OracleOptions options, kernels::Backend backend);

// ---------------------------------------------------------------------------

template <class Visit>
void for_each_balanced_vector(int n, int bound, Visit&& visit) {
  if (n <= 0) return;
  std::vector<int> v(static_cast<std::size_t>(n), -bound);
  MultiDegree d;
  for (;;) {
    int partial = 0;
    for (int i = 0; i + 1 < n; ++i) partial += v[static_cast<std::size_t>(i)];
    const int last = -partial;
    if (last >= -bound && last <= bound) {
      v.back() = last;
      d.values = v;
      visit(static_cast<const MultiDegree&>(d));
    }
    int i = n - 2;
    while (i >= 0 && v[static_cast<std::size_t>(i)] == bound) v[static_cast<std::size_t>(i--)] = -bound;
    if (i < 0) return;
    ++v[static_cast<std::size_t>(i)];
  }
}

}  // namespace fiberjac
