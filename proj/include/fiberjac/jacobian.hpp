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

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fiberjac/curve_model.hpp"
#include "fiberjac/stability.hpp"

namespace fiberjac {

enum class JacobianKind { SmoothElliptic, NodalRational, CuspidalRational };
/// Group structure of the stable locus of the Jacobian.
enum class StableLocus { EllipticCurve, Gm, Ga };

std::string_view to_string(JacobianKind k);
std::string_view to_string(StableLocus s);

/// The Jacobian (moduli of semistable rank-1 degree-0 sheaves) of one fiber.
struct ModuliClassification {
  JacobianKind kind = JacobianKind::SmoothElliptic;
  StableLocus stable_locus = StableLocus::EllipticCurve;
  /// Strictly semistable S-equivalence classes: 0 on integral fibers, 1 otherwise.
  int extra_points = 0;
  /// Every Jacobian fiber is an integral curve of arithmetic genus 1.
  int arithmetic_genus = 1;

  bool operator==(const ModuliClassification&) const = default;
};

/// Table lookup by fiber type.
ModuliClassification jacobian_type(const KodairaType& k);

/// Same answer computed from the fiber itself: stable stratum and graded
/// objects from the stability engine, node versus cusp from how the boundary
/// points of C_0 are identified by phi. `q_component` picks C_0.
ModuliClassification derive_classification(const FiberGraph& g, int q_component = 0);

/// Smooth point of a component. Each component is a P^1 with coordinate t;
/// its singular points sit at t = infinity, and additionally at t = 0 on
/// components with two nodal branches.
struct SmoothPoint {
  int component = 0;
  Rational coordinate{1};
  bool operator==(const SmoothPoint&) const = default;
};

/// A singular point of the fiber, by index into FiberGraph::singular_points().
struct SingularPointRef {
  int index = 0;
  bool operator==(const SingularPointRef&) const = default;
};

using FiberPoint = std::variant<SmoothPoint, SingularPointRef>;

std::string describe(const FiberGraph& g, const FiberPoint& p);

/// Number of branches of singular points on `component`: 2 when the smooth
/// locus of that component is P^1 minus two points, 1 when minus one point.
int special_branch_count(const FiberGraph& g, int component);

/// Throws InvalidInput for points that are not on the fiber.
void validate(const FiberGraph& g, const FiberPoint& p);

/// A closed point of the Jacobian: a stable class (with its coordinate on the
/// stable-locus group when it is a line bundle on the identity component) or
/// the single strictly semistable S-equivalence class.
struct ModuliPoint {
  std::optional<SheafClass> stable_class;
  std::optional<Rational> coordinate;

  static ModuliPoint extra() { return {}; }
  static ModuliPoint stable(SheafClass cls, std::optional<Rational> coordinate) {
    return {std::move(cls), coordinate};
  }
  bool is_extra() const noexcept { return !stable_class.has_value(); }
  bool operator==(const ModuliPoint&) const = default;
};

/// The sheaf E_p = J_p^* (x) O_C(-q) and where it lands in the Jacobian.
struct EpClass {
  SheafClass cls;
  StabilityVerdict verdict;
  ModuliPoint point;
};

/// Requires a singular fiber and a smooth point q; C_0 is q's component.
EpClass ep_class(const FiberGraph& g, const FiberPoint& p, const SmoothPoint& q);

enum class ImageSingularity { None, Node, Cusp };
std::string_view to_string(ImageSingularity s);

struct PhiImage {
  FiberPoint point;
  ModuliPoint image;
};

/// phi: C_0 -> Jacobian, p -> [E_p], evaluated on sample points of C_0.
struct PhiMap {
  int c0 = 0;
  std::vector<PhiImage> images;
  /// Distinct stable points hit by the smooth samples.
  int distinct_stable = 0;
  /// Smooth samples map injectively.
  bool injective_on_smooth = true;
  /// Distinct points of C_0 meeting the rest of the fiber that were sampled
  /// and sent to the extra point.
  int identified_boundary_points = 0;
  ImageSingularity singularity = ImageSingularity::None;
};

/// Boundary points of C_0 plus `smooth_count` smooth points with
/// coordinates 2, 3, ... (q itself is included first).
std::vector<FiberPoint> default_samples(const FiberGraph& g, const SmoothPoint& q, int smooth_count);

/// Requires a reducible fiber and samples lying on C_0.
PhiMap phi_fibers(const FiberGraph& g, const SmoothPoint& q, const std::vector<FiberPoint>& samples);

// Fibration level ------------------------------------------------------------

/// A fiber entry whose type could not be read as a type-(*) fiber.
struct UnsupportedFiber {
  std::string reason;
  bool operator==(const UnsupportedFiber&) const = default;
};

struct FibrationPoint {
  std::string label;
  std::variant<KodairaType, UnsupportedFiber> fiber = KodairaType::smooth();
  /// Number of geometric points the entry stands for (degree of the factor).
  int degree = 1;
  /// Polynomial whose roots are the points, when they are not rational.
  std::string locus;
};

struct FibrationDescription {
  int base_dim = 1;
  std::vector<FibrationPoint> points;
};

struct ReportEntry {
  std::string label;
  std::optional<KodairaType> fiber;
  std::optional<ModuliClassification> classification;
  std::string error;
  int degree = 1;
  std::string locus;
};

struct FibrationReport {
  int base_dim = 1;
  std::vector<ReportEntry> entries;
  /// Every classified Jacobian fiber is integral of arithmetic genus 1.
  bool all_integral_genus_one = true;
  bool has_singular_fibers = false;
  bool has_reducible_fibers = false;
  /// Fiber type name -> number of entries of that type (singular types only).
  std::map<std::string, int> discriminant_summary;
  std::optional<std::string> singular_locus_note;
  std::vector<std::string> notes;
};

/// Throws InvalidInput for base dimensions other than 1 and 2; unsupported
/// fibers become per-entry errors.
FibrationReport relative_report(const FibrationDescription& fibration);

}  // namespace fiberjac
