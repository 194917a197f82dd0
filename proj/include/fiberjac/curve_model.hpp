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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fiberjac {

/// Fiber types admitted in a fibration of type (*): smooth, I_N, II, III, IV.
class KodairaType {
 public:
  enum class Tag { Smooth, I, II, III, IV };

  static KodairaType smooth() { return KodairaType(Tag::Smooth, 0); }
  /// Throws InvalidInput for n <= 0.
  static KodairaType i(int n);
  static KodairaType ii() { return KodairaType(Tag::II, 0); }
  static KodairaType iii() { return KodairaType(Tag::III, 0); }
  static KodairaType iv() { return KodairaType(Tag::IV, 0); }

  /// Accepts "smooth", "I<N>", "II", "III", "IV" (case-insensitive, optional "I_N").
  /// Starred types raise Unsupported; anything else raises InvalidInput.
  static KodairaType parse(std::string_view text);

  Tag tag() const noexcept { return tag_; }
  /// N for I_N, 0 otherwise.
  int n() const noexcept { return n_; }
  bool reducible() const noexcept;
  /// Shorthand form accepted by parse(): "smooth", "I4", "III", ...
  std::string name() const;

  bool operator==(const KodairaType&) const = default;

 private:
  KodairaType(Tag tag, int n) : tag_(tag), n_(n) {}

  Tag tag_;
  int n_;
};

/// Shape of the singularities of the configuration.
enum class SingularityAnnotation { None, Nodes, Cusp, Tangency, TriplePoint };

enum class PointKind { Node, Cusp, Tacnode, TriplePoint };

/// A singular point of the fiber and the components whose branches pass
/// through it (a component appears twice for the node of I_1).
struct SingularPoint {
  PointKind kind;
  std::vector<int> components;

  bool lies_on(int component) const;
  bool operator==(const SingularPoint&) const = default;
};

struct Component {
  int index;
  std::string label;

  bool operator==(const Component&) const = default;
};

/// Dual graph of a Kodaira fiber: rational components and their pairwise
/// intersection numbers. Components are indexed from 0.
class FiberGraph {
 public:
  const KodairaType& kodaira() const noexcept { return kodaira_; }
  int component_count() const noexcept { return static_cast<int>(components_.size()); }
  std::span<const Component> components() const noexcept { return components_; }
  /// C_i . C_j for i != j; 0 on the diagonal.
  int intersection(int i, int j) const;
  std::span<const SingularPoint> singular_points() const noexcept { return points_; }
  SingularityAnnotation annotation() const noexcept { return annotation_; }
  bool reducible() const noexcept { return components_.size() > 1; }
  /// Bitmask of all components.
  std::uint32_t full_mask() const noexcept;

  bool operator==(const FiberGraph&) const = default;

 private:
  friend FiberGraph build_fiber(KodairaType kodaira);

  explicit FiberGraph(KodairaType kodaira) : kodaira_(kodaira) {}

  KodairaType kodaira_;
  std::vector<Component> components_;
  std::vector<int> matrix_;  // row-major, component_count^2
  std::vector<SingularPoint> points_;
  SingularityAnnotation annotation_ = SingularityAnnotation::None;
};

/// Subsets of components are limited to this many so they fit a 32-bit mask.
inline constexpr int kMaxComponents = 24;

/// A nonempty proper set of components.
class Subcurve {
 public:
  const std::vector<int>& indices() const noexcept { return indices_; }
  std::uint32_t mask() const noexcept { return mask_; }
  bool connected() const noexcept { return connected_; }
  bool contains(int component) const noexcept { return (mask_ >> component) & 1U; }
  int size() const noexcept { return static_cast<int>(indices_.size()); }

  bool operator==(const Subcurve& other) const { return indices_ == other.indices_; }
  auto operator<=>(const Subcurve& other) const { return indices_ <=> other.indices_; }

 private:
  friend Subcurve make_subcurve(const FiberGraph&, std::vector<int>);

  std::vector<int> indices_;
  std::uint32_t mask_ = 0;
  bool connected_ = false;
};

/// Positive integer weights h_i (degree of the polarization on each component).
class Polarization {
 public:
  /// Throws InvalidInput if any weight is < 1.
  explicit Polarization(std::vector<std::int64_t> weights);
  static Polarization uniform(int components) {
    return Polarization(std::vector<std::int64_t>(components, 1));
  }

  std::span<const std::int64_t> weights() const noexcept { return weights_; }
  std::int64_t total() const noexcept { return total_; }
  std::int64_t weight_of(std::uint32_t mask) const noexcept;
  int size() const noexcept { return static_cast<int>(weights_.size()); }

  bool operator==(const Polarization&) const = default;

 private:
  std::vector<std::int64_t> weights_;
  std::int64_t total_ = 0;
};

/// Dual graph of the given fiber type.
FiberGraph build_fiber(KodairaType kodaira);

/// Validates and sorts `indices`; throws InvalidInput for empty, full,
/// duplicate or out-of-range sets.
Subcurve make_subcurve(const FiberGraph& g, std::vector<int> indices);

bool is_connected(const FiberGraph& g, std::uint32_t mask);

/// Proper connected subcurves in lexicographic order of their index sets.
/// Empty for single-component fibers.
std::vector<Subcurve> proper_connected_subcurves(const FiberGraph& g);

/// Every nonempty proper subset, connected or not, lexicographically ordered.
std::vector<Subcurve> proper_subcurves(const FiberGraph& g);

/// D . complement(D).
int boundary(const FiberGraph& g, const Subcurve& d);
int boundary(const FiberGraph& g, std::uint32_t mask);

/// chi(O_D) for a proper connected subcurve; throws InvalidInput otherwise.
int euler_characteristic(const FiberGraph& g, const Subcurve& d);
/// chi(O_C) of the whole fiber, which has arithmetic genus 1.
int euler_characteristic(const FiberGraph& g);

/// chi(O_D) for any proper subset, summed over connected pieces as
/// #components - #internal intersections. The full mask yields chi(O_C).
int structure_euler_characteristic(const FiberGraph& g, std::uint32_t mask);

/// Indices (into singular_points()) of the points where `component` meets
/// the rest of the fiber.
std::vector<int> boundary_points(const FiberGraph& g, int component);

std::string_view to_string(SingularityAnnotation a);
std::string_view to_string(PointKind k);

}  // namespace fiberjac
