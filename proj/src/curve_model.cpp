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

#include "fiberjac/curve_model.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

#include "fiberjac/error.hpp"

namespace fiberjac {

KodairaType KodairaType::i(int n) {
  if (n <= 0) throw InvalidInput("fiber type I_N requires N >= 1, got " + std::to_string(n));
  return KodairaType(Tag::I, n);
}

bool KodairaType::reducible() const noexcept {
  return (tag_ == Tag::I && n_ >= 2) || tag_ == Tag::III || tag_ == Tag::IV;
}

std::string KodairaType::name() const {
  switch (tag_) {
    case Tag::Smooth: return "smooth";
    case Tag::I: return "I" + std::to_string(n_);
    case Tag::II: return "II";
    case Tag::III: return "III";
    case Tag::IV: return "IV";
  }
  return "?";
}

KodairaType KodairaType::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c == '_' || c == ' ') continue;
    s.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  if (s.find('*') != std::string::npos)
    throw Unsupported("non-reduced fiber type '" + std::string(text) + "' is not supported");
  if (s == "SMOOTH") return smooth();
  if (s == "II") return ii();
  if (s == "III") return iii();
  if (s == "IV") return iv();
  if (s.size() >= 2 && s[0] == 'I' &&
      std::all_of(s.begin() + 1, s.end(), [](unsigned char c) { return std::isdigit(c); })) {
    if (s.size() > 8) throw InvalidInput("fiber index too large: '" + std::string(text) + "'");
    return i(std::stoi(s.substr(1)));
  }
  throw InvalidInput("unknown fiber type '" + std::string(text) + "'");
}

bool SingularPoint::lies_on(int component) const {
  return std::find(components.begin(), components.end(), component) != components.end();
}

int FiberGraph::intersection(int i, int j) const {
  const int n = component_count();
  if (i < 0 || j < 0 || i >= n || j >= n) throw InvalidInput("component index out of range");
  return matrix_[static_cast<std::size_t>(i * n + j)];
}

std::uint32_t FiberGraph::full_mask() const noexcept {
  return component_count() >= 32 ? ~0U : (1U << component_count()) - 1U;
}

Polarization::Polarization(std::vector<std::int64_t> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw InvalidInput("polarization needs at least one weight");
  for (auto w : weights_) {
    if (w < 1) throw InvalidInput("polarization weights must be >= 1");
    total_ += w;
  }
}

std::int64_t Polarization::weight_of(std::uint32_t mask) const noexcept {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < weights_.size(); ++i)
    if ((mask >> i) & 1U) sum += weights_[i];
  return sum;
}

FiberGraph build_fiber(KodairaType kodaira) {
  FiberGraph g(kodaira);
  int n = 1;
  switch (kodaira.tag()) {
    case KodairaType::Tag::I: n = kodaira.n(); break;
    case KodairaType::Tag::III: n = 2; break;
    case KodairaType::Tag::IV: n = 3; break;
    default: break;
  }
  if (n > kMaxComponents)
    throw InvalidInput("at most " + std::to_string(kMaxComponents) + " components are supported");

  for (int i = 0; i < n; ++i) g.components_.push_back({i, "C" + std::to_string(i)});
  g.matrix_.assign(static_cast<std::size_t>(n * n), 0);
  auto set = [&](int i, int j, int v) {
    g.matrix_[static_cast<std::size_t>(i * n + j)] = v;
    g.matrix_[static_cast<std::size_t>(j * n + i)] = v;
  };

  switch (kodaira.tag()) {
    case KodairaType::Tag::Smooth:
      break;
    case KodairaType::Tag::I:
      g.annotation_ = SingularityAnnotation::Nodes;
      if (n == 1) {
        g.points_.push_back({PointKind::Node, {0, 0}});
      } else if (n == 2) {
        set(0, 1, 2);
        g.points_.push_back({PointKind::Node, {0, 1}});
        g.points_.push_back({PointKind::Node, {1, 0}});
      } else {
        for (int k = 0; k < n; ++k) {
          set(k, (k + 1) % n, 1);
          g.points_.push_back({PointKind::Node, {k, (k + 1) % n}});
        }
      }
      break;
    case KodairaType::Tag::II:
      g.annotation_ = SingularityAnnotation::Cusp;
      g.points_.push_back({PointKind::Cusp, {0}});
      break;
    case KodairaType::Tag::III:
      g.annotation_ = SingularityAnnotation::Tangency;
      set(0, 1, 2);
      g.points_.push_back({PointKind::Tacnode, {0, 1}});
      break;
    case KodairaType::Tag::IV:
      g.annotation_ = SingularityAnnotation::TriplePoint;
      set(0, 1, 1);
      set(0, 2, 1);
      set(1, 2, 1);
      g.points_.push_back({PointKind::TriplePoint, {0, 1, 2}});
      break;
  }
  return g;
}

namespace {

std::vector<int> indices_of(std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1U) out.push_back(i);
  return out;
}

std::vector<Subcurve> enumerate(const FiberGraph& g, bool connected_only) {
  std::vector<Subcurve> out;
  const std::uint32_t full = g.full_mask();
  if (!g.reducible()) return out;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    if (connected_only && !is_connected(g, mask)) continue;
    out.push_back(make_subcurve(g, indices_of(mask)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Subcurve make_subcurve(const FiberGraph& g, std::vector<int> indices) {
  std::sort(indices.begin(), indices.end());
  if (indices.empty()) throw InvalidInput("subcurve must be nonempty");
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
    throw InvalidInput("subcurve has repeated components");
  if (indices.front() < 0 || indices.back() >= g.component_count())
    throw InvalidInput("subcurve component index out of range");
  if (static_cast<int>(indices.size()) == g.component_count())
    throw InvalidInput("subcurve must be a proper subset of the components");
  Subcurve d;
  for (int i : indices) d.mask_ |= 1U << i;
  d.indices_ = std::move(indices);
  d.connected_ = is_connected(g, d.mask_);
  return d;
}

bool is_connected(const FiberGraph& g, std::uint32_t mask) {
  if (mask == 0) return false;
  const int n = g.component_count();
  std::uint32_t seen = mask & (~mask + 1U);  // lowest set bit
  std::uint32_t frontier = seen;
  while (frontier != 0) {
    const int i = std::countr_zero(frontier);
    frontier &= frontier - 1U;
    for (int j = 0; j < n; ++j) {
      const std::uint32_t bit = 1U << j;
      if ((mask & bit) && !(seen & bit) && g.intersection(i, j) > 0) {
        seen |= bit;
        frontier |= bit;
      }
    }
  }
  return seen == mask;
}

std::vector<Subcurve> proper_connected_subcurves(const FiberGraph& g) { return enumerate(g, true); }

std::vector<Subcurve> proper_subcurves(const FiberGraph& g) { return enumerate(g, false); }

int boundary(const FiberGraph& g, std::uint32_t mask) {
  const int n = g.component_count();
  if (mask == 0 || mask == g.full_mask())
    throw InvalidInput("boundary needs a nonempty proper subcurve");
  int sum = 0;
  for (int i = 0; i < n; ++i) {
    if (!((mask >> i) & 1U)) continue;
    for (int j = 0; j < n; ++j)
      if (!((mask >> j) & 1U)) sum += g.intersection(i, j);
  }
  return sum;
}

int boundary(const FiberGraph& g, const Subcurve& d) { return boundary(g, d.mask()); }

int structure_euler_characteristic(const FiberGraph& g, std::uint32_t mask) {
  if (mask == g.full_mask()) return euler_characteristic(g);
  const int n = g.component_count();
  int chi = std::popcount(mask);
  for (int i = 0; i < n; ++i) {
    if (!((mask >> i) & 1U)) continue;
    for (int j = i + 1; j < n; ++j)
      if ((mask >> j) & 1U) chi -= g.intersection(i, j);
  }
  return chi;
}

int euler_characteristic(const FiberGraph& g, const Subcurve& d) {
  if (!d.connected()) throw InvalidInput("euler_characteristic needs a connected subcurve");
  return structure_euler_characteristic(g, d.mask());
}

int euler_characteristic(const FiberGraph&) { return 0; }

std::vector<int> boundary_points(const FiberGraph& g, int component) {
  if (component < 0 || component >= g.component_count())
    throw InvalidInput("component index out of range");
  std::vector<int> out;
  const auto points = g.singular_points();
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto& comps = points[k].components;
    const bool on = points[k].lies_on(component);
    const bool elsewhere =
        std::any_of(comps.begin(), comps.end(), [&](int c) { return c != component; });
    if (on && elsewhere) out.push_back(static_cast<int>(k));
  }
  return out;
}

std::string_view to_string(SingularityAnnotation a) {
  switch (a) {
    case SingularityAnnotation::None: return "none";
    case SingularityAnnotation::Nodes: return "nodes";
    case SingularityAnnotation::Cusp: return "cusp";
    case SingularityAnnotation::Tangency: return "tangency";
    case SingularityAnnotation::TriplePoint: return "triple_point";
  }
  return "?";
}

std::string_view to_string(PointKind k) {
  switch (k) {
    case PointKind::Node: return "node";
    case PointKind::Cusp: return "cusp";
    case PointKind::Tacnode: return "tacnode";
    case PointKind::TriplePoint: return "triple";
  }
  return "?";
}

}  // namespace fiberjac
