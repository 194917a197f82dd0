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

// Brute-force references used only by the tests. Nothing here calls into the
// subcurve, boundary or chi routines it is used to check; it reads the raw
// intersection matrix and recomputes everything from scratch.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "fiberjac/curve_model.hpp"
#include "fiberjac/stability.hpp"

namespace fiberjac::testing {

inline std::vector<int> members(const FiberGraph& g, std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; i < g.component_count(); ++i)
    if (mask & (1U << i)) out.push_back(i);
  return out;
}

// Connectivity by union-find over the induced edges.
inline bool connected_by_union_find(const FiberGraph& g, std::uint32_t mask) {
  const auto m = members(g, mask);
  if (m.empty()) return false;
  std::vector<int> parent(static_cast<std::size_t>(g.component_count()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  for (int i : m)
    for (int j : m)
      if (i < j && g.intersection(i, j) > 0) parent[static_cast<std::size_t>(find(i))] = find(j);
  const int root = find(m.front());
  return std::all_of(m.begin(), m.end(), [&](int i) { return find(i) == root; });
}

inline std::size_t count_connected_proper(const FiberGraph& g) {
  const std::uint32_t full = (1U << g.component_count()) - 1U;
  std::size_t count = 0;
  for (std::uint32_t mask = 1; mask < full; ++mask)
    if (connected_by_union_find(g, mask)) ++count;
  return count;
}

// Number of proper arcs of an N-cycle: N starting points times N-1 lengths.
inline std::size_t cycle_arc_count(int n) { return static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1); }

inline int crossing(const FiberGraph& g, std::uint32_t a, std::uint32_t b) {
  int sum = 0;
  for (int i : members(g, a))
    for (int j : members(g, b)) sum += g.intersection(i, j);
  return sum;
}

// chi(O_E) of a proper subcurve by genus counting: each connected piece of a
// type-(*) fiber minus at least one component is a tree of P^1s
// (chi = 1) unless it carries a double intersection, in which case the two
// intersection points (or the tangency) close a loop (chi = 0).
inline int structure_chi_by_pieces(const FiberGraph& g, std::uint32_t mask) {
  int chi = 0;
  std::uint32_t rest = mask;
  while (rest != 0) {
    std::uint32_t piece = rest & (~rest + 1U);
    for (bool grew = true; grew;) {
      grew = false;
      for (int j : members(g, rest & ~piece))
        for (int i : members(g, piece))
          if (g.intersection(i, j) > 0 && !(piece & (1U << j))) {
            piece |= 1U << j;
            grew = true;
          }
    }
    const int comps = static_cast<int>(members(g, piece).size());
    int edges = 0;
    for (int i : members(g, piece))
      for (int j : members(g, piece))
        if (i < j) edges += g.intersection(i, j);
    chi += comps - edges;  // h^0 - h^1 of a nodal configuration of P^1s
    rest &= ~piece;
  }
  return chi;
}

// chi of L_D computed through the quotient L -> L|_{complement}:
// chi(L_D) = chi(L) - chi(L|_Dbar), with chi(L) = 0 for degree 0.
inline int chi_via_quotient(const FiberGraph& g, const MultiDegree& d, std::uint32_t mask) {
  const std::uint32_t full = (1U << g.component_count()) - 1U;
  const std::uint32_t complement = full & ~mask;
  int deg_complement = 0;
  for (int i : members(g, complement)) deg_complement += d[i];
  return -(deg_complement + structure_chi_by_pieces(g, complement));
}

// Verdict by exhausting every nonempty proper subset through the quotient
// route. Weights are positive, so only the sign of chi matters.
inline Verdict brute_force_verdict(const FiberGraph& g, const MultiDegree& d) {
  const std::uint32_t full = (1U << g.component_count()) - 1U;
  bool any_zero = false;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    const std::int64_t chi = chi_via_quotient(g, d, mask);
    if (chi > 0) return Verdict::Unstable;
    if (chi == 0) any_zero = true;
  }
  return any_zero ? Verdict::StrictlySemistable : Verdict::Stable;
}

// All permutations of the components preserving the intersection matrix.
inline std::vector<std::vector<int>> automorphisms(const FiberGraph& g) {
  std::vector<int> perm(static_cast<std::size_t>(g.component_count()));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (int i = 0; ok && i < g.component_count(); ++i)
      for (int j = 0; ok && j < g.component_count(); ++j)
        ok = g.intersection(i, j) == g.intersection(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline MultiDegree permute(const MultiDegree& d, const std::vector<int>& perm) {
  MultiDegree out = d;
  for (std::size_t i = 0; i < perm.size(); ++i) out.values[static_cast<std::size_t>(perm[i])] = d.values[i];
  return out;
}

// Every reducible type-(*) fiber with at most `max_components` components.
inline std::vector<KodairaType> reducible_types(int max_components) {
  std::vector<KodairaType> out;
  for (int n = 2; n <= max_components; ++n) out.push_back(KodairaType::i(n));
  out.push_back(KodairaType::iii());
  out.push_back(KodairaType::iv());
  return out;
}

}  // namespace fiberjac::testing
