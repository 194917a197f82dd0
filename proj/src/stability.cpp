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

#include "fiberjac/stability.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>
#include <stdexcept>

#include "fiberjac/error.hpp"

namespace fiberjac {

int MultiDegree::total() const noexcept { return std::accumulate(values.begin(), values.end(), 0); }

int MultiDegree::on(std::uint32_t mask) const noexcept {
  int sum = 0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if ((mask >> i) & 1U) sum += values[i];
  return sum;
}

MultiDegree MultiDegree::parse(std::string_view text) {
  MultiDegree d;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty() && item.front() == '+') item.remove_prefix(1);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
      throw InvalidInput("bad degree entry '" + std::string(item) + "'");
    d.values.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (d.values.empty()) throw InvalidInput("empty multidegree");
  return d;
}

std::string MultiDegree::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

MultiDegree operator-(const MultiDegree& d) {
  MultiDegree out = d;
  for (auto& v : out.values) v = -v;
  return out;
}

const MultiDegree& SheafClass::degrees() const noexcept {
  return std::visit([](const auto& v) -> const MultiDegree& { return v.degrees; }, value);
}

std::string SheafClass::describe() const {
  if (const auto* lb = std::get_if<LineBundle>(&value)) return "line_bundle(" + lb->degrees.to_string() + ")";
  if (const auto* tf = std::get_if<NodalTorsionFree>(&value))
    return "nodal_torsion_free(node " + std::to_string(tf->node) + "; " + tf->degrees.to_string() + ")";
  const auto& sd = std::get<SingularPointDual>(value);
  const char* tag = sd.point == PointTag::Cusp ? "cusp" : sd.point == PointTag::Tacnode ? "tacnode" : "triple";
  return std::string("singular_point_dual(") + tag + "; " + sd.degrees.to_string() + ")";
}

namespace {

PointKind kind_of(PointTag tag) {
  switch (tag) {
    case PointTag::Cusp: return PointKind::Cusp;
    case PointTag::Tacnode: return PointKind::Tacnode;
    case PointTag::Triple: return PointKind::TriplePoint;
  }
  return PointKind::Cusp;
}

int boundary_or_zero(const FiberGraph& g, std::uint32_t mask) {
  return (mask == 0 || mask == g.full_mask()) ? 0 : boundary(g, mask);
}

std::vector<int> indices_of(std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1U) out.push_back(i);
  return out;
}

void require_reducible(const FiberGraph& g, const char* what) {
  if (!g.reducible())
    throw InvalidInput(std::string(what) + " needs a reducible fiber; every rank-1 degree-0 class on " +
                       g.kodaira().name() + " is stable");
}

Verdict verdict_from_sign(std::int64_t sign) {
  if (sign < 0) return Verdict::Stable;
  if (sign == 0) return Verdict::StrictlySemistable;
  return Verdict::Unstable;
}

}  // namespace

void validate(const FiberGraph& g, const SheafClass& cls) {
  const auto& d = cls.degrees();
  if (d.size() != g.component_count())
    throw InvalidInput("multidegree has " + std::to_string(d.size()) + " entries but the fiber has " +
                       std::to_string(g.component_count()) + " components");
  if (const auto* tf = std::get_if<NodalTorsionFree>(&cls.value)) {
    if (g.kodaira().tag() != KodairaType::Tag::I)
      throw InvalidInput("nodal torsion-free classes live on I_N fibers only");
    if (tf->node < 0 || tf->node >= static_cast<int>(g.singular_points().size()))
      throw InvalidInput("node index " + std::to_string(tf->node) + " out of range");
    if (d.total() != -1)
      throw InvalidInput("the pullback to the partial normalization must have total degree -1");
    return;
  }
  if (const auto* sd = std::get_if<SingularPointDual>(&cls.value)) {
    const auto points = g.singular_points();
    if (points.size() != 1 || points.front().kind != kind_of(sd->point))
      throw InvalidInput("fiber " + g.kodaira().name() + " has no such singular point");
    if (d.total() != -1) throw InvalidInput("the twisting line bundle must have total degree -1");
    return;
  }
  if (d.total() != 0) throw InvalidInput("line bundle must have total degree 0, got " + std::to_string(d.total()));
}

std::optional<int> singular_support(const FiberGraph& g, const SheafClass& cls) {
  if (const auto* tf = std::get_if<NodalTorsionFree>(&cls.value)) return tf->node;
  if (std::holds_alternative<SingularPointDual>(cls.value) && !g.singular_points().empty()) return 0;
  return std::nullopt;
}

int subsheaf_chi(const FiberGraph& g, const SheafClass& cls, std::uint32_t mask) {
  if (mask == 0) return 0;
  int chi = cls.degrees().on(mask) - boundary_or_zero(g, mask) + structure_euler_characteristic(g, mask);
  // The skyscraper at a non-locally-free point lifts into every subsheaf
  // whose support passes through that point.
  if (const auto p = singular_support(g, cls)) {
    const auto& comps = g.singular_points()[static_cast<std::size_t>(*p)].components;
    if (std::any_of(comps.begin(), comps.end(), [&](int c) { return (mask >> c) & 1U; })) ++chi;
  }
  return chi;
}

Rational HilbertData::polynomial(std::int64_t h, std::int64_t n) const {
  // chi(O_C) = 0 on every fiber of type (*).
  return Rational(h) * rank * Rational(n) + degree;
}

HilbertData hilbert_data(const FiberGraph& g, const Polarization& pol, const SheafClass& cls) {
  return hilbert_data(g, pol, SubsheafDescriptor{cls, g.full_mask()});
}

HilbertData hilbert_data(const FiberGraph& g, const Polarization& pol, const SubsheafDescriptor& s) {
  validate(g, s.cls);
  if (pol.size() != g.component_count()) throw InvalidInput("polarization size does not match the fiber");
  if (s.support == 0) throw InvalidInput("a subsheaf with empty support has rank 0 and is not pure of dimension one");
  if ((s.support & ~g.full_mask()) != 0) throw InvalidInput("support mask names components outside the fiber");
  HilbertData out;
  out.rank = Rational(pol.weight_of(s.support), pol.total());
  out.degree = Rational(subsheaf_chi(g, s.cls, s.support));
  out.slope = out.degree / out.rank;
  return out;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Stable: return "Stable";
    case Verdict::StrictlySemistable: return "StrictlySemistable";
    case Verdict::Unstable: return "Unstable";
  }
  return "?";
}

namespace {

// Rule on one cyclic arrangement of the components.
Verdict rule_on_cycle(const MultiDegree& d, std::span<const int> order) {
  std::vector<int> nonzero;
  for (int c : order) {
    const int r = d[c];
    if (r < -1 || r > 1) return Verdict::Unstable;
    if (r != 0) nonzero.push_back(r);
  }
  if (nonzero.empty()) return Verdict::Stable;
  const std::size_t k = nonzero.size();
  for (std::size_t i = 0; i < k; ++i)
    if (k > 1 && nonzero[i] == nonzero[(i + 1) % k]) return Verdict::Unstable;
  return Verdict::StrictlySemistable;
}

}  // namespace

StabilityVerdict classify_by_rule(const FiberGraph& g, const MultiDegree& d) {
  require_reducible(g, "classify_by_rule");
  validate(g, SheafClass::line_bundle(d));
  const int n = g.component_count();
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const Verdict v = rule_on_cycle(d, order);
  if (g.kodaira().tag() == KodairaType::Tag::IV) {
    // Three components through one point carry no preferred cyclic order.
    const std::array<int, 3> reversed{0, 2, 1};
    if (rule_on_cycle(d, reversed) != v)
      throw std::logic_error("cyclic orders of a type IV fiber disagree");
  }
  return {v, std::nullopt, std::nullopt};
}

StabilityVerdict oracle_classify(const FiberGraph& g, const Polarization& pol, const SheafClass& cls,
                                 OracleOptions options) {
  require_reducible(g, "oracle_classify");
  validate(g, cls);
  if (pol.size() != g.component_count()) throw InvalidInput("polarization size does not match the fiber");

  const auto candidates = options.include_disconnected ? proper_subcurves(g) : proper_connected_subcurves(g);
  std::optional<Rational> best;
  const Subcurve* best_d = nullptr;
  for (const auto& d : candidates) {
    const Rational slope = Rational(subsheaf_chi(g, cls, d.mask())) * pol.total() / pol.weight_of(d.mask());
    if (!best || slope > *best) {
      best = slope;
      best_d = &d;
    }
  }
  StabilityVerdict out;
  out.verdict = verdict_from_sign(best->numerator());
  if (out.verdict != Verdict::Stable) {
    out.witness = *best_d;
    out.witness_slope = *best;
  }
  return out;
}

StabilityVerdict oracle_classify(const FiberGraph& g, const Polarization& pol, const MultiDegree& d,
                                 OracleOptions options) {
  return oracle_classify(g, pol, SheafClass::line_bundle(d), options);
}

GradedObject graded_object(const FiberGraph& g, const SheafClass& cls) {
  validate(g, cls);
  const std::uint32_t full = g.full_mask();
  GradedObject out;
  if (!g.reducible()) {
    out.factors.push_back({indices_of(full), 0});
    out.stable_class = cls;
    return out;
  }
  for (std::uint32_t mask = 1; mask < full; ++mask)
    if (subsheaf_chi(g, cls, mask) > 0)
      throw InvalidInput("class " + cls.describe() + " is unstable and has no Jordan-Holder filtration");

  std::uint32_t current = 0;
  while (current != full) {
    const std::uint32_t rest = full & ~current;
    std::vector<std::uint32_t> candidates;
    for (std::uint32_t e = rest; e != 0; e = (e - 1) & rest)
      if (subsheaf_chi(g, cls, current | e) == 0) candidates.push_back(e);
    // The full complement always qualifies since chi(F) = 0.
    std::vector<std::vector<int>> minimal;
    for (auto e : candidates) {
      const bool has_smaller = std::any_of(candidates.begin(), candidates.end(),
                                           [&](std::uint32_t f) { return f != e && (f & e) == f; });
      if (!has_smaller) minimal.push_back(indices_of(e));
    }
    const auto chosen = *std::min_element(minimal.begin(), minimal.end());
    std::uint32_t e = 0;
    for (int i : chosen) e |= 1U << i;

    if (current == 0 && e == full) {
      out.factors.push_back({chosen, 0});
      out.stable_class = cls;
      return out;
    }
    const int chi_factor = subsheaf_chi(g, cls, current | e) - subsheaf_chi(g, cls, current);
    out.factors.push_back({chosen, chi_factor - structure_euler_characteristic(g, e)});
    current |= e;
  }
  std::sort(out.factors.begin(), out.factors.end());
  return out;
}

GradedObject graded_object(const FiberGraph& g, const MultiDegree& d) {
  return graded_object(g, SheafClass::line_bundle(d));
}

bool s_equivalent(const GradedObject& a, const GradedObject& b) {
  if (a.stable() != b.stable()) return false;
  if (a.stable()) return *a.stable_class == *b.stable_class;
  return a.factors == b.factors;
}

std::uint64_t search_space(int n, int bound) {
  std::uint64_t out = 1;
  const std::uint64_t side = 2ULL * static_cast<std::uint64_t>(bound) + 1ULL;
  for (int i = 0; i + 1 < n; ++i) {
    if (out > UINT64_MAX / side) return UINT64_MAX;
    out *= side;
  }
  return out;
}

namespace {

kernels::SubcurveTable make_table(const FiberGraph& g, const Polarization& pol, OracleOptions options,
                                  bool& fits) {
  kernels::SubcurveTable table;
  table.components = g.component_count();
  fits = true;
  const auto candidates = options.include_disconnected ? proper_subcurves(g) : proper_connected_subcurves(g);
  for (const auto& d : candidates) {
    const std::int64_t w = pol.weight_of(d.mask());
    if (w > INT32_MAX) fits = false;
    table.masks.push_back(d.mask());
    table.offsets.push_back(structure_euler_characteristic(g, d.mask()) - boundary(g, d));
    table.weights.push_back(static_cast<std::int32_t>(std::min<std::int64_t>(w, INT32_MAX)));
  }
  return table;
}

}  // namespace

std::vector<Verdict> oracle_classify_batch(const FiberGraph& g, const Polarization& pol,
                                           std::span<const MultiDegree> batch, OracleOptions options,
                                           kernels::Backend backend) {
  require_reducible(g, "oracle_classify_batch");
  if (pol.size() != g.component_count()) throw InvalidInput("polarization size does not match the fiber");
  std::vector<Verdict> out;
  out.reserve(batch.size());
  if (batch.empty()) return out;

  std::int64_t max_abs = 0;
  for (const auto& d : batch) {
    validate(g, SheafClass::line_bundle(d));
    for (int v : d.values) max_abs = std::max<std::int64_t>(max_abs, std::abs(v));
  }
  bool fits = false;
  const auto table = make_table(g, pol, options, fits);
  if (!fits || !kernels::fits_int32(table, max_abs)) {
    for (const auto& d : batch) out.push_back(oracle_classify(g, pol, d, options).verdict);
    return out;
  }

  const std::size_t lanes = batch.size();
  const auto n = static_cast<std::size_t>(g.component_count());
  std::vector<std::int32_t> soa(n * lanes);
  for (std::size_t lane = 0; lane < lanes; ++lane)
    for (std::size_t c = 0; c < n; ++c) soa[c * lanes + lane] = batch[lane].values[c];
  std::vector<std::int32_t> best_chi(lanes), best_index(lanes);
  kernels::max_slope_scan(backend, table, soa, lanes, best_chi, best_index);
  for (auto chi : best_chi) out.push_back(verdict_from_sign(chi));
  return out;
}

StratificationReport enumerate_stratification(const FiberGraph& g, const StratificationOptions& options) {
  require_reducible(g, "enumerate_stratification");
  if (options.bound < 1) throw InvalidInput("bound must be >= 1");
  const int n = g.component_count();
  const std::uint64_t space = search_space(n, options.bound);
  if (space > options.cap) throw CapExceeded(space, options.cap);
  const Polarization pol = options.polarization.value_or(Polarization::uniform(n));
  if (pol.size() != n) throw InvalidInput("polarization size does not match the fiber");

  StratificationReport report;
  report.fiber = g.kodaira();
  report.bound = options.bound;
  report.polarization.assign(pol.weights().begin(), pol.weights().end());
  report.include_disconnected = options.include_disconnected;
  report.backend = std::string(kernels::to_string(options.backend));

  constexpr std::size_t kChunk = 4096;
  std::vector<MultiDegree> chunk;
  chunk.reserve(kChunk);
  const OracleOptions oracle_options{options.include_disconnected};
  auto flush = [&] {
    const auto verdicts = oracle_classify_batch(g, pol, chunk, oracle_options, options.backend);
    for (std::size_t i = 0; i < chunk.size(); ++i) {
      const Verdict rule = classify_by_rule(g, chunk[i]).verdict;
      report.rule.vectors[static_cast<std::size_t>(rule)].push_back(chunk[i]);
      report.oracle.vectors[static_cast<std::size_t>(verdicts[i])].push_back(chunk[i]);
      if (rule != verdicts[i]) report.disagreements.push_back({chunk[i], rule, verdicts[i]});
    }
    report.examined += chunk.size();
    chunk.clear();
  };
  for_each_balanced_vector(n, options.bound, [&](const MultiDegree& d) {
    chunk.push_back(d);
    if (chunk.size() == kChunk) flush();
  });
  if (!chunk.empty()) flush();
  return report;
}

}  // namespace fiberjac
