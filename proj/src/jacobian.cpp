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

#include "fiberjac/jacobian.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "fiberjac/error.hpp"

namespace fiberjac {

std::string_view to_string(JacobianKind k) {
  switch (k) {
    case JacobianKind::SmoothElliptic: return "SmoothElliptic";
    case JacobianKind::NodalRational: return "NodalRational";
    case JacobianKind::CuspidalRational: return "CuspidalRational";
  }
  return "?";
}

std::string_view to_string(StableLocus s) {
  switch (s) {
    case StableLocus::EllipticCurve: return "EllipticCurve";
    case StableLocus::Gm: return "Gm";
    case StableLocus::Ga: return "Ga";
  }
  return "?";
}

std::string_view to_string(ImageSingularity s) {
  switch (s) {
    case ImageSingularity::None: return "none";
    case ImageSingularity::Node: return "node";
    case ImageSingularity::Cusp: return "cusp";
  }
  return "?";
}

ModuliClassification jacobian_type(const KodairaType& k) {
  using Tag = KodairaType::Tag;
  switch (k.tag()) {
    case Tag::Smooth: return {JacobianKind::SmoothElliptic, StableLocus::EllipticCurve, 0};
    case Tag::I: return {JacobianKind::NodalRational, StableLocus::Gm, k.n() >= 2 ? 1 : 0};
    case Tag::II: return {JacobianKind::CuspidalRational, StableLocus::Ga, 0};
    case Tag::III:
    case Tag::IV: return {JacobianKind::CuspidalRational, StableLocus::Ga, 1};
  }
  throw Unsupported("unsupported fiber type");
}

int special_branch_count(const FiberGraph& g, int component) {
  if (component < 0 || component >= g.component_count()) throw InvalidInput("component index out of range");
  int count = 0;
  for (const auto& p : g.singular_points())
    count += static_cast<int>(std::count(p.components.begin(), p.components.end(), component));
  return count;
}

void validate(const FiberGraph& g, const FiberPoint& p) {
  if (const auto* s = std::get_if<SmoothPoint>(&p)) {
    if (s->component < 0 || s->component >= g.component_count())
      throw InvalidInput("point on component " + std::to_string(s->component) + " which is not in the fiber");
    if (special_branch_count(g, s->component) == 2 && s->coordinate == Rational(0))
      throw InvalidInput("t = 0 is a node of component " + std::to_string(s->component) + ", not a smooth point");
    return;
  }
  const int index = std::get<SingularPointRef>(p).index;
  if (index < 0 || index >= static_cast<int>(g.singular_points().size()))
    throw InvalidInput("singular point index " + std::to_string(index) + " out of range");
}

std::string describe(const FiberGraph& g, const FiberPoint& p) {
  if (const auto* s = std::get_if<SmoothPoint>(&p)) {
    auto t = std::to_string(s->coordinate.numerator());
    if (s->coordinate.denominator() != 1) t += "/" + std::to_string(s->coordinate.denominator());
    return "C" + std::to_string(s->component) + "(t=" + t + ")";
  }
  const int index = std::get<SingularPointRef>(p).index;
  return std::string(to_string(g.singular_points()[static_cast<std::size_t>(index)].kind)) + "#" +
         std::to_string(index);
}

EpClass ep_class(const FiberGraph& g, const FiberPoint& p, const SmoothPoint& q) {
  if (g.kodaira().tag() == KodairaType::Tag::Smooth)
    throw InvalidInput("ep_class needs a singular fiber; the group law of a smooth fiber is not modeled");
  validate(g, FiberPoint{q});
  validate(g, p);
  const int c0 = q.component;
  const int branches = special_branch_count(g, c0);

  // O_C(-q): degree -1 on C_0.
  MultiDegree twist{std::vector<int>(static_cast<std::size_t>(g.component_count()), 0)};
  twist.values[static_cast<std::size_t>(c0)] = -1;

  SheafClass cls;
  if (const auto* s = std::get_if<SmoothPoint>(&p)) {
    MultiDegree d = twist;
    d.values[static_cast<std::size_t>(s->component)] += 1;
    cls = SheafClass::line_bundle(std::move(d));
  } else {
    const int index = std::get<SingularPointRef>(p).index;
    switch (g.singular_points()[static_cast<std::size_t>(index)].kind) {
      case PointKind::Node: cls = SheafClass::nodal(index, twist); break;
      case PointKind::Cusp: cls = SheafClass::singular_dual(PointTag::Cusp, twist); break;
      case PointKind::Tacnode: cls = SheafClass::singular_dual(PointTag::Tacnode, twist); break;
      case PointKind::TriplePoint: cls = SheafClass::singular_dual(PointTag::Triple, twist); break;
    }
  }
  validate(g, cls);

  EpClass out{cls, {}, {}};
  if (g.reducible()) {
    out.verdict = oracle_classify(g, Polarization::uniform(g.component_count()), cls);
  } else {
    out.verdict = {Verdict::Stable, std::nullopt, std::nullopt};
  }

  switch (out.verdict.verdict) {
    case Verdict::StrictlySemistable:
      out.point = ModuliPoint::extra();
      break;
    case Verdict::Stable: {
      std::optional<Rational> coordinate;
      if (const auto* s = std::get_if<SmoothPoint>(&p); s && s->component == c0) {
        // Abel map into the stable-locus group: P^1 minus {0, inf} is Gm,
        // P^1 minus {inf} is Ga.
        coordinate = branches == 2 ? s->coordinate / q.coordinate : s->coordinate - q.coordinate;
      }
      out.point = ModuliPoint::stable(cls, coordinate);
      break;
    }
    case Verdict::Unstable:
      throw std::logic_error("E_p came out unstable for " + describe(g, p));
  }
  return out;
}

std::vector<FiberPoint> default_samples(const FiberGraph& g, const SmoothPoint& q, int smooth_count) {
  std::vector<FiberPoint> out{q};
  for (int index : boundary_points(g, q.component)) out.emplace_back(SingularPointRef{index});
  for (std::int64_t t = 2; smooth_count > 0; ++t) {
    if (Rational(t) == q.coordinate) continue;
    out.emplace_back(SmoothPoint{q.component, Rational(t)});
    --smooth_count;
  }
  return out;
}

PhiMap phi_fibers(const FiberGraph& g, const SmoothPoint& q, const std::vector<FiberPoint>& samples) {
  if (!g.reducible()) throw InvalidInput("phi_fibers needs a reducible fiber");
  validate(g, FiberPoint{q});
  PhiMap out;
  out.c0 = q.component;
  const auto boundary = boundary_points(g, q.component);

  std::vector<Rational> smooth_points;
  std::vector<ModuliPoint> smooth_images;
  std::set<int> identified;
  for (const auto& p : samples) {
    validate(g, p);
    if (const auto* s = std::get_if<SmoothPoint>(&p)) {
      if (s->component != q.component)
        throw InvalidInput("sample " + describe(g, p) + " is not on C" + std::to_string(q.component));
    } else {
      const int index = std::get<SingularPointRef>(p).index;
      if (!g.singular_points()[static_cast<std::size_t>(index)].lies_on(q.component))
        throw InvalidInput("sample " + describe(g, p) + " is not on C" + std::to_string(q.component));
    }
    auto ep = ep_class(g, p, q);
    if (const auto* s = std::get_if<SmoothPoint>(&p)) {
      if (std::find(smooth_points.begin(), smooth_points.end(), s->coordinate) == smooth_points.end()) {
        smooth_points.push_back(s->coordinate);
        if (ep.point.is_extra() ||
            std::find(smooth_images.begin(), smooth_images.end(), ep.point) != smooth_images.end())
          out.injective_on_smooth = false;
        smooth_images.push_back(ep.point);
      }
    } else {
      const int index = std::get<SingularPointRef>(p).index;
      if (ep.point.is_extra() && std::find(boundary.begin(), boundary.end(), index) != boundary.end())
        identified.insert(index);
    }
    out.images.push_back({p, std::move(ep.point)});
  }

  std::vector<ModuliPoint> distinct;
  for (const auto& m : smooth_images)
    if (!m.is_extra() && std::find(distinct.begin(), distinct.end(), m) == distinct.end()) distinct.push_back(m);
  out.distinct_stable = static_cast<int>(distinct.size());
  out.identified_boundary_points = static_cast<int>(identified.size());
  if (out.identified_boundary_points == 2) out.singularity = ImageSingularity::Node;
  else if (out.identified_boundary_points == 1) out.singularity = ImageSingularity::Cusp;
  return out;
}

ModuliClassification derive_classification(const FiberGraph& g, int q_component) {
  if (g.kodaira().tag() == KodairaType::Tag::Smooth)
    return {JacobianKind::SmoothElliptic, StableLocus::EllipticCurve, 0};

  if (!g.reducible()) {
    // Integral fiber: the Jacobian is the curve itself and every class is stable.
    const int branches = special_branch_count(g, 0);
    const auto at_singular = ep_class(g, SingularPointRef{0}, SmoothPoint{0, Rational(1)});
    if (at_singular.point.is_extra()) throw std::logic_error("integral fiber produced a semistable class");
    if (branches == 2) return {JacobianKind::NodalRational, StableLocus::Gm, 0};
    if (branches == 1) return {JacobianKind::CuspidalRational, StableLocus::Ga, 0};
    throw std::logic_error("unexpected singularity on an integral fiber");
  }

  StratificationOptions options;
  options.bound = 1;
  const auto strata = enumerate_stratification(g, options);
  const auto& stable = strata.oracle.of(Verdict::Stable);
  const MultiDegree zero{std::vector<int>(static_cast<std::size_t>(g.component_count()), 0)};
  if (stable.size() != 1 || stable.front() != zero)
    throw std::logic_error("stable stratum of " + g.kodaira().name() + " is not the zero vector");

  std::vector<std::vector<GradedFactor>> classes;
  for (const auto& d : strata.oracle.of(Verdict::StrictlySemistable)) {
    const auto gr = graded_object(g, d);
    if (std::find(classes.begin(), classes.end(), gr.factors) == classes.end()) classes.push_back(gr.factors);
  }

  const SmoothPoint q{q_component, Rational(1)};
  const auto phi = phi_fibers(g, q, default_samples(g, q, 5));
  ModuliClassification out;
  out.extra_points = static_cast<int>(classes.size());
  switch (phi.singularity) {
    case ImageSingularity::Node:
      out.kind = JacobianKind::NodalRational;
      out.stable_locus = StableLocus::Gm;
      break;
    case ImageSingularity::Cusp:
      out.kind = JacobianKind::CuspidalRational;
      out.stable_locus = StableLocus::Ga;
      break;
    case ImageSingularity::None:
      throw std::logic_error("phi identified no boundary points on " + g.kodaira().name());
  }
  return out;
}

FibrationReport relative_report(const FibrationDescription& fibration) {
  if (fibration.base_dim != 1 && fibration.base_dim != 2)
    throw InvalidInput("base dimension must be 1 (surface) or 2 (threefold), got " +
                       std::to_string(fibration.base_dim));
  FibrationReport report;
  report.base_dim = fibration.base_dim;
  for (const auto& point : fibration.points) {
    ReportEntry entry;
    entry.label = point.label;
    entry.degree = point.degree;
    entry.locus = point.locus;
    if (const auto* k = std::get_if<KodairaType>(&point.fiber)) {
      entry.fiber = *k;
      entry.classification = jacobian_type(*k);
      if (k->tag() != KodairaType::Tag::Smooth) {
        report.has_singular_fibers = true;
        report.discriminant_summary[k->name()] += point.degree;
      }
      if (k->reducible()) report.has_reducible_fibers = true;
      if (entry.classification->arithmetic_genus != 1) report.all_integral_genus_one = false;
    } else {
      entry.error = std::get<UnsupportedFiber>(point.fiber).reason;
      report.has_singular_fibers = true;
      report.discriminant_summary["unsupported"] += point.degree;
    }
    report.entries.push_back(std::move(entry));
  }

  if (report.has_singular_fibers) {
    report.singular_locus_note = fibration.base_dim == 1
                                     ? "the relative Jacobian has at worst a finite set of singular points"
                                     : "the singular locus of the relative Jacobian has dimension <= 1";
  }
  if (report.all_integral_genus_one)
    report.notes.emplace_back(
        "every classified Jacobian fiber is an integral curve of arithmetic genus 1; "
        "the structure sheaves of the fibers give a global section");
  if (report.has_reducible_fibers) {
    report.notes.emplace_back(
        "the fibration has reducible fibers, so its relative Jacobian need not be isomorphic to it "
        "even when it has a section");
    report.notes.emplace_back(
        "over each reducible fiber the extra point is a contraction point and may be a singular "
        "point of the relative Jacobian (cited, not computed)");
  }
  return report;
}

}  // namespace fiberjac
