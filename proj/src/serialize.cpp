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

#include "fiberjac/serialize.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "fiberjac/error.hpp"

namespace fiberjac::io {

namespace {

int line_at(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

// Line of the first occurrence of "field" as a key, or 0 when absent.
int line_of_field(std::string_view text, std::string_view field) {
  const std::string key = "\"" + std::string(field) + "\"";
  const auto pos = text.find(key);
  return pos == std::string_view::npos ? 0 : line_at(text, pos);
}

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("", line_at(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(std::string_view field, const std::string& what) const {
    throw ParseError(std::string(field), line_of_field(text_, field), what);
  }

  const Json& require(const Json& obj, std::string_view field) const {
    if (!obj.is_object()) fail(field, "expected an object containing this field");
    const auto it = obj.find(std::string(field));
    if (it == obj.end()) fail(field, "missing required field");
    return *it;
  }

  std::int64_t integer(const Json& v, std::string_view field) const {
    if (!v.is_number_integer()) fail(field, "expected an integer");
    return v.get<std::int64_t>();
  }

  std::string string(const Json& v, std::string_view field) const {
    if (!v.is_string()) fail(field, "expected a string");
    return v.get<std::string>();
  }

  BigRational rational(const Json& v, std::string_view field) const {
    if (v.is_number_integer()) return BigRational(v.get<std::int64_t>());
    if (!v.is_string()) fail(field, "coefficients must be strings like \"3/4\" or integers");
    try {
      return parse_rational(v.get<std::string>());
    } catch (const InvalidInput& e) {
      fail(field, e.what());
    }
  }

  Polynomial polynomial(const Json& obj, std::string_view field, bool required) const {
    const auto it = obj.find(std::string(field));
    if (it == obj.end()) {
      if (required) fail(field, "missing required field");
      return {};
    }
    if (!it->is_array()) fail(field, "expected a coefficient list, constant term first");
    std::vector<BigRational> coeffs;
    for (const auto& c : *it) coeffs.push_back(rational(c, field));
    return Polynomial(std::move(coeffs));
  }

  KodairaType kodaira(const Json& fiber) const {
    const std::string type = string(require(fiber, "type"), "type");
    std::string upper = type;
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    if (upper == "I") {
      const auto n = integer(require(fiber, "n"), "n");
      if (n < 1 || n > kMaxComponents) fail("n", "I_N needs 1 <= N <= " + std::to_string(kMaxComponents));
      return KodairaType::i(static_cast<int>(n));
    }
    try {
      return KodairaType::parse(type);
    } catch (const Unsupported&) {
      throw;
    } catch (const InvalidInput& e) {
      fail("type", e.what());
    }
  }

  std::optional<Polarization> polarization(const Json& fiber) const {
    const auto it = fiber.find("polarization");
    if (it == fiber.end()) return std::nullopt;
    if (!it->is_array()) fail("polarization", "expected a list of positive integers");
    std::vector<std::int64_t> w;
    for (const auto& v : *it) w.push_back(integer(v, "polarization"));
    try {
      return Polarization(std::move(w));
    } catch (const InvalidInput& e) {
      fail("polarization", e.what());
    }
  }

 private:
  std::string_view text_;
};

Json vector_json(const MultiDegree& d) { return Json(d.values); }

Json buckets_json(const VerdictBuckets& b) {
  Json counts = Json::object();
  Json vectors = Json::object();
  for (auto v : {Verdict::Stable, Verdict::StrictlySemistable, Verdict::Unstable}) {
    counts[std::string(to_string(v))] = b.count(v);
    Json list = Json::array();
    for (const auto& d : b.of(v)) list.push_back(vector_json(d));
    vectors[std::string(to_string(v))] = std::move(list);
  }
  return Json{{"counts", counts}, {"vectors", vectors}};
}

Json kodaira_json(const KodairaType& k) {
  switch (k.tag()) {
    case KodairaType::Tag::I: return Json{{"type", "I"}, {"n", k.n()}};
    case KodairaType::Tag::Smooth: return Json{{"type", "smooth"}};
    default: return Json{{"type", k.name()}};
  }
}

}  // namespace

FiberSpec parse_fiber(std::string_view text) {
  const Json doc = parse_document(text);
  Reader r(text);
  FiberSpec spec;
  spec.kodaira = r.kodaira(doc);
  spec.polarization = r.polarization(doc);
  if (spec.polarization) {
    const int n = build_fiber(spec.kodaira).component_count();
    if (spec.polarization->size() != n)
      r.fail("polarization", "expected " + std::to_string(n) + " weights for " + spec.kodaira.name());
  }
  return spec;
}

FibrationDescription parse_fibration(std::string_view text) {
  const Json doc = parse_document(text);
  Reader r(text);
  FibrationDescription f;
  f.base_dim = static_cast<int>(r.integer(r.require(doc, "base_dim"), "base_dim"));
  const Json& points = r.require(doc, "points");
  if (!points.is_array()) r.fail("points", "expected a list");
  for (const auto& p : points) {
    FibrationPoint point;
    point.label = r.string(r.require(p, "label"), "label");
    if (const auto it = p.find("degree"); it != p.end()) point.degree = static_cast<int>(r.integer(*it, "degree"));
    if (const auto it = p.find("locus"); it != p.end()) point.locus = r.string(*it, "locus");
    const Json& fiber = r.require(p, "fiber");
    const std::string type = r.string(r.require(fiber, "type"), "type");
    if (type == "unsupported") {
      std::string reason = "unsupported fiber";
      if (const auto it = fiber.find("reason"); it != fiber.end()) reason = r.string(*it, "reason");
      point.fiber = UnsupportedFiber{reason};
    } else {
      try {
        point.fiber = r.kodaira(fiber);
      } catch (const Unsupported& e) {
        point.fiber = UnsupportedFiber{e.what()};
      }
    }
    f.points.push_back(std::move(point));
  }
  return f;
}

WeierstrassModel parse_model(std::string_view text) {
  const Json doc = parse_document(text);
  Reader r(text);
  if (!doc.is_object()) r.fail("", "expected an object with fields a and b");
  const bool long_form = doc.contains("a1") || doc.contains("a2") || doc.contains("a3") || doc.contains("a4") ||
                         doc.contains("a6");
  if (long_form) {
    return WeierstrassModel::from_long_form(r.polynomial(doc, "a1", false), r.polynomial(doc, "a2", false),
                                            r.polynomial(doc, "a3", false), r.polynomial(doc, "a4", false),
                                            r.polynomial(doc, "a6", false));
  }
  return {r.polynomial(doc, "a", true), r.polynomial(doc, "b", true)};
}

std::string rational_string(const Rational& q) {
  return q.denominator() == 1 ? std::to_string(q.numerator())
                              : std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

Json to_json(const FiberGraph& g) {
  Json out;
  out["type"] = g.kodaira().name();
  out["components"] = g.component_count();
  out["annotation"] = std::string(to_string(g.annotation()));
  Json matrix = Json::array();
  for (int i = 0; i < g.component_count(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < g.component_count(); ++j) row.push_back(g.intersection(i, j));
    matrix.push_back(std::move(row));
  }
  out["intersections"] = std::move(matrix);
  Json points = Json::array();
  for (const auto& p : g.singular_points())
    points.push_back(Json{{"kind", std::string(to_string(p.kind))}, {"components", p.components}});
  out["singular_points"] = std::move(points);
  Json subs = Json::array();
  for (const auto& d : proper_connected_subcurves(g))
    subs.push_back(Json{{"indices", d.indices()}, {"boundary", boundary(g, d)}, {"chi", euler_characteristic(g, d)}});
  out["proper_connected_subcurves"] = std::move(subs);
  out["chi_full"] = euler_characteristic(g);
  return out;
}

Json to_json(const StabilityVerdict& v) {
  Json out;
  out["verdict"] = std::string(to_string(v.verdict));
  out["witness"] = v.witness ? Json(v.witness->indices()) : Json(nullptr);
  out["witness_slope"] = v.witness_slope ? Json(rational_string(*v.witness_slope)) : Json(nullptr);
  return out;
}

Json to_json(const GradedObject& gr) {
  Json out;
  out["stable"] = gr.stable();
  Json factors = Json::array();
  for (const auto& f : gr.factors) factors.push_back(Json{{"support", f.support}, {"degree", f.degree}});
  out["factors"] = std::move(factors);
  out["class"] = gr.stable_class ? Json(gr.stable_class->describe()) : Json(nullptr);
  return out;
}

Json to_json(const StratificationReport& r) {
  Json out;
  out["fiber"] = r.fiber.name();
  out["bound"] = r.bound;
  out["polarization"] = r.polarization;
  out["disconnected"] = r.include_disconnected;
  out["backend"] = r.backend;
  out["examined"] = r.examined;
  out["rule"] = buckets_json(r.rule);
  out["oracle"] = buckets_json(r.oracle);
  Json dis = Json::array();
  for (const auto& d : r.disagreements)
    dis.push_back(Json{{"degrees", vector_json(d.degrees)},
                       {"rule", std::string(to_string(d.rule))},
                       {"oracle", std::string(to_string(d.oracle))}});
  out["disagreements"] = std::move(dis);
  return out;
}

Json to_json(const ModuliClassification& c) {
  Json out;
  out["kind"] = std::string(to_string(c.kind));
  out["stable_locus"] = std::string(to_string(c.stable_locus));
  out["extra_points"] = c.extra_points;
  return out;
}

Json to_json(const FiberGraph& g, const PhiMap& phi) {
  Json out;
  out["fiber"] = g.kodaira().name();
  out["c0"] = phi.c0;
  Json images = Json::array();
  for (const auto& img : phi.images) {
    Json entry;
    entry["point"] = describe(g, img.point);
    if (img.image.is_extra()) {
      entry["image"] = "extra";
    } else {
      entry["image"] = "stable";
      entry["class"] = img.image.stable_class->describe();
      entry["coordinate"] = img.image.coordinate ? Json(rational_string(*img.image.coordinate)) : Json(nullptr);
    }
    images.push_back(std::move(entry));
  }
  out["images"] = std::move(images);
  out["distinct_stable"] = phi.distinct_stable;
  out["injective_on_smooth"] = phi.injective_on_smooth;
  out["identified_boundary_points"] = phi.identified_boundary_points;
  out["image_singularity"] = std::string(to_string(phi.singularity));
  return out;
}

Json to_json(const FibrationDescription& f) {
  Json points = Json::array();
  for (const auto& p : f.points) {
    Json entry;
    entry["label"] = p.label;
    if (const auto* k = std::get_if<KodairaType>(&p.fiber)) entry["fiber"] = kodaira_json(*k);
    else entry["fiber"] = Json{{"type", "unsupported"}, {"reason", std::get<UnsupportedFiber>(p.fiber).reason}};
    entry["degree"] = p.degree;
    if (!p.locus.empty()) entry["locus"] = p.locus;
    points.push_back(std::move(entry));
  }
  return Json{{"base_dim", f.base_dim}, {"points", std::move(points)}};
}

Json to_json(const ScanResult& s) {
  Json out = to_json(s.fibration());
  auto coeffs = [](const Polynomial& p) {
    Json list = Json::array();
    for (const auto& c : p.coefficients()) list.push_back(to_string(c));
    return list;
  };
  out["invariants"] = Json{{"c4", coeffs(s.invariants.c4)},
                           {"c6", coeffs(s.invariants.c6)},
                           {"discriminant", coeffs(s.invariants.discriminant)}};
  auto& points = out["points"];
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const auto& data = s.points[i].data;
    points[i]["v_c4"] = data ? Json(data->v_c4.to_string()) : Json(nullptr);
    points[i]["v_delta"] = data ? Json(data->v_delta.to_string()) : Json(nullptr);
  }
  return out;
}

Json to_json(const FibrationReport& r) {
  Json out;
  out["base_dim"] = r.base_dim;
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json entry;
    entry["label"] = e.label;
    entry["fiber"] = e.fiber ? Json(e.fiber->name()) : Json(nullptr);
    entry["degree"] = e.degree;
    if (!e.locus.empty()) entry["locus"] = e.locus;
    if (e.classification) {
      entry["classification"] = to_json(*e.classification);
      entry["arithmetic_genus"] = e.classification->arithmetic_genus;
    } else {
      entry["error"] = e.error;
    }
    entries.push_back(std::move(entry));
  }
  out["entries"] = std::move(entries);
  out["all_integral_genus_one"] = r.all_integral_genus_one;
  out["has_singular_fibers"] = r.has_singular_fibers;
  out["has_reducible_fibers"] = r.has_reducible_fibers;
  out["discriminant_summary"] = r.discriminant_summary;
  out["singular_locus_note"] = r.singular_locus_note ? Json(*r.singular_locus_note) : Json(nullptr);
  out["notes"] = r.notes;
  return out;
}

std::string table(const FiberGraph& g) {
  std::ostringstream os;
  os << "fiber " << g.kodaira().name() << ": " << g.component_count() << " component(s), "
     << to_string(g.annotation()) << "\n";
  for (int i = 0; i < g.component_count(); ++i) {
    os << "  C" << i << ":";
    for (int j = 0; j < g.component_count(); ++j) os << ' ' << std::setw(2) << g.intersection(i, j);
    os << "\n";
  }
  os << std::left << std::setw(24) << "subcurve" << std::setw(10) << "D.D'" << "chi\n";
  for (const auto& d : proper_connected_subcurves(g)) {
    std::string set = "{";
    for (std::size_t k = 0; k < d.indices().size(); ++k) set += (k ? "," : "") + std::to_string(d.indices()[k]);
    set += "}";
    os << std::setw(24) << set << std::setw(10) << boundary(g, d) << euler_characteristic(g, d) << "\n";
  }
  return os.str();
}

std::string table(const StratificationReport& r) {
  std::ostringstream os;
  os << "fiber " << r.fiber.name() << ", bound " << r.bound << ", " << r.examined << " vectors, backend "
     << r.backend << (r.include_disconnected ? ", disconnected subcurves included" : "") << "\n";
  os << std::left << std::setw(22) << "verdict" << std::setw(10) << "rule" << "oracle\n";
  for (auto v : {Verdict::Stable, Verdict::StrictlySemistable, Verdict::Unstable})
    os << std::setw(22) << to_string(v) << std::setw(10) << r.rule.count(v) << r.oracle.count(v) << "\n";
  os << "disagreements: " << r.disagreements.size() << "\n";
  return os.str();
}

std::string table(const FibrationReport& r) {
  std::ostringstream os;
  os << std::left << std::setw(28) << "point" << std::setw(10) << "fiber" << std::setw(20) << "jacobian"
     << std::setw(15) << "stable" << "extra\n";
  for (const auto& e : r.entries) {
    os << std::setw(28) << e.label << std::setw(10) << (e.fiber ? e.fiber->name() : "-");
    if (e.classification)
      os << std::setw(20) << to_string(e.classification->kind) << std::setw(15)
         << to_string(e.classification->stable_locus) << e.classification->extra_points << "\n";
    else
      os << "error: " << e.error << "\n";
  }
  os << "base dimension " << r.base_dim << "; all Jacobian fibers integral of genus 1: "
     << (r.all_integral_genus_one ? "yes" : "no") << "\n";
  if (r.singular_locus_note) os << "note: " << *r.singular_locus_note << "\n";
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  return os.str();
}

}  // namespace fiberjac::io
