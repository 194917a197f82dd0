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

#include "fiberjac/ingest.hpp"

#include "fiberjac/error.hpp"

namespace fiberjac {

WeierstrassModel WeierstrassModel::from_long_form(const Polynomial& a1, const Polynomial& a2,
                                                  const Polynomial& a3, const Polynomial& a4,
                                                  const Polynomial& a6) {
  auto k = [](long long v) { return Polynomial::constant(BigRational(v)); };
  const Polynomial b2 = a1 * a1 + k(4) * a2;
  const Polynomial b4 = k(2) * a4 + a1 * a3;
  const Polynomial b6 = a3 * a3 + k(4) * a6;
  const Polynomial c4 = b2 * b2 - k(24) * b4;
  const Polynomial c6 = k(-1) * b2 * b2 * b2 + k(36) * b2 * b4 - k(216) * b6;
  return {k(-27) * c4, k(-54) * c6};
}

Invariants invariants(const WeierstrassModel& w) {
  auto k = [](long long v) { return Polynomial::constant(BigRational(v)); };
  Invariants out;
  out.c4 = k(-48) * w.a;
  out.c6 = k(-864) * w.b;
  out.discriminant = k(-16) * (k(4) * w.a * w.a * w.a + k(27) * w.b * w.b);
  if (out.discriminant.is_zero())
    throw IsotriviallySingular("discriminant vanishes identically; every fiber is singular");
  return out;
}

ReductionOutcome classify_reduction(const ReductionData& r) {
  const auto& c4 = r.v_c4;
  const auto& d = r.v_delta;
  if (d.infinite) throw InvalidInput("discriminant valuation is infinite");
  if (d.value == 0) return KodairaType::smooth();
  if (c4.at_least(4) && d.value >= 12)
    throw NonMinimalModel("model is not minimal here (v_c4=" + c4.to_string() + ", v_delta=" + d.to_string() +
                          "); substitute (a, b) -> (a/u^4, b/u^6) with u the local parameter and rescan");
  if (c4.equals(0)) return KodairaType::i(d.value);
  if (d.value == 2) return KodairaType::ii();
  if (c4.equals(1) && d.value == 3) return KodairaType::iii();
  if (c4.at_least(2) && d.value == 4) return KodairaType::iv();
  return UnsupportedReduction{"fiber with v_c4=" + c4.to_string() + ", v_delta=" + d.to_string() +
                              " is not one of I_N, II, III, IV"};
}

namespace {

void classify_into(DiscriminantPoint& point) {
  try {
    const auto outcome = classify_reduction(*point.data);
    if (const auto* k = std::get_if<KodairaType>(&outcome)) point.type = *k;
    else point.error = std::get<UnsupportedReduction>(outcome).reason;
  } catch (const NonMinimalModel& e) {
    point.error = e.what();
  }
}

}  // namespace

ScanResult scan_discriminant(const WeierstrassModel& w) {
  ScanResult out;
  out.invariants = invariants(w);
  const auto& delta = out.invariants.discriminant;
  const auto& c4 = out.invariants.c4;

  Polynomial rest = delta;
  for (const auto& root : rational_roots(delta)) {
    DiscriminantPoint point;
    point.label = "t=" + to_string(root);
    point.t0 = root;
    point.factor = Polynomial::linear_factor(root);
    point.data = ReductionData{valuation(c4, root), valuation(delta, root)};
    rest = divmod(rest, pow(point.factor, point.data->v_delta.value)).first;
    classify_into(point);
    out.points.push_back(std::move(point));
  }

  // What is left has no rational roots; each square-free part collects
  // conjugate points of equal discriminant valuation.
  for (auto& [factor, multiplicity] : squarefree_decomposition(rest)) {
    DiscriminantPoint point;
    point.label = "roots of " + factor.to_string();
    point.factor = factor;
    point.degree = factor.degree();
    const Polynomial common = gcd(factor, c4);
    if (c4.is_zero()) {
      point.data = ReductionData{Valuation::infinity(), Valuation::of(multiplicity)};
    } else if (common.degree() < 1) {
      point.data = ReductionData{Valuation::of(0), Valuation::of(multiplicity)};
    } else if (common == factor) {
      point.data = ReductionData{valuation(c4, factor), Valuation::of(multiplicity)};
    }
    if (point.data) classify_into(point);
    else point.error = "c4 vanishes at some but not all roots of " + factor.to_string() + "; not classified";
    out.points.push_back(std::move(point));
  }
  return out;
}

FibrationDescription ScanResult::fibration() const {
  FibrationDescription f;
  f.base_dim = 1;
  for (const auto& p : points) {
    FibrationPoint entry;
    entry.label = p.label;
    entry.degree = p.degree;
    if (!p.t0) entry.locus = p.factor.to_string();
    if (p.type) entry.fiber = *p.type;
    else entry.fiber = UnsupportedFiber{p.error};
    f.points.push_back(std::move(entry));
  }
  f.points.push_back({"generic", KodairaType::smooth(), 1, ""});
  return f;
}

}  // namespace fiberjac
