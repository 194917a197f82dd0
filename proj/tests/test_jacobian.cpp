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


#include <doctest.h>

#include <set>

#include "fiberjac/error.hpp"
#include "fiberjac/jacobian.hpp"
#include "oracles.hpp"

using namespace fiberjac;
namespace fjt = fiberjac::testing;

namespace {

MultiDegree md(std::initializer_list<int> v) { return MultiDegree{std::vector<int>(v)}; }

std::vector<KodairaType> all_types(int max_n) {
  std::vector<KodairaType> out{KodairaType::smooth(), KodairaType::ii(), KodairaType::iii(), KodairaType::iv()};
  for (int n = 1; n <= max_n; ++n) out.push_back(KodairaType::i(n));
  return out;
}

}  // namespace

TEST_CASE("jacobian type table") {
  CHECK(jacobian_type(KodairaType::i(5)) == ModuliClassification{JacobianKind::NodalRational, StableLocus::Gm, 1});
  CHECK(jacobian_type(KodairaType::iii()) == ModuliClassification{JacobianKind::CuspidalRational, StableLocus::Ga, 1});
  CHECK(jacobian_type(KodairaType::smooth()).kind == JacobianKind::SmoothElliptic);
  CHECK(jacobian_type(KodairaType::smooth()).extra_points == 0);
  CHECK(jacobian_type(KodairaType::i(1)) == ModuliClassification{JacobianKind::NodalRational, StableLocus::Gm, 0});
  CHECK(jacobian_type(KodairaType::ii()) == ModuliClassification{JacobianKind::CuspidalRational, StableLocus::Ga, 0});
  CHECK(jacobian_type(KodairaType::iv()) == ModuliClassification{JacobianKind::CuspidalRational, StableLocus::Ga, 1});
  for (const auto& k : all_types(12)) CHECK(jacobian_type(k).arithmetic_genus == 1);
}

TEST_CASE("derived classification matches the table") {
  for (const auto& k : all_types(7)) {
    CAPTURE(k.name());
    const auto g = build_fiber(k);
    const auto want = jacobian_type(k);
    for (int c = 0; c < g.component_count(); ++c) CHECK(derive_classification(g, c) == want);
  }
}

TEST_CASE("E_p examples") {
  const auto i3 = build_fiber(KodairaType::i(3));
  const SmoothPoint q{0, Rational(1)};

  const auto at_q = ep_class(i3, q, q);
  CHECK(at_q.cls == SheafClass::line_bundle(md({0, 0, 0})));
  CHECK(at_q.verdict.verdict == Verdict::Stable);
  CHECK_FALSE(at_q.point.is_extra());
  CHECK(at_q.point.coordinate == Rational(1));

  const auto other = ep_class(i3, SmoothPoint{1, Rational(5)}, q);
  CHECK(other.cls == SheafClass::line_bundle(md({-1, 1, 0})));
  CHECK(other.verdict.verdict == Verdict::StrictlySemistable);
  CHECK(other.point.is_extra());

  const auto i2 = build_fiber(KodairaType::i(2));
  const auto n0 = ep_class(i2, SingularPointRef{0}, q);
  const auto n1 = ep_class(i2, SingularPointRef{1}, q);
  CHECK_FALSE(n0.cls.locally_free());
  CHECK(n0.verdict.verdict == Verdict::StrictlySemistable);
  CHECK(n0.point.is_extra());
  CHECK(n0.point == n1.point);

  const auto iv = build_fiber(KodairaType::iv());
  const auto triple = ep_class(iv, SingularPointRef{0}, q);
  CHECK(std::holds_alternative<SingularPointDual>(triple.cls.value));
  CHECK(triple.point.is_extra());

  CHECK_THROWS_AS(ep_class(build_fiber(KodairaType::smooth()), q, q), InvalidInput);
  CHECK_THROWS_AS(ep_class(i3, q, SmoothPoint{0, Rational(0)}), InvalidInput);
  CHECK_THROWS_AS(ep_class(i3, q, SmoothPoint{3, Rational(1)}), InvalidInput);
  CHECK_THROWS_AS(ep_class(i3, SingularPointRef{3}, q), InvalidInput);
}

TEST_CASE("E_p on integral fibers is stable") {
  for (const auto& k : {KodairaType::i(1), KodairaType::ii()}) {
    const auto g = build_fiber(k);
    const SmoothPoint q{0, Rational(3)};
    const auto sing = ep_class(g, SingularPointRef{0}, q);
    CHECK(sing.verdict.verdict == Verdict::Stable);
    CHECK_FALSE(sing.point.is_extra());
  }
}

TEST_CASE("phi examples") {
  SUBCASE("I4 identifies two boundary points") {
    const auto g = build_fiber(KodairaType::i(4));
    const SmoothPoint q{0, Rational(1)};
    std::vector<FiberPoint> samples{SmoothPoint{0, Rational(2)}, SmoothPoint{0, Rational(3)},
                                    SmoothPoint{0, Rational(7)}};
    for (int b : boundary_points(g, 0)) samples.emplace_back(SingularPointRef{b});
    const auto phi = phi_fibers(g, q, samples);
    CHECK(phi.distinct_stable == 3);
    CHECK(phi.injective_on_smooth);
    CHECK(phi.identified_boundary_points == 2);
    CHECK(phi.singularity == ImageSingularity::Node);
    for (const auto& im : phi.images)
      if (std::holds_alternative<SingularPointRef>(im.point)) CHECK(im.image == ModuliPoint::extra());
  }
  SUBCASE("III identifies one point") {
    const auto g = build_fiber(KodairaType::iii());
    const SmoothPoint q{0, Rational(0)};
    const auto phi = phi_fibers(g, q, {SmoothPoint{0, Rational(1)}, SmoothPoint{0, Rational(-1)}, SingularPointRef{0}});
    CHECK(phi.distinct_stable == 2);
    CHECK(phi.identified_boundary_points == 1);
    CHECK(phi.singularity == ImageSingularity::Cusp);
  }
  SUBCASE("I2 at q alone") {
    const auto g = build_fiber(KodairaType::i(2));
    const SmoothPoint q{1, Rational(4)};
    const auto phi = phi_fibers(g, q, {q});
    REQUIRE(phi.images.size() == 1);
    CHECK(phi.images[0].image.stable_class == SheafClass::line_bundle(md({0, 0})));
    CHECK(phi.singularity == ImageSingularity::None);
  }
  SUBCASE("samples must lie on C0") {
    const auto g = build_fiber(KodairaType::i(4));
    const SmoothPoint q{0, Rational(1)};
    CHECK_THROWS_AS(phi_fibers(g, q, {SmoothPoint{1, Rational(2)}}), InvalidInput);
    CHECK_THROWS_AS(phi_fibers(g, q, {SingularPointRef{2}}), InvalidInput);
    CHECK_THROWS_AS(phi_fibers(build_fiber(KodairaType::i(1)), q, {q}), InvalidInput);
  }
}

TEST_CASE("boundary identification count matches the kind") {
  for (const auto& k : fjt::reducible_types(9)) {
    CAPTURE(k.name());
    const auto g = build_fiber(k);
    for (int c = 0; c < g.component_count(); ++c) {
      const SmoothPoint q{c, Rational(1)};
      const auto phi = phi_fibers(g, q, default_samples(g, q, 6));
      CHECK(phi.injective_on_smooth);
      CHECK(phi.distinct_stable == 7);
      const int want = k.tag() == KodairaType::Tag::I ? 2 : 1;
      CHECK(phi.identified_boundary_points == want);
      CHECK(special_branch_count(g, c) == want);
    }
  }
}

TEST_CASE("relative report") {
  SUBCASE("surface with I1, I2 and smooth fibers") {
    FibrationDescription f;
    f.points = {{"s1", KodairaType::i(1)}, {"s2", KodairaType::i(2)}, {"s3", KodairaType::smooth()}};
    const auto r = relative_report(f);
    REQUIRE(r.entries.size() == 3);
    CHECK(r.entries[0].classification->kind == JacobianKind::NodalRational);
    CHECK(r.entries[1].classification->kind == JacobianKind::NodalRational);
    CHECK(r.entries[2].classification->kind == JacobianKind::SmoothElliptic);
    REQUIRE(r.singular_locus_note.has_value());
    CHECK(r.singular_locus_note->find("finite set of singular points") != std::string::npos);
    CHECK(r.has_reducible_fibers);
    CHECK(r.all_integral_genus_one);
    CHECK(r.discriminant_summary.at("I1") == 1);
  }
  SUBCASE("threefold with an I3 fiber") {
    FibrationDescription f;
    f.base_dim = 2;
    f.points = {{"D", KodairaType::i(3)}};
    const auto r = relative_report(f);
    REQUIRE(r.singular_locus_note.has_value());
    CHECK(r.singular_locus_note->find("dimension <= 1") != std::string::npos);
  }
  SUBCASE("all smooth") {
    FibrationDescription f;
    f.points = {{"a", KodairaType::smooth()}, {"b", KodairaType::smooth()}};
    const auto r = relative_report(f);
    for (const auto& e : r.entries) CHECK(e.classification->kind == JacobianKind::SmoothElliptic);
    CHECK_FALSE(r.singular_locus_note.has_value());
    CHECK_FALSE(r.has_reducible_fibers);
  }
  SUBCASE("unsupported entries become per-entry errors") {
    FibrationDescription f;
    f.points = {{"x", UnsupportedFiber{"I0*"}}, {"y", KodairaType::ii()}};
    const auto r = relative_report(f);
    CHECK_FALSE(r.entries[0].classification.has_value());
    CHECK(r.entries[0].error == "I0*");
    CHECK(r.entries[1].classification->kind == JacobianKind::CuspidalRational);
  }
  SUBCASE("bad base dimension") {
    FibrationDescription f;
    f.base_dim = 3;
    CHECK_THROWS_AS(relative_report(f), InvalidInput);
  }
}
