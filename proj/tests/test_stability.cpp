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

#include <random>
#include <set>

#include "fiberjac/error.hpp"
#include "fiberjac/stability.hpp"
#include "oracles.hpp"

using namespace fiberjac;
namespace fjt = fiberjac::testing;

namespace {

MultiDegree md(std::initializer_list<int> v) { return MultiDegree{std::vector<int>(v)}; }

std::vector<MultiDegree> box(int n, int bound) {
  std::vector<MultiDegree> out;
  for_each_balanced_vector(n, bound, [&](const MultiDegree& d) { out.push_back(d); });
  return out;
}

}  // namespace

TEST_CASE("multidegree parsing") {
  CHECK(MultiDegree::parse("1,-1,0") == md({1, -1, 0}));
  CHECK(MultiDegree::parse(" 2 , -2 ") == md({2, -2}));
  CHECK(md({1, -1, 0}).to_string() == "1,-1,0");
  CHECK(md({3, -1, 0}).on(0b011U) == 2);
  CHECK_THROWS_AS(MultiDegree::parse("1,,2"), InvalidInput);
  CHECK_THROWS_AS(MultiDegree::parse("a"), InvalidInput);
}

TEST_CASE("hilbert data") {
  const auto i2 = build_fiber(KodairaType::i(2));
  const auto pol = Polarization::uniform(2);
  const auto o = SheafClass::line_bundle(md({0, 0}));
  const auto whole = hilbert_data(i2, pol, o);
  CHECK(whole.rank == Rational(1));
  CHECK(whole.degree == Rational(0));
  CHECK(whole.slope == Rational(0));

  const auto sub = hilbert_data(i2, pol, SubsheafDescriptor{o, 0b01U});
  CHECK(sub.degree == Rational(-1));
  CHECK(sub.rank == Rational(1, 2));
  CHECK(sub.slope == Rational(-2));
  CHECK(sub.polynomial(2, 5) == Rational(4));
  CHECK_THROWS_AS(hilbert_data(i2, pol, SubsheafDescriptor{o, 0U}), InvalidInput);
  CHECK_THROWS_AS(hilbert_data(i2, Polarization::uniform(3), o), InvalidInput);
}

TEST_CASE("every E_p-type class has rank 1 and degree 0") {
  const auto i3 = build_fiber(KodairaType::i(3));
  const auto pol = Polarization({2, 3, 5});
  for (const auto& cls : {SheafClass::line_bundle(md({-1, 1, 0})), SheafClass::nodal(1, md({0, -1, 0}))}) {
    const auto h = hilbert_data(i3, pol, cls);
    CHECK(h.rank == Rational(1));
    CHECK(h.degree == Rational(0));
  }
  const auto iii = build_fiber(KodairaType::iii());
  const auto h = hilbert_data(iii, Polarization({4, 1}), SheafClass::singular_dual(PointTag::Tacnode, md({-1, 0})));
  CHECK(h.rank == Rational(1));
  CHECK(h.degree == Rational(0));
}

TEST_CASE("sheaf class validation") {
  const auto i3 = build_fiber(KodairaType::i(3));
  CHECK_THROWS_AS(validate(i3, SheafClass::line_bundle(md({1, 0, 0}))), InvalidInput);
  CHECK_THROWS_AS(validate(i3, SheafClass::line_bundle(md({0, 0}))), InvalidInput);
  CHECK_THROWS_AS(validate(i3, SheafClass::nodal(3, md({-1, 0, 0}))), InvalidInput);
  CHECK_THROWS_AS(validate(i3, SheafClass::nodal(0, md({0, 0, 0}))), InvalidInput);
  CHECK_THROWS_AS(validate(i3, SheafClass::singular_dual(PointTag::Cusp, md({-1, 0, 0}))), InvalidInput);
  const auto iv = build_fiber(KodairaType::iv());
  CHECK_NOTHROW(validate(iv, SheafClass::singular_dual(PointTag::Triple, md({-1, 0, 0}))));
  CHECK_THROWS_AS(validate(iv, SheafClass::singular_dual(PointTag::Tacnode, md({-1, 0, 0}))), InvalidInput);
}

TEST_CASE("rule examples") {
  CHECK(classify_by_rule(build_fiber(KodairaType::i(2)), md({0, 0})).verdict == Verdict::Stable);
  CHECK(classify_by_rule(build_fiber(KodairaType::i(3)), md({1, -1, 0})).verdict ==
        Verdict::StrictlySemistable);
  CHECK(classify_by_rule(build_fiber(KodairaType::i(4)), md({1, 0, 1, -2})).verdict == Verdict::Unstable);
  CHECK(classify_by_rule(build_fiber(KodairaType::i(4)), md({1, 1, -1, -1})).verdict == Verdict::Unstable);
  CHECK(classify_by_rule(build_fiber(KodairaType::i(4)), md({1, -1, 1, -1})).verdict ==
        Verdict::StrictlySemistable);
  CHECK_FALSE(classify_by_rule(build_fiber(KodairaType::i(3)), md({1, -1, 0})).witness.has_value());
  CHECK_THROWS_AS(classify_by_rule(build_fiber(KodairaType::i(1)), md({0})), InvalidInput);
  CHECK_THROWS_AS(classify_by_rule(build_fiber(KodairaType::i(3)), md({1, 0, 0})), InvalidInput);
}

TEST_CASE("oracle examples") {
  const auto i2 = build_fiber(KodairaType::i(2));
  const auto pol2 = Polarization::uniform(2);

  const auto semi = oracle_classify(i2, pol2, md({1, -1}));
  CHECK(semi.verdict == Verdict::StrictlySemistable);
  REQUIRE(semi.witness.has_value());
  CHECK(semi.witness->indices() == std::vector<int>{0});
  CHECK(*semi.witness_slope == Rational(0));

  const auto bad = oracle_classify(i2, pol2, md({2, -2}));
  CHECK(bad.verdict == Verdict::Unstable);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->indices() == std::vector<int>{0});
  CHECK(*bad.witness_slope == Rational(2));

  const auto i4 = build_fiber(KodairaType::i(4));
  const auto st = oracle_classify(i4, Polarization::uniform(4), md({0, 0, 0, 0}));
  CHECK(st.verdict == Verdict::Stable);
  CHECK_FALSE(st.witness.has_value());

  CHECK(oracle_classify(i4, Polarization::uniform(4), md({1, 0, 1, -2})).verdict == Verdict::Unstable);
  CHECK_THROWS_AS(oracle_classify(build_fiber(KodairaType::ii()), Polarization::uniform(1), md({0})),
                  InvalidInput);
}

TEST_CASE("subsheaf chi agrees with the quotient computation") {
  for (const auto& k : fjt::reducible_types(8)) {
    CAPTURE(k.name());
    const auto g = build_fiber(k);
    for (const auto& d : box(g.component_count(), 1)) {
      const auto cls = SheafClass::line_bundle(d);
      for (std::uint32_t mask = 1; mask < g.full_mask(); ++mask)
        CHECK(subsheaf_chi(g, cls, mask) == fjt::chi_via_quotient(g, d, mask));
    }
  }
}

TEST_CASE("hilbert polynomial is additive on 0 -> F_D -> F -> F/F_D -> 0") {
  for (const auto& k : fjt::reducible_types(8)) {
    const auto g = build_fiber(k);
    std::vector<std::int64_t> w;
    for (int i = 0; i < g.component_count(); ++i) w.push_back(1 + 2 * i);
    const Polarization pol(w);
    for (const auto& d : box(g.component_count(), 1)) {
      const auto cls = SheafClass::line_bundle(d);
      const auto whole = hilbert_data(g, pol, cls);
      for (std::uint32_t mask = 1; mask < g.full_mask(); ++mask) {
        const auto sub = hilbert_data(g, pol, SubsheafDescriptor{cls, mask});
        const std::uint32_t rest = g.full_mask() & ~mask;
        // chi(F|_rest) = deg_rest + chi(O_rest) for the restriction of a line bundle
        const int quotient_chi = d.on(rest) + fjt::structure_chi_by_pieces(g, rest);
        const Rational quotient_rank(pol.weight_of(rest), pol.total());
        for (std::int64_t n : {-2, 0, 3}) {
          const Rational lhs = whole.polynomial(pol.total(), n);
          const Rational rhs = sub.polynomial(pol.total(), n) + Rational(pol.total()) * quotient_rank * Rational(n) +
                               Rational(quotient_chi);
          CHECK(lhs == rhs);
        }
      }
    }
  }
}

TEST_CASE("frozen stratification counts") {
  auto counts = [](KodairaType k, int bound) {
    const auto g = build_fiber(k);
    StratificationOptions opt;
    opt.bound = bound;
    const auto r = enumerate_stratification(g, opt);
    CHECK(r.disagreements.empty());
    std::array<std::size_t, 3> brute{};
    for (const auto& d : box(g.component_count(), bound))
      ++brute[static_cast<std::size_t>(fjt::brute_force_verdict(g, d))];
    for (Verdict v : {Verdict::Stable, Verdict::StrictlySemistable, Verdict::Unstable})
      CHECK(r.oracle.count(v) == brute[static_cast<std::size_t>(v)]);
    return std::array<std::size_t, 3>{r.rule.count(Verdict::Stable), r.rule.count(Verdict::StrictlySemistable),
                                      r.rule.count(Verdict::Unstable)};
  };
  CHECK(counts(KodairaType::i(2), 1) == std::array<std::size_t, 3>{1, 2, 0});
  CHECK(counts(KodairaType::i(3), 1) == std::array<std::size_t, 3>{1, 6, 0});
  CHECK(counts(KodairaType::i(4), 1) == std::array<std::size_t, 3>{1, 14, 4});
  CHECK(counts(KodairaType::iii(), 1) == std::array<std::size_t, 3>{1, 2, 0});
  CHECK(counts(KodairaType::iv(), 2)[0] == 1);
}

TEST_CASE("enumeration refuses oversized boxes") {
  StratificationOptions opt;
  opt.bound = 2;
  opt.cap = 100;
  const auto g = build_fiber(KodairaType::i(6));
  try {
    enumerate_stratification(g, opt);
    FAIL("expected CapExceeded");
  } catch (const CapExceeded& e) {
    CHECK(e.required() == search_space(6, 2));
  }
  CHECK(search_space(6, 2) == 3125);
  CHECK(search_space(40, 100) == UINT64_MAX);
}

TEST_CASE("balanced vectors come out in lexicographic order") {
  const auto v = box(3, 1);
  CHECK(v.size() == 7);
  CHECK(std::is_sorted(v.begin(), v.end()));
  for (const auto& d : v) CHECK(d.total() == 0);
}

TEST_CASE("rule, oracle and brute force agree on the bound-2 box") {
  for (const auto& k : fjt::reducible_types(6)) {
    CAPTURE(k.name());
    const auto g = build_fiber(k);
    const auto pol = Polarization::uniform(g.component_count());
    for (const auto& d : box(g.component_count(), 2)) {
      const auto rule = classify_by_rule(g, d).verdict;
      CHECK(rule == oracle_classify(g, pol, d).verdict);
      CHECK(rule == fjt::brute_force_verdict(g, d));
      CHECK((rule == Verdict::Stable) == (d == MultiDegree{std::vector<int>(d.values.size(), 0)}));
    }
  }
}

TEST_CASE("verdicts do not depend on the polarization") {
  std::mt19937 rng(20260417);
  std::uniform_int_distribution<std::int64_t> weight(1, 10);
  for (const auto& k : fjt::reducible_types(5)) {
    const auto g = build_fiber(k);
    const auto vectors = box(g.component_count(), 2);
    std::vector<Verdict> base;
    for (const auto& d : vectors) base.push_back(oracle_classify(g, Polarization::uniform(g.component_count()), d).verdict);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<std::int64_t> w;
      for (int i = 0; i < g.component_count(); ++i) w.push_back(weight(rng));
      const Polarization pol(w);
      for (std::size_t i = 0; i < vectors.size(); ++i) CHECK(oracle_classify(g, pol, vectors[i]).verdict == base[i]);
    }
  }
}

TEST_CASE("verdicts are invariant under graph automorphisms") {
  for (const auto& k : fjt::reducible_types(6)) {
    const auto g = build_fiber(k);
    const auto autos = fjt::automorphisms(g);
    if (k.tag() == KodairaType::Tag::I && k.n() >= 3) CHECK(autos.size() == static_cast<std::size_t>(2 * k.n()));
    if (k == KodairaType::iv()) CHECK(autos.size() == 6);
    for (const auto& d : box(g.component_count(), 2))
      for (const auto& perm : autos)
        CHECK(classify_by_rule(g, d).verdict == classify_by_rule(g, fjt::permute(d, perm)).verdict);
  }
}

TEST_CASE("batched oracle matches the exact oracle") {
  for (const auto& k : fjt::reducible_types(7)) {
    const auto g = build_fiber(k);
    const auto vectors = box(g.component_count(), 2);
    for (const Polarization& pol : {Polarization::uniform(g.component_count()),
                                    Polarization(std::vector<std::int64_t>(static_cast<std::size_t>(g.component_count()), 7))}) {
      for (bool disc : {false, true}) {
        OracleOptions opt{disc};
        for (auto backend : {kernels::Backend::Scalar, kernels::Backend::Avx2, kernels::Backend::Neon}) {
          if (!kernels::available(backend)) continue;
          const auto batch = oracle_classify_batch(g, pol, vectors, opt, backend);
          REQUIRE(batch.size() == vectors.size());
          for (std::size_t i = 0; i < vectors.size(); i += 7)
            CHECK(batch[i] == oracle_classify(g, pol, vectors[i], opt).verdict);
        }
      }
    }
  }
}

TEST_CASE("witness is the first slope maximizer") {
  const auto i4 = build_fiber(KodairaType::i(4));
  const Polarization pol({1, 1, 1, 1});
  const auto v = oracle_classify(i4, pol, md({1, 1, -1, -1}));
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->indices() == std::vector<int>{0, 1});
  CHECK(*v.witness_slope == Rational(4, 2));
  // heavier weight on C_1 makes {0} the steeper subsheaf
  const auto w = oracle_classify(i4, Polarization({1, 5, 1, 1}), md({2, 0, -1, -1}));
  REQUIRE(w.witness.has_value());
  CHECK(w.witness->indices() == std::vector<int>{0});
}

TEST_CASE("graded objects") {
  const auto i2 = build_fiber(KodairaType::i(2));
  const auto gr = graded_object(i2, md({1, -1}));
  CHECK_FALSE(gr.stable());
  CHECK(gr.factors == std::vector<GradedFactor>{{{0}, -1}, {{1}, -1}});

  const auto i5 = build_fiber(KodairaType::i(5));
  const auto st = graded_object(i5, md({0, 0, 0, 0, 0}));
  CHECK(st.stable());
  REQUIRE(st.factors.size() == 1);
  CHECK(st.factors[0].support.size() == 5);

  const auto iii = build_fiber(KodairaType::iii());
  const auto tac = graded_object(iii, SheafClass::singular_dual(PointTag::Tacnode, md({-1, 0})));
  CHECK(tac.factors == std::vector<GradedFactor>{{{0}, -1}, {{1}, -1}});

  CHECK_THROWS_AS(graded_object(i2, md({2, -2})), InvalidInput);

  CHECK(s_equivalent(graded_object(i2, md({1, -1})), graded_object(i2, md({-1, 1}))));
  CHECK_FALSE(s_equivalent(graded_object(i2, md({0, 0})), graded_object(i2, md({1, -1}))));
  CHECK(s_equivalent(graded_object(i2, md({0, 0})), graded_object(i2, md({0, 0}))));
}

TEST_CASE("every strictly semistable class collapses to the same graded object") {
  for (const auto& k : fjt::reducible_types(6)) {
    CAPTURE(k.name());
    const auto g = build_fiber(k);
    const int n = g.component_count();
    std::vector<GradedFactor> expected;
    for (int i = 0; i < n; ++i) expected.push_back({{i}, -1});
    std::set<std::vector<GradedFactor>> seen;
    for (const auto& d : box(n, 2)) {
      if (classify_by_rule(g, d).verdict != Verdict::StrictlySemistable) continue;
      const auto gr = graded_object(g, d);
      CHECK(gr.factors == expected);
      seen.insert(gr.factors);
    }
    if (k.tag() == KodairaType::Tag::I) {
      for (int node = 0; node < static_cast<int>(g.singular_points().size()); ++node) {
        std::vector<int> deg(static_cast<std::size_t>(n), 0);
        deg[0] = -1;
        const auto cls = SheafClass::nodal(node, MultiDegree{deg});
        if (oracle_classify(g, Polarization::uniform(n), cls).verdict == Verdict::StrictlySemistable)
          CHECK(graded_object(g, cls).factors == expected);
      }
    }
    CHECK(seen.size() == 1);
  }
}

TEST_CASE("disconnected destabilizers change nothing") {
  for (const auto& k : fjt::reducible_types(5)) {
    const auto g = build_fiber(k);
    const auto pol = Polarization::uniform(g.component_count());
    for (const auto& d : box(g.component_count(), 2))
      CHECK(oracle_classify(g, pol, d).verdict == oracle_classify(g, pol, d, OracleOptions{true}).verdict);
  }
}
