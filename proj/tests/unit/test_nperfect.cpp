#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "pea/nperfect.hpp"

using namespace pea;

namespace {

Element lz(std::int64_t m, std::int64_t g) { return Element::pair(Element::integer(m), Element::integer(g)); }

}  // namespace

TEST(Decomposition, ChainsSliceByValue) {
  for (Id n = 1; n <= 6; ++n) {
    auto e = chain(n);
    auto d = find_n_decomposition(e, static_cast<int>(n));
    ASSERT_TRUE(d);
    for (Id i = 0; i <= n; ++i) EXPECT_EQ(d->slices[i], std::vector<Id>{i});
    EXPECT_EQ(validate_decomposition(e, *d), std::nullopt);
  }
}

TEST(Decomposition, LexS3MatchesFirstCoordinate) {
  auto m = fixtures::lex_s3();
  auto d = find_n_decomposition(m.table, 3);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->sizes(), (std::vector<std::size_t>{1, 6, 6, 1}));
  EXPECT_EQ(d->slices[0], std::vector<Id>{m.id(Element::pair(Element::integer(0), FiniteGroup::s3()->zero()))});
  for (Id x = 0; x < m.table.size(); ++x) EXPECT_EQ(d->slice_of(x), m.elements[x].left().coords()[0]);
  EXPECT_EQ(validate_decomposition(m.table, *d), std::nullopt);
}

TEST(Decomposition, DiamondHasTwoMaximalIdeals) {
  auto d = fixtures::diamond().table;
  EXPECT_EQ(maximal_ideals(d).size(), 2u);
  EXPECT_FALSE(find_n_decomposition(d, 1));
  EXPECT_FALSE(find_n_decomposition(d, 1, true));
}

TEST(Decomposition, CanonicalIsStricterThanDefinition) {
  // C4 with n = 1: E_0 = {0}, E_1 = rest satisfies the definition
  auto c4 = chain(3);
  EXPECT_FALSE(find_n_decomposition(c4, 1));
  auto d = find_n_decomposition(c4, 1, true);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->sizes(), (std::vector<std::size_t>{1, 3}));
  EXPECT_THROW(find_n_decomposition(fixtures::lex_s3().table, 3, true), budget_exceeded);
}

TEST(Decomposition, BruteForceAgreesWhereCanonicalSucceeds) {
  for (Id n = 1; n <= 5; ++n) {
    auto e = chain(n);
    for (int k = 1; k <= 5; ++k) {
      auto c = find_n_decomposition(e, k);
      auto b = find_n_decomposition(e, k, true);
      if (c) {
        EXPECT_TRUE(b);
      }
      if (b) {
        EXPECT_EQ(validate_decomposition(e, *b), std::nullopt);
      }
    }
  }
}

TEST(Decomposition, ValidatorRejectsBadSlices) {
  auto c4 = chain(3);
  NDecomposition d{3, {{0}, {1}, {2}, {3}}, 1};
  EXPECT_EQ(validate_decomposition(c4, d), std::nullopt);
  auto twice = d;
  twice.slices[3].push_back(2);
  EXPECT_TRUE(validate_decomposition(c4, twice));
  auto missing = d;
  missing.slices[3].clear();
  EXPECT_TRUE(validate_decomposition(c4, missing));
  NDecomposition swapped{3, {{0}, {2}, {1}, {3}}, 1};
  EXPECT_TRUE(validate_decomposition(c4, swapped));
}

TEST(Cyclic, ChainExamples) {
  auto c4 = chain(3);
  auto w = find_cyclic(c4, 3);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(c4.name(w[0].c), "1");
  EXPECT_TRUE(w[0].complements_agree);
  EXPECT_TRUE(find_cyclic(c4, 2).empty());
  auto one = find_cyclic(c4, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].c, c4.unit());
}

TEST(Cyclic, LexS3ThirdRoots) {
  auto m = fixtures::lex_s3();
  auto s3 = FiniteGroup::s3();
  std::set<Id> expected;
  auto all = *s3->all_elements();
  for (const auto& g : all)
    if (s3->add(s3->add(g, g), g) == s3->zero()) expected.insert(m.id(Element::pair(Element::integer(1), g)));
  EXPECT_EQ(expected.size(), 3u);
  std::set<Id> got;
  for (const auto& w : find_cyclic(m.table, 3)) {
    got.insert(w.c);
    EXPECT_TRUE(w.complements_agree);
  }
  EXPECT_EQ(got, expected);
}

TEST(Cyclic, ComplementsAgreeOnCatalog) {
  for (Id n = 1; n <= 6; ++n)
    for (int k = 1; k <= 6; ++k)
      for (const auto& w : find_cyclic(chain(n), k)) EXPECT_TRUE(w.complements_agree);
}

TEST(Central, Examples) {
  auto zh = parse_group("lex(Z,heis)");
  EXPECT_EQ(is_central(*zh, zh->parse("(1,(0,0,0))"), 2).verdict, Verdict::certified);
  auto h = heisenberg();
  auto r = is_central(*h, h->parse("(1,0,0)"), 2);
  EXPECT_EQ(r.verdict, Verdict::refuted);
  EXPECT_EQ(r.witness, std::vector<Element>{h->parse("(0,1,0)")});
  EXPECT_EQ(is_central(*h, h->parse("(0,0,7)"), 2).verdict, Verdict::certified);
}

TEST(StrongNPerfect, IntegersLevelTwo) {
  auto s = build_strong_nperfect(integers(), 2);
  EXPECT_TRUE(s.hypotheses_ok());
  EXPECT_TRUE(s.unit_is_nc);
  EXPECT_EQ(s.central.verdict, Verdict::certified);
  for (std::int64_t k = -40; k <= 40; k += 7) EXPECT_TRUE(s.algebra.contains(lz(1, k)));
  EXPECT_FALSE(s.algebra.contains(lz(2, 1)));
  EXPECT_FALSE(s.algebra.contains(lz(0, -1)));
}

TEST(StrongNPerfect, TrivialFactorIsChain) {
  auto s = build_strong_nperfect(parse_group("finite:C1"), 3);
  EXPECT_TRUE(s.unit_is_nc);
  auto m = materialize(s.algebra, 100);
  EXPECT_EQ(m.table.size(), 4u);
  EXPECT_TRUE(m.table.table() == chain(3).table());
}

TEST(StrongNPerfect, HypothesisWarnings) {
  auto s = build_strong_nperfect(parse_group("finite:S3"), 3);
  EXPECT_FALSE(s.hypotheses_ok());
  EXPECT_TRUE(s.unit_is_nc);
  EXPECT_EQ(materialize(s.algebra, 100).table.size(), 14u);
  EXPECT_FALSE(build_strong_nperfect(parse_group("Z^2:cone=ex2.9"), 1).hypotheses_ok());
  EXPECT_TRUE(build_strong_nperfect(heisenberg(), 2).hypotheses_ok());
}

TEST(StrongNPerfect, SliceMapMatchesCanonicalDecomposition) {
  for (const char* d : {"finite:C1", "finite:C2", "finite:S3", "finite:C3"})
    for (int n = 1; n <= 4; ++n) {
      auto s = build_strong_nperfect(parse_group(d), n);
      auto m = materialize(s.algebra, 200);
      auto dec = find_n_decomposition(m.table, n);
      bool order_three = std::string(d) == "finite:S3" || std::string(d) == "finite:C3";
      if (n == 2 && order_three) {
        // (1,c) + (1,c) is undefined for c of order 3, so {0, (1,c)} is an ideal
        EXPECT_EQ(maximal_ideals(m.table).size(), 2u);
        EXPECT_FALSE(dec);
        continue;
      }
      ASSERT_TRUE(dec) << d << " " << n;
      for (Id x = 0; x < m.table.size(); ++x) EXPECT_EQ(dec->slice_of(x), detail::level(m.elements[x]));
    }
}

TEST(Morphism, LiteralParsing) {
  auto h = parse_morphism("matrix:[[1],[1]]");
  EXPECT_EQ(h.dom->descriptor(), "Z");
  EXPECT_EQ(h.cod->descriptor(), "Z^2:product");
  EXPECT_EQ(h(Element::integer(3)), Element::ints({3, 3}));
  auto s = parse_morphism(" matrix:[ [1, 1] ] ");
  EXPECT_EQ(s.name, "matrix:[[1,1]]");
  EXPECT_EQ(s(Element::ints({2, 5})), Element::integer(7));
  EXPECT_THROW(parse_morphism("matrix:[[1],[1,2]]"), parse_error);
  EXPECT_THROW(parse_morphism("matrix:[[1]] x"), parse_error);
  EXPECT_THROW(parse_morphism("diag:[[1]]"), parse_error);
}

TEST(Morphism, SpotCheckRejectsNegativeEntries) {
  EXPECT_TRUE(spot_check(parse_morphism("matrix:[[-1]]"), 2));
  EXPECT_THROW(functor_on_morphism(parse_morphism("matrix:[[-1]]"), 2), precondition_error);
  EXPECT_EQ(spot_check(parse_morphism("matrix:[[2,0],[1,3]]"), 2), std::nullopt);
}

TEST(Functor, DoublingExample) {
  auto f = functor_on_morphism(parse_morphism("matrix:[[2]]"), 2);
  EXPECT_EQ(f(lz(1, 3)), lz(1, 6));
  EXPECT_EQ(f(lz(0, 4)), lz(0, 8));
  EXPECT_EQ(f(lz(2, -1)), lz(2, -2));
}

TEST(Functor, Laws) {
  auto h1 = parse_morphism("matrix:[[1],[1]]");
  auto h2 = parse_morphism("matrix:[[1,1]]");
  auto f1 = functor_on_morphism(h1, 2), f2 = functor_on_morphism(h2, 2);
  auto f21 = functor_on_morphism(compose(h2, h1), 2);
  auto fid = functor_on_morphism(identity(integers()), 2);
  auto pts = sample_points(f1.src, *integers(), 20, 50, 5);
  ASSERT_EQ(pts.size(), 50u);
  for (const auto& x : pts) {
    EXPECT_EQ(fid(x), x);
    EXPECT_EQ(f21(x), f2(f1(x)));
  }
  EXPECT_EQ(check_pea_homomorphism(f1, pts), std::nullopt);
  EXPECT_EQ(check_pea_homomorphism(f21, pts), std::nullopt);
  auto mid = sample_points(f2.src, *product(2), 3, 50, 5);
  EXPECT_EQ(check_pea_homomorphism(f2, mid), std::nullopt);
}

TEST(Functor, Faithful) {
  auto a = functor_on_morphism(parse_morphism("matrix:[[1]]"), 2);
  auto b = functor_on_morphism(parse_morphism("matrix:[[2]]"), 2);
  bool differ = false;
  for (std::int64_t x = -3; x <= 3; ++x) differ |= a(lz(1, x)) != b(lz(1, x));
  EXPECT_TRUE(differ);
}

TEST(Functor, NonHomomorphismOnIntervalIsCaught) {
  // a map that is not of the functor's form breaks sums
  auto f = functor_on_morphism(parse_morphism("matrix:[[1]]"), 2);
  auto bad = f;
  bad.h.f = [](const Element& x) { return Element::integer(x.coords()[0] == 1 ? 5 : x.coords()[0]); };
  auto pts = sample_points(f.src, *integers(), 4, 100, 1);
  EXPECT_TRUE(check_pea_homomorphism(bad, pts));
}
