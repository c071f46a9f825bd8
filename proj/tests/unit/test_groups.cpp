#include <gtest/gtest.h>

#include "pea/descriptor.hpp"
#include "pea/probes.hpp"

using namespace pea;

namespace {

Element P(const GroupPtr& g, const char* s) { return g->parse(s); }

}  // namespace

TEST(Leq, CustomConeSumBranch) {
  auto g = parse_group("Z^2:cone=ex2.9");
  EXPECT_TRUE(leq(*g, P(g, "(1,0)"), P(g, "(0,3)")));
  EXPECT_FALSE(leq(*g, P(g, "(1,0)"), P(g, "(0,2)")));
}

TEST(Leq, Reflexive) {
  for (auto d : {"Z", "Z^3:product", "heis", "finite:S3", "lex(Z,finite:S3)", "Z^2:cone=ex2.10"}) {
    auto g = parse_group(d);
    for (const auto& x : g->box(1)) EXPECT_TRUE(leq(*g, x, x)) << d;
  }
}

TEST(Leq, ProductOrder) {
  auto g = parse_group("Z^2:product");
  EXPECT_FALSE(leq(*g, P(g, "(0,1)"), P(g, "(3,0)")));
}

TEST(Leq, CarrierMismatch) {
  auto g = parse_group("Z^2:product");
  EXPECT_THROW(leq(*g, Element::integer(1), P(g, "(3,0)")), carrier_mismatch);
  EXPECT_THROW(leq(*g, Element::ints({1, 2, 3}), P(g, "(3,0)")), carrier_mismatch);
}

TEST(Lex, Positivity) {
  auto zz = parse_group("lex(Z,Z)");
  EXPECT_TRUE(zz->in_cone(P(zz, "(1,-5)")));
  auto zp = parse_group("lex(Z,Z^2:product)");
  EXPECT_FALSE(zp->in_cone(P(zp, "(0,(1,-1))")));
  EXPECT_TRUE(zp->in_cone(P(zp, "(0,(1,0))")));
}

TEST(Lex, Capabilities) {
  auto g = parse_group("lex(Z,finite:S3)");
  auto c = g->capabilities();
  EXPECT_TRUE(c.directed);
  EXPECT_FALSE(c.abelian);
  EXPECT_FALSE(c.linear);
  EXPECT_FALSE(c.torsion_free);
  auto h = parse_group("lex(Z,heis)")->capabilities();
  EXPECT_TRUE(h.linear && h.lattice && h.directed && h.torsion_free && !h.abelian);
  auto t = parse_group("lex(finite:C1,finite:S3)")->capabilities();
  EXPECT_FALSE(t.directed);
  auto p = parse_group("lex(Z^2:product,Z)")->capabilities();
  EXPECT_TRUE(p.directed);
  EXPECT_FALSE(p.lattice);
}

TEST(Heisenberg, ProductFormula) {
  auto h = heisenberg();
  auto x = P(h, "(1,0,0)"), y = P(h, "(0,1,0)");
  EXPECT_EQ(h->add(x, y), P(h, "(1,1,1)"));
  EXPECT_EQ(h->add(y, x), P(h, "(1,1,0)"));
  EXPECT_TRUE(h->in_cone(P(h, "(0,0,5)")));
  for (const auto& g : h->box(2)) {
    auto z = P(h, "(0,0,1)");
    EXPECT_EQ(h->add(h->add(g, z), h->neg(g)), z);
    EXPECT_EQ(h->add(g, h->neg(g)), h->zero());
  }
}

TEST(Heisenberg, ConeClosedUnderConjugationRadius4) {
  auto h = heisenberg();
  auto box = h->box(4);
  std::vector<Element> pos;
  for (const auto& x : box)
    if (h->in_cone(x)) pos.push_back(x);
  for (const auto& x : pos)
    for (const auto& g : box) ASSERT_TRUE(h->in_cone(h->add(h->add(g, x), h->neg(g))));
}

TEST(Descriptor, RoundTrip) {
  for (auto d : {"Z", "Z^2:product", "Z^2:cone=ex2.9", "Z^2:cone=ex2.10", "heis", "finite:S3", "finite:C5",
                 "lex(Z,lex(Z^2:product,heis))", "Z^3:cone=x1+x2+x3>=0 & x1>=0"})
    EXPECT_EQ(parse_group(d)->descriptor(), d);
  EXPECT_EQ(parse_group("Z^1:product")->descriptor(), "Z");
}

TEST(Descriptor, Errors) {
  for (auto d : {"", "Q", "Z^", "Z^0", "lex(Z)", "lex(Z,Z", "finite:A4", "Z^2:cone=y1>0", "heisx", "Z^2:foo"})
    EXPECT_THROW(parse_group(d), parse_error) << d;
}

TEST(Elements, ParseFormat) {
  auto g = parse_group("lex(Z,finite:S3)");
  EXPECT_EQ(g->format(P(g, "(1,(12))")), "(1,(12))");
  EXPECT_EQ(P(g, "(3,e)"), P(g, "(3,0)"));
  EXPECT_THROW(P(g, "(3,(1234))"), parse_error);
  EXPECT_THROW(P(g, "(3,0) x"), parse_error);
  auto z = integers();
  EXPECT_EQ(z->format(P(z, "-17")), "-17");
  EXPECT_THROW(P(z, "99999999999999999999"), parse_error);
}

TEST(Checked, OverflowIsAnError) {
  auto z = integers();
  auto big = Element::integer(std::numeric_limits<std::int64_t>::max());
  EXPECT_THROW(z->add(big, Element::integer(1)), overflow_error);
  EXPECT_THROW(z->neg(Element::integer(std::numeric_limits<std::int64_t>::min())), overflow_error);
  auto h = heisenberg();
  EXPECT_THROW(h->add(Element::unitriangular(1LL << 40, 0, 0), Element::unitriangular(0, 1LL << 40, 0)),
               overflow_error);
}

TEST(S3, Composition) {
  auto s = FiniteGroup::s3();
  auto a = P(s, "(12)"), b = P(s, "(13)");
  EXPECT_NE(s->add(a, b), s->add(b, a));
  EXPECT_EQ(s->add(a, b), P(s, "(132)"));
  EXPECT_EQ(s->add(P(s, "(123)"), P(s, "(123)")), P(s, "(132)"));
  EXPECT_EQ(s->neg(P(s, "(123)")), P(s, "(132)"));
}

TEST(Probes, Directed) {
  auto r = is_directed_bounded(*FiniteGroup::s3(), 0);
  ASSERT_EQ(r.verdict, Verdict::refuted);
  auto s = FiniteGroup::s3();
  EXPECT_NE(r.witness[0], s->zero());
  EXPECT_NE(r.witness[1], s->zero());
  EXPECT_NE(r.witness[0], r.witness[1]);
  EXPECT_EQ(is_directed_bounded(*product(2), 3).verdict, Verdict::certified);
  EXPECT_EQ(is_directed_bounded(*ConeGroup::ex29(), 3).verdict, Verdict::certified);
  auto custom = parse_group("Z^2:cone=x1>=0 & x2>=0");
  EXPECT_EQ(is_directed_bounded(*custom, 1).verdict, Verdict::inconclusive);
  EXPECT_EQ(is_directed_bounded(*FiniteGroup::cyclic(1), 0).verdict, Verdict::certified);
}

TEST(Probes, StrongUnit) {
  auto g = parse_group("lex(Z,heis)");
  EXPECT_EQ(is_strong_unit_bounded(*g, P(g, "(1,(0,0,0))"), 2).verdict, Verdict::certified);
  auto p = product(2);
  EXPECT_EQ(is_strong_unit_bounded(*p, P(p, "(1,1)"), 2).verdict, Verdict::certified);
  auto r = is_strong_unit_bounded(*p, P(p, "(1,0)"), 2);
  ASSERT_EQ(r.verdict, Verdict::refuted);
  EXPECT_EQ(r.witness[0], P(p, "(0,1)"));
  EXPECT_THROW(is_strong_unit_bounded(*p, P(p, "(-1,0)"), 2), precondition_error);
  auto lz = parse_group("lex(Z,Z)");
  auto w = is_strong_unit_bounded(*lz, P(lz, "(0,5)"), 2);
  ASSERT_EQ(w.verdict, Verdict::refuted);
  EXPECT_EQ(w.witness[0], P(lz, "(1,0)"));
  EXPECT_EQ(is_strong_unit_bounded(*ConeGroup::ex210(), P(ConeGroup::ex210(), "(2,-1)"), 1).verdict,
            Verdict::certified);
}

TEST(Probes, Srip) {
  auto z = integers();
  auto r = srip_bounded(*z, 1);
  ASSERT_EQ(r.verdict, Verdict::refuted);
  EXPECT_EQ(r.witness[0], P(z, "0"));
  EXPECT_EQ(r.witness[2], P(z, "1"));
  auto h = heisenberg();
  auto s = srip_bounded(*h, 1);
  ASSERT_EQ(s.verdict, Verdict::refuted);
  EXPECT_EQ(s.witness[0], h->zero());
  EXPECT_EQ(s.witness[2], P(h, "(0,0,1)"));
  EXPECT_EQ(srip_bounded(*z, 0).verdict, Verdict::inconclusive);
  EXPECT_EQ(srip_bounded(*h, 0).verdict, Verdict::inconclusive);
}

TEST(Probes, Central) {
  auto g = parse_group("lex(Z,heis)");
  EXPECT_EQ(is_central(*g, P(g, "(1,(0,0,0))"), 1).verdict, Verdict::certified);
  auto h = heisenberg();
  auto r = is_central(*h, P(h, "(1,0,0)"), 1);
  ASSERT_EQ(r.verdict, Verdict::refuted);
  EXPECT_EQ(r.witness[0], P(h, "(0,1,0)"));
  EXPECT_EQ(is_central(*h, P(h, "(0,0,7)"), 1).verdict, Verdict::certified);
  auto s = FiniteGroup::s3();
  EXPECT_EQ(is_central(*s, P(s, "(12)"), 0).verdict, Verdict::refuted);
}

TEST(Probes, RipRefutationEx29) {
  auto g = ConeGroup::ex29();
  auto r = rip_refutation(*g, P(g, "(1,0)"), P(g, "(0,1)"), P(g, "(0,3)"), P(g, "(3,0)"));
  EXPECT_EQ(r.verdict, Verdict::refuted) << r.reason;
  auto h = ConeGroup::ex210();
  auto s = rip_refutation(*h, P(h, "(1,0)"), P(h, "(0,1)"), P(h, "(0,2)"), P(h, "(2,0)"));
  EXPECT_EQ(s.verdict, Verdict::refuted) << s.reason;
  auto p = product(2);
  EXPECT_EQ(rip_refutation(*p, P(p, "(1,0)"), P(p, "(0,1)"), P(p, "(1,3)"), P(p, "(3,1)")).verdict,
            Verdict::inconclusive);
}

TEST(OrderLaws, BuiltinGroups) {
  for (auto d : {"Z", "Z^2:product", "Z^2:cone=ex2.9", "Z^2:cone=ex2.10", "finite:S3", "finite:C4"}) {
    auto g = parse_group(d);
    EXPECT_EQ(check_order_laws(*g, 5), std::nullopt) << d;
  }
  EXPECT_EQ(check_order_laws(*heisenberg(), 2), std::nullopt);
  EXPECT_EQ(check_order_laws(*parse_group("lex(Z,finite:S3)"), 2), std::nullopt);
  EXPECT_EQ(check_order_laws(*parse_group("lex(Z,Z^2:product)"), 1), std::nullopt);
  EXPECT_EQ(check_order_laws(*parse_group("lex(Z,heis)"), 1), std::nullopt);
}

TEST(OrderLaws, NonConeDetected) {
  auto bad = parse_group("Z^2:cone=x1>=0");
  EXPECT_NE(check_order_laws(*bad, 1), std::nullopt);
}
