#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "pea/groups.hpp"
#include "pea/interval_pea.hpp"
#include "pea/probes.hpp"
#include "pea/refinement.hpp"
#include "pea/riesz.hpp"

namespace pea {

/// Supplies refinements of a1 + a2 = b1 + b2 in G+ and lower bounds in G.
/// `com` promises com(c12, c21) on every returned table.
struct RefineOracle {
  std::string name;
  bool com = false;
  std::function<RefinementTable<Element>(const Quadruple<Element>&)> refine;
  std::function<std::optional<Element>(std::span<const Element>)> lower_bound;
};

/// Refinements from the group's own order: branch on a1 <= b1 for linear
/// orders (zero off-diagonal), meets for lattice orders.
inline RefineOracle builtin_oracle(const GroupPtr& g) {
  auto caps = g->capabilities();
  const PoGroup* pg = g.get();
  RefineOracle o;
  o.lower_bound = [g](std::span<const Element> xs) { return g->lower_bound(xs); };
  if (caps.declared && caps.linear) {
    o.name = "linear(" + g->descriptor() + ")";
    o.com = true;
    o.refine = [g, pg](const Quadruple<Element>& q) {
      RefinementTable<Element> t;
      if (leq(*pg, q.a1, q.b1))
        t = {q.a1, pg->zero(), right_diff(*pg, q.a1, q.b1), q.b2};
      else
        t = {q.b1, right_diff(*pg, q.b1, q.a1), pg->zero(), q.a2};
      if (auto err = validate_table(ConeAlgebra{pg}, q, t)) throw oracle_failure("linear refinement: " + *err);
      return t;
    };
    return o;
  }
  if (caps.declared && caps.lattice) {
    o.name = "lattice(" + g->descriptor() + ")";
    o.com = caps.abelian;
    o.refine = [g, pg](const Quadruple<Element>& q) {
      auto c11 = pg->meet(q.a1, q.b1);
      if (!c11) throw oracle_failure("meet undefined");
      auto c12 = right_diff(*pg, *c11, q.a1);
      auto c21 = right_diff(*pg, *c11, q.b1);
      auto c22 = right_diff(*pg, c21, q.a2);
      RefinementTable<Element> t{*c11, c12, c21, c22};
      if (auto err = validate_table(ConeAlgebra{pg}, q, t)) throw oracle_failure("lattice refinement: " + *err);
      return t;
    };
    return o;
  }
  throw precondition_error("builtin oracle needs a lattice or linear order: " + g->descriptor());
}

namespace detail {

inline std::int64_t level(const Element& x) {
  const auto& c = x.left().coords();
  if (c.size() != 1) throw carrier_mismatch("expected an element of Z lex G");
  return c[0];
}

inline Element at_level(std::int64_t m, Element g) { return Element::pair(Element::integer(m), std::move(g)); }

inline Element bound(const RefineOracle& o, std::initializer_list<Element> xs) {
  std::vector<Element> v(xs);
  auto d = o.lower_bound(v);
  if (!d) throw oracle_failure(o.name + ": no lower bound available");
  return *d;
}

inline RefinementTable<Element> call(const RefineOracle& o, const PoGroup& g, const Quadruple<Element>& q) {
  if (auto err = validate_quadruple(ConeAlgebra{&g}, q)) throw precondition_error("inner quadruple: " + *err);
  auto t = o.refine(q);
  if (auto err = validate_table(ConeAlgebra{&g}, q, t)) throw oracle_failure(o.name + ": " + *err);
  return t;
}

/// The case split for Z lex G. Entries of q are (level, g) pairs.
inline RefinementTable<Element> lex_table(const RefineOracle& o, const PoGroup& g, const Quadruple<Element>& q,
                                          std::string& label) {
  const auto m1 = level(q.a1), m2 = level(q.a2), n1 = level(q.b1), n2 = level(q.b2);
  const auto &a1 = q.a1.right(), &a2 = q.a2.right(), &b1 = q.b1.right(), &b2 = q.b2.right();
  auto plus = [&](const Element& x, const Element& y) { return g.add(x, y); };

  if (m1 == 0 && m2 == 0) {
    label = "all levels 0";
    auto e = call(o, g, {a1, a2, b1, b2});
    return {at_level(0, e.c11), at_level(0, e.c12), at_level(0, e.c21), at_level(0, e.c22)};
  }
  if (m1 > 0 && m2 > 0 && (n1 == 0 || n2 == 0)) {
    auto t = lex_table(o, g, transpose(q), label);
    label += ", transposed";
    return transpose(t);
  }
  if (m1 > 0 && m2 > 0) {
    auto d = bound(o, {a1, a2, b1, b2});
    auto e = call(o, g, {right_diff(g, d, a1), left_diff(g, a2, d), right_diff(g, d, b1), left_diff(g, b2, d)});
    if (m1 >= n1) {
      label = "all levels >= 1, m1 >= n1";
      return {at_level(n1, plus(d, e.c11)), at_level(m1 - n1, e.c12), at_level(0, e.c21),
              at_level(m2, plus(e.c22, d))};
    }
    label = "all levels >= 1, n1 > m1";
    return {at_level(m1, plus(d, e.c11)), at_level(0, e.c12), at_level(n1 - m1, e.c21),
            at_level(n2, plus(e.c22, d))};
  }
  if (m2 == 0) {
    if (n2 > 0) {
      label = "a2 at level 0, n2 > 0";
      return {at_level(n1, b1), at_level(n2, right_diff(g, b1, a1)), at_level(0, g.zero()), at_level(0, a2)};
    }
    label = "a2 and b2 at level 0";
    auto d = bound(o, {a1, b1});
    auto e = call(o, g, {right_diff(g, d, a1), a2, right_diff(g, d, b1), b2});
    return {at_level(n1, plus(d, e.c11)), at_level(0, e.c12), at_level(0, e.c21), at_level(0, e.c22)};
  }
  if (n1 > 0) {
    label = "a1 at level 0, n1 > 0";
    return {at_level(0, a1), at_level(0, g.zero()), at_level(n1, right_diff(g, a1, b1)), at_level(n2, b2)};
  }
  label = "a1 and b1 at level 0";
  auto d = bound(o, {a2, b2});
  auto e = call(o, g, {a1, left_diff(g, a2, d), b1, left_diff(g, b2, d)});
  return {at_level(0, e.c11), at_level(0, e.c12), at_level(0, e.c21), at_level(m2, plus(e.c22, d))};
}

}  // namespace detail

/// Refinement in the positive cone of Z lex G built from refinements in G.
/// Entries of q are pairs (m, g); `label` receives the case taken.
inline RefinementTable<Element> lift_group_refine(const RefineOracle& o, const GroupPtr& g, const Quadruple<Element>& q,
                                                  std::string* label = nullptr) {
  auto zg = lex(integers(), g);
  ConeAlgebra alg{zg.get()};
  if (auto err = validate_quadruple(alg, q)) throw precondition_error("invalid quadruple: " + *err);
  std::string l;
  auto t = detail::lex_table(o, *g, q, l);
  if (auto err = validate_table(alg, q, t)) throw oracle_failure("lifted table does not revalidate: " + *err);
  if (label) *label = l;
  return t;
}

/// Refinement in Gamma(Z lex G, (1,0)).
inline RefinementTable<Element> lift_pea_refine(const RefineOracle& o, const GroupPtr& g, const Quadruple<Element>& q,
                                                std::string* label = nullptr) {
  IntervalPEA e(lex(integers(), g), detail::at_level(1, g->zero()));
  IntervalAlgebra alg{&e};
  if (auto err = validate_quadruple(alg, q)) throw precondition_error("invalid quadruple: " + *err);
  std::string l;
  auto t = detail::lex_table(o, *g, q, l);
  if (auto err = validate_table(alg, q, t)) throw oracle_failure("lifted table does not revalidate: " + *err);
  if (label) *label = l;
  return t;
}

/// lift_pea_refine packaged as an oracle for Gamma(Z lex G, (1,0)).
inline RefineOracle pea_oracle(const RefineOracle& o, const GroupPtr& g) {
  auto zg = lex(integers(), g);
  RefineOracle r;
  r.name = "unit-interval lift of " + o.name;
  r.com = o.com;
  r.refine = [o, g](const Quadruple<Element>& q) { return lift_pea_refine(o, g, q); };
  r.lower_bound = [zg](std::span<const Element> xs) { return zg->lower_bound(xs); };
  return r;
}

namespace detail {

class Extender {
 public:
  Extender(const RefineOracle& oe, const PoGroup& g, Element u, std::size_t budget)
      : oe_(oe), g_(g), u_(std::move(u)), budget_(budget) {}

  RefinementTable<Element> run(const Quadruple<Element>& q) {
    if (++steps_ > budget_) throw budget_exceeded("extend_to_group: step budget exhausted");
    bool a_small = leq(g_, q.a1, u_), b_small = leq(g_, q.b1, u_);
    if (a_small && b_small) return base(q);
    if (!b_small) return split(q);
    return transpose(run(transpose(q)));
  }

 private:
  // a1, b1 <= u: interpolate a1, b1 <= z <= a1+a2, u and refine inside the
  // interval.
  RefinementTable<Element> base(const Quadruple<Element>& q) {
    auto s = g_.add(q.a1, q.a2);
    auto z = g_.join(q.a1, q.b1);
    if (!z || !leq(g_, *z, u_) || !leq(g_, *z, s)) throw oracle_failure("no interpolant between a1, b1 and a1+a2, u");
    auto x = right_diff(g_, q.a1, *z);
    auto y = right_diff(g_, q.b1, *z);
    auto c = oe_.refine({q.a1, x, q.b1, y});
    auto v = right_diff(g_, *z, s);
    return {c.c11, c.c12, c.c21, g_.add(c.c22, v)};
  }

  // b1 = b1' + p with p <= u: refine against b1', then refine the
  // right-hand column against p + b2 and merge.
  RefinementTable<Element> split(const Quadruple<Element>& q) {
    auto p = g_.meet(q.b1, u_);
    if (!p) throw oracle_failure("cannot cut a unit-bounded piece from " + g_.format(q.b1));
    if (*p == g_.zero()) throw budget_exceeded("unit-bounded decomposition of " + g_.format(q.b1) + " makes no progress");
    auto rest = left_diff(g_, q.b1, *p);
    auto c = run({q.a1, q.a2, rest, g_.add(*p, q.b2)});
    auto d = run({c.c12, c.c22, *p, q.b2});
    return {g_.add(c.c11, d.c11), d.c12, g_.add(c.c21, d.c21), d.c22};
  }

  const RefineOracle& oe_;
  const PoGroup& g_;
  Element u_;
  std::size_t budget_;
  std::size_t steps_ = 0;
};

}  // namespace detail

/// Refinement in G+ from refinements in Gamma(G,u), cutting a1 and b1 into
/// pieces below u. Needs meets with u and joins below u.
inline RefinementTable<Element> extend_to_group(const RefineOracle& oe, const GroupPtr& g, const Element& u,
                                                const Quadruple<Element>& q, std::size_t budget = 100000) {
  if (!g->in_cone(u) || u == g->zero()) throw precondition_error("unit must be strictly positive");
  ConeAlgebra alg{g.get()};
  if (auto err = validate_quadruple(alg, q)) throw precondition_error("invalid quadruple: " + *err);
  auto t = detail::Extender(oe, *g, u, budget).run(q);
  if (auto err = validate_table(alg, q, t)) throw oracle_failure("extended table does not revalidate: " + *err);
  return t;
}

/// Refinement in the cone of Z lex G routed through Gamma(Z lex G, (1,0)):
/// with a com-flagged oracle for G the result satisfies com(c12, c21).
inline RefinementTable<Element> lift_group_refine_rdp1(const RefineOracle& o, const GroupPtr& g,
                                                       const Quadruple<Element>& q) {
  auto zg = lex(integers(), g);
  return extend_to_group(pea_oracle(o, g), zg, detail::at_level(1, g->zero()), q);
}

template <class T>
RefinementMatrix<T> transpose(const RefinementMatrix<T>& mat) {
  RefinementMatrix<T> out{mat.n, mat.m, std::vector<T>(mat.c.size())};
  for (std::size_t i = 0; i < mat.m; ++i)
    for (std::size_t j = 0; j < mat.n; ++j) out.at(j, i) = mat.at(i, j);
  return out;
}

namespace detail {

template <class A, class Refine, class T = typename A::value_type>
RefinementMatrix<T> mn_rec(const A& alg, Refine& refine, const std::vector<T>& a, const std::vector<T>& b) {
  const std::size_t m = a.size(), n = b.size();
  if (m == 1) return {1, n, b};
  if (n == 1) return {m, 1, a};
  if (m == 2 && n == 2) return as_matrix(refine(Quadruple<T>{a[0], a[1], b[0], b[1]}));
  if (n == 2) return transpose(mn_rec(alg, refine, b, a));
  std::vector<T> merged(b.begin(), b.end() - 1);
  auto tail = alg.sum(b[n - 2], b[n - 1]);
  if (!tail) throw precondition_error("b_{n-1} + b_n undefined");
  merged.back() = *tail;
  auto left = mn_rec(alg, refine, a, merged);
  std::vector<T> d;
  for (std::size_t i = 0; i < m; ++i) d.push_back(left.at(i, n - 2));
  auto right = mn_rec(alg, refine, d, std::vector<T>{b[n - 2], b[n - 1]});
  RefinementMatrix<T> out{m, n, std::vector<T>(m * n)};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j + 2 < n; ++j) out.at(i, j) = left.at(i, j);
    out.at(i, n - 2) = right.at(i, 0);
    out.at(i, n - 1) = right.at(i, 1);
  }
  return out;
}

}  // namespace detail

/// m x n refinement of a_1 + ... + a_m = b_1 + ... + b_n from 2 x 2
/// refinements, by splitting off the last column.
template <class A, class Refine, class T = typename A::value_type>
RefinementMatrix<T> mn_refine(const A& alg, Refine&& refine, const std::vector<T>& a, const std::vector<T>& b) {
  if (a.empty() || b.empty()) throw precondition_error("mn_refine needs m, n >= 1");
  for (const auto* v : {&a, &b})
    for (const auto& x : *v)
      if (!alg.member(x)) throw precondition_error(alg.format(x) + " is not in the algebra");
  auto sa = sum_of(alg, a), sb = sum_of(alg, b);
  if (!sa || !sb || *sa != *sb) throw precondition_error("the two sums are not defined and equal");
  auto mat = detail::mn_rec(alg, refine, a, b);
  if (auto err = validate_matrix(alg, a, b, mat)) throw oracle_failure("refinement matrix does not revalidate: " + *err);
  return mat;
}

/// Exhaustive 2 x 2 refiner for a finite algebra: the first table in c11
/// order, restricted to com(c12, c21) when `with_com`.
class FiniteRefiner {
 public:
  FiniteRefiner(const RieszAnalyzer& an, bool with_com) : an_(an), with_com_(with_com) {}

  RefinementTable<Id> operator()(const Quadruple<Id>& q) const {
    for (const auto& t : an_.tables(q))
      if (!with_com_ || an_.com(t.c12, t.c21)) return t;
    throw oracle_failure(with_com_ ? "no refinement with com(c12,c21)" : "no refinement");
  }

 private:
  const RieszAnalyzer& an_;
  bool with_com_;
};

/// Uniform element of a built-in group with integer coordinates in
/// [-radius, radius]; finite groups draw from the whole carrier.
template <class Rng>
Element random_element(const PoGroup& g, Rng& rng, std::int64_t radius) {
  std::uniform_int_distribution<std::int64_t> coord(-radius, radius);
  if (auto lg = dynamic_cast<const LexGroup*>(&g))
    return Element::pair(random_element(lg->left(), rng, radius), random_element(lg->right(), rng, radius));
  auto z = g.zero();
  if (z.is_ints()) {
    std::vector<std::int64_t> v(z.coords().size());
    for (auto& x : v) x = coord(rng);
    return Element::ints(std::move(v));
  }
  if (z.is_unitriangular()) return Element::unitriangular(coord(rng), coord(rng), coord(rng));
  if (auto all = g.all_elements()) {
    std::uniform_int_distribution<std::size_t> pick(0, all->size() - 1);
    return (*all)[pick(rng)];
  }
  throw precondition_error("no random generator for " + g.descriptor());
}

/// Random valid quadruple in the cone of Z lex G: levels in [0, max_level],
/// G-coordinates in [-radius, radius]. With `bounded`, b2 must also stay in
/// the coordinate range.
template <class Rng>
Quadruple<Element> random_lex_quadruple(const GroupPtr& gp, Rng& rng, std::int64_t max_level, std::int64_t radius,
                                        bool bounded = true) {
  const PoGroup& g = *gp;
  std::uniform_int_distribution<std::int64_t> lvl(0, max_level);
  auto positive_at = [&](std::int64_t m) {
    while (true) {
      auto x = random_element(g, rng, radius);
      if (m > 0 || g.in_cone(x)) return detail::at_level(m, x);
    }
  };
  auto zg = lex(integers(), gp);
  while (true) {
    auto a1 = positive_at(lvl(rng)), a2 = positive_at(lvl(rng));
    auto s = zg->add(a1, a2);
    std::uniform_int_distribution<std::int64_t> split(0, detail::level(s));
    for (int attempt = 0; attempt < 64; ++attempt) {
      auto b1 = positive_at(split(rng));
      auto b2 = right_diff(*zg, b1, s);
      if (!zg->in_cone(b2)) continue;
      if (bounded && g.norm(b2.right()) > radius) continue;
      return {a1, a2, b1, b2};
    }
  }
}

/// Parses `x;y=z;w` with elements in the syntax of `g`.
inline Quadruple<Element> parse_quadruple(const PoGroup& g, std::string_view s) {
  Quadruple<Element> q;
  q.a1 = g.parse_prefix(s);
  detail::expect(s, ';');
  q.a2 = g.parse_prefix(s);
  detail::expect(s, '=');
  q.b1 = g.parse_prefix(s);
  detail::expect(s, ';');
  q.b2 = g.parse_prefix(s);
  detail::skip_ws(s);
  if (!s.empty()) throw parse_error("trailing characters after quadruple: '" + std::string(s) + "'");
  return q;
}

inline std::string format_quadruple(const PoGroup& g, const Quadruple<Element>& q) {
  return g.format(q.a1) + ";" + g.format(q.a2) + "=" + g.format(q.b1) + ";" + g.format(q.b2);
}

/// The com condition of a table in a group, sampled near both ends of
/// [0,c12] and [0,c21]: candidates are the box points and c + box points.
inline std::optional<std::pair<Element, Element>> com_violation_near(const PoGroup& g, const Element& x,
                                                                     const Element& y,
                                                                     const std::vector<Element>& box) {
  auto below = [&](const Element& top) {
    std::vector<Element> cands = box;
    for (const auto& t : box) cands.push_back(g.add(top, t));
    auto out = sample_below(g, top, cands);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  auto xs = below(x), ys = below(y);
  for (const auto& s : xs)
    for (const auto& t : ys)
      if (g.add(s, t) != g.add(t, s)) return std::pair{s, t};
  return std::nullopt;
}

}  // namespace pea
