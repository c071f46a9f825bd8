#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pea/finite_pea.hpp"
#include "pea/interval_pea.hpp"
#include "pea/po_group.hpp"

namespace pea {

/// a1 + a2 = b1 + b2.
template <class T>
struct Quadruple {
  T a1, a2, b1, b2;
  friend bool operator==(const Quadruple&, const Quadruple&) = default;
};

/// The 2x2 refinement
///
///        b1   b2
///   a1  c11  c12
///   a2  c21  c22
///
/// with a1 = c11 + c12, a2 = c21 + c22, b1 = c11 + c21, b2 = c12 + c22.
template <class T>
struct RefinementTable {
  T c11, c12, c21, c22;
  friend bool operator==(const RefinementTable&, const RefinementTable&) = default;
};

/// m x n refinement, row-major: a_i = c_i1 + ... + c_in and
/// b_j = c_1j + ... + c_mj.
template <class T>
struct RefinementMatrix {
  std::size_t m = 0, n = 0;
  std::vector<T> c;
  const T& at(std::size_t i, std::size_t j) const { return c[i * n + j]; }
  T& at(std::size_t i, std::size_t j) { return c[i * n + j]; }
};

/// Adapters giving the partial monoids that tables live in a common shape:
/// value_type, zero(), member(x), sum(x,y) -> optional, format(x).
struct FiniteAlgebra {
  using value_type = Id;
  const FinitePEA* e;
  Id zero() const { return e->zero(); }
  bool member(Id x) const { return x < e->size(); }
  std::optional<Id> sum(Id x, Id y) const { return e->sum(x, y); }
  bool leq(Id x, Id y) const { return e->leq(x, y); }
  std::string format(Id x) const { return e->name(x); }
};

/// The positive cone G+ of a po-group; sums are always defined.
struct ConeAlgebra {
  using value_type = Element;
  const PoGroup* g;
  Element zero() const { return g->zero(); }
  bool member(const Element& x) const { return g->belongs(x) && g->in_cone(x); }
  std::optional<Element> sum(const Element& x, const Element& y) const { return g->add(x, y); }
  bool leq(const Element& x, const Element& y) const { return pea::leq(*g, x, y); }
  std::string format(const Element& x) const { return g->format(x); }
};

struct IntervalAlgebra {
  using value_type = Element;
  const IntervalPEA* e;
  Element zero() const { return e->zero(); }
  bool member(const Element& x) const { return e->contains(x); }
  std::optional<Element> sum(const Element& x, const Element& y) const { return e->sum(x, y); }
  bool leq(const Element& x, const Element& y) const { return pea::leq(e->group(), x, y); }
  std::string format(const Element& x) const { return e->group().format(x); }
};

template <class A>
std::optional<typename A::value_type> sum_of(const A& alg, const std::vector<typename A::value_type>& xs) {
  std::optional<typename A::value_type> r = alg.zero();
  for (const auto& x : xs) {
    r = alg.sum(*r, x);
    if (!r) return std::nullopt;
  }
  return r;
}

/// nullopt when the table refines q, otherwise a description of the first
/// failing condition.
template <class A, class T = typename A::value_type>
std::optional<std::string> validate_table(const A& alg, const Quadruple<T>& q, const RefinementTable<T>& t) {
  for (const auto* c : {&t.c11, &t.c12, &t.c21, &t.c22})
    if (!alg.member(*c)) return "entry " + alg.format(*c) + " is not positive / not in the algebra";
  auto check = [&](const T& x, const T& y, const T& want, const char* what) -> std::optional<std::string> {
    auto s = alg.sum(x, y);
    if (!s) return std::string(what) + ": sum undefined";
    if (*s != want) return std::string(what) + ": got " + alg.format(*s) + ", want " + alg.format(want);
    return std::nullopt;
  };
  if (auto e = check(t.c11, t.c12, q.a1, "row a1")) return e;
  if (auto e = check(t.c21, t.c22, q.a2, "row a2")) return e;
  if (auto e = check(t.c11, t.c21, q.b1, "column b1")) return e;
  if (auto e = check(t.c12, t.c22, q.b2, "column b2")) return e;
  return std::nullopt;
}

template <class A, class T = typename A::value_type>
std::optional<std::string> validate_quadruple(const A& alg, const Quadruple<T>& q) {
  for (const auto* x : {&q.a1, &q.a2, &q.b1, &q.b2})
    if (!alg.member(*x)) return "element " + alg.format(*x) + " is not positive / not in the algebra";
  auto l = alg.sum(q.a1, q.a2);
  auto r = alg.sum(q.b1, q.b2);
  if (!l || !r) return std::string("a sum of the quadruple is undefined");
  if (*l != *r) return "a1+a2 = " + alg.format(*l) + " differs from b1+b2 = " + alg.format(*r);
  return std::nullopt;
}

template <class A, class T = typename A::value_type>
std::optional<std::string> validate_matrix(const A& alg, const std::vector<T>& a, const std::vector<T>& b,
                                           const RefinementMatrix<T>& mat) {
  if (mat.m != a.size() || mat.n != b.size() || mat.c.size() != mat.m * mat.n) return "matrix shape mismatch";
  for (const auto& c : mat.c)
    if (!alg.member(c)) return "entry " + alg.format(c) + " is not positive / not in the algebra";
  for (std::size_t i = 0; i < mat.m; ++i) {
    std::vector<T> row(mat.c.begin() + i * mat.n, mat.c.begin() + (i + 1) * mat.n);
    auto s = sum_of(alg, row);
    if (!s || *s != a[i]) return "row " + std::to_string(i + 1) + " does not sum to " + alg.format(a[i]);
  }
  for (std::size_t j = 0; j < mat.n; ++j) {
    std::vector<T> col;
    for (std::size_t i = 0; i < mat.m; ++i) col.push_back(mat.at(i, j));
    auto s = sum_of(alg, col);
    if (!s || *s != b[j]) return "column " + std::to_string(j + 1) + " does not sum to " + alg.format(b[j]);
  }
  return std::nullopt;
}

/// The (i,j) pair of Eq. (3.1)-style side conditions: the column tail
/// c_{i+1,j} + ... + c_{m,j} and the row tail c_{i,j+1} + ... + c_{i,n}
/// (0-based i < m-1, j < n-1).
template <class A, class T = typename A::value_type>
std::pair<T, T> com_tails(const A& alg, const RefinementMatrix<T>& mat, std::size_t i, std::size_t j) {
  std::vector<T> col, row;
  for (std::size_t k = i + 1; k < mat.m; ++k) col.push_back(mat.at(k, j));
  for (std::size_t k = j + 1; k < mat.n; ++k) row.push_back(mat.at(i, k));
  auto x = sum_of(alg, col);
  auto y = sum_of(alg, row);
  if (!x || !y) throw precondition_error("tail sum of a refinement matrix is undefined");
  return {*x, *y};
}

template <class T>
RefinementMatrix<T> as_matrix(const RefinementTable<T>& t) {
  return {2, 2, {t.c11, t.c12, t.c21, t.c22}};
}

template <class T>
RefinementTable<T> transpose(const RefinementTable<T>& t) {
  return {t.c11, t.c21, t.c12, t.c22};
}

template <class T>
Quadruple<T> transpose(const Quadruple<T>& q) {
  return {q.b1, q.b2, q.a1, q.a2};
}

}  // namespace pea
