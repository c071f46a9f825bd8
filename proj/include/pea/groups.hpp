#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pea/checked.hpp"
#include "pea/cone_spec.hpp"
#include "pea/po_group.hpp"

namespace pea {

namespace detail {

inline std::vector<std::vector<std::int64_t>> int_box(std::size_t rank, std::int64_t radius) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> v(rank, -radius);
  if (radius < 0) return out;
  while (true) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < rank && v[i] == radius) v[i] = -radius, ++i;
    if (i == rank) break;
    ++v[i];
  }
  return out;
}

inline std::int64_t max_abs(const std::vector<std::int64_t>& v) {
  std::int64_t m = 0;
  for (auto x : v) m = std::max(m, x < 0 ? -x : x);
  return m;
}

inline std::string join_ints(const std::vector<std::int64_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

}  // namespace detail

/// Z^k with the componentwise (product) order. Rank 1 is the integers.
///
/// Certificates: componentwise min/max are infimum/supremum, so the group is
/// a lattice and hence directed; u is a strong unit iff every coordinate of u
/// is positive (take n = the largest coordinate of g).
class IntegerGroup final : public PoGroup {
 public:
  explicit IntegerGroup(std::size_t rank) : rank_(rank) {
    if (rank == 0) throw precondition_error("Z^0 is not supported; use finite:C1");
  }

  std::size_t rank() const { return rank_; }

  std::string descriptor() const override {
    return rank_ == 1 ? "Z" : "Z^" + std::to_string(rank_) + ":product";
  }
  Capabilities capabilities() const override { return {true, true, true, rank_ == 1, true, true}; }

  bool belongs(const Element& x) const override { return x.is_ints() && x.coords().size() == rank_; }
  Element zero() const override { return Element::ints(std::vector<std::int64_t>(rank_, 0)); }
  Element add(const Element& x, const Element& y) const override {
    require(x), require(y);
    std::vector<std::int64_t> r(rank_);
    for (std::size_t i = 0; i < rank_; ++i) r[i] = checked::add(x.coords()[i], y.coords()[i]);
    return Element::ints(std::move(r));
  }
  Element neg(const Element& x) const override {
    require(x);
    std::vector<std::int64_t> r(rank_);
    for (std::size_t i = 0; i < rank_; ++i) r[i] = checked::neg(x.coords()[i]);
    return Element::ints(std::move(r));
  }
  bool in_cone(const Element& x) const override {
    require(x);
    return std::all_of(x.coords().begin(), x.coords().end(), [](auto c) { return c >= 0; });
  }

  std::optional<Element> meet(const Element& x, const Element& y) const override {
    return componentwise(x, y, [](auto a, auto b) { return std::min(a, b); });
  }
  std::optional<Element> join(const Element& x, const Element& y) const override {
    return componentwise(x, y, [](auto a, auto b) { return std::max(a, b); });
  }
  std::optional<Element> strictly_positive() const override {
    return Element::ints(std::vector<std::int64_t>(rank_, 1));
  }

  std::int64_t norm(const Element& x) const override { return detail::max_abs(x.coords()); }
  std::vector<Element> box(std::int64_t radius) const override {
    std::vector<Element> out;
    for (auto& v : detail::int_box(rank_, radius)) out.push_back(Element::ints(std::move(v)));
    detail::sort_box(*this, out);
    return out;
  }
  std::optional<std::vector<Element>> interval(const Element& lo, const Element& hi,
                                               std::size_t budget) const override {
    require(lo), require(hi);
    std::vector<std::int64_t> l = lo.coords(), h = hi.coords();
    std::size_t count = 1;
    for (std::size_t i = 0; i < rank_; ++i) {
      if (l[i] > h[i]) return std::vector<Element>{};
      auto w = static_cast<std::size_t>(h[i] - l[i]) + 1;
      if (w > budget || count > budget / w) throw budget_exceeded("interval exceeds enumeration budget");
      count *= w;
    }
    std::vector<Element> out;
    std::vector<std::int64_t> v = l;
    while (true) {
      out.push_back(Element::ints(v));
      std::size_t i = 0;
      while (i < rank_ && v[i] == h[i]) v[i] = l[i], ++i;
      if (i == rank_) break;
      ++v[i];
    }
    return out;
  }

  Analysis strong_unit_analysis(const Element& u) const override {
    require(u);
    for (std::size_t i = 0; i < rank_; ++i) {
      if (u.coords()[i] <= 0) {
        std::vector<std::int64_t> w(rank_, 0);
        w[i] = 1;
        return {false, Element::ints(std::move(w)),
                "coordinate " + std::to_string(i + 1) + " of u is 0, so every multiple of u is 0 there"};
      }
    }
    return {true, std::nullopt, "all coordinates of u are positive; n = max coordinate of g bounds g"};
  }
  Analysis central_analysis(const Element& c) const override {
    require(c);
    return {true, std::nullopt, "abelian group"};
  }
  std::string directed_certificate() const override {
    return "componentwise max is an upper bound (lattice order)";
  }

  std::string format(const Element& x) const override {
    require(x);
    return rank_ == 1 ? std::to_string(x.coords()[0]) : detail::join_ints(x.coords());
  }
  Element parse_prefix(std::string_view& s) const override {
    if (rank_ == 1) {
      detail::skip_ws(s);
      if (!s.empty() && s.front() == '(') {
        detail::expect(s, '(');
        auto v = detail::parse_int(s);
        detail::expect(s, ')');
        return Element::integer(v);
      }
      return Element::integer(detail::parse_int(s));
    }
    detail::expect(s, '(');
    std::vector<std::int64_t> v;
    for (std::size_t i = 0; i < rank_; ++i) {
      if (i) detail::expect(s, ',');
      v.push_back(detail::parse_int(s));
    }
    detail::expect(s, ')');
    return Element::ints(std::move(v));
  }

 private:
  template <class F>
  Element componentwise(const Element& x, const Element& y, F f) const {
    require(x), require(y);
    std::vector<std::int64_t> r(rank_);
    for (std::size_t i = 0; i < rank_; ++i) r[i] = f(x.coords()[i], y.coords()[i]);
    return Element::ints(std::move(r));
  }

  std::size_t rank_;
};

/// Z^k ordered by a custom cone given as a ConeSpec.
///
/// The two built-in cones on Z^2 come with analytic metadata:
///  - ex2.9, cone {x >= 0 componentwise} u {x1 + x2 >= 2}; closed under
///    addition because sums of coordinate sums add. A positive u != 0 has
///    u1 + u2 >= 1, so n*u - g has coordinate sum n(u1+u2) - (g1+g2) >= 2 for
///    large n: every positive u != 0 is a strong unit, hence directed.
///  - ex2.10, cone {0} u {x1 + x2 >= 1}; the same argument applies.
/// Neither is a lattice. Custom cones carry no declared order metadata.
class ConeGroup final : public PoGroup {
 public:
  enum class Builtin { none, ex29, ex210 };

  ConeGroup(ConeSpec cone, Builtin kind = Builtin::none) : cone_(std::move(cone)), kind_(kind) {}

  static std::shared_ptr<const ConeGroup> ex29() {
    return std::make_shared<const ConeGroup>(ConeSpec::ex29(), Builtin::ex29);
  }
  static std::shared_ptr<const ConeGroup> ex210() {
    return std::make_shared<const ConeGroup>(ConeSpec::ex210(), Builtin::ex210);
  }

  const ConeSpec& cone() const { return cone_; }
  Builtin kind() const { return kind_; }

  std::string descriptor() const override {
    std::string head = "Z^" + std::to_string(cone_.rank) + ":cone=";
    switch (kind_) {
      case Builtin::ex29: return head + "ex2.9";
      case Builtin::ex210: return head + "ex2.10";
      default: return head + cone_.text;
    }
  }
  Capabilities capabilities() const override {
    if (kind_ == Builtin::none) return {true, false, false, false, true, false};
    return {true, true, false, false, true, true};
  }

  bool belongs(const Element& x) const override {
    return x.is_ints() && static_cast<int>(x.coords().size()) == cone_.rank;
  }
  Element zero() const override { return Element::ints(std::vector<std::int64_t>(cone_.rank, 0)); }
  Element add(const Element& x, const Element& y) const override {
    require(x), require(y);
    std::vector<std::int64_t> r(cone_.rank);
    for (int i = 0; i < cone_.rank; ++i) r[i] = checked::add(x.coords()[i], y.coords()[i]);
    return Element::ints(std::move(r));
  }
  Element neg(const Element& x) const override {
    require(x);
    std::vector<std::int64_t> r(cone_.rank);
    for (int i = 0; i < cone_.rank; ++i) r[i] = checked::neg(x.coords()[i]);
    return Element::ints(std::move(r));
  }
  bool in_cone(const Element& x) const override {
    require(x);
    return cone_.contains(x.coords());
  }

  std::optional<Element> strictly_positive() const override {
    if (kind_ == Builtin::none) return std::nullopt;
    std::vector<std::int64_t> v(cone_.rank, 0);
    v[0] = 1;
    return Element::ints(std::move(v));
  }

  std::int64_t norm(const Element& x) const override { return detail::max_abs(x.coords()); }
  std::vector<Element> box(std::int64_t radius) const override {
    std::vector<Element> out;
    for (auto& v : detail::int_box(cone_.rank, radius)) out.push_back(Element::ints(std::move(v)));
    detail::sort_box(*this, out);
    return out;
  }
  std::optional<std::vector<Element>> interval(const Element& lo, const Element& hi,
                                               std::size_t budget) const override {
    require(lo), require(hi);
    auto d = add(neg(lo), hi);
    auto pts = cone_interval_points(cone_, d.coords(), budget);
    if (!pts) return std::nullopt;
    std::vector<Element> out;
    for (auto& y : *pts) out.push_back(add(lo, Element::ints(std::move(y))));
    std::sort(out.begin(), out.end());
    return out;
  }

  Analysis strong_unit_analysis(const Element& u) const override {
    require(u);
    if (kind_ == Builtin::none) return {std::nullopt, std::nullopt, "no analytic metadata for a custom cone"};
    std::int64_t s = checked::add(u.coords()[0], u.coords()[1]);
    if (s >= 1) return {true, std::nullopt, "u1 + u2 >= 1, so n*u - g eventually has coordinate sum >= 2"};
    return {false, Element::ints({1, 0}), "u = 0; (1,0) is not below 0"};
  }
  Analysis central_analysis(const Element& c) const override {
    require(c);
    return {true, std::nullopt, "abelian group"};
  }
  std::string directed_certificate() const override {
    if (kind_ == Builtin::none) return "";
    return "u = (1,0) is a strong unit and a unital po-group is directed";
  }

  std::string format(const Element& x) const override {
    require(x);
    return detail::join_ints(x.coords());
  }
  Element parse_prefix(std::string_view& s) const override {
    detail::expect(s, '(');
    std::vector<std::int64_t> v;
    for (int i = 0; i < cone_.rank; ++i) {
      if (i) detail::expect(s, ',');
      v.push_back(detail::parse_int(s));
    }
    detail::expect(s, ')');
    return Element::ints(std::move(v));
  }

 private:
  ConeSpec cone_;
  Builtin kind_;
};

/// The discrete Heisenberg group UT(3,Z): triples (a,b,c) with
/// (a,b,c) + (a',b',c') = (a+a', b+b', c+c'+a*b').
///
/// Cone: (a,b) >lex (0,0), or (a,b) = (0,0) and c >= 0. Conjugation fixes
/// (a,b) and the center {(0,0,c)}, so the cone is normal; the order is total,
/// hence a lattice and directed. u is a strong unit iff its a-coordinate is
/// positive. The group is torsion-free and non-abelian.
class Heisenberg final : public PoGroup {
 public:
  std::string descriptor() const override { return "heis"; }
  Capabilities capabilities() const override { return {false, true, true, true, true, true}; }

  bool belongs(const Element& x) const override { return x.is_unitriangular(); }
  Element zero() const override { return Element::unitriangular(0, 0, 0); }
  Element add(const Element& x, const Element& y) const override {
    const auto& p = x.triple();
    const auto& q = y.triple();
    return Element::unitriangular(checked::add(p.a, q.a), checked::add(p.b, q.b),
                                  checked::add(checked::add(p.c, q.c), checked::mul(p.a, q.b)));
  }
  Element neg(const Element& x) const override {
    const auto& p = x.triple();
    return Element::unitriangular(checked::neg(p.a), checked::neg(p.b),
                                  checked::add(checked::neg(p.c), checked::mul(p.a, p.b)));
  }
  bool in_cone(const Element& x) const override {
    const auto& p = x.triple();
    if (p.a != 0) return p.a > 0;
    if (p.b != 0) return p.b > 0;
    return p.c >= 0;
  }

  std::optional<Element> meet(const Element& x, const Element& y) const override {
    return leq(*this, x, y) ? x : y;
  }
  std::optional<Element> join(const Element& x, const Element& y) const override {
    return leq(*this, x, y) ? y : x;
  }
  std::optional<Element> strictly_positive() const override { return Element::unitriangular(0, 0, 1); }

  std::int64_t norm(const Element& x) const override {
    const auto& p = x.triple();
    return detail::max_abs({p.a, p.b, p.c});
  }
  std::vector<Element> box(std::int64_t radius) const override {
    std::vector<Element> out;
    for (auto& v : detail::int_box(3, radius)) out.push_back(Element::unitriangular(v[0], v[1], v[2]));
    detail::sort_box(*this, out);
    return out;
  }
  std::optional<std::vector<Element>> interval(const Element& lo, const Element& hi,
                                               std::size_t budget) const override {
    auto d = right_diff(*this, lo, hi);
    if (!in_cone(d)) return std::vector<Element>{};
    const auto& t = d.triple();
    if (t.a != 0 || t.b != 0) return std::nullopt;  // contains (0,k,*) or (0,0,k) for all k
    if (static_cast<std::uint64_t>(t.c) >= budget) throw budget_exceeded("interval exceeds enumeration budget");
    std::vector<Element> out;
    for (std::int64_t k = 0; k <= t.c; ++k) out.push_back(add(lo, Element::unitriangular(0, 0, k)));
    return out;
  }

  Analysis strong_unit_analysis(const Element& u) const override {
    if (u.triple().a > 0) return {true, std::nullopt, "a-coordinate of u is positive; n*u dominates lexicographically"};
    return {false, Element::unitriangular(1, 0, 0), "a-coordinate of every multiple of u is 0 < 1"};
  }
  Analysis central_analysis(const Element& c) const override {
    const auto& p = c.triple();
    if (p.a == 0 && p.b == 0) return {true, std::nullopt, "center of UT(3,Z) is {(0,0,c)}"};
    if (p.a != 0) return {false, Element::unitriangular(0, 1, 0), "a != 0 does not commute with (0,1,0)"};
    return {false, Element::unitriangular(1, 0, 0), "b != 0 does not commute with (1,0,0)"};
  }
  std::string directed_certificate() const override { return "linearly ordered (max is an upper bound)"; }

  std::string format(const Element& x) const override {
    const auto& p = x.triple();
    return detail::join_ints({p.a, p.b, p.c});
  }
  Element parse_prefix(std::string_view& s) const override {
    detail::expect(s, '(');
    auto a = detail::parse_int(s);
    detail::expect(s, ',');
    auto b = detail::parse_int(s);
    detail::expect(s, ',');
    auto c = detail::parse_int(s);
    detail::expect(s, ')');
    return Element::unitriangular(a, b, c);
  }
};

/// A finite group with the trivial order (positive cone = {0}).
///
/// Available: the cyclic groups C_k and the symmetric group S3. Nontrivial
/// ones are not directed: distinct elements have no common upper bound.
class FiniteGroup final : public PoGroup {
 public:
  static std::shared_ptr<const FiniteGroup> cyclic(std::uint32_t k) {
    if (k == 0) throw precondition_error("C0 is not a group");
    std::vector<std::string> names;
    std::vector<std::vector<std::uint32_t>> table(k, std::vector<std::uint32_t>(k));
    for (std::uint32_t i = 0; i < k; ++i) {
      names.push_back(std::to_string(i));
      for (std::uint32_t j = 0; j < k; ++j) table[i][j] = (i + j) % k;
    }
    return std::make_shared<const FiniteGroup>("C" + std::to_string(k), std::move(names), std::move(table));
  }

  /// S3 as permutations of {1,2,3}; g + h is the composition g after h.
  static std::shared_ptr<const FiniteGroup> s3() {
    using Perm = std::array<int, 3>;
    const std::vector<std::pair<std::string, Perm>> perms = {
        {"0", {0, 1, 2}},    {"(12)", {1, 0, 2}},  {"(13)", {2, 1, 0}},
        {"(23)", {0, 2, 1}}, {"(123)", {1, 2, 0}}, {"(132)", {2, 0, 1}},
    };
    std::vector<std::string> names;
    for (const auto& p : perms) names.push_back(p.first);
    std::vector<std::vector<std::uint32_t>> table(6, std::vector<std::uint32_t>(6));
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < 6; ++j) {
        Perm c;
        for (int x = 0; x < 3; ++x) c[x] = perms[i].second[perms[j].second[x]];
        for (std::size_t k = 0; k < 6; ++k)
          if (perms[k].second == c) table[i][j] = static_cast<std::uint32_t>(k);
      }
    }
    return std::make_shared<const FiniteGroup>("S3", std::move(names), std::move(table));
  }

  FiniteGroup(std::string name, std::vector<std::string> names, std::vector<std::vector<std::uint32_t>> table)
      : name_(std::move(name)), names_(std::move(names)), table_(std::move(table)) {
    inverse_.resize(order());
    for (std::uint32_t i = 0; i < order(); ++i)
      for (std::uint32_t j = 0; j < order(); ++j)
        if (table_[i][j] == 0) inverse_[i] = j;
    abelian_ = true;
    for (std::uint32_t i = 0; i < order(); ++i)
      for (std::uint32_t j = 0; j < order(); ++j)
        if (table_[i][j] != table_[j][i]) abelian_ = false;
  }

  std::uint32_t order() const { return static_cast<std::uint32_t>(names_.size()); }
  const std::string& name() const { return name_; }
  Element element(std::uint32_t id) const { return Element::label(name_, id); }

  std::string descriptor() const override { return "finite:" + name_; }
  Capabilities capabilities() const override {
    bool t = is_trivial();
    return {abelian_, t, t, t, t, true};
  }
  bool is_trivial() const override { return order() == 1; }

  bool belongs(const Element& x) const override {
    return x.is_label() && x.finite_label().group == name_ && x.finite_label().id < order();
  }
  Element zero() const override { return element(0); }
  Element add(const Element& x, const Element& y) const override {
    require(x), require(y);
    return element(table_[x.finite_label().id][y.finite_label().id]);
  }
  Element neg(const Element& x) const override {
    require(x);
    return element(inverse_[x.finite_label().id]);
  }
  bool in_cone(const Element& x) const override {
    require(x);
    return x.finite_label().id == 0;
  }

  std::optional<Element> meet(const Element& x, const Element& y) const override {
    if (x == y) return x;
    return std::nullopt;
  }
  std::optional<Element> join(const Element& x, const Element& y) const override { return meet(x, y); }

  std::optional<std::vector<Element>> all_elements() const override {
    std::vector<Element> out;
    for (std::uint32_t i = 0; i < order(); ++i) out.push_back(element(i));
    return out;
  }
  std::int64_t norm(const Element&) const override { return 0; }
  std::vector<Element> box(std::int64_t) const override { return *all_elements(); }
  std::optional<std::vector<Element>> interval(const Element& lo, const Element& hi,
                                               std::size_t budget) const override {
    require(lo), require(hi);
    if (lo != hi) return std::vector<Element>{};
    if (budget == 0) throw budget_exceeded("interval exceeds enumeration budget");
    return std::vector<Element>{lo};
  }

  Analysis strong_unit_analysis(const Element& u) const override {
    require(u);
    if (is_trivial()) return {true, std::nullopt, "trivial group"};
    return {false, element(1), "trivial order: only 0 lies below multiples of 0"};
  }
  Analysis central_analysis(const Element& c) const override {
    require(c);
    for (std::uint32_t j = 0; j < order(); ++j) {
      auto g = element(j);
      if (add(c, g) != add(g, c)) return {false, g, "exhaustive scan of the finite group"};
    }
    return {true, std::nullopt, "commutes with every element (exhaustive scan)"};
  }
  std::string directed_certificate() const override { return is_trivial() ? "trivial group" : ""; }

  std::string format(const Element& x) const override {
    require(x);
    return names_[x.finite_label().id];
  }
  Element parse_prefix(std::string_view& s) const override {
    detail::skip_ws(s);
    if (!s.empty() && s.front() == 'e' && (s.size() == 1 || !std::isalnum(static_cast<unsigned char>(s[1])))) {
      s.remove_prefix(1);
      return zero();
    }
    // longest matching name
    std::optional<std::uint32_t> best;
    for (std::uint32_t i = 0; i < order(); ++i) {
      if (s.substr(0, names_[i].size()) == names_[i]) {
        if (!best || names_[i].size() > names_[*best].size()) best = i;
      }
    }
    if (!best) throw parse_error("unknown element of " + name_ + " at '" + std::string(s) + "'");
    s.remove_prefix(names_[*best].size());
    return element(*best);
  }

 private:
  std::string name_;
  std::vector<std::string> names_;
  std::vector<std::vector<std::uint32_t>> table_;
  std::vector<std::uint32_t> inverse_;
  bool abelian_ = true;
};

/// The lexicographic product G1 x_lex G2 on pairs with componentwise
/// addition; (x1,x2) is positive iff x1 > 0 in G1, or x1 = 0 and x2 >= 0.
///
/// Derived metadata: directed iff G1 is directed (both nontrivial); linear,
/// abelian and torsion-free iff both factors are; a lattice iff G1 is linear
/// and G2 is a lattice. A trivial factor makes the product isomorphic to the
/// other factor.
class LexGroup final : public PoGroup {
 public:
  LexGroup(GroupPtr left, GroupPtr right) : left_(std::move(left)), right_(std::move(right)) {}

  const PoGroup& left() const { return *left_; }
  const PoGroup& right() const { return *right_; }
  const GroupPtr& left_ptr() const { return left_; }
  const GroupPtr& right_ptr() const { return right_; }

  std::string descriptor() const override {
    return "lex(" + left_->descriptor() + "," + right_->descriptor() + ")";
  }
  Capabilities capabilities() const override {
    auto a = left_->capabilities();
    auto b = right_->capabilities();
    Capabilities c;
    c.abelian = a.abelian && b.abelian;
    c.linear = a.linear && b.linear;
    c.torsion_free = a.torsion_free && b.torsion_free;
    if (left_->is_trivial()) {
      c.directed = b.directed;
      c.lattice = b.lattice;
    } else if (right_->is_trivial()) {
      c.directed = a.directed;
      c.lattice = a.lattice;
    } else {
      c.directed = a.directed;
      c.lattice = a.linear && b.lattice;
    }
    c.declared = a.declared && b.declared;
    return c;
  }
  bool is_trivial() const override { return left_->is_trivial() && right_->is_trivial(); }

  bool belongs(const Element& x) const override {
    return x.is_pair() && left_->belongs(x.left()) && right_->belongs(x.right());
  }
  Element zero() const override { return Element::pair(left_->zero(), right_->zero()); }
  Element add(const Element& x, const Element& y) const override {
    require(x), require(y);
    return Element::pair(left_->add(x.left(), y.left()), right_->add(x.right(), y.right()));
  }
  Element neg(const Element& x) const override {
    require(x);
    return Element::pair(left_->neg(x.left()), right_->neg(x.right()));
  }
  bool in_cone(const Element& x) const override {
    require(x);
    if (x.left() == left_->zero()) return right_->in_cone(x.right());
    return left_->in_cone(x.left());
  }

  std::optional<Element> meet(const Element& x, const Element& y) const override {
    return extremum(x, y, true);
  }
  std::optional<Element> join(const Element& x, const Element& y) const override {
    return extremum(x, y, false);
  }

  /// Per the lex cone: d1 = lower bound of first coordinates; elements whose
  /// first coordinate equals d1 constrain the second coordinate, otherwise a
  /// strictly smaller first coordinate makes any second coordinate work.
  std::optional<Element> lower_bound(std::span<const Element> xs) const override {
    if (xs.empty()) return zero();
    std::vector<Element> firsts;
    for (const auto& x : xs) {
      require(x);
      firsts.push_back(x.left());
    }
    auto d1 = left_->lower_bound(firsts);
    if (!d1) return std::nullopt;
    std::vector<Element> tied;
    for (const auto& x : xs)
      if (x.left() == *d1) tied.push_back(x.right());
    if (tied.empty()) return Element::pair(*d1, right_->zero());
    if (auto d2 = right_->lower_bound(tied)) return Element::pair(*d1, *d2);
    if (auto p = left_->strictly_positive()) return Element::pair(left_diff(*left_, *d1, *p), right_->zero());
    return std::nullopt;
  }

  std::optional<Element> strictly_positive() const override {
    if (auto p = left_->strictly_positive()) return Element::pair(*p, right_->zero());
    if (auto p = right_->strictly_positive()) return Element::pair(left_->zero(), *p);
    return std::nullopt;
  }

  std::optional<std::vector<Element>> all_elements() const override {
    auto a = left_->all_elements();
    auto b = right_->all_elements();
    if (!a || !b) return std::nullopt;
    std::vector<Element> out;
    for (const auto& x : *a)
      for (const auto& y : *b) out.push_back(Element::pair(x, y));
    return out;
  }

  std::int64_t norm(const Element& x) const override {
    return std::max(left_->norm(x.left()), right_->norm(x.right()));
  }
  std::vector<Element> box(std::int64_t radius) const override {
    std::vector<Element> out;
    auto a = left_->box(radius);
    auto b = right_->box(radius);
    for (const auto& x : a)
      for (const auto& y : b) out.push_back(Element::pair(x, y));
    detail::sort_box(*this, out);
    return out;
  }

  /// With d = -lo + hi and x = lo + y: y = (y1,y2) lies in [0,d] iff y1 lies
  /// in [0,d1] and y2 >= 0 when y1 = 0, y2 <= d2 when y1 = d1. Slices with
  /// 0 < y1 < d1 are the whole of G2.
  std::optional<std::vector<Element>> interval(const Element& lo, const Element& hi,
                                               std::size_t budget) const override {
    require(lo), require(hi);
    auto d = right_diff(*this, lo, hi);
    if (!in_cone(d)) return std::vector<Element>{};
    const Element& d1 = d.left();
    const Element& d2 = d.right();
    auto firsts = left_->interval(left_->zero(), d1, budget);
    if (!firsts) return std::nullopt;
    std::vector<Element> out;
    std::optional<std::vector<Element>> all2;
    auto whole_right = [&]() -> const std::optional<std::vector<Element>>& {
      if (!all2) all2 = right_->all_elements();
      return all2;
    };
    Element z1 = left_->zero(), z2 = right_->zero();
    for (const auto& y1 : *firsts) {
      std::vector<Element> seconds;
      if (y1 == z1 && y1 == d1) {
        auto s = right_->interval(z2, d2, budget);
        if (!s) return std::nullopt;
        seconds = std::move(*s);
      } else {
        const auto& all = whole_right();
        if (!all) return std::nullopt;
        for (const auto& y2 : *all) {
          if (y1 == z1 && !right_->in_cone(y2)) continue;
          if (y1 == d1 && !leq(*right_, y2, d2)) continue;
          seconds.push_back(y2);
        }
      }
      for (auto& y2 : seconds) {
        out.push_back(add(lo, Element::pair(y1, y2)));
        if (out.size() > budget) throw budget_exceeded("interval exceeds enumeration budget");
      }
    }
    return out;
  }

  Analysis strong_unit_analysis(const Element& u) const override {
    require(u);
    if (left_->is_trivial()) return lift_right(right_->strong_unit_analysis(u.right()));
    if (right_->is_trivial()) return lift_left(left_->strong_unit_analysis(u.left()));
    if (u.left() == left_->zero()) {
      auto p = left_->strictly_positive();
      if (!p) return {false, std::nullopt, "first coordinate of u is 0"};
      return {false, Element::pair(*p, right_->zero()),
              "first coordinate of u is 0, so multiples of u never exceed a strictly positive first coordinate"};
    }
    auto a = left_->strong_unit_analysis(u.left());
    if (a.holds == true)
      return {true, std::nullopt, "u1 != 0 is a strong unit of the first factor: g1 < (n+1)u1 strictly"};
    return lift_left(std::move(a));
  }
  Analysis central_analysis(const Element& c) const override {
    require(c);
    auto a = left_->central_analysis(c.left());
    auto b = right_->central_analysis(c.right());
    if (a.holds == false)
      return {false, a.witness ? std::optional(Element::pair(*a.witness, right_->zero())) : std::nullopt, a.reason};
    if (b.holds == false)
      return {false, b.witness ? std::optional(Element::pair(left_->zero(), *b.witness)) : std::nullopt, b.reason};
    if (a.holds == true && b.holds == true) return {true, std::nullopt, "both coordinates central"};
    return {std::nullopt, std::nullopt, "centrality of a coordinate is undecided"};
  }
  std::string directed_certificate() const override {
    if (left_->is_trivial()) return right_->directed_certificate();
    if (right_->is_trivial()) return left_->directed_certificate();
    auto c = left_->directed_certificate();
    return c.empty() ? "" : "first factor directed and both factors nontrivial (" + c + ")";
  }

  std::string format(const Element& x) const override {
    require(x);
    return "(" + left_->format(x.left()) + "," + right_->format(x.right()) + ")";
  }
  Element parse_prefix(std::string_view& s) const override {
    detail::expect(s, '(');
    auto a = left_->parse_prefix(s);
    detail::expect(s, ',');
    auto b = right_->parse_prefix(s);
    detail::expect(s, ')');
    return Element::pair(std::move(a), std::move(b));
  }

 private:
  Analysis lift_left(Analysis a) const {
    if (a.witness) a.witness = Element::pair(*a.witness, right_->zero());
    return a;
  }
  Analysis lift_right(Analysis a) const {
    if (a.witness) a.witness = Element::pair(left_->zero(), *a.witness);
    return a;
  }

  std::optional<Element> extremum(const Element& x, const Element& y, bool lower) const {
    require(x), require(y);
    const auto& x1 = x.left();
    const auto& y1 = y.left();
    if (x1 == y1) {
      auto e = lower ? right_->meet(x.right(), y.right()) : right_->join(x.right(), y.right());
      if (!e) return std::nullopt;
      return Element::pair(x1, *e);
    }
    bool xy = leq(*left_, x1, y1), yx = leq(*left_, y1, x1);
    if (xy) return lower ? x : y;
    if (yx) return lower ? y : x;
    if (!right_->is_trivial()) return std::nullopt;
    auto e = lower ? left_->meet(x1, y1) : left_->join(x1, y1);
    if (!e) return std::nullopt;
    return Element::pair(*e, right_->zero());
  }

  GroupPtr left_;
  GroupPtr right_;
};

inline GroupPtr integers() { return std::make_shared<const IntegerGroup>(1); }
inline GroupPtr product(std::size_t k) { return std::make_shared<const IntegerGroup>(k); }
inline GroupPtr heisenberg() { return std::make_shared<const Heisenberg>(); }
inline GroupPtr lex(GroupPtr a, GroupPtr b) { return std::make_shared<const LexGroup>(std::move(a), std::move(b)); }

}  // namespace pea
