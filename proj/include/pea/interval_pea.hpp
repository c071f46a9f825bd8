#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "pea/finite_pea.hpp"
#include "pea/po_group.hpp"

namespace pea {

/// Gamma(G,u) = {g in G : 0 <= g <= u} with the group addition restricted
/// to sums that stay below u. Pointwise operations work on any interval;
/// anything that enumerates takes a budget.
class IntervalPEA {
 public:
  IntervalPEA(GroupPtr group, Element unit) : group_(std::move(group)), unit_(std::move(unit)) {
    group_->require(unit_);
    if (!group_->in_cone(unit_)) throw precondition_error("unit " + group_->format(unit_) + " is not positive");
  }

  const PoGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  const Element& unit() const { return unit_; }
  Element zero() const { return group_->zero(); }

  bool contains(const Element& x) const {
    return group_->belongs(x) && group_->in_cone(x) && leq(*group_, x, unit_);
  }

  std::optional<Element> sum(const Element& x, const Element& y) const {
    require(x), require(y);
    auto s = group_->add(x, y);
    if (!leq(*group_, s, unit_)) return std::nullopt;
    return s;
  }

  bool leq_in(const Element& x, const Element& y) const {
    require(x), require(y);
    return leq(*group_, x, y);
  }

  /// b \ a = b - a.
  Element left_minus(const Element& a, const Element& b) const {
    if (!leq_in(a, b)) throw precondition_error(group_->format(a) + " is not below " + group_->format(b));
    return left_diff(*group_, b, a);
  }
  /// a / b = -a + b.
  Element right_minus(const Element& a, const Element& b) const {
    if (!leq_in(a, b)) throw precondition_error(group_->format(a) + " is not below " + group_->format(b));
    return right_diff(*group_, a, b);
  }
  Element comp_left(const Element& a) const { return left_minus(a, unit_); }
  Element comp_right(const Element& a) const { return right_minus(a, unit_); }

  std::optional<Element> nfold(const Element& a, std::int64_t n) const {
    if (n < 0) throw precondition_error("nfold needs n >= 0");
    require(a);
    std::optional<Element> r = zero();
    for (std::int64_t i = 0; i < n && r; ++i) r = sum(*r, a);
    return r;
  }

  /// All elements, sorted; throws budget_exceeded for infinite or large
  /// intervals.
  std::vector<Element> elements(std::size_t budget) const {
    auto pts = group_->interval(zero(), unit_, budget);
    if (!pts) throw budget_exceeded("interval [0," + group_->format(unit_) + "] is not known to be finite");
    if (pts->size() > budget) throw budget_exceeded("interval exceeds enumeration budget");
    std::sort(pts->begin(), pts->end());
    return *pts;
  }

  void require(const Element& x) const {
    if (!contains(x)) throw precondition_error(group_->format(x) + " is not in the interval [0," + group_->format(unit_) + "]");
  }

 private:
  GroupPtr group_;
  Element unit_;
};

inline IntervalPEA gamma(GroupPtr g, Element u) { return IntervalPEA(std::move(g), std::move(u)); }

/// A materialized interval together with the map between ids and group
/// elements.
struct MaterializedPEA {
  FinitePEA table;
  std::vector<Element> elements;  ///< elements[id]
  std::map<Element, Id> index;

  Id id(const Element& x) const {
    auto it = index.find(x);
    if (it == index.end()) throw precondition_error("element is not in the materialized interval");
    return it->second;
  }
};

/// Explicit table of an interval algebra; ids are the formatted elements.
inline MaterializedPEA materialize(const IntervalPEA& e, std::size_t budget) {
  MaterializedPEA m;
  m.elements = e.elements(budget);
  const auto n = static_cast<Id>(m.elements.size());
  std::vector<std::string> names;
  for (Id i = 0; i < n; ++i) {
    names.push_back(e.group().format(m.elements[i]));
    m.index.emplace(m.elements[i], i);
  }
  std::vector<std::int32_t> t(static_cast<std::size_t>(n) * n, -1);
  for (Id i = 0; i < n; ++i)
    for (Id j = 0; j < n; ++j) {
      auto s = e.group().add(m.elements[i], m.elements[j]);
      if (auto it = m.index.find(s); it != m.index.end()) t[i * n + j] = static_cast<std::int32_t>(it->second);
    }
  m.table = FinitePEA::from_table(std::move(names), m.id(e.zero()), m.id(e.unit()), std::move(t));
  return m;
}

}  // namespace pea
