#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pea/error.hpp"

namespace pea {

/// A value in the carrier of a concrete group.
///
/// Elements are immutable tagged values: an integer vector, a finite-group
/// label, a unitriangular triple, or a pair used by lexicographic products.
/// Pairs share their children, so copies are cheap.
class Element {
 public:
  struct IntVec {
    std::vector<std::int64_t> v;
  };
  struct FiniteLabel {
    std::string group;
    std::uint32_t id = 0;
  };
  struct Unitriangular {
    std::int64_t a = 0, b = 0, c = 0;
  };
  struct LexPair {
    std::shared_ptr<const std::pair<Element, Element>> parts;
  };
  using Value = std::variant<IntVec, LexPair, FiniteLabel, Unitriangular>;

  Element() : value_(IntVec{}) {}

  static Element ints(std::vector<std::int64_t> v) { return Element(IntVec{std::move(v)}); }
  static Element ints(std::initializer_list<std::int64_t> v) {
    return Element(IntVec{std::vector<std::int64_t>(v)});
  }
  static Element integer(std::int64_t x) { return ints({x}); }
  static Element label(std::string group, std::uint32_t id) {
    return Element(FiniteLabel{std::move(group), id});
  }
  static Element unitriangular(std::int64_t a, std::int64_t b, std::int64_t c) {
    return Element(Unitriangular{a, b, c});
  }
  static Element pair(Element left, Element right) {
    return Element(
        LexPair{std::make_shared<const std::pair<Element, Element>>(std::move(left), std::move(right))});
  }

  const Value& value() const { return value_; }

  bool is_ints() const { return std::holds_alternative<IntVec>(value_); }
  bool is_pair() const { return std::holds_alternative<LexPair>(value_); }
  bool is_label() const { return std::holds_alternative<FiniteLabel>(value_); }
  bool is_unitriangular() const { return std::holds_alternative<Unitriangular>(value_); }

  const std::vector<std::int64_t>& coords() const {
    if (auto* p = std::get_if<IntVec>(&value_)) return p->v;
    throw carrier_mismatch("expected an integer-vector element");
  }
  const Element& left() const { return pair_parts().first; }
  const Element& right() const { return pair_parts().second; }
  const FiniteLabel& finite_label() const {
    if (auto* p = std::get_if<FiniteLabel>(&value_)) return *p;
    throw carrier_mismatch("expected a finite-group label");
  }
  const Unitriangular& triple() const {
    if (auto* p = std::get_if<Unitriangular>(&value_)) return *p;
    throw carrier_mismatch("expected a unitriangular triple");
  }

  friend bool operator==(const Element& x, const Element& y) { return compare(x, y) == 0; }
  friend std::strong_ordering operator<=>(const Element& x, const Element& y) {
    int c = compare(x, y);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  explicit Element(Value v) : value_(std::move(v)) {}

  const std::pair<Element, Element>& pair_parts() const {
    if (auto* p = std::get_if<LexPair>(&value_)) return *p->parts;
    throw carrier_mismatch("expected a lexicographic pair");
  }

  static int cmp3(auto a, auto b) { return a < b ? -1 : (b < a ? 1 : 0); }

  static int compare(const Element& x, const Element& y) {
    if (x.value_.index() != y.value_.index())
      return cmp3(x.value_.index(), y.value_.index());
    switch (x.value_.index()) {
      case 0: {
        const auto& a = std::get<IntVec>(x.value_).v;
        const auto& b = std::get<IntVec>(y.value_).v;
        if (a < b) return -1;
        return b < a ? 1 : 0;
      }
      case 1: {
        const auto& a = *std::get<LexPair>(x.value_).parts;
        const auto& b = *std::get<LexPair>(y.value_).parts;
        if (&a == &b) return 0;
        if (int c = compare(a.first, b.first)) return c;
        return compare(a.second, b.second);
      }
      case 2: {
        const auto& a = std::get<FiniteLabel>(x.value_);
        const auto& b = std::get<FiniteLabel>(y.value_);
        if (int c = a.group.compare(b.group)) return c < 0 ? -1 : 1;
        return cmp3(a.id, b.id);
      }
      default: {
        const auto& a = std::get<Unitriangular>(x.value_);
        const auto& b = std::get<Unitriangular>(y.value_);
        if (int c = cmp3(a.a, b.a)) return c;
        if (int c = cmp3(a.b, b.b)) return c;
        return cmp3(a.c, b.c);
      }
    }
  }

  Value value_;
};

}  // namespace pea
