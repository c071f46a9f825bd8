#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pea/element.hpp"
#include "pea/error.hpp"

namespace pea {

/// Declared order-theoretic metadata of a po-group.
///
/// For built-in groups every flag is backed by an analytic argument (see the
/// `certificate` strings and docs/groups.md); `declared == false` marks
/// user-defined cones whose flags are unknown rather than false.
struct Capabilities {
  bool abelian = false;
  bool directed = false;
  bool lattice = false;
  bool linear = false;
  bool torsion_free = false;
  bool declared = true;
};

/// Outcome of an analytic (non-search) question about a specific element.
struct Analysis {
  std::optional<bool> holds;       ///< nullopt: no analytic answer available
  std::optional<Element> witness;  ///< counterexample when `holds == false`
  std::string reason;
};

/// A computable partially ordered group.
///
/// The group operation is written additively even for non-abelian carriers.
/// The order is the one induced by the positive cone: x <= y iff -x + y is in
/// the cone. Implementations are immutable and safe to share across threads.
class PoGroup {
 public:
  virtual ~PoGroup() = default;

  virtual std::string descriptor() const = 0;
  virtual Capabilities capabilities() const = 0;

  /// True iff `x` has the shape of this group's carrier.
  virtual bool belongs(const Element& x) const = 0;
  virtual Element zero() const = 0;
  virtual Element add(const Element& x, const Element& y) const = 0;
  virtual Element neg(const Element& x) const = 0;
  virtual bool in_cone(const Element& x) const = 0;

  virtual bool is_trivial() const { return false; }

  // Lattice operations. Groups without them return nullopt.
  virtual std::optional<Element> meet(const Element&, const Element&) const { return std::nullopt; }
  virtual std::optional<Element> join(const Element&, const Element&) const { return std::nullopt; }

  /// Some d with d <= every listed element. Defaults to the iterated meet.
  virtual std::optional<Element> lower_bound(std::span<const Element> xs) const {
    if (xs.empty()) return zero();
    Element d = xs.front();
    for (const auto& x : xs.subspan(1)) {
      auto m = meet(d, x);
      if (!m) return std::nullopt;
      d = *m;
    }
    return d;
  }

  /// Some element p with 0 < p, if the group has one and knows it.
  virtual std::optional<Element> strictly_positive() const { return std::nullopt; }

  /// The whole carrier when it is finite.
  virtual std::optional<std::vector<Element>> all_elements() const { return std::nullopt; }

  /// Largest absolute integer coordinate; finite labels count as 0.
  virtual std::int64_t norm(const Element& x) const = 0;

  /// All elements of norm <= radius (the whole carrier for finite groups),
  /// ordered by norm and then by element order.
  virtual std::vector<Element> box(std::int64_t radius) const = 0;

  /// All x with lo <= x <= hi when that interval is known to be finite.
  /// Returns nullopt for infinite or undecided intervals and throws
  /// budget_exceeded when a finite interval has more than `budget` elements.
  virtual std::optional<std::vector<Element>> interval(const Element& lo, const Element& hi,
                                                       std::size_t budget) const = 0;

  /// Is `u` (already known positive) a strong unit?
  virtual Analysis strong_unit_analysis(const Element& u) const = 0;
  /// Is `c` in the center of the group?
  virtual Analysis central_analysis(const Element& c) const = 0;
  /// Text of the analytic argument for the `directed` flag.
  virtual std::string directed_certificate() const = 0;

  virtual std::string format(const Element& x) const = 0;
  /// Parses one element from the front of `s`, advancing it.
  virtual Element parse_prefix(std::string_view& s) const = 0;

  Element parse(std::string_view s) const {
    Element x = parse_prefix(s);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    if (!s.empty()) throw parse_error("trailing characters after element: '" + std::string(s) + "'");
    return x;
  }

  void require(const Element& x) const {
    if (!belongs(x)) throw carrier_mismatch("element does not belong to " + descriptor());
  }
};

using GroupPtr = std::shared_ptr<const PoGroup>;

/// x <= y in the cone-induced order.
inline bool leq(const PoGroup& g, const Element& x, const Element& y) {
  g.require(x);
  g.require(y);
  return g.in_cone(g.add(g.neg(x), y));
}

inline bool less(const PoGroup& g, const Element& x, const Element& y) {
  return x != y && leq(g, x, y);
}

/// -x + y, the unique d with x + d = y.
inline Element right_diff(const PoGroup& g, const Element& x, const Element& y) {
  return g.add(g.neg(x), y);
}

/// y - x, the unique d with d + x = y.
inline Element left_diff(const PoGroup& g, const Element& y, const Element& x) {
  return g.add(y, g.neg(x));
}

inline Element multiple(const PoGroup& g, const Element& x, std::int64_t n) {
  if (n < 0) return multiple(g, g.neg(x), -n);
  Element r = g.zero();
  for (std::int64_t i = 0; i < n; ++i) r = g.add(r, x);
  return r;
}

inline Element sum(const PoGroup& g, std::span<const Element> xs) {
  Element r = g.zero();
  for (const auto& x : xs) r = g.add(r, x);
  return r;
}

namespace detail {

inline void skip_ws(std::string_view& s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
}

inline void expect(std::string_view& s, char c) {
  skip_ws(s);
  if (s.empty() || s.front() != c)
    throw parse_error(std::string("expected '") + c + "' at '" + std::string(s) + "'");
  s.remove_prefix(1);
}

inline bool try_consume(std::string_view& s, char c) {
  skip_ws(s);
  if (!s.empty() && s.front() == c) {
    s.remove_prefix(1);
    return true;
  }
  return false;
}

inline std::int64_t parse_int(std::string_view& s) {
  skip_ws(s);
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  std::size_t digits = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == digits) throw parse_error("expected an integer at '" + std::string(s) + "'");
  std::string tok(s.substr(0, i));
  s.remove_prefix(i);
  try {
    return std::stoll(tok);
  } catch (const std::out_of_range&) {
    throw parse_error("integer out of range: " + tok);
  }
}

/// Sorts box elements by norm, then by element order.
inline void sort_box(const PoGroup& g, std::vector<Element>& xs) {
  std::vector<std::pair<std::int64_t, Element>> keyed;
  keyed.reserve(xs.size());
  for (auto& x : xs) keyed.emplace_back(g.norm(x), std::move(x));
  std::sort(keyed.begin(), keyed.end());
  xs.clear();
  for (auto& [n, x] : keyed) xs.push_back(std::move(x));
}

}  // namespace detail

}  // namespace pea
