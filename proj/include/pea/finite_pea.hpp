#pragma once

#include <cstdint>
#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "pea/error.hpp"

namespace pea {

using Id = std::uint32_t;

/// A finite partial algebra (E;+,0,1) given by an explicit table.
///
/// Elements are addressed by dense indices; each also carries a string name
/// used in files and witnesses. The derived order a <= b iff a + c = b for
/// some c is computed once at construction.
class FinitePEA {
 public:
  struct Triple {
    std::string x, y, z;
  };

  FinitePEA() = default;

  /// Builds from named triples x + y = z. Throws parse_error on unknown or
  /// duplicate names and on conflicting triples.
  static FinitePEA from_triples(std::vector<std::string> names, const std::string& zero, const std::string& unit,
                                const std::vector<Triple>& adds) {
    FinitePEA e;
    e.names_ = std::move(names);
    if (e.names_.empty()) throw parse_error("empty element list");
    for (Id i = 0; i < e.names_.size(); ++i) {
      if (e.names_[i].empty()) throw parse_error("empty element id");
      if (!e.index_.emplace(e.names_[i], i).second) throw parse_error("duplicate element id '" + e.names_[i] + "'");
    }
    e.zero_ = e.lookup(zero);
    e.unit_ = e.lookup(unit);
    const auto n = e.size();
    e.table_.assign(static_cast<std::size_t>(n) * n, -1);
    for (const auto& t : adds) {
      Id x = e.lookup(t.x), y = e.lookup(t.y), z = e.lookup(t.z);
      auto& cell = e.table_[x * n + y];
      if (cell >= 0 && static_cast<Id>(cell) != z)
        throw parse_error("conflicting sums for " + t.x + " + " + t.y + ": " + e.names_[cell] + " and " + t.z);
      cell = static_cast<std::int32_t>(z);
    }
    e.build_order();
    return e;
  }

  /// Builds from a dense table (-1 = undefined). Ids index `names`.
  static FinitePEA from_table(std::vector<std::string> names, Id zero, Id unit, std::vector<std::int32_t> table) {
    FinitePEA e;
    e.names_ = std::move(names);
    const auto n = e.size();
    if (table.size() != static_cast<std::size_t>(n) * n) throw precondition_error("table size mismatch");
    if (zero >= n || unit >= n) throw precondition_error("zero/unit out of range");
    for (auto v : table)
      if (v < -1 || v >= static_cast<std::int32_t>(n)) throw precondition_error("dangling id in table");
    for (Id i = 0; i < n; ++i) e.index_.emplace(e.names_[i], i);
    e.zero_ = zero;
    e.unit_ = unit;
    e.table_ = std::move(table);
    e.build_order();
    return e;
  }

  Id size() const { return static_cast<Id>(names_.size()); }
  Id zero() const { return zero_; }
  Id unit() const { return unit_; }
  const std::string& name(Id a) const { return names_.at(a); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::int32_t>& table() const { return table_; }

  Id id(const std::string& name) const { return lookup(name); }
  std::optional<Id> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// a + b when defined.
  std::optional<Id> sum(Id a, Id b) const {
    auto v = table_[a * size() + b];
    if (v < 0) return std::nullopt;
    return static_cast<Id>(v);
  }
  bool defined(Id a, Id b) const { return table_[a * size() + b] >= 0; }

  /// a <= b iff a + c = b for some c.
  bool leq(Id a, Id b) const { return order_[a * size() + b]; }

  /// Every x with x <= a.
  const std::vector<Id>& below(Id a) const { return below_[a]; }

  /// A copy with the sum x + y removed (or overwritten with z).
  FinitePEA with_entry(Id x, Id y, std::optional<Id> z) const {
    auto t = table_;
    t[x * size() + y] = z ? static_cast<std::int32_t>(*z) : -1;
    return from_table(names_, zero_, unit_, std::move(t));
  }

 private:
  Id lookup(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw parse_error("unknown element id '" + name + "'");
    return it->second;
  }

  void build_order() {
    const auto n = size();
    order_.assign(static_cast<std::size_t>(n) * n, 0);
    for (Id a = 0; a < n; ++a)
      for (Id c = 0; c < n; ++c)
        if (auto b = sum(a, c)) order_[a * n + *b] = 1;
    below_.assign(n, {});
    for (Id b = 0; b < n; ++b)
      for (Id a = 0; a < n; ++a)
        if (order_[a * n + b]) below_[b].push_back(a);
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, Id> index_;
  Id zero_ = 0, unit_ = 0;
  std::vector<std::int32_t> table_;
  std::vector<char> order_;
  std::vector<std::vector<Id>> below_;
};

/// Outcome of check_axioms. On failure, `axiom` is PE1..PE4 and `witness`
/// the lexicographically first offending tuple.
struct AxiomReport {
  bool valid = true;
  std::string axiom;
  std::vector<Id> witness;
  std::string detail;
};

/// PE1-PE4, checked in that order over all pairs and triples.
inline AxiomReport check_axioms(const FinitePEA& e) {
  const Id n = e.size();
  auto nm = [&](Id a) { return e.name(a); };
  for (Id a = 0; a < n; ++a)
    for (Id b = 0; b < n; ++b)
      for (Id c = 0; c < n; ++c) {
        std::optional<Id> left, right;
        if (auto ab = e.sum(a, b)) left = e.sum(*ab, c);
        if (auto bc = e.sum(b, c)) right = e.sum(a, *bc);
        if (left.has_value() != right.has_value())
          return {false, "PE1", {a, b, c},
                  "(" + nm(a) + "+" + nm(b) + ")+" + nm(c) + (left ? " exists" : " is undefined") + " but " + nm(a) +
                      "+(" + nm(b) + "+" + nm(c) + ")" + (right ? " exists" : " is undefined")};
        if (left && *left != *right)
          return {false, "PE1", {a, b, c}, "associativity fails: " + nm(*left) + " != " + nm(*right)};
      }
  for (Id a = 0; a < n; ++a) {
    int ds = 0, es = 0;
    for (Id x = 0; x < n; ++x) {
      if (e.sum(x, a) == e.unit()) ++ds;
      if (e.sum(a, x) == e.unit()) ++es;
    }
    if (ds != 1 || es != 1)
      return {false, "PE2", {a},
              nm(a) + " has " + std::to_string(ds) + " left and " + std::to_string(es) + " right complements"};
  }
  for (Id a = 0; a < n; ++a)
    for (Id b = 0; b < n; ++b) {
      auto s = e.sum(a, b);
      if (!s) continue;
      bool d = false, f = false;
      for (Id x = 0; x < n; ++x) {
        d = d || e.sum(x, a) == s;
        f = f || e.sum(b, x) == s;
      }
      if (!d || !f)
        return {false, "PE3", {a, b},
                nm(a) + "+" + nm(b) + " = " + nm(*s) + (d ? "" : " is not d+" + nm(a)) + (f ? "" : " is not " + nm(b) + "+e")};
    }
  for (Id a = 0; a < n; ++a)
    if (a != e.zero() && (e.defined(a, e.unit()) || e.defined(e.unit(), a)))
      return {false, "PE4", {a}, nm(a) + " + 1 or 1 + " + nm(a) + " exists for a nonzero element"};
  return {};
}

inline void require_valid(const FinitePEA& e) {
  auto r = check_axioms(e);
  if (!r.valid) throw precondition_error("not a pseudo effect algebra: " + r.axiom + " fails (" + r.detail + ")");
}

/// b \ a: the unique d with d + a = b.
inline Id left_minus(const FinitePEA& e, Id a, Id b) {
  for (Id d = 0; d < e.size(); ++d)
    if (e.sum(d, a) == b) return d;
  throw precondition_error(e.name(a) + " is not below " + e.name(b));
}

/// a / b: the unique c with a + c = b.
inline Id right_minus(const FinitePEA& e, Id a, Id b) {
  for (Id c = 0; c < e.size(); ++c)
    if (e.sum(a, c) == b) return c;
  throw precondition_error(e.name(a) + " is not below " + e.name(b));
}

/// a^- = 1 \ a.
inline Id comp_left(const FinitePEA& e, Id a) { return left_minus(e, a, e.unit()); }
/// a~ = a / 1.
inline Id comp_right(const FinitePEA& e, Id a) { return right_minus(e, a, e.unit()); }

/// n a = (n-1)a + a, with 0a = 0.
inline std::optional<Id> nfold(const FinitePEA& e, Id a, std::int64_t n) {
  if (n < 0) throw precondition_error("nfold needs n >= 0");
  std::optional<Id> r = e.zero();
  for (std::int64_t i = 0; i < n && r; ++i) r = e.sum(*r, a);
  return r;
}

/// First pair (a,b) whose sums disagree with (b,a); nullopt if commutative.
inline std::optional<std::pair<Id, Id>> commutativity_witness(const FinitePEA& e) {
  for (Id a = 0; a < e.size(); ++a)
    for (Id b = a + 1; b < e.size(); ++b)
      if (e.sum(a, b) != e.sum(b, a)) return std::pair{a, b};
  return std::nullopt;
}

inline bool is_commutative(const FinitePEA& e) { return !commutativity_witness(e); }

/// Subsets as bitmasks (bit i = element i).
using IdSet = std::uint64_t;

inline std::vector<Id> members(IdSet s) {
  std::vector<Id> out;
  for (Id i = 0; s; ++i, s >>= 1)
    if (s & 1) out.push_back(i);
  return out;
}

namespace detail {

/// Smallest downward-closed, sum-closed superset of s (may be all of E).
inline IdSet ideal_closure(const FinitePEA& e, IdSet s) {
  const Id n = e.size();
  while (true) {
    IdSet t = s;
    for (Id a = 0; a < n; ++a) {
      if (!(t >> a & 1)) continue;
      for (Id x : e.below(a)) t |= IdSet{1} << x;
      for (Id b = 0; b < n; ++b)
        if (t >> b & 1)
          if (auto c = e.sum(a, b)) t |= IdSet{1} << *c;
    }
    if (t == s) return s;
    s = t;
  }
}

}  // namespace detail

/// All proper ideals (nonempty, downward closed, closed under defined sums),
/// sorted by bitmask. Enumerates the closure system with NextClosure.
inline std::vector<IdSet> ideals(const FinitePEA& e) {
  const Id n = e.size();
  if (n > 63) throw budget_exceeded("ideal enumeration supports at most 63 elements");
  const IdSet full = (IdSet{1} << n) - 1;
  std::vector<IdSet> out;
  IdSet a = 0;  // the empty set is closed; nonempty closed sets contain 0
  while (true) {
    if (a != 0 && a != full) out.push_back(a);
    bool advanced = false;
    for (int i = static_cast<int>(n) - 1; i >= 0 && !advanced; --i) {
      IdSet bit = IdSet{1} << i;
      if (a & bit) {
        a &= ~bit;
        continue;
      }
      IdSet b = detail::ideal_closure(e, a | bit);
      if (((b & ~a) & (bit - 1)) == 0) {
        a = b;
        advanced = true;
      }
    }
    if (!advanced) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<IdSet> maximal_ideals(const FinitePEA& e) {
  auto all = ideals(e);
  std::vector<IdSet> out;
  for (auto i : all) {
    bool maximal = true;
    for (auto j : all)
      if (j != i && (i & j) == i) maximal = false;
    if (maximal) out.push_back(i);
  }
  return out;
}

/// Outcome of is_homomorphism: `pair` is the first defined sum a+b whose
/// image fails, or empty when the failure is h(1) != 1.
struct HomomorphismReport {
  bool ok = true;
  std::optional<std::pair<Id, Id>> pair;
  std::string detail;
};

/// h(1) = 1, and a+b defined implies h(a)+h(b) defined and equal to h(a+b).
inline HomomorphismReport is_homomorphism(const std::vector<Id>& f, const FinitePEA& e, const FinitePEA& t) {
  if (f.size() != e.size()) throw precondition_error("map must be total on the source");
  for (auto v : f)
    if (v >= t.size()) throw precondition_error("map target out of range");
  if (f[e.unit()] != t.unit()) return {false, std::nullopt, "h(1) = " + t.name(f[e.unit()]) + " is not 1"};
  for (Id a = 0; a < e.size(); ++a)
    for (Id b = 0; b < e.size(); ++b) {
      auto s = e.sum(a, b);
      if (!s) continue;
      auto img = t.sum(f[a], f[b]);
      if (!img)
        return {false, std::pair{a, b}, "h(" + e.name(a) + ")+h(" + e.name(b) + ") is undefined"};
      if (*img != f[*s])
        return {false, std::pair{a, b},
                "h(" + e.name(a) + ")+h(" + e.name(b) + ") = " + t.name(*img) + " but h(" + e.name(*s) +
                    ") = " + t.name(f[*s])};
    }
  return {};
}

/// Reads the line-oriented `pea v1` format. Blank lines and lines starting
/// with '#' are ignored.
inline FinitePEA parse_pea(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool header = false;
  std::optional<std::vector<std::string>> elements;
  std::optional<std::string> zero, unit;
  std::vector<FinitePEA::Triple> adds;
  std::map<std::pair<std::string, std::string>, std::string> seen;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    auto where = " (line " + std::to_string(lineno) + ")";
    if (!header) {
      if (line.substr(first) != "pea v1") throw parse_error("expected header 'pea v1'" + where);
      header = true;
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos) throw parse_error("expected 'key: value'" + where);
    auto key = line.substr(first, colon - first);
    std::istringstream rest(line.substr(colon + 1));
    std::vector<std::string> toks;
    for (std::string t; rest >> t;) toks.push_back(t);
    if (key == "elements") {
      if (elements) throw parse_error("duplicate elements line" + where);
      elements = toks;
    } else if (key == "zero" || key == "unit") {
      if (toks.size() != 1) throw parse_error("expected one id after " + key + where);
      auto& slot = key == "zero" ? zero : unit;
      if (slot) throw parse_error("duplicate " + key + " line" + where);
      slot = toks[0];
    } else if (key == "add") {
      if (toks.size() != 3) throw parse_error("expected 'add: x y z'" + where);
      auto [it, fresh] = seen.emplace(std::pair{toks[0], toks[1]}, toks[2]);
      if (!fresh && it->second != toks[2])
        throw parse_error("conflicting triple " + toks[0] + " + " + toks[1] + where);
      if (fresh) adds.push_back({toks[0], toks[1], toks[2]});
    } else {
      throw parse_error("unknown key '" + key + "'" + where);
    }
  }
  if (!header) throw parse_error("empty input: expected 'pea v1'");
  if (!elements) throw parse_error("missing elements line");
  if (!zero) throw parse_error("missing zero line");
  if (!unit) throw parse_error("missing unit line");
  return FinitePEA::from_triples(*elements, *zero, *unit, adds);
}

inline std::string write_pea(const FinitePEA& e) {
  std::string out = "pea v1\nelements:";
  for (const auto& n : e.names()) out += " " + n;
  out += "\nzero: " + e.name(e.zero()) + "\nunit: " + e.name(e.unit()) + "\n";
  for (Id a = 0; a < e.size(); ++a)
    for (Id b = 0; b < e.size(); ++b)
      if (auto c = e.sum(a, b)) out += "add: " + e.name(a) + " " + e.name(b) + " " + e.name(*c) + "\n";
  return out;
}

/// Gamma(Z,n): the chain 0 < 1 < ... < n with i + j defined iff i + j <= n.
inline FinitePEA chain(Id n) {
  std::vector<std::string> names;
  for (Id i = 0; i <= n; ++i) names.push_back(std::to_string(i));
  std::vector<std::int32_t> t((n + 1) * (n + 1), -1);
  for (Id i = 0; i <= n; ++i)
    for (Id j = 0; i + j <= n; ++j) t[i * (n + 1) + j] = static_cast<std::int32_t>(i + j);
  return FinitePEA::from_table(std::move(names), 0, n, std::move(t));
}

}  // namespace pea
