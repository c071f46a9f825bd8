#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pea/finite_pea.hpp"
#include "pea/refinement.hpp"

namespace pea {

/// Verdict of one exhaustive property check. A failing verdict carries the
/// first instance (in id order) with no admissible witness: a_1..a_m then
/// b_1..b_n. For RIP that is a1,a2,b1,b2 with a_i <= b_j; for RDP0 it is
/// a, a/(b+c), b, c, the quadruple view of a <= b+c.
struct PropertyReport {
  std::string property;
  bool holds = true;
  std::vector<Id> witness;
  std::string reason;
  std::size_t instances = 0;
  /// Filled only when tables are requested: one refinement per instance.
  std::vector<std::pair<std::vector<Id>, RefinementMatrix<Id>>> tables;
};

/// Exhaustive Riesz-type checks on a finite PEA, with cached differences,
/// meets and com relations. The algebra must satisfy PE1-PE4.
class RieszAnalyzer {
 public:
  explicit RieszAnalyzer(const FinitePEA& e) : e_(e), n_(e.size()) {
    rminus_.assign(static_cast<std::size_t>(n_) * n_, -1);
    lminus_.assign(static_cast<std::size_t>(n_) * n_, -1);
    for (Id a = 0; a < n_; ++a)
      for (Id c = 0; c < n_; ++c)
        if (auto b = e.sum(a, c)) {
          rminus_[a * n_ + *b] = static_cast<std::int32_t>(c);
          lminus_[c * n_ + *b] = static_cast<std::int32_t>(a);
        }
    com_.assign(static_cast<std::size_t>(n_) * n_, -1);
  }

  const FinitePEA& algebra() const { return e_; }

  /// a / b: the c with a + c = b.
  std::optional<Id> rminus(Id a, Id b) const { return get(rminus_, a, b); }
  /// b \ a: the d with d + a = b.
  std::optional<Id> lminus(Id a, Id b) const { return get(lminus_, a, b); }

  /// Every x <= a commutes with every y <= b.
  bool com(Id a, Id b) const {
    auto& slot = com_[a * n_ + b];
    if (slot < 0) {
      slot = 1;
      for (Id x : e_.below(a)) {
        for (Id y : e_.below(b))
          if (e_.sum(x, y) != e_.sum(y, x)) {
            slot = 0;
            break;
          }
        if (!slot) break;
      }
      com_[b * n_ + a] = slot;
    }
    return slot == 1;
  }

  /// Greatest lower bound in the algebra's order, when it exists.
  std::optional<Id> meet(Id a, Id b) const {
    if (meet_.empty()) build_meets();
    return get(meet_, a, b);
  }

  /// All 2x2 refinements of a1 + a2 = b1 + b2, ordered by c11.
  std::vector<RefinementTable<Id>> tables(const Quadruple<Id>& q) const {
    std::vector<RefinementTable<Id>> out;
    for (Id c11 : e_.below(q.a1)) {
      auto c12 = rminus(c11, q.a1);
      auto c21 = rminus(c11, q.b1);
      if (!c12 || !c21) continue;
      auto c22 = rminus(*c21, q.a2);
      if (!c22 || e_.sum(*c12, *c22) != q.b2) continue;
      out.push_back({c11, *c12, *c21, *c22});
    }
    return out;
  }

  /// All quadruples a1 + a2 = b1 + b2 in id order.
  template <class F>
  void for_each_quadruple(F&& f) const {
    for (Id a1 = 0; a1 < n_; ++a1)
      for (Id a2 = 0; a2 < n_; ++a2) {
        auto s = e_.sum(a1, a2);
        if (!s) continue;
        for (Id b1 : e_.below(*s)) {
          Id b2 = *rminus(b1, *s);
          if (!f(Quadruple<Id>{a1, a2, b1, b2})) return;
        }
      }
  }

  PropertyReport rip() const {
    PropertyReport r;
    r.property = "rip";
    for (Id a1 = 0; a1 < n_; ++a1)
      for (Id a2 = 0; a2 < n_; ++a2)
        for (Id b1 = 0; b1 < n_; ++b1) {
          if (!e_.leq(a1, b1) || !e_.leq(a2, b1)) continue;
          for (Id b2 = 0; b2 < n_; ++b2) {
            if (!e_.leq(a1, b2) || !e_.leq(a2, b2)) continue;
            ++r.instances;
            bool found = false;
            for (Id c : e_.below(b1))
              if (e_.leq(a1, c) && e_.leq(a2, c) && e_.leq(c, b2)) {
                found = true;
                break;
              }
            if (!found) {
              r.holds = false;
              r.witness = {a1, a2, b1, b2};
              r.reason = "no c with a1,a2 <= c <= b1,b2";
              return r;
            }
          }
        }
    return r;
  }

  PropertyReport rdp0() const {
    PropertyReport r;
    r.property = "rdp0";
    for (Id b = 0; b < n_; ++b)
      for (Id c = 0; c < n_; ++c) {
        auto s = e_.sum(b, c);
        if (!s) continue;
        for (Id a : e_.below(*s)) {
          ++r.instances;
          bool found = false;
          for (Id b1 : e_.below(b)) {
            auto c1 = rminus(b1, a);
            if (c1 && e_.leq(*c1, c)) {
              found = true;
              break;
            }
          }
          if (!found) {
            r.holds = false;
            r.witness = {a, *rminus(a, *s), b, c};
            r.reason = "a <= b+c but a is no sum b1+c1 with b1 <= b, c1 <= c";
            return r;
          }
        }
      }
    return r;
  }

  PropertyReport rdp(bool keep_tables = false) const { return refine2("rdp", Side::none, keep_tables); }
  PropertyReport rdp1(bool keep_tables = false) const { return refine2("rdp1", Side::com, keep_tables); }
  PropertyReport rdp2(bool keep_tables = false) const { return refine2("rdp2", Side::disjoint, keep_tables); }

  /// (m,n)-RDP, or (m,n)-RDP1 when with_com: exhaustive over all equal-sum
  /// sequences. Throws budget_exceeded past `budget` instances.
  PropertyReport mn_rdp(std::size_t m, std::size_t n, bool with_com, std::size_t budget = 2000000,
                        bool keep_tables = false) const {
    if (m < 1 || n < 1) throw precondition_error("m, n must be >= 1");
    PropertyReport r;
    r.property = "(" + std::to_string(m) + "," + std::to_string(n) + ")-" + (with_com ? "rdp1" : "rdp");
    auto as = sequences_by_sum(m);
    auto bs = sequences_by_sum(n);
    for (const auto& [s, alist] : as) {
      auto it = bs.find(s);
      if (it == bs.end()) continue;
      for (const auto& a : alist)
        for (const auto& b : it->second) {
          if (++r.instances > budget)
            throw budget_exceeded("(m,n) instance count exceeds budget " + std::to_string(budget));
          RefinementMatrix<Id> mat{m, n, std::vector<Id>(m * n, 0)};
          if (!search_matrix(a, b, with_com, mat)) {
            r.holds = false;
            r.witness = a;
            r.witness.insert(r.witness.end(), b.begin(), b.end());
            r.reason = with_com ? "no refinement matrix satisfying the com conditions" : "no refinement matrix";
            return r;
          }
          if (keep_tables) {
            auto key = a;
            key.insert(key.end(), b.begin(), b.end());
            r.tables.emplace_back(std::move(key), mat);
          }
        }
    }
    return r;
  }

  /// Finds one refinement matrix for the given sequences (the first in
  /// row-major candidate order).
  std::optional<RefinementMatrix<Id>> find_matrix(const std::vector<Id>& a, const std::vector<Id>& b,
                                                  bool with_com) const {
    RefinementMatrix<Id> mat{a.size(), b.size(), std::vector<Id>(a.size() * b.size(), 0)};
    if (search_matrix(a, b, with_com, mat)) return mat;
    return std::nullopt;
  }

  bool matrix_com_ok(const RefinementMatrix<Id>& mat) const {
    FiniteAlgebra alg{&e_};
    for (std::size_t i = 0; i + 1 < mat.m; ++i)
      for (std::size_t j = 0; j + 1 < mat.n; ++j) {
        auto [x, y] = com_tails(alg, mat, i, j);
        if (!com(x, y)) return false;
      }
    return true;
  }

 private:
  enum class Side { none, com, disjoint };

  static std::optional<Id> get(const std::vector<std::int32_t>& t, Id a, Id b, Id n) {
    auto v = t[a * n + b];
    if (v < 0) return std::nullopt;
    return static_cast<Id>(v);
  }
  std::optional<Id> get(const std::vector<std::int32_t>& t, Id a, Id b) const { return get(t, a, b, n_); }

  void build_meets() const {
    meet_.assign(static_cast<std::size_t>(n_) * n_, -1);
    for (Id a = 0; a < n_; ++a)
      for (Id b = 0; b < n_; ++b) {
        std::vector<Id> lower;
        for (Id x : e_.below(a))
          if (e_.leq(x, b)) lower.push_back(x);
        for (Id m : lower) {
          bool greatest = true;
          for (Id x : lower) greatest = greatest && e_.leq(x, m);
          if (greatest) meet_[a * n_ + b] = static_cast<std::int32_t>(m);
        }
      }
  }

  PropertyReport refine2(const char* name, Side side, bool keep) const {
    PropertyReport r;
    r.property = name;
    for_each_quadruple([&](const Quadruple<Id>& q) {
      ++r.instances;
      auto ts = tables(q);
      bool meet_missing = false;
      const RefinementTable<Id>* ok = nullptr;
      for (const auto& t : ts) {
        if (side == Side::com && !com(t.c12, t.c21)) continue;
        if (side == Side::disjoint) {
          auto m = meet(t.c12, t.c21);
          if (!m) meet_missing = true;
          if (m != e_.zero()) continue;
        }
        ok = &t;
        break;
      }
      if (!ok) {
        r.holds = false;
        r.witness = {q.a1, q.a2, q.b1, q.b2};
        if (ts.empty()) r.reason = "no refinement table";
        else if (side == Side::com) r.reason = "no refinement table with c12 com c21";
        else r.reason = meet_missing ? "meet undefined" : "no refinement table with c12 meet c21 = 0";
        return false;
      }
      if (keep) r.tables.emplace_back(std::vector<Id>{q.a1, q.a2, q.b1, q.b2}, as_matrix(*ok));
      return true;
    });
    return r;
  }

  /// Sequences of length k (left-to-right sum defined), keyed by their sum.
  std::map<Id, std::vector<std::vector<Id>>> sequences_by_sum(std::size_t k) const {
    std::map<Id, std::vector<std::vector<Id>>> out;
    std::vector<Id> cur;
    auto rec = [&](auto&& self, Id acc) -> void {
      if (cur.size() == k) {
        out[acc].push_back(cur);
        return;
      }
      for (Id x = 0; x < n_; ++x)
        if (auto s = e_.sum(acc, x)) {
          cur.push_back(x);
          self(self, *s);
          cur.pop_back();
        }
    };
    rec(rec, e_.zero());
    return out;
  }

  bool search_matrix(const std::vector<Id>& a, const std::vector<Id>& b, bool with_com,
                     RefinementMatrix<Id>& mat) const {
    const std::size_t m = a.size(), n = b.size();
    std::vector<Id> row(m, e_.zero()), col(n, e_.zero());
    auto rec = [&](auto&& self, std::size_t cell) -> bool {
      if (cell == m * n) return !with_com || matrix_com_ok(mat);
      std::size_t i = cell / n, j = cell % n;
      auto place = [&](Id x) -> bool {
        auto rs = e_.sum(row[i], x);
        auto cs = e_.sum(col[j], x);
        if (!rs || !cs) return false;
        if (j + 1 == n ? *rs != a[i] : !e_.leq(*rs, a[i])) return false;
        if (i + 1 == m ? *cs != b[j] : !e_.leq(*cs, b[j])) return false;
        Id r0 = row[i], c0 = col[j];
        row[i] = *rs, col[j] = *cs;
        mat.at(i, j) = x;
        bool done = self(self, cell + 1);
        row[i] = r0, col[j] = c0;
        return done;
      };
      if (j + 1 == n) {
        auto x = rminus(row[i], a[i]);
        return x && place(*x);
      }
      for (Id x = 0; x < n_; ++x)
        if (place(x)) return true;
      return false;
    };
    return rec(rec, 0);
  }

  const FinitePEA& e_;
  Id n_;
  std::vector<std::int32_t> rminus_, lminus_;
  mutable std::vector<std::int8_t> com_;
  mutable std::vector<std::int32_t> meet_;
};

inline bool com(const FinitePEA& e, Id a, Id b) { return RieszAnalyzer(e).com(a, b); }
inline PropertyReport check_rip(const FinitePEA& e) { return RieszAnalyzer(e).rip(); }
inline PropertyReport check_rdp0(const FinitePEA& e) { return RieszAnalyzer(e).rdp0(); }
inline PropertyReport check_rdp(const FinitePEA& e) { return RieszAnalyzer(e).rdp(); }
inline PropertyReport check_rdp1(const FinitePEA& e) { return RieszAnalyzer(e).rdp1(); }
inline PropertyReport check_rdp2(const FinitePEA& e) { return RieszAnalyzer(e).rdp2(); }
inline PropertyReport check_mn_rdp(const FinitePEA& e, std::size_t m, std::size_t n, bool with_com,
                                   std::size_t budget = 2000000) {
  return RieszAnalyzer(e).mn_rdp(m, n, with_com, budget);
}

/// Independent re-verification of a 2x2 failure witness: scans every
/// 4-tuple of elements (not only those derived from c11) for a table.
inline bool no_table_exists(const FinitePEA& e, const Quadruple<Id>& q) {
  FiniteAlgebra alg{&e};
  for (Id c11 = 0; c11 < e.size(); ++c11)
    for (Id c12 = 0; c12 < e.size(); ++c12)
      for (Id c21 = 0; c21 < e.size(); ++c21)
        for (Id c22 = 0; c22 < e.size(); ++c22)
          if (!validate_table(alg, q, RefinementTable<Id>{c11, c12, c21, c22})) return false;
  return true;
}

/// The property vector reported by `check` and `enumerate`.
inline const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names{"rip", "rdp0", "rdp", "rdp1", "rdp2"};
  return names;
}

inline PropertyReport check_property(const RieszAnalyzer& an, const std::string& name) {
  if (name == "rip") return an.rip();
  if (name == "rdp0") return an.rdp0();
  if (name == "rdp") return an.rdp();
  if (name == "rdp1") return an.rdp1();
  if (name == "rdp2") return an.rdp2();
  throw parse_error("unknown property '" + name + "' (expected rip, rdp0, rdp, rdp1, rdp2)");
}

}  // namespace pea
