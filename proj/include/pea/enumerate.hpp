#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "pea/finite_pea.hpp"
#include "pea/riesz.hpp"

namespace pea {

namespace detail {

/// Element names of enumerated algebras: 0, a, b, ..., 1.
inline std::vector<std::string> catalog_names(Id n) {
  std::vector<std::string> names{"0"};
  for (Id i = 1; i + 1 < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i - 1)));
  names.push_back("1");
  return names;
}

/// Table with middle elements relabelled by perm (perm[old] = new).
inline std::vector<std::int32_t> relabel(const std::vector<std::int32_t>& t, const std::vector<Id>& perm, Id n) {
  std::vector<std::int32_t> out(t.size(), -1);
  for (Id x = 0; x < n; ++x)
    for (Id y = 0; y < n; ++y) {
      auto v = t[x * n + y];
      out[perm[x] * n + perm[y]] = v < 0 ? -1 : static_cast<std::int32_t>(perm[v]);
    }
  return out;
}

/// Lexicographically least relabelling over permutations fixing 0 and 1.
inline std::vector<std::int32_t> canonical_table(const std::vector<std::int32_t>& t, Id n) {
  std::vector<Id> mid(n - 2);
  std::iota(mid.begin(), mid.end(), Id{1});
  std::vector<std::int32_t> best;
  do {
    std::vector<Id> perm(n);
    perm[0] = 0;
    perm[n - 1] = n - 1;
    for (Id i = 0; i + 2 < n; ++i) perm[i + 1] = mid[i];
    auto r = relabel(t, perm, n);
    if (best.empty() || r < best) best = std::move(r);
  } while (std::next_permutation(mid.begin(), mid.end()));
  return best;
}

class Enumerator {
 public:
  explicit Enumerator(Id n) : n_(n), t_(static_cast<std::size_t>(n) * n, kUnknown) {
    const Id one = n - 1;
    for (Id x = 0; x < n; ++x) {
      t_[0 * n + x] = static_cast<std::int32_t>(x);
      t_[x * n + 0] = static_cast<std::int32_t>(x);
    }
    for (Id x = 1; x < n; ++x) {
      t_[one * n + x] = -1;
      t_[x * n + one] = -1;
    }
    for (Id x = 1; x < one; ++x)
      for (Id y = 1; y < one; ++y) cells_.push_back(x * n + y);
  }

  std::vector<std::vector<std::int32_t>> run() {
    rec(0);
    return {found_.begin(), found_.end()};
  }

 private:
  static constexpr std::int32_t kUnknown = -2;

  // Cancellation: a value may appear at most once per row and per column.
  bool injective(Id x, Id y, std::int32_t v) const {
    for (Id k = 0; k < n_; ++k) {
      if (k != y && t_[x * n_ + k] == v) return false;
      if (k != x && t_[k * n_ + y] == v) return false;
    }
    return true;
  }

  // PE1 on every triple whose outcome is already determined.
  bool associative_so_far() const {
    for (Id a = 0; a < n_; ++a)
      for (Id b = 0; b < n_; ++b) {
        auto ab = t_[a * n_ + b];
        for (Id c = 0; c < n_; ++c) {
          auto bc = t_[b * n_ + c];
          std::int32_t l = ab == kUnknown ? kUnknown : ab < 0 ? -1 : t_[ab * n_ + c];
          std::int32_t r = bc == kUnknown ? kUnknown : bc < 0 ? -1 : t_[a * n_ + bc];
          if (l == kUnknown || r == kUnknown) continue;
          if (l != r) return false;
        }
      }
    return true;
  }

  void rec(std::size_t k) {
    if (k == cells_.size()) {
      auto e = FinitePEA::from_table(catalog_names(n_), 0, n_ - 1, t_);
      if (check_axioms(e).valid) found_.insert(canonical_table(t_, n_));
      return;
    }
    auto cell = cells_[k];
    Id x = static_cast<Id>(cell / n_), y = static_cast<Id>(cell % n_);
    for (std::int32_t v = -1; v < static_cast<std::int32_t>(n_); ++v) {
      // x + y is never 0, x or y for nonzero x, y
      if (v == 0 || v == static_cast<std::int32_t>(x) || v == static_cast<std::int32_t>(y)) continue;
      if (v >= 0 && !injective(x, y, v)) continue;
      t_[cell] = v;
      if (associative_so_far()) rec(k + 1);
    }
    t_[cell] = kUnknown;
  }

  Id n_;
  std::vector<std::int32_t> t_;
  std::vector<std::size_t> cells_;
  std::set<std::vector<std::int32_t>> found_;
};

}  // namespace detail

/// All PEAs with 2..max_size elements up to isomorphism, as canonical
/// tables (ids: 0 = zero, last = unit), ordered by size then table. The
/// one-element algebra (0 = 1) is excluded.
inline std::vector<FinitePEA> enumerate_peas(Id max_size) {
  if (max_size > 6) throw budget_exceeded("enumerate_peas supports max_size <= 6");
  std::vector<FinitePEA> out;
  for (Id n = 2; n <= max_size; ++n)
    for (auto& t : detail::Enumerator(n).run())
      out.push_back(FinitePEA::from_table(detail::catalog_names(n), 0, n - 1, std::move(t)));
  return out;
}

/// Property profile of one algebra plus every violated implication of
/// RDP2 => RDP1 => RDP => RDP0 <=> RIP.
struct AuditReport {
  std::vector<PropertyReport> properties;  ///< rip, rdp0, rdp, rdp1, rdp2
  std::vector<std::string> violations;

  bool holds(const std::string& p) const {
    for (const auto& r : properties)
      if (r.property == p) return r.holds;
    throw precondition_error("property not in audit: " + p);
  }
  bool consistent() const { return violations.empty(); }
};

inline AuditReport implication_audit(const FinitePEA& e) {
  RieszAnalyzer an(e);
  AuditReport a;
  for (const auto& p : property_names()) a.properties.push_back(check_property(an, p));
  auto h = [&](const char* p) { return a.holds(p); };
  if (h("rdp2") && !h("rdp1")) a.violations.push_back("rdp2 => rdp1");
  if (h("rdp1") && !h("rdp")) a.violations.push_back("rdp1 => rdp");
  if (h("rdp") && !h("rdp0")) a.violations.push_back("rdp => rdp0");
  if (h("rdp0") && !h("rip")) a.violations.push_back("rdp0 => rip");
  if (h("rip") && !h("rdp0")) a.violations.push_back("rip => rdp0");
  return a;
}

}  // namespace pea
