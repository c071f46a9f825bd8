#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pea/finite_pea.hpp"
#include "pea/groups.hpp"
#include "pea/interval_pea.hpp"
#include "pea/lift.hpp"
#include "pea/probes.hpp"

namespace pea {

/// Slices E_0..E_n; `maximal_ideal` is E_0 as a bitmask.
struct NDecomposition {
  int n = 0;
  std::vector<std::vector<Id>> slices;
  IdSet maximal_ideal = 0;

  std::vector<std::size_t> sizes() const {
    std::vector<std::size_t> out;
    for (const auto& s : slices) out.push_back(s.size());
    return out;
  }
  int slice_of(Id x) const {
    for (std::size_t i = 0; i < slices.size(); ++i)
      if (std::find(slices[i].begin(), slices[i].end(), x) != slices[i].end()) return static_cast<int>(i);
    return -1;
  }
};

/// Checks that the slices partition E, that E_i + E_j is defined and lands
/// in one slice whenever i + j < n, and that E_0 is the unique maximal
/// ideal. Returns the first failure.
inline std::optional<std::string> validate_decomposition(const FinitePEA& e, const NDecomposition& d) {
  if (d.n < 1 || d.slices.size() != static_cast<std::size_t>(d.n) + 1) return "expected n+1 slices with n >= 1";
  std::vector<int> where(e.size(), -1);
  for (std::size_t i = 0; i < d.slices.size(); ++i)
    for (Id x : d.slices[i]) {
      if (x >= e.size()) return "slice element out of range";
      if (where[x] >= 0) return "element " + e.name(x) + " lies in two slices";
      where[x] = static_cast<int>(i);
    }
  for (Id x = 0; x < e.size(); ++x)
    if (where[x] < 0) return "element " + e.name(x) + " lies in no slice";
  for (int i = 0; i <= d.n; ++i)
    for (int j = 0; i + j < d.n; ++j) {
      std::set<int> hit;
      for (Id x : d.slices[i])
        for (Id y : d.slices[j]) {
          auto s = e.sum(x, y);
          if (!s) return e.name(x) + " + " + e.name(y) + " undefined though " + std::to_string(i) + "+" +
                         std::to_string(j) + " < n";
          hit.insert(where[*s]);
        }
      if (hit.size() > 1)
        return "E_" + std::to_string(i) + " + E_" + std::to_string(j) + " meets more than one slice";
    }
  auto maxi = maximal_ideals(e);
  if (maxi.size() != 1) return std::to_string(maxi.size()) + " maximal ideals";
  IdSet e0 = 0;
  for (Id x : d.slices[0]) e0 |= IdSet{1} << x;
  if (e0 != maxi[0]) return "E_0 is not the maximal ideal";
  return std::nullopt;
}

namespace detail {

/// Largest k with x a sum of k elements outside E_0 (0 inside E_0).
inline std::vector<int> levels(const FinitePEA& e, IdSet e0) {
  const Id n = e.size();
  std::vector<Id> order(n);
  for (Id i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](Id a, Id b) { return e.below(a).size() < e.below(b).size(); });
  auto inside = [&](Id x) { return (e0 >> x & 1) != 0; };
  std::vector<int> lvl(n, 0);
  for (Id x : order) {
    if (inside(x)) continue;
    lvl[x] = 1;
    for (Id y = 0; y < n; ++y) {
      if (inside(y)) continue;
      for (Id z = 0; z < n; ++z)
        if (!inside(z) && e.sum(y, z) == x) lvl[x] = std::max(lvl[x], lvl[y] + 1);
    }
  }
  return lvl;
}

inline bool brute_force(const FinitePEA& e, NDecomposition& d, const std::vector<Id>& rest, std::size_t k) {
  if (k == rest.size()) return !validate_decomposition(e, d);
  for (int s = 1; s <= d.n; ++s) {
    d.slices[s].push_back(rest[k]);
    bool ok = true;
    // every pair already placed with i + j < n must still have a sum
    for (int j = 0; ok && s + j < d.n; ++j)
      for (Id y : d.slices[j])
        if (!e.sum(rest[k], y) || !e.sum(y, rest[k])) ok = false;
    if (ok && brute_force(e, d, rest, k + 1)) return true;
    d.slices[s].pop_back();
  }
  return false;
}

}  // namespace detail

/// Canonical n-decomposition: E_0 the unique maximal ideal, E_k the
/// elements whose longest decomposition into elements outside E_0 has k
/// terms. With `brute_force` (|E| <= 10) every assignment of the remaining
/// elements to E_1..E_n is tried instead.
inline std::optional<NDecomposition> find_n_decomposition(const FinitePEA& e, int n, bool brute_force = false) {
  if (n < 1) throw precondition_error("n must be at least 1");
  auto maxi = maximal_ideals(e);
  if (maxi.size() != 1) return std::nullopt;
  NDecomposition d;
  d.n = n;
  d.maximal_ideal = maxi[0];
  d.slices.assign(static_cast<std::size_t>(n) + 1, {});
  d.slices[0] = members(maxi[0]);
  if (brute_force) {
    if (e.size() > 10) throw budget_exceeded("brute-force decomposition search supports at most 10 elements");
    std::vector<Id> rest;
    for (Id x = 0; x < e.size(); ++x)
      if (!(maxi[0] >> x & 1)) rest.push_back(x);
    if (detail::brute_force(e, d, rest, 0)) return d;
    return std::nullopt;
  }
  auto lvl = detail::levels(e, maxi[0]);
  for (Id x = 0; x < e.size(); ++x) {
    if (lvl[x] == 0) continue;
    if (lvl[x] > n) return std::nullopt;
    d.slices[lvl[x]].push_back(x);
  }
  if (validate_decomposition(e, d)) return std::nullopt;
  return d;
}

/// c with n c = 1; `complements_agree` records c^- = c~ = (n-1) c.
struct CyclicWitness {
  Id c = 0;
  int n = 0;
  bool complements_agree = false;
};

inline std::vector<CyclicWitness> find_cyclic(const FinitePEA& e, int n) {
  if (n < 1) throw precondition_error("n must be at least 1");
  std::vector<CyclicWitness> out;
  for (Id c = 0; c < e.size(); ++c) {
    if (nfold(e, c, n) != e.unit()) continue;
    auto m = nfold(e, c, n - 1);
    bool agree = m && comp_left(e, c) == *m && comp_right(e, c) == *m;
    out.push_back({c, n, agree});
  }
  return out;
}

/// Gamma(Z lex G, (n,0)) with c = (1,0), plus the checks of the strong
/// n-perfect conditions. Hypothesis failures are listed in `warnings`; the
/// construction is returned regardless.
struct StrongNPerfect {
  GroupPtr group;  ///< Z lex G
  IntervalPEA algebra;
  Element c;
  int n = 0;
  bool unit_is_nc = false;
  ProbeResult central;
  std::vector<std::string> warnings;

  bool hypotheses_ok() const { return warnings.empty(); }
};

inline StrongNPerfect build_strong_nperfect(const GroupPtr& g, int n, std::int64_t radius = 2) {
  if (n < 1) throw precondition_error("n must be at least 1");
  auto zg = lex(integers(), g);
  Element u = Element::pair(Element::integer(n), g->zero());
  Element c = Element::pair(Element::integer(1), g->zero());
  StrongNPerfect s{zg, IntervalPEA(zg, u), c, n, false, {}, {}};
  auto caps = g->capabilities();
  if (!caps.declared || !caps.directed) s.warnings.push_back(g->descriptor() + " is not known to be directed");
  if (!caps.declared || !caps.torsion_free) s.warnings.push_back(g->descriptor() + " is not known to be torsion-free");
  try {
    if (!builtin_oracle(g).com) s.warnings.push_back("builtin refinements of " + g->descriptor() + " do not guarantee com");
  } catch (const precondition_error&) {
    s.warnings.push_back("no refinement oracle for " + g->descriptor());
  }
  s.unit_is_nc = s.algebra.nfold(c, n) == u;
  s.central = is_central(*zg, c, radius);
  return s;
}

/// A group homomorphism given pointwise.
struct Morphism {
  GroupPtr dom, cod;
  std::string name;
  std::function<Element(const Element&)> f;

  Element operator()(const Element& x) const { return f(x); }
};

inline Morphism identity(const GroupPtr& g) { return {g, g, "id", [](const Element& x) { return x; }}; }

/// h2 after h1.
inline Morphism compose(const Morphism& h2, const Morphism& h1) {
  if (h1.cod->descriptor() != h2.dom->descriptor()) throw precondition_error("morphisms do not compose");
  return {h1.dom, h2.cod, h2.name + " o " + h1.name, [h1, h2](const Element& x) { return h2(h1(x)); }};
}

/// Z^j -> Z^k (product orders) by a k x j integer matrix.
inline Morphism matrix_morphism(std::vector<std::vector<std::int64_t>> rows) {
  if (rows.empty() || rows.front().empty()) throw parse_error("matrix must be nonempty");
  const std::size_t j = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != j) throw parse_error("matrix rows have different lengths");
  auto space = [](std::size_t k) { return k == 1 ? integers() : product(k); };
  std::string name = "matrix:[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    name += (i ? ",[" : "[");
    for (std::size_t t = 0; t < j; ++t) name += (t ? "," : "") + std::to_string(rows[i][t]);
    name += "]";
  }
  name += "]";
  return {space(j), space(rows.size()), name, [rows](const Element& x) {
            const auto& v = x.coords();
            std::vector<std::int64_t> out;
            for (const auto& r : rows) {
              std::int64_t s = 0;
              for (std::size_t t = 0; t < r.size(); ++t) s = checked::add(s, checked::mul(r[t], v[t]));
              out.push_back(s);
            }
            return Element::ints(std::move(out));
          }};
}

/// `matrix:[[a,b,...],[...]]`.
inline Morphism parse_morphism(std::string_view s) {
  detail::skip_ws(s);
  constexpr std::string_view prefix = "matrix:";
  if (s.substr(0, prefix.size()) != prefix) throw parse_error("expected a matrix: morphism literal");
  s.remove_prefix(prefix.size());
  std::vector<std::vector<std::int64_t>> rows;
  detail::expect(s, '[');
  do {
    detail::expect(s, '[');
    std::vector<std::int64_t> row;
    do row.push_back(detail::parse_int(s));
    while (detail::try_consume(s, ','));
    detail::expect(s, ']');
    rows.push_back(std::move(row));
  } while (detail::try_consume(s, ','));
  detail::expect(s, ']');
  detail::skip_ws(s);
  if (!s.empty()) throw parse_error("trailing characters after morphism: '" + std::string(s) + "'");
  return matrix_morphism(std::move(rows));
}

/// Additivity on box pairs and positivity of images of positive box points.
inline std::optional<std::string> spot_check(const Morphism& h, std::int64_t radius) {
  auto box = h.dom->box(radius);
  for (const auto& x : box) {
    auto hx = h(x);
    if (!h.cod->belongs(hx)) return "image of " + h.dom->format(x) + " is not in " + h.cod->descriptor();
    if (h.dom->in_cone(x) && !h.cod->in_cone(hx)) return "positive " + h.dom->format(x) + " maps outside the cone";
    for (const auto& y : box)
      if (h(h.dom->add(x, y)) != h.cod->add(hx, h(y)))
        return "not additive at " + h.dom->format(x) + ", " + h.dom->format(y);
  }
  return std::nullopt;
}

/// The image of h under the functor G -> Gamma(Z lex G, (n,0)).
struct PeaMap {
  Morphism h;
  int n = 0;
  GroupPtr src_group, dst_group;  ///< Z lex dom, Z lex cod
  IntervalPEA src, dst;

  /// (i, h((ic)/x)) with c = (1,0) and i the level of x.
  Element operator()(const Element& x) const {
    src.require(x);
    auto i = detail::level(x);
    auto ic = Element::pair(Element::integer(i), h.dom->zero());
    auto g = right_diff(*src_group, ic, x).right();
    return Element::pair(Element::integer(i), h(g));
  }
};

inline PeaMap functor_on_morphism(const Morphism& h, int n, std::int64_t radius = 2) {
  if (n < 1) throw precondition_error("n must be at least 1");
  if (auto err = spot_check(h, radius)) throw precondition_error("not a po-group homomorphism: " + *err);
  auto zs = lex(integers(), h.dom), zt = lex(integers(), h.cod);
  auto top = [n](const GroupPtr& g) { return Element::pair(Element::integer(n), g->zero()); };
  return {h, n, zs, zt, IntervalPEA(zs, top(h.dom)), IntervalPEA(zt, top(h.cod))};
}

/// Interval points (i, g) with g in the radius box of G, shuffled by `seed`
/// and truncated to `count`.
inline std::vector<Element> sample_points(const IntervalPEA& e, const PoGroup& g, std::int64_t radius,
                                          std::size_t count, std::uint64_t seed) {
  auto n = detail::level(e.unit());
  std::vector<Element> out;
  for (std::int64_t i = 0; i <= n; ++i)
    for (const auto& x : g.box(radius)) {
      auto p = Element::pair(Element::integer(i), x);
      if (e.contains(p)) out.push_back(p);
    }
  std::mt19937_64 rng(seed);
  std::shuffle(out.begin(), out.end(), rng);
  if (out.size() > count) out.resize(count);
  return out;
}

/// f(1) = 1 and f(x + y) = f(x) + f(y) for every defined sum of sampled
/// points. Returns the first failure.
inline std::optional<std::string> check_pea_homomorphism(const PeaMap& f, const std::vector<Element>& points) {
  if (f(f.src.unit()) != f.dst.unit()) return "unit is not preserved";
  for (const auto& x : points)
    for (const auto& y : points) {
      auto s = f.src.sum(x, y);
      if (!s) continue;
      auto t = f.dst.sum(f(x), f(y));
      if (!t || *t != f(*s))
        return "sum of " + f.src_group->format(x) + " and " + f.src_group->format(y) + " is not preserved";
    }
  return std::nullopt;
}

}  // namespace pea
