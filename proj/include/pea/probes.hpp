#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pea/po_group.hpp"

namespace pea {

enum class Verdict { certified, refuted, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::refuted: return "refuted";
    default: return "inconclusive";
  }
}

/// Three-valued answer of a bounded probe. `certified` only ever comes from
/// an analytic argument (quoted in `reason`), never from a finite search.
struct ProbeResult {
  Verdict verdict = Verdict::inconclusive;
  std::vector<Element> witness;
  std::string reason;
};

/// Directedness. Finite carriers are searched exhaustively, so a pair
/// without an upper bound there is a genuine refutation.
inline ProbeResult is_directed_bounded(const PoGroup& g, std::int64_t radius) {
  if (radius < 0) throw precondition_error("radius must be >= 0");
  auto caps = g.capabilities();
  if (caps.declared && caps.directed) return {Verdict::certified, {}, g.directed_certificate()};
  auto all = g.all_elements();
  const bool exhaustive = all.has_value();
  std::vector<Element> pts = exhaustive ? *all : g.box(radius);
  std::vector<Element> uppers = exhaustive ? pts : g.box(2 * radius);
  auto zero = g.zero();
  // nonzero pairs first: they make the more informative witnesses
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const auto &x = pts[i], &y = pts[j];
        if ((pass == 0) == (x == zero || y == zero)) continue;
        bool bounded = false;
        for (const auto& z : uppers) {
          if (leq(g, x, z) && leq(g, y, z)) {
            bounded = true;
            break;
          }
        }
        if (!bounded) {
          if (exhaustive) return {Verdict::refuted, {x, y}, "no upper bound in the whole (finite) carrier"};
          return {Verdict::inconclusive, {x, y}, "no upper bound within radius " + std::to_string(2 * radius)};
        }
      }
    }
  }
  return {Verdict::inconclusive, {}, "no violation found within the search box"};
}

/// Strong unit test for a positive u. Refutations come from the group's
/// analytic metadata (a g with g not below any multiple of u).
inline ProbeResult is_strong_unit_bounded(const PoGroup& g, const Element& u, std::int64_t radius) {
  g.require(u);
  if (!g.in_cone(u)) throw precondition_error("strong unit candidate must be positive");
  auto a = g.strong_unit_analysis(u);
  if (a.holds == true) return {Verdict::certified, {}, a.reason};
  if (a.holds == false && a.witness) return {Verdict::refuted, {*a.witness}, a.reason};
  // bounded search: n up to 4*radius + 4 multiples
  const std::int64_t nmax = 4 * radius + 4;
  for (const auto& x : g.box(radius)) {
    bool found = false;
    Element m = u;
    for (std::int64_t n = 1; n <= nmax && !found; ++n, m = g.add(m, u)) found = leq(g, x, m);
    if (!found) return {Verdict::inconclusive, {x}, "not below n*u for n <= " + std::to_string(nmax)};
  }
  return {Verdict::inconclusive, {}, "no violation found within the search box"};
}

/// Is there some c with lo_i <= c <= hi_j for all listed bounds? Searches
/// interval(lo[0], hi[0]), which contains every candidate. nullopt when
/// that interval is not known to be finite.
inline std::optional<bool> has_interpolant(const PoGroup& g, const std::vector<Element>& lo,
                                           const std::vector<Element>& hi, bool strict, std::size_t budget,
                                           std::optional<Element>* found = nullptr) {
  auto cands = g.interval(lo.front(), hi.front(), budget);
  if (!cands) return std::nullopt;
  for (const auto& c : *cands) {
    bool ok = true;
    for (const auto& a : lo) ok = ok && (strict ? less(g, a, c) : leq(g, a, c));
    for (const auto& b : hi) ok = ok && (strict ? less(g, c, b) : leq(g, c, b));
    if (ok) {
      if (found) *found = c;
      return true;
    }
  }
  return false;
}

/// Certifies that a1,a2 <= b1,b2 has no interpolant. The candidate region
/// is the interval [a1,b1]; for Z^2 cones it is enumerated by pairing the
/// disjuncts of the cone formula (see cone_interval_points), so the
/// refutation is exact.
inline ProbeResult rip_refutation(const PoGroup& g, const Element& a1, const Element& a2, const Element& b1,
                                  const Element& b2, std::size_t budget = 100000) {
  std::vector<Element> q{a1, a2, b1, b2};
  for (const auto& a : {a1, a2})
    for (const auto& b : {b1, b2})
      if (!leq(g, a, b)) return {Verdict::inconclusive, q, "not a RIP instance: " + g.format(a) + " is not below " + g.format(b)};
  auto r = has_interpolant(g, {a1, a2}, {b1, b2}, false, budget);
  if (!r) return {Verdict::inconclusive, q, "candidate interval is not known to be finite"};
  if (*r) return {Verdict::inconclusive, q, "an interpolant exists"};
  auto n = g.interval(a1, b1, budget)->size();
  return {Verdict::refuted, q,
          "no c in [a1,b1] (" + std::to_string(n) + " candidates, finite case split of the cone) lies above a2 and below b2"};
}

/// First RIP violation among box quadruples with a certified-finite
/// candidate region.
inline ProbeResult rip_bounded(const PoGroup& g, std::int64_t radius, std::size_t budget = 100000) {
  auto box = g.box(radius);
  for (const auto& a1 : box)
    for (const auto& a2 : box)
      for (const auto& b1 : box) {
        if (!leq(g, a1, b1) || !leq(g, a2, b1)) continue;
        for (const auto& b2 : box) {
          if (!leq(g, a1, b2) || !leq(g, a2, b2)) continue;
          auto r = has_interpolant(g, {a1, a2}, {b1, b2}, false, budget);
          if (r == false) return rip_refutation(g, a1, a2, b1, b2, budget);
        }
      }
  return {Verdict::inconclusive, {}, "no violation found within the search box"};
}

/// Strict interpolation. Refutations are certified: every strict
/// interpolant lies in [a1,b1], which is enumerated completely.
inline ProbeResult srip_bounded(const PoGroup& g, std::int64_t radius, std::size_t budget = 100000) {
  if (radius < 0) throw precondition_error("radius must be >= 0");
  auto box = g.box(radius);
  for (const auto& a1 : box)
    for (const auto& a2 : box)
      for (const auto& b1 : box) {
        if (!less(g, a1, b1) || !less(g, a2, b1)) continue;
        for (const auto& b2 : box) {
          if (!less(g, a1, b2) || !less(g, a2, b2)) continue;
          std::optional<bool> r;
          try {
            r = has_interpolant(g, {a1, a2}, {b1, b2}, true, budget);
          } catch (const budget_exceeded&) {
            continue;
          }
          if (r == false)
            return {Verdict::refuted, {a1, a2, b1, b2}, "no element strictly between, [a1,b1] enumerated"};
        }
      }
  return {Verdict::inconclusive, {}, "no violation found within the search box"};
}

/// Membership of c in the center.
inline ProbeResult is_central(const PoGroup& g, const Element& c, std::int64_t radius) {
  g.require(c);
  auto a = g.central_analysis(c);
  if (a.holds == true) return {Verdict::certified, {}, a.reason};
  if (a.holds == false && a.witness) return {Verdict::refuted, {*a.witness}, a.reason};
  for (const auto& x : g.box(radius))
    if (g.add(c, x) != g.add(x, c)) return {Verdict::refuted, {x}, "noncommuting element found in the box"};
  return {Verdict::inconclusive, {}, "commutes with the whole search box"};
}

/// Elements of `box` with 0 <= z <= x, plus the endpoints 0 and x.
inline std::vector<Element> sample_below(const PoGroup& g, const Element& x, const std::vector<Element>& box) {
  std::vector<Element> out{g.zero()};
  if (x != g.zero()) out.push_back(x);
  for (const auto& z : box)
    if (z != g.zero() && z != x && g.in_cone(z) && leq(g, z, x)) out.push_back(z);
  return out;
}

/// The com condition of two positive group elements, sampled: every pair
/// drawn from below x and below y commutes. Returns a noncommuting pair.
inline std::optional<std::pair<Element, Element>> com_violation_sampled(const PoGroup& g, const Element& x,
                                                                        const Element& y,
                                                                        const std::vector<Element>& box) {
  auto xs = sample_below(g, x, box);
  auto ys = sample_below(g, y, box);
  for (const auto& s : xs)
    for (const auto& t : ys)
      if (g.add(s, t) != g.add(t, s)) return std::pair{s, t};
  return std::nullopt;
}

/// Spot-checks the po-group laws on a box: the induced relation is a
/// partial order, translation invariant, the cone is normal, declared meets
/// are infima, and capability flags are consistent. Returns the first
/// problem found.
inline std::optional<std::string> check_order_laws(const PoGroup& g, std::int64_t radius, std::int64_t shift_radius = 1) {
  auto box = g.box(radius);
  auto shifts = g.box(shift_radius);
  auto f = [&](const Element& x) { return g.format(x); };
  if (!g.in_cone(g.zero())) return "zero is not in the cone";
  auto caps = g.capabilities();
  if (caps.linear && !caps.lattice) return "linear but not lattice";
  if (caps.lattice && !caps.directed) return "lattice but not directed";
  std::vector<std::vector<char>> le(box.size(), std::vector<char>(box.size()));
  for (std::size_t i = 0; i < box.size(); ++i)
    for (std::size_t j = 0; j < box.size(); ++j) le[i][j] = leq(g, box[i], box[j]);
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (!le[i][i]) return "not reflexive at " + f(box[i]);
    for (std::size_t j = 0; j < box.size(); ++j) {
      if (i != j && le[i][j] && le[j][i]) return "not antisymmetric at " + f(box[i]) + ", " + f(box[j]);
      if (!le[i][j]) continue;
      for (std::size_t k = 0; k < box.size(); ++k)
        if (le[j][k] && !le[i][k]) return "not transitive at " + f(box[i]) + ", " + f(box[j]) + ", " + f(box[k]);
    }
  }
  for (const auto& x : box) {
    bool pos = g.in_cone(x);
    for (const auto& s : shifts) {
      if (pos && !g.in_cone(g.add(g.add(s, x), g.neg(s))))
        return "cone not normal: conjugate of " + f(x) + " by " + f(s);
    }
  }
  for (std::size_t i = 0; i < box.size(); ++i)
    for (std::size_t j = 0; j < box.size(); ++j) {
      if (!le[i][j]) continue;
      for (std::size_t k = 0; k < shifts.size(); ++k) {
        const auto& s = shifts[k];
        const auto& t = shifts[(i + j + k) % shifts.size()];
        if (!leq(g, g.add(g.add(s, box[i]), t), g.add(g.add(s, box[j]), t)))
          return "not translation invariant at " + f(box[i]) + " <= " + f(box[j]);
      }
    }
  if (caps.lattice) {
    for (std::size_t i = 0; i < box.size(); ++i)
      for (std::size_t j = 0; j < box.size(); ++j) {
        auto m = g.meet(box[i], box[j]);
        if (!m) return "lattice group without meet of " + f(box[i]) + ", " + f(box[j]);
        if (!leq(g, *m, box[i]) || !leq(g, *m, box[j])) return "meet is not a lower bound";
        for (std::size_t k = 0; k < box.size(); ++k)
          if (le[k][i] && le[k][j] && !leq(g, box[k], *m)) return "meet is not the greatest lower bound";
      }
  }
  return std::nullopt;
}

}  // namespace pea
