#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xmodkit/group.hpp"

namespace xmodkit {

/// A subset of a group's elements, kept sorted and duplicate-free.
using ElemSet = std::vector<Elem>;

inline ElemSet all_elements(const FiniteGroup& g) {
  ElemSet s(g.order());
  std::iota(s.begin(), s.end(), Elem{0});
  return s;
}

inline bool contains(const ElemSet& s, Elem x) { return std::binary_search(s.begin(), s.end(), x); }

/// The subgroup generated by gens.
inline ElemSet generated_subgroup(const FiniteGroup& g, const std::vector<Elem>& gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<Elem> queue{g.identity()};
  in[g.identity()] = true;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (Elem s : gens) {
      const Elem y = g.mul(queue[i], s);
      if (!in[y]) {
        in[y] = true;
        queue.push_back(y);
      }
    }
  std::sort(queue.begin(), queue.end());
  return queue;
}

inline bool is_subgroup(const FiniteGroup& g, const ElemSet& s) {
  if (!contains(s, g.identity())) return false;
  for (Elem a : s)
    for (Elem b : s)
      if (!contains(s, g.mul(a, g.inv(b)))) return false;
  return true;
}

/// First (g, n) with g n g^-1 outside n's subgroup, or nothing if normal.
inline std::optional<std::pair<Elem, Elem>> normality_witness(const FiniteGroup& g,
                                                              const ElemSet& sub) {
  for (std::size_t a = 0; a < g.order(); ++a)
    for (Elem n : sub) {
      const auto x = static_cast<Elem>(a);
      if (!contains(sub, g.conj(x, n))) return std::pair{x, n};
    }
  return std::nullopt;
}

inline bool is_normal(const FiniteGroup& g, const ElemSet& sub) {
  return !normality_witness(g, sub).has_value();
}

/// Smallest normal subgroup containing s.
inline ElemSet normal_closure(const FiniteGroup& g, const std::vector<Elem>& s) {
  std::vector<Elem> gens;
  for (Elem x : s)
    for (std::size_t a = 0; a < g.order(); ++a) gens.push_back(g.conj(static_cast<Elem>(a), x));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return generated_subgroup(g, gens);
}

/// All normal subgroups, ordered by size and then lexicographically.
inline std::vector<ElemSet> normal_subgroups(const FiniteGroup& g) {
  // Every normal subgroup is generated by the normal closures of its
  // elements, so close the set of element closures under joins.
  std::vector<ElemSet> found{ElemSet{g.identity()}};
  for (std::size_t a = 0; a < g.order(); ++a) {
    ElemSet c = normal_closure(g, {static_cast<Elem>(a)});
    if (std::find(found.begin(), found.end(), c) == found.end()) found.push_back(c);
  }
  for (std::size_t i = 0; i < found.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      std::vector<Elem> u = found[i];
      u.insert(u.end(), found[j].begin(), found[j].end());
      ElemSet c = generated_subgroup(g, u);
      if (std::find(found.begin(), found.end(), c) == found.end()) found.push_back(c);
    }
  std::sort(found.begin(), found.end(), [](const ElemSet& a, const ElemSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return found;
}

/// A subgroup materialized as a group of its own, with its inclusion.
struct Subgroup {
  FiniteGroup group;
  GroupHom inclusion;
};

/// Elements are numbered in increasing order of their index in g and keep
/// their names.
inline Subgroup materialize_subgroup(const FiniteGroup& g, const ElemSet& sub) {
  if (!is_subgroup(g, sub)) throw AlgebraError("element set is not a subgroup");
  const std::size_t n = sub.size();
  std::vector<Elem> pos(g.order(), 0);
  for (std::size_t i = 0; i < n; ++i) pos[sub[i]] = static_cast<Elem>(i);
  std::vector<Elem> table(n * n);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(g.name(sub[i]));
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = pos[g.mul(sub[i], sub[j])];
  }
  FiniteGroup h = FiniteGroup::from_table(n, std::move(table), std::move(names));
  return {h, GroupHom::unchecked(h, g, std::vector<Elem>(sub.begin(), sub.end()))};
}

inline ElemSet image(const GroupHom& f) {
  ElemSet s(f.table().begin(), f.table().end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline ElemSet kernel_elements(const GroupHom& f) {
  ElemSet s;
  for (std::size_t a = 0; a < f.source().order(); ++a)
    if (f(static_cast<Elem>(a)) == f.target().identity()) s.push_back(static_cast<Elem>(a));
  return s;
}

inline Subgroup kernel(const GroupHom& f) { return materialize_subgroup(f.source(), kernel_elements(f)); }

/// Preimage of a subset under f.
inline ElemSet preimage(const GroupHom& f, const ElemSet& s) {
  ElemSet out;
  for (std::size_t a = 0; a < f.source().order(); ++a)
    if (contains(s, f(static_cast<Elem>(a)))) out.push_back(static_cast<Elem>(a));
  return out;
}

struct Quotient {
  FiniteGroup group;
  GroupHom projection;
};

/// G/N. Cosets are numbered by their least element, and named "[x]" after
/// that representative. Throws AlgebraError (with an escaping conjugate)
/// when N is not normal.
inline Quotient quotient(const FiniteGroup& g, const ElemSet& n) {
  if (!is_subgroup(g, n)) throw AlgebraError("quotient: element set is not a subgroup");
  if (auto w = normality_witness(g, n))
    throw AlgebraError("quotient: subgroup not normal: " + g.name(w->first) + " " +
                       g.name(w->second) + " " + g.name(g.inv(w->first)) + " = " +
                       g.name(g.conj(w->first, w->second)) + " is not in the subgroup");
  constexpr Elem kUnset = 0xffff;
  std::vector<Elem> coset(g.order(), kUnset);
  std::vector<Elem> reps;
  for (std::size_t a = 0; a < g.order(); ++a) {
    if (coset[a] != kUnset) continue;
    const auto c = static_cast<Elem>(reps.size());
    reps.push_back(static_cast<Elem>(a));
    for (Elem x : n) coset[g.mul(static_cast<Elem>(a), x)] = c;
  }
  const std::size_t m = reps.size();
  std::vector<Elem> table(m * m);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) {
    names.push_back("[" + g.name(reps[i]) + "]");
    for (std::size_t j = 0; j < m; ++j) table[i * m + j] = coset[g.mul(reps[i], reps[j])];
  }
  FiniteGroup q = FiniteGroup::from_table(m, std::move(table), std::move(names));
  return {q, GroupHom::unchecked(g, q, std::move(coset))};
}

struct Product {
  FiniteGroup group;
  GroupHom proj1, proj2;
  GroupHom inj1, inj2;
  /// Index of the pair (a, b).
  Elem pair(Elem a, Elem b) const { return static_cast<Elem>(std::size_t{a} * proj2.target().order() + b); }
};

/// A × B with element (a, b) at index a*|B| + b.
inline Product direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.order(), nb = b.order();
  if (na * nb > kMaxOrder) throw AlgebraError("direct product exceeds order cap");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      names.push_back("(" + a.name(static_cast<Elem>(i)) + "," + b.name(static_cast<Elem>(j)) + ")");
  FiniteGroup p = FiniteGroup::from_operation(
      na * nb,
      [&](Elem x, Elem y) {
        return a.mul(static_cast<Elem>(x / nb), static_cast<Elem>(y / nb)) * nb +
               b.mul(static_cast<Elem>(x % nb), static_cast<Elem>(y % nb));
      },
      std::move(names));
  std::vector<Elem> p1(na * nb), p2(na * nb), i1(na), i2(nb);
  for (std::size_t x = 0; x < na * nb; ++x) {
    p1[x] = static_cast<Elem>(x / nb);
    p2[x] = static_cast<Elem>(x % nb);
  }
  for (std::size_t i = 0; i < na; ++i) i1[i] = static_cast<Elem>(i * nb + b.identity());
  for (std::size_t j = 0; j < nb; ++j) i2[j] = static_cast<Elem>(a.identity() * nb + j);
  return {p, GroupHom::unchecked(p, a, std::move(p1)), GroupHom::unchecked(p, b, std::move(p2)),
          GroupHom::unchecked(a, p, std::move(i1)), GroupHom::unchecked(b, p, std::move(i2))};
}

/// f × g : A × B -> A' × B'
inline GroupHom product_map(const Product& src, const Product& tgt, const GroupHom& f,
                            const GroupHom& g) {
  std::vector<Elem> m(src.group.order());
  for (std::size_t x = 0; x < m.size(); ++x) {
    const auto e = static_cast<Elem>(x);
    m[x] = tgt.pair(f(src.proj1(e)), g(src.proj2(e)));
  }
  return GroupHom::unchecked(src.group, tgt.group, std::move(m));
}

struct Pullback {
  FiniteGroup group;
  GroupHom p1, p2;
  /// Index of (a, b) in the pullback, if f(a) = g(b).
  std::vector<std::pair<Elem, Elem>> pairs;
  std::optional<Elem> find(Elem a, Elem b) const {
    auto it = std::lower_bound(pairs.begin(), pairs.end(), std::pair{a, b});
    if (it == pairs.end() || *it != std::pair{a, b}) return std::nullopt;
    return static_cast<Elem>(it - pairs.begin());
  }
};

/// A ×_C B = {(a, b) : f(a) = g(b)} with componentwise multiplication,
/// pairs in lexicographic order.
inline Pullback pullback(const GroupHom& f, const GroupHom& g) {
  if (!(f.target() == g.target())) throw AlgebraError("pullback: homs have different codomains");
  const FiniteGroup& a = f.source();
  const FiniteGroup& b = g.source();
  std::vector<std::pair<Elem, Elem>> pairs;
  for (std::size_t x = 0; x < a.order(); ++x)
    for (std::size_t y = 0; y < b.order(); ++y)
      if (f(static_cast<Elem>(x)) == g(static_cast<Elem>(y)))
        pairs.emplace_back(static_cast<Elem>(x), static_cast<Elem>(y));
  const std::size_t n = pairs.size();
  if (n > kMaxOrder) throw AlgebraError("pullback exceeds order cap");
  auto index = [&](std::pair<Elem, Elem> p) {
    return static_cast<Elem>(std::lower_bound(pairs.begin(), pairs.end(), p) - pairs.begin());
  };
  std::vector<Elem> table(n * n);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("(" + a.name(pairs[i].first) + "," + b.name(pairs[i].second) + ")");
    for (std::size_t j = 0; j < n; ++j)
      table[i * n + j] = index({a.mul(pairs[i].first, pairs[j].first),
                                b.mul(pairs[i].second, pairs[j].second)});
  }
  FiniteGroup p = FiniteGroup::from_table(n, std::move(table), std::move(names));
  std::vector<Elem> m1(n), m2(n);
  for (std::size_t i = 0; i < n; ++i) {
    m1[i] = pairs[i].first;
    m2[i] = pairs[i].second;
  }
  return {p, GroupHom::unchecked(p, a, std::move(m1)), GroupHom::unchecked(p, b, std::move(m2)),
          std::move(pairs)};
}

/// The unique map q : G/N -> H with q ∘ proj = f, when N ⊆ ker f.
inline GroupHom induced_on_quotient(const Quotient& q, const GroupHom& f) {
  std::vector<Elem> m(q.group.order(), 0);
  std::vector<bool> set(q.group.order(), false);
  for (std::size_t a = 0; a < f.source().order(); ++a) {
    const auto x = static_cast<Elem>(a);
    const Elem c = q.projection(x);
    if (!set[c]) {
      m[c] = f(x);
      set[c] = true;
    } else if (m[c] != f(x)) {
      throw AlgebraError("induced map on quotient is not well defined");
    }
  }
  return GroupHom::from_table(q.group, f.target(), std::move(m));
}

/// True when f is a bijective homomorphism.
inline bool is_isomorphism(const GroupHom& f) {
  return f.source().order() == f.target().order() && f.is_injective() && !f.law_violation();
}

}  // namespace xmodkit
