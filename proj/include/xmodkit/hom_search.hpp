#pragma once

#include <concepts>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "xmodkit/construct.hpp"
#include "xmodkit/group.hpp"

namespace xmodkit {

/// Anything with a group structure on integer-coded elements. FiniteGroup
/// models it with a table; implicit groups (e.g. large Z/4-vector spaces)
/// compute products on the fly.
template <class G>
concept GroupLike = requires(const G& g, typename G::element_type a) {
  { g.order() } -> std::convertible_to<std::size_t>;
  { g.identity() } -> std::convertible_to<typename G::element_type>;
  { g.mul(a, a) } -> std::convertible_to<typename G::element_type>;
  { g.inv(a) } -> std::convertible_to<typename G::element_type>;
};

/// Deterministic generating set: repeatedly take the element of largest
/// order not yet in the generated subgroup, ties broken by least index.
inline std::vector<Elem> canonical_generators(const FiniteGroup& g,
                                              std::vector<Elem> seed = {}) {
  std::vector<Elem> gens = std::move(seed);
  ElemSet sub = generated_subgroup(g, gens);
  while (sub.size() < g.order()) {
    std::optional<Elem> best;
    for (std::size_t a = 0; a < g.order(); ++a) {
      const auto x = static_cast<Elem>(a);
      if (contains(sub, x)) continue;
      if (!best || g.element_order(x) > g.element_order(*best)) best = x;
    }
    gens.push_back(*best);
    sub = generated_subgroup(g, gens);
  }
  return gens;
}

struct HomSearchOptions {
  /// Maximum number of candidate images tried before giving up.
  std::size_t budget = 2'000'000;
  /// Stop after this many solutions.
  std::size_t limit = std::numeric_limits<std::size_t>::max();
};

template <GroupLike Target>
struct HomConstraints {
  using T = typename Target::element_type;
  /// Required values; these domain elements are placed first in the
  /// generator list and never branched on.
  std::vector<std::pair<Elem, T>> fixed;
  /// Optional explicit candidate list for a generator's image.
  std::function<std::vector<T>(Elem)> candidates;
  /// Optional filter on a generator's image.
  std::function<bool(Elem, T)> allowed;
  /// Optional predicate on the finished table.
  std::function<bool(std::span<const T>)> accept;
};

template <GroupLike Target>
struct HomTableSearch {
  using T = typename Target::element_type;
  std::vector<std::vector<T>> maps;
  std::vector<Elem> generators;
  std::size_t nodes = 0;
  bool budget_exhausted = false;
};

namespace detail {

template <GroupLike Target>
bool has_order_dividing(const Target& h, typename Target::element_type y, unsigned n) {
  auto acc = h.identity();
  for (unsigned i = 0; i < n; ++i) acc = h.mul(acc, y);
  return acc == h.identity();
}

}  // namespace detail

/// Backtracking over generator images with order-divisibility pruning and
/// consistency checks on the subgroup generated so far. Solutions come out
/// in lexicographic order of the generator-image tuple.
template <GroupLike Target>
HomTableSearch<Target> search_hom_tables(const FiniteGroup& src, const Target& tgt,
                                         const HomConstraints<Target>& c = {},
                                         const HomSearchOptions& opt = {}) {
  using T = typename Target::element_type;
  HomTableSearch<Target> out;
  std::vector<Elem> seed;
  for (auto& [x, y] : c.fixed) seed.push_back(x);
  out.generators = canonical_generators(src, seed);
  const auto& gens = out.generators;
  const std::size_t n = src.order();
  const std::size_t k = gens.size();

  std::vector<T> img(k);
  std::vector<T> map(n);
  std::vector<bool> set(n, false);
  std::vector<Elem> mapped;
  map[src.identity()] = tgt.identity();
  set[src.identity()] = true;
  mapped.push_back(src.identity());

  auto fixed_value = [&](std::size_t i) -> std::optional<T> {
    if (i < c.fixed.size()) return c.fixed[i].second;
    return std::nullopt;
  };

  // Extends the map with generators 0..i; returns false on conflict, leaving
  // the caller to roll back to `mark` entries.
  auto extend = [&](std::size_t i) {
    for (std::size_t qi = 0; qi < mapped.size(); ++qi) {
      const Elem x = mapped[qi];
      for (std::size_t j = 0; j <= i; ++j) {
        const Elem y = src.mul(x, gens[j]);
        const T v = tgt.mul(map[x], img[j]);
        if (!set[y]) {
          set[y] = true;
          map[y] = v;
          mapped.push_back(y);
        } else if (map[y] != v) {
          return false;
        }
      }
    }
    return true;
  };
  auto rollback = [&](std::size_t mark) {
    while (mapped.size() > mark) {
      set[mapped.back()] = false;
      mapped.pop_back();
    }
  };

  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == k) {
      if (!c.accept || c.accept(std::span<const T>(map))) {
        out.maps.push_back(map);
        if (out.maps.size() >= opt.limit) return false;
      }
      return true;
    }
    const Elem g = gens[i];
    const unsigned ord = src.element_order(g);
    auto try_candidate = [&](T y) -> bool {
      if (++out.nodes > opt.budget) {
        out.budget_exhausted = true;
        return false;
      }
      if (c.allowed && !c.allowed(g, y)) return true;
      if (!detail::has_order_dividing(tgt, y, ord)) return true;
      img[i] = y;
      const std::size_t mark = mapped.size();
      bool cont = true;
      if (extend(i)) cont = rec(i + 1);
      rollback(mark);
      return cont;
    };
    if (auto fv = fixed_value(i)) return try_candidate(*fv);
    if (c.candidates) {
      for (T y : c.candidates(g))
        if (!try_candidate(y)) return false;
      return true;
    }
    for (std::size_t y = 0; y < tgt.order(); ++y)
      if (!try_candidate(static_cast<T>(y))) return false;
    return true;
  };
  rec(0);
  return out;
}

struct HomSearchResult {
  std::vector<GroupHom> homs;
  std::size_t nodes = 0;
  bool budget_exhausted = false;
};

using Constraints = HomConstraints<FiniteGroup>;

/// All homomorphisms G -> H satisfying the constraints, verified, in the
/// deterministic generator-image order. Budget exhaustion is flagged, never
/// silently truncated.
inline HomSearchResult enumerate_homs(const FiniteGroup& g, const FiniteGroup& h,
                                      const HomSearchOptions& opt = {},
                                      const Constraints& c = {}) {
  auto raw = search_hom_tables(g, h, c, opt);
  HomSearchResult r;
  r.nodes = raw.nodes;
  r.budget_exhausted = raw.budget_exhausted;
  for (auto& m : raw.maps) r.homs.push_back(GroupHom::from_table(g, h, std::move(m)));
  return r;
}

/// Outcome of a search for one object: found, proven absent, or undecided.
enum class SearchStatus { kFound, kNone, kBudgetExhausted };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::kFound: return "found";
    case SearchStatus::kNone: return "proven-nonexistent";
    case SearchStatus::kBudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

struct HomFind {
  SearchStatus status = SearchStatus::kNone;
  std::optional<GroupHom> hom;
  std::size_t nodes = 0;
};

/// The lexicographically least homomorphism satisfying the constraints.
inline HomFind find_hom(const FiniteGroup& g, const FiniteGroup& h, const Constraints& c,
                        std::size_t budget = HomSearchOptions{}.budget) {
  HomSearchOptions opt;
  opt.budget = budget;
  opt.limit = 1;
  auto r = enumerate_homs(g, h, opt, c);
  HomFind f;
  f.nodes = r.nodes;
  if (!r.homs.empty()) {
    f.status = SearchStatus::kFound;
    f.hom = r.homs.front();
  } else {
    f.status = r.budget_exhausted ? SearchStatus::kBudgetExhausted : SearchStatus::kNone;
  }
  return f;
}

/// Constraint: f(x) must lie in the fiber of `over` above `target(x)`, i.e.
/// over ∘ f = target on generators (hence everywhere).
inline Constraints lift_through(const GroupHom& over, const GroupHom& target) {
  std::vector<std::vector<Elem>> fibers(over.target().order());
  for (std::size_t a = 0; a < over.source().order(); ++a)
    fibers[over(static_cast<Elem>(a))].push_back(static_cast<Elem>(a));
  Constraints c;
  c.candidates = [fibers = std::move(fibers), target](Elem x) { return fibers[target(x)]; };
  return c;
}

/// Searches for a section s of a surjection f (f ∘ s = id).
inline HomFind find_section(const GroupHom& f, std::size_t budget = HomSearchOptions{}.budget) {
  return find_hom(f.target(), f.source(), lift_through(f, GroupHom::identity(f.target())), budget);
}

/// Some isomorphism G -> H, if one exists.
inline HomFind find_isomorphism(const FiniteGroup& g, const FiniteGroup& h,
                                std::size_t budget = HomSearchOptions{}.budget) {
  if (g.order() != h.order() || g.is_commutative() != h.is_commutative() ||
      g.exponent() != h.exponent())
    return {};
  Constraints c;
  c.allowed = [&](Elem x, Elem y) { return g.element_order(x) == h.element_order(y); };
  c.accept = [n = g.order()](std::span<const Elem> m) {
    std::vector<bool> seen(n, false);
    for (Elem v : m) {
      if (seen[v]) return false;
      seen[v] = true;
    }
    return true;
  };
  return find_hom(g, h, c, budget);
}

}  // namespace xmodkit
