#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "xmodkit/construct.hpp"
#include "xmodkit/error.hpp"
#include "xmodkit/group.hpp"
#include "xmodkit/hom_search.hpp"

namespace xmodkit {

/// (Z/4)^a ⊕ (Z/2)^b with coordinates in mixed radix: coordinate i < a has
/// base 4, the remaining b coordinates base 2; coordinate 0 is least
/// significant.
struct Z4Module {
  FiniteGroup group;
  std::size_t a = 0;
  std::size_t b = 0;

  std::size_t rank() const { return a + b; }
  unsigned radix(std::size_t i) const { return i < a ? 4u : 2u; }

  std::vector<unsigned> decode(Elem e) const {
    std::vector<unsigned> v(rank());
    std::size_t x = e;
    for (std::size_t i = 0; i < rank(); ++i) {
      v[i] = static_cast<unsigned>(x % radix(i));
      x /= radix(i);
    }
    return v;
  }

  Elem encode(const std::vector<unsigned>& v) const {
    std::size_t x = 0, place = 1;
    for (std::size_t i = 0; i < rank(); ++i) {
      x += (v[i] % radix(i)) * place;
      place *= radix(i);
    }
    return static_cast<Elem>(x);
  }

  Elem basis(std::size_t i) const {
    std::vector<unsigned> v(rank(), 0);
    v[i] = 1;
    return encode(v);
  }
};

inline Z4Module z4_module(std::size_t a, std::size_t b) {
  std::size_t order = 1;
  for (std::size_t i = 0; i < a; ++i) order *= 4;
  for (std::size_t i = 0; i < b; ++i) order *= 2;
  if (order > kMaxOrder) throw AlgebraError("module exceeds the order cap");
  Z4Module m;
  m.a = a;
  m.b = b;
  // Names first, then the table from coordinatewise addition.
  Z4Module shape = m;
  std::vector<std::string> names(order);
  for (std::size_t e = 0; e < order; ++e) {
    auto v = shape.decode(static_cast<Elem>(e));
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    names[e] = v.empty() ? "0" : s + ")";
  }
  m.group = FiniteGroup::from_operation(
      order,
      [&](Elem x, Elem y) {
        std::size_t r = 0, place = 1, u = x, w = y;
        for (std::size_t i = 0; i < shape.rank(); ++i) {
          const unsigned m = shape.radix(i);
          r += ((u % m + w % m) % m) * place;
          u /= m;
          w /= m;
          place *= m;
        }
        return static_cast<Elem>(r);
      },
      std::move(names));
  return m;
}

inline Z4Module free_z4(std::size_t rank) { return z4_module(rank, 0); }

inline bool is_z4_module(const FiniteGroup& m) { return m.is_commutative() && 4 % m.exponent() == 0; }

inline void require_z4_module(const FiniteGroup& m) {
  if (!is_z4_module(m)) throw AlgebraError("not a Z/4-module: must be abelian of exponent dividing 4");
}

/// |{m : 2m = 0}|.
inline std::size_t two_torsion(const FiniteGroup& m) {
  std::size_t c = 0;
  for (std::size_t x = 0; x < m.order(); ++x) c += m.mul(static_cast<Elem>(x), static_cast<Elem>(x)) == m.identity();
  return c;
}

/// Structure criterion: projective iff free iff no Z/2 summand iff
/// |{2m = 0}|^2 = |M|.
inline bool projective_z4(const FiniteGroup& m) {
  require_z4_module(m);
  const std::size_t t = two_torsion(m);
  return t * t == m.order();
}

/// Basis images for module homs out of a Z4Module.
inline GroupHom module_hom(const Z4Module& src, const FiniteGroup& tgt, const std::vector<Elem>& images) {
  if (images.size() != src.rank()) throw AlgebraError("module_hom: one image per basis element");
  std::vector<std::pair<Elem, Elem>> gens;
  for (std::size_t i = 0; i < src.rank(); ++i) gens.emplace_back(src.basis(i), images[i]);
  if (gens.empty()) return GroupHom::trivial(src.group, tgt);
  return GroupHom::from_generators(src.group, tgt, gens);
}

/// A free cover (Z/4)^r ->> M sending the basis to a generating set.
struct FreeCover {
  Z4Module free;
  GroupHom map;
};

inline FreeCover z4_free_cover(const FiniteGroup& m) {
  require_z4_module(m);
  const std::vector<Elem> gens = m.is_trivial() ? std::vector<Elem>{} : canonical_generators(m);
  Z4Module f = free_z4(gens.size());
  return {f, module_hom(f, m, gens)};
}

/// Operational oracle: M is projective iff its free cover splits.
inline SearchStatus z4_cover_splits(const FiniteGroup& m, std::size_t budget = HomSearchOptions{}.budget) {
  const FreeCover c = z4_free_cover(m);
  return find_section(c.map, budget).status;
}

/// The isomorphism classes (Z/4)^a ⊕ (Z/2)^b of order at most max_order.
inline std::vector<std::pair<std::size_t, std::size_t>> z4_classes(std::size_t max_order) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0;; ++a) {
    std::size_t base = 1;
    for (std::size_t i = 0; i < a; ++i) base *= 4;
    if (base > max_order) break;
    for (std::size_t b = 0;; ++b) {
      std::size_t ord = base;
      for (std::size_t i = 0; i < b; ++i) ord *= 2;
      if (ord > max_order) break;
      out.emplace_back(a, b);
    }
  }
  return out;
}

}  // namespace xmodkit
