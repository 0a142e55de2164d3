#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xmodkit/error.hpp"

namespace xmodkit {

/// Elements of a finite group are dense indices 0..order-1.
using Elem = std::uint16_t;

/// Largest carrier the library will materialize as a multiplication table.
inline constexpr std::size_t kMaxOrder = 4096;

/// Associativity is checked on all triples up to this order and on a fixed
/// pseudo-random sample of triples above it.
inline constexpr std::size_t kExhaustiveAssocOrder = 64;

/// A finite group given by a total multiplication table.
///
/// Values are immutable and share their storage, so copies are cheap and
/// safe to pass between threads. Two groups compare equal when their tables
/// (and identities) coincide; element names do not take part.
class FiniteGroup {
 public:
  using element_type = Elem;

  /// The trivial group.
  FiniteGroup() : FiniteGroup(make_data(1, {0}, {"e"})) {}

  /// Validates a row-major table. Throws AlgebraError on any group-axiom
  /// failure, naming the offending elements.
  static FiniteGroup from_table(std::size_t order, std::vector<Elem> table,
                                std::vector<std::string> names = {}) {
    if (order == 0) throw AlgebraError("group order must be positive");
    if (order > kMaxOrder)
      throw AlgebraError("group order " + std::to_string(order) + " exceeds cap " +
                         std::to_string(kMaxOrder));
    if (table.size() != order * order)
      throw AlgebraError("multiplication table has " + std::to_string(table.size()) +
                         " entries, expected " + std::to_string(order * order));
    FiniteGroup g(make_data(order, std::move(table), std::move(names)));
    g.check_associative();
    return g;
  }

  /// Builds the table from a binary operation on indices; the result is
  /// validated like from_table.
  template <class Op>
  static FiniteGroup from_operation(std::size_t order, Op&& op,
                                    std::vector<std::string> names = {}) {
    if (order == 0 || order > kMaxOrder)
      throw AlgebraError("group order " + std::to_string(order) + " out of range");
    std::vector<Elem> table(order * order);
    for (std::size_t a = 0; a < order; ++a)
      for (std::size_t b = 0; b < order; ++b)
        table[a * order + b] = static_cast<Elem>(op(static_cast<Elem>(a), static_cast<Elem>(b)));
    return from_table(order, std::move(table), std::move(names));
  }

  std::size_t order() const { return d_->order; }
  Elem identity() const { return d_->identity; }
  Elem mul(Elem a, Elem b) const { return d_->table[std::size_t{a} * d_->order + b]; }
  Elem inv(Elem a) const { return d_->inverse[a]; }
  bool is_commutative() const { return d_->commutative; }
  unsigned exponent() const { return d_->exponent; }
  unsigned element_order(Elem a) const { return d_->element_orders[a]; }
  bool is_trivial() const { return d_->order == 1; }

  Elem pow(Elem a, long long k) const {
    const long long n = element_order(a);
    k %= n;
    if (k < 0) k += n;
    Elem r = identity();
    for (long long i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }
  /// g x g^-1
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); }
  /// a b a^-1 b^-1
  Elem commutator(Elem a, Elem b) const { return mul(mul(a, b), mul(inv(a), inv(b))); }

  const std::string& name(Elem a) const { return d_->names[a]; }
  const std::vector<std::string>& names() const { return d_->names; }
  std::optional<Elem> find(std::string_view name) const {
    for (std::size_t i = 0; i < d_->order; ++i)
      if (d_->names[i] == name) return static_cast<Elem>(i);
    return std::nullopt;
  }

  std::span<const Elem> table() const { return d_->table; }

  /// Same group with new element names (count must match the order).
  FiniteGroup renamed(std::vector<std::string> names) const {
    if (names.size() != order()) throw AlgebraError("name list size does not match group order");
    return FiniteGroup(make_data(order(), d_->table, std::move(names)));
  }

  /// Same storage; cheaper than structural equality.
  bool same_object(const FiniteGroup& o) const { return d_ == o.d_; }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.d_ == b.d_ || (a.d_->order == b.d_->order && a.d_->table == b.d_->table);
  }

 private:
  struct Data {
    std::size_t order = 0;
    std::vector<Elem> table;
    std::vector<Elem> inverse;
    std::vector<unsigned> element_orders;
    std::vector<std::string> names;
    Elem identity = 0;
    bool commutative = true;
    unsigned exponent = 1;
  };

  explicit FiniteGroup(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  static std::shared_ptr<const Data> make_data(std::size_t n, std::vector<Elem> table,
                                               std::vector<std::string> names) {
    auto d = std::make_shared<Data>();
    d->order = n;
    d->table = std::move(table);
    for (std::size_t i = 0; i < n * n; ++i)
      if (d->table[i] >= n)
        throw AlgebraError("table entry " + std::to_string(d->table[i]) + " at (" +
                           std::to_string(i / n) + "," + std::to_string(i % n) +
                           ") is not an element");
    if (names.empty()) {
      names.resize(n);
      for (std::size_t i = 0; i < n; ++i) names[i] = std::to_string(i);
    }
    if (names.size() != n) throw AlgebraError("name list size does not match group order");
    d->names = std::move(names);

    std::optional<Elem> e;
    for (std::size_t c = 0; c < n && !e; ++c) {
      bool ok = true;
      for (std::size_t x = 0; x < n && ok; ++x)
        ok = d->table[c * n + x] == x && d->table[x * n + c] == x;
      if (ok) e = static_cast<Elem>(c);
    }
    if (!e) throw AlgebraError("table has no two-sided identity");
    d->identity = *e;

    d->inverse.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      std::optional<Elem> ia;
      for (std::size_t b = 0; b < n; ++b)
        if (d->table[a * n + b] == *e && d->table[b * n + a] == *e) {
          ia = static_cast<Elem>(b);
          break;
        }
      if (!ia) throw AlgebraError("element " + d->names[a] + " has no two-sided inverse");
      d->inverse[a] = *ia;
    }

    d->element_orders.assign(n, 1);
    unsigned long long lcm = 1;
    for (std::size_t a = 0; a < n; ++a) {
      unsigned k = 1;
      std::size_t x = a;
      while (x != *e) {
        x = d->table[x * n + a];
        ++k;
        if (k > n) throw AlgebraError("element " + d->names[a] + " has no finite order");
      }
      d->element_orders[a] = k;
      lcm = std::lcm(lcm, static_cast<unsigned long long>(k));
    }
    d->exponent = static_cast<unsigned>(lcm);

    for (std::size_t a = 0; a < n && d->commutative; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (d->table[a * n + b] != d->table[b * n + a]) {
          d->commutative = false;
          break;
        }
    return d;
  }

  void check_associative() const {
    const std::size_t n = order();
    auto check = [&](std::size_t a, std::size_t b, std::size_t c) {
      const auto x = static_cast<Elem>(a), y = static_cast<Elem>(b), z = static_cast<Elem>(c);
      if (mul(mul(x, y), z) != mul(x, mul(y, z)))
        throw AlgebraError("multiplication is not associative on (" + name(x) + ", " +
                           name(y) + ", " + name(z) + ")");
    };
    if (n <= kExhaustiveAssocOrder) {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t c = 0; c < n; ++c) check(a, b, c);
      return;
    }
    std::uint64_t s = 0x9e3779b97f4a7c15ULL;
    auto next = [&] {
      s ^= s << 13;
      s ^= s >> 7;
      s ^= s << 17;
      return static_cast<std::size_t>(s % n);
    };
    for (int i = 0; i < 20000; ++i) {
      const auto a = next(), b = next(), c = next();
      check(a, b, c);
    }
  }

  std::shared_ptr<const Data> d_;
};

/// A homomorphism between finite groups, verified on construction.
class GroupHom {
 public:
  /// Verifies the homomorphism law on all pairs; throws AlgebraError naming
  /// the first violating pair.
  static GroupHom from_table(FiniteGroup src, FiniteGroup tgt, std::vector<Elem> map) {
    if (map.size() != src.order()) throw AlgebraError("hom table size does not match source order");
    for (Elem v : map)
      if (v >= tgt.order()) throw AlgebraError("hom table value is not a target element");
    GroupHom f(std::move(src), std::move(tgt), std::move(map));
    if (auto w = f.law_violation())
      throw AlgebraError("not a homomorphism: f(" + f.src_.name(w->first) + "*" +
                         f.src_.name(w->second) + ") != f(" + f.src_.name(w->first) + ")*f(" +
                         f.src_.name(w->second) + ")");
    return f;
  }

  /// Extends an assignment on generators. Throws AlgebraError if the
  /// generators do not generate the source or if the relations of the
  /// source are violated (the message names the violating pair).
  static GroupHom from_generators(FiniteGroup src, FiniteGroup tgt,
                                  const std::vector<std::pair<Elem, Elem>>& images) {
    const std::size_t n = src.order();
    constexpr std::uint32_t kUnset = 0xffffffffu;
    std::vector<std::uint32_t> m(n, kUnset);
    m[src.identity()] = tgt.identity();
    std::vector<Elem> queue{src.identity()};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const Elem x = queue[qi];
      for (auto [g, img] : images) {
        if (g >= n || img >= tgt.order()) throw AlgebraError("generator image out of range");
        const Elem y = src.mul(x, g);
        const auto val = tgt.mul(static_cast<Elem>(m[x]), img);
        if (m[y] == kUnset) {
          m[y] = val;
          queue.push_back(y);
        } else if (m[y] != val) {
          throw AlgebraError("relations violated: " + src.name(x) + "*" + src.name(g) + " = " +
                             src.name(y) + " is sent to both " + tgt.name(static_cast<Elem>(m[y])) +
                             " and " + tgt.name(val));
        }
      }
    }
    if (queue.size() != n) throw AlgebraError("given elements do not generate the source group");
    std::vector<Elem> map(n);
    for (std::size_t i = 0; i < n; ++i) map[i] = static_cast<Elem>(m[i]);
    return from_table(std::move(src), std::move(tgt), std::move(map));
  }

  /// For maps that are homomorphisms by construction (projections,
  /// inclusions, composites). Only the shape is checked.
  static GroupHom unchecked(FiniteGroup src, FiniteGroup tgt, std::vector<Elem> map) {
    if (map.size() != src.order()) throw InvariantBreach("hom table size does not match source");
    return GroupHom(std::move(src), std::move(tgt), std::move(map));
  }

  static GroupHom identity(const FiniteGroup& g) {
    std::vector<Elem> m(g.order());
    std::iota(m.begin(), m.end(), Elem{0});
    return GroupHom(g, g, std::move(m));
  }

  /// The zero map.
  static GroupHom trivial(const FiniteGroup& src, const FiniteGroup& tgt) {
    return GroupHom(src, tgt, std::vector<Elem>(src.order(), tgt.identity()));
  }

  Elem operator()(Elem x) const { return map_[x]; }
  const FiniteGroup& source() const { return src_; }
  const FiniteGroup& target() const { return tgt_; }
  std::span<const Elem> table() const { return map_; }

  /// this ∘ f
  GroupHom after(const GroupHom& f) const {
    if (!(f.target() == src_)) throw AlgebraError("composition of homs with mismatched groups");
    std::vector<Elem> m(f.source().order());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = map_[f(static_cast<Elem>(i))];
    return GroupHom(f.source(), tgt_, std::move(m));
  }

  bool is_injective() const {
    std::vector<bool> seen(tgt_.order(), false);
    for (Elem v : map_) {
      if (seen[v]) return false;
      seen[v] = true;
    }
    return true;
  }
  bool is_surjective() const {
    std::vector<bool> seen(tgt_.order(), false);
    std::size_t hit = 0;
    for (Elem v : map_)
      if (!seen[v]) {
        seen[v] = true;
        ++hit;
      }
    return hit == tgt_.order();
  }
  bool is_trivial() const {
    return std::all_of(map_.begin(), map_.end(), [&](Elem v) { return v == tgt_.identity(); });
  }

  /// First pair (x, y) with f(xy) != f(x) f(y), if any.
  std::optional<std::pair<Elem, Elem>> law_violation() const {
    const std::size_t n = src_.order();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const auto x = static_cast<Elem>(a), y = static_cast<Elem>(b);
        if (map_[src_.mul(x, y)] != tgt_.mul(map_[x], map_[y])) return std::pair{x, y};
      }
    return std::nullopt;
  }

  friend bool operator==(const GroupHom& a, const GroupHom& b) {
    return a.map_ == b.map_ && a.src_ == b.src_ && a.tgt_ == b.tgt_;
  }

 private:
  GroupHom(FiniteGroup src, FiniteGroup tgt, std::vector<Elem> map)
      : src_(std::move(src)), tgt_(std::move(tgt)), map_(std::move(map)) {}

  FiniteGroup src_;
  FiniteGroup tgt_;
  std::vector<Elem> map_;
};

// ---------------------------------------------------------------------------
// Standard groups

inline FiniteGroup trivial_group() { return FiniteGroup(); }

/// Z/n under addition; element k is named "k".
inline FiniteGroup cyclic_group(std::size_t n) {
  if (n == 0) throw AlgebraError("cyclic_group: n must be positive");
  return FiniteGroup::from_operation(n, [n](Elem a, Elem b) { return (a + b) % n; });
}

namespace detail {

using Perm = std::vector<std::uint8_t>;

inline std::string cycle_name(const Perm& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += " ";
      out += std::to_string(j + 1);
      first = false;
      j = p[j];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

inline FiniteGroup group_from_perms(std::vector<Perm> elems) {
  std::sort(elems.begin(), elems.end());
  const std::size_t n = elems.size();
  const std::size_t deg = elems.front().size();
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      // (a*b)(i) = a(b(i)): apply b first.
      Perm c(deg);
      for (std::size_t i = 0; i < deg; ++i) c[i] = elems[a][elems[b][i]];
      auto it = std::lower_bound(elems.begin(), elems.end(), c);
      if (it == elems.end() || *it != c) throw AlgebraError("permutation set is not closed");
      table[a * n + b] = static_cast<Elem>(it - elems.begin());
    }
  std::vector<std::string> names;
  names.reserve(n);
  for (const auto& p : elems) names.push_back(cycle_name(p));
  return FiniteGroup::from_table(n, std::move(table), std::move(names));
}

}  // namespace detail

/// Sym(n) acting on points 1..n, elements in lexicographic order of their
/// image lists (identity first), named in cycle notation.
inline FiniteGroup symmetric_group(std::size_t n) {
  if (n < 1 || n > 5) throw AlgebraError("symmetric_group: n must be in 1..5");
  std::vector<detail::Perm> elems;
  detail::Perm p(n);
  std::iota(p.begin(), p.end(), std::uint8_t{0});
  do elems.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return detail::group_from_perms(std::move(elems));
}

/// Parses cycle notation such as "(1 2 3)(4 5)" or "()" into a permutation
/// of the given degree. Points are 1-based.
inline std::vector<std::uint8_t> parse_cycles(std::string_view text, std::size_t degree) {
  detail::Perm p(degree);
  std::iota(p.begin(), p.end(), std::uint8_t{0});
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == ',' || text[i] == '\t')) ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '(') throw AlgebraError("cycle notation: expected '(' in \"" + std::string(text) + "\"");
    ++i;
    std::vector<std::size_t> cyc;
    for (;;) {
      skip();
      if (i >= text.size()) throw AlgebraError("cycle notation: unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      std::size_t v = 0;
      bool any = false;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        v = v * 10 + static_cast<std::size_t>(text[i] - '0');
        ++i;
        any = true;
      }
      if (!any) throw AlgebraError("cycle notation: expected a point number");
      if (v < 1 || v > degree)
        throw AlgebraError("cycle notation: point " + std::to_string(v) + " exceeds degree " +
                           std::to_string(degree));
      cyc.push_back(v - 1);
    }
    // Compose this cycle after what was read so far (cycles are disjoint in
    // the usual notation, but products of overlapping cycles also work).
    detail::Perm c(degree);
    std::iota(c.begin(), c.end(), std::uint8_t{0});
    for (std::size_t k = 0; k < cyc.size(); ++k)
      c[cyc[k]] = static_cast<std::uint8_t>(cyc[(k + 1) % cyc.size()]);
    detail::Perm r(degree);
    for (std::size_t k = 0; k < degree; ++k) r[k] = p[c[k]];
    p = r;
    skip();
  }
  return p;
}

/// The permutation group generated by the given permutations (cycle notation).
inline FiniteGroup permutation_group(std::size_t degree, const std::vector<std::string>& gens) {
  if (degree < 1 || degree > 12) throw AlgebraError("permutation degree must be in 1..12");
  std::vector<detail::Perm> gp;
  for (const auto& g : gens) gp.push_back(parse_cycles(g, degree));
  detail::Perm id(degree);
  std::iota(id.begin(), id.end(), std::uint8_t{0});
  std::vector<detail::Perm> elems{id};
  std::vector<detail::Perm> sorted{id};
  for (std::size_t qi = 0; qi < elems.size(); ++qi) {
    for (const auto& g : gp) {
      detail::Perm c(degree);
      for (std::size_t i = 0; i < degree; ++i) c[i] = g[elems[qi][i]];
      auto it = std::lower_bound(sorted.begin(), sorted.end(), c);
      if (it == sorted.end() || *it != c) {
        sorted.insert(it, c);
        elems.push_back(c);
        if (elems.size() > kMaxOrder) throw AlgebraError("permutation group exceeds order cap");
      }
    }
  }
  return detail::group_from_perms(std::move(elems));
}

/// Dihedral group of order 2n: rotations r^k are elements 0..n-1, reflections
/// s r^k are n..2n-1.
inline FiniteGroup dihedral_group(std::size_t n) {
  if (n < 1) throw AlgebraError("dihedral_group: n must be positive");
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n; ++k) names.push_back(k == 0 ? "e" : "r" + std::to_string(k));
  for (std::size_t k = 0; k < n; ++k) names.push_back(k == 0 ? "s" : "sr" + std::to_string(k));
  return FiniteGroup::from_operation(
      2 * n,
      [n](Elem a, Elem b) -> Elem {
        // s^i r^j with i in {0,1}; r^j s = s r^-j
        const std::size_t i1 = a / n, j1 = a % n, i2 = b / n, j2 = b % n;
        const std::size_t j = i2 ? (n - j1 + j2) % n : (j1 + j2) % n;
        return static_cast<Elem>(((i1 + i2) % 2) * n + j);
      },
      std::move(names));
}

/// Quaternion group Q8 with elements 1, -1, i, -i, j, -j, k, -k.
inline FiniteGroup quaternion_group() {
  // Encode as (sign, unit) with unit in {1,i,j,k}.
  static constexpr int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int sign_mul[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  return FiniteGroup::from_operation(
      8,
      [](Elem a, Elem b) -> Elem {
        const int ua = a / 2, sa = a % 2, ub = b / 2, sb = b % 2;
        const int s = (sa + sb + sign_mul[ua][ub]) % 2;
        return static_cast<Elem>(unit_mul[ua][ub] * 2 + s);
      },
      {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

/// Relabels carriers: element x of g becomes perm[x]. Used to check that
/// verdicts do not depend on the chosen indexing.
inline FiniteGroup relabel(const FiniteGroup& g, std::span<const Elem> perm) {
  const std::size_t n = g.order();
  if (perm.size() != n) throw AlgebraError("relabel: permutation size mismatch");
  std::vector<Elem> inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[perm[i]] = static_cast<Elem>(i);
  std::vector<Elem> table(n * n);
  std::vector<std::string> names(n);
  for (std::size_t a = 0; a < n; ++a) {
    names[perm[a]] = g.name(static_cast<Elem>(a));
    for (std::size_t b = 0; b < n; ++b)
      table[std::size_t{perm[a]} * n + perm[b]] = perm[g.mul(static_cast<Elem>(a), static_cast<Elem>(b))];
  }
  return FiniteGroup::from_table(n, std::move(table), std::move(names));
}

inline std::string describe(const FiniteGroup& g) {
  std::ostringstream os;
  os << "group of order " << g.order() << (g.is_commutative() ? ", abelian" : ", non-abelian")
     << ", exponent " << g.exponent();
  return os.str();
}

}  // namespace xmodkit
