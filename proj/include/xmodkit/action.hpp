#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xmodkit/construct.hpp"
#include "xmodkit/error.hpp"
#include "xmodkit/group.hpp"
#include "xmodkit/words.hpp"

namespace xmodkit {

/// An action of A on X by automorphisms, stored as a table act[a][x].
class GroupAction {
 public:
  GroupAction() = default;

  /// Checks that every act(a) is an automorphism and that a -> act(a) is
  /// multiplicative.
  static GroupAction from_table(FiniteGroup actor, FiniteGroup carried, std::vector<Elem> table) {
    GroupAction a(std::move(actor), std::move(carried), std::move(table));
    if (auto v = a.violation()) throw AlgebraError("invalid action: " + *v);
    return a;
  }

  /// For actions that are valid by construction (conjugation, pullbacks of
  /// valid actions). Only the shape is checked.
  static GroupAction unchecked(FiniteGroup actor, FiniteGroup carried, std::vector<Elem> table) {
    return GroupAction(std::move(actor), std::move(carried), std::move(table));
  }

  /// Extends generator permutations multiplicatively; rejects inconsistent
  /// assignments.
  static GroupAction from_generators(FiniteGroup actor, FiniteGroup carried,
                                     const std::vector<std::pair<Elem, std::vector<Elem>>>& gens) {
    const std::size_t na = actor.order(), nx = carried.order();
    for (auto& [g, perm] : gens)
      if (g >= na || perm.size() != nx) throw AlgebraError("action generator has the wrong shape");
    std::vector<std::vector<Elem>> acts(na);
    std::vector<Elem> id(nx);
    for (std::size_t x = 0; x < nx; ++x) id[x] = static_cast<Elem>(x);
    acts[actor.identity()] = id;
    std::vector<Elem> queue{actor.identity()};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const Elem a = queue[qi];
      for (auto& [g, perm] : gens) {
        const Elem b = actor.mul(a, g);
        std::vector<Elem> comp(nx);
        for (std::size_t x = 0; x < nx; ++x) comp[x] = acts[a][perm[x]];
        if (acts[b].empty()) {
          acts[b] = std::move(comp);
          queue.push_back(b);
        } else if (acts[b] != comp) {
          throw AlgebraError("action relations violated at " + actor.name(a) + "*" + actor.name(g));
        }
      }
    }
    if (queue.size() != na) throw AlgebraError("action generators do not generate the actor");
    std::vector<Elem> table;
    table.reserve(na * nx);
    for (auto& row : acts) table.insert(table.end(), row.begin(), row.end());
    return from_table(std::move(actor), std::move(carried), std::move(table));
  }

  static GroupAction trivial(const FiniteGroup& actor, const FiniteGroup& carried) {
    std::vector<Elem> t(actor.order() * carried.order());
    for (std::size_t a = 0; a < actor.order(); ++a)
      for (std::size_t x = 0; x < carried.order(); ++x) t[a * carried.order() + x] = static_cast<Elem>(x);
    return unchecked(actor, carried, std::move(t));
  }

  /// G acting on itself by g . x = g x g^-1.
  static GroupAction conjugation(const FiniteGroup& g) {
    std::vector<Elem> t(g.order() * g.order());
    for (std::size_t a = 0; a < g.order(); ++a)
      for (std::size_t x = 0; x < g.order(); ++x)
        t[a * g.order() + x] = g.conj(static_cast<Elem>(a), static_cast<Elem>(x));
    return unchecked(g, g, std::move(t));
  }

  /// G acting by conjugation on a subgroup given by an injective inclusion.
  /// Throws if the image is not normal.
  static GroupAction conjugation_on(const GroupHom& inclusion) {
    const FiniteGroup& g = inclusion.target();
    const FiniteGroup& n = inclusion.source();
    std::vector<std::optional<Elem>> back(g.order());
    for (std::size_t x = 0; x < n.order(); ++x) back[inclusion(static_cast<Elem>(x))] = static_cast<Elem>(x);
    std::vector<Elem> t(g.order() * n.order());
    for (std::size_t a = 0; a < g.order(); ++a)
      for (std::size_t x = 0; x < n.order(); ++x) {
        const Elem c = g.conj(static_cast<Elem>(a), inclusion(static_cast<Elem>(x)));
        if (!back[c])
          throw AlgebraError("subgroup not normal: " + g.name(static_cast<Elem>(a)) + " conjugates " +
                             g.name(inclusion(static_cast<Elem>(x))) + " to " + g.name(c));
        t[a * n.order() + x] = *back[c];
      }
    return unchecked(g, n, std::move(t));
  }

  const FiniteGroup& actor() const { return actor_; }
  const FiniteGroup& carried() const { return carried_; }
  Elem operator()(Elem a, Elem x) const { return table_[std::size_t{a} * carried_.order() + x]; }
  std::span<const Elem> table() const { return table_; }

  bool is_trivial() const {
    for (std::size_t a = 0; a < actor_.order(); ++a)
      for (std::size_t x = 0; x < carried_.order(); ++x)
        if ((*this)(static_cast<Elem>(a), static_cast<Elem>(x)) != x) return false;
    return true;
  }

  /// The action of B obtained along f: B -> A.
  GroupAction along(const GroupHom& f) const {
    if (!(f.target() == actor_)) throw AlgebraError("action pullback: codomain is not the actor");
    std::vector<Elem> t(f.source().order() * carried_.order());
    for (std::size_t b = 0; b < f.source().order(); ++b)
      for (std::size_t x = 0; x < carried_.order(); ++x)
        t[b * carried_.order() + x] = (*this)(f(static_cast<Elem>(b)), static_cast<Elem>(x));
    return unchecked(f.source(), carried_, std::move(t));
  }

  /// Description of the first failed action law, if any.
  std::optional<std::string> violation() const {
    const std::size_t na = actor_.order(), nx = carried_.order();
    if (table_.size() != na * nx) return "table has the wrong size";
    for (Elem v : table_)
      if (v >= nx) return "table entry out of range";
    for (std::size_t x = 0; x < nx; ++x)
      if ((*this)(actor_.identity(), static_cast<Elem>(x)) != x)
        return "identity acts nontrivially on " + carried_.name(static_cast<Elem>(x));
    for (std::size_t a = 0; a < na; ++a) {
      const auto ea = static_cast<Elem>(a);
      std::vector<bool> hit(nx, false);
      for (std::size_t x = 0; x < nx; ++x) hit[(*this)(ea, static_cast<Elem>(x))] = true;
      for (bool h : hit)
        if (!h) return "action of " + actor_.name(ea) + " is not bijective";
      for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t y = 0; y < nx; ++y) {
          const auto ex = static_cast<Elem>(x), ey = static_cast<Elem>(y);
          if ((*this)(ea, carried_.mul(ex, ey)) != carried_.mul((*this)(ea, ex), (*this)(ea, ey)))
            return "action of " + actor_.name(ea) + " is not a homomorphism at (" + carried_.name(ex) +
                   ", " + carried_.name(ey) + ")";
        }
    }
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 0; b < na; ++b) {
        const auto ea = static_cast<Elem>(a), eb = static_cast<Elem>(b);
        const Elem ab = actor_.mul(ea, eb);
        for (std::size_t x = 0; x < nx; ++x) {
          const auto ex = static_cast<Elem>(x);
          if ((*this)(ab, ex) != (*this)(ea, (*this)(eb, ex)))
            return "act(" + actor_.name(ea) + "*" + actor_.name(eb) + ") differs from the composite";
        }
      }
    return std::nullopt;
  }

  friend bool operator==(const GroupAction& a, const GroupAction& b) {
    return a.actor_ == b.actor_ && a.carried_ == b.carried_ && a.table_ == b.table_;
  }

 private:
  GroupAction(FiniteGroup actor, FiniteGroup carried, std::vector<Elem> table)
      : actor_(std::move(actor)), carried_(std::move(carried)), table_(std::move(table)) {
    if (table_.size() != actor_.order() * carried_.order())
      throw AlgebraError("action table has the wrong size");
  }

  FiniteGroup actor_;
  FiniteGroup carried_;
  std::vector<Elem> table_{0};
};

/// X --k--> E <--s-- A with p: E -> A, p s = 1 and k a kernel of p.
struct SplitExtension {
  GroupHom k;
  GroupHom p;
  GroupHom s;

  SplitExtension(GroupHom k_, GroupHom p_, GroupHom s_)
      : k(std::move(k_)), p(std::move(p_)), s(std::move(s_)) {}

  const FiniteGroup& kernel() const { return k.source(); }
  const FiniteGroup& total() const { return k.target(); }
  const FiniteGroup& base() const { return p.target(); }

  /// Description of the first broken invariant, if any.
  std::optional<std::string> violation() const {
    if (!(k.target() == p.source()) || !(s.source() == p.target()) || !(s.target() == p.source()))
      return "maps do not compose";
    if (!(p.after(s) == GroupHom::identity(base()))) return "p s is not the identity";
    if (!k.is_injective()) return "k is not injective";
    if (image(k) != kernel_elements(p)) return "image of k is not the kernel of p";
    return std::nullopt;
  }

  void validate() const {
    if (auto v = violation()) throw AlgebraError("invalid split extension: " + *v);
  }

  /// Preimage under k; nullopt outside its image.
  std::optional<Elem> k_preimage(Elem e) const {
    if (kinv_.empty()) {
      kinv_.assign(total().order(), kNone);
      for (std::size_t x = 0; x < kernel().order(); ++x) kinv_[k(static_cast<Elem>(x))] = static_cast<Elem>(x);
    }
    if (kinv_[e] == kNone) return std::nullopt;
    return static_cast<Elem>(kinv_[e]);
  }

 private:
  static constexpr std::uint32_t kNone = 0xffffffffu;
  mutable std::vector<std::uint32_t> kinv_;
};

/// X ⋊ A on pairs (x, a), indexed a*|X| + x, with
/// (x,a)(x',a') = (x α(a)(x'), a a').
inline SplitExtension semidirect_product(const GroupAction& alpha) {
  const FiniteGroup& x = alpha.carried();
  const FiniteGroup& a = alpha.actor();
  const std::size_t nx = x.order(), na = a.order();
  if (nx * na > kMaxOrder) throw AlgebraError("semidirect product exceeds the order cap");
  std::vector<std::string> names(nx * na);
  for (std::size_t ai = 0; ai < na; ++ai)
    for (std::size_t xi = 0; xi < nx; ++xi)
      names[ai * nx + xi] = "(" + x.name(static_cast<Elem>(xi)) + "," + a.name(static_cast<Elem>(ai)) + ")";
  const auto e = FiniteGroup::from_operation(
      nx * na,
      [&](Elem u, Elem v) {
        const auto ux = static_cast<Elem>(u % nx), ua = static_cast<Elem>(u / nx);
        const auto vx = static_cast<Elem>(v % nx), va = static_cast<Elem>(v / nx);
        return static_cast<Elem>(a.mul(ua, va) * nx + x.mul(ux, alpha(ua, vx)));
      },
      std::move(names));
  std::vector<Elem> k(nx), s(na), p(nx * na);
  for (std::size_t xi = 0; xi < nx; ++xi) k[xi] = static_cast<Elem>(a.identity() * nx + xi);
  for (std::size_t ai = 0; ai < na; ++ai) s[ai] = static_cast<Elem>(ai * nx + x.identity());
  for (std::size_t u = 0; u < nx * na; ++u) p[u] = static_cast<Elem>(u / nx);
  return SplitExtension{GroupHom::unchecked(x, e, std::move(k)), GroupHom::unchecked(e, a, std::move(p)),
                        GroupHom::unchecked(a, e, std::move(s))};
}

/// The pair (x, a) of the semidirect product built by semidirect_product.
inline Elem sd_pair(const GroupAction& alpha, Elem x, Elem a) {
  return static_cast<Elem>(std::size_t{a} * alpha.carried().order() + x);
}

/// α(a)(x) = k^-1(s(a) k(x) s(a)^-1).
inline GroupAction action_from_extension(const SplitExtension& ext) {
  const FiniteGroup& e = ext.total();
  const std::size_t nx = ext.kernel().order(), na = ext.base().order();
  std::vector<Elem> t(na * nx);
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t x = 0; x < nx; ++x) {
      const Elem c = e.conj(ext.s(static_cast<Elem>(a)), ext.k(static_cast<Elem>(x)));
      auto back = ext.k_preimage(c);
      if (!back) throw InvariantBreach("conjugate escapes the image of k");
      t[a * nx + x] = *back;
    }
  return GroupAction::from_table(ext.base(), ext.kernel(), std::move(t));
}

/// The comparison (x, a) -> k(x) s(a) from the semidirect product of the
/// recovered action into ext, verified to be an isomorphism.
inline GroupHom extension_comparison(const SplitExtension& ext) {
  const GroupAction alpha = action_from_extension(ext);
  const SplitExtension sd = semidirect_product(alpha);
  std::vector<Elem> m(sd.total().order());
  const std::size_t nx = ext.kernel().order();
  for (std::size_t u = 0; u < m.size(); ++u)
    m[u] = ext.total().mul(ext.k(static_cast<Elem>(u % nx)), ext.s(static_cast<Elem>(u / nx)));
  auto f = GroupHom::from_table(sd.total(), ext.total(), std::move(m));
  if (!is_isomorphism(f)) throw InvariantBreach("extension comparison is not bijective");
  return f;
}

/// ψ(w) for w in A ⋄ X: evaluate under [s, k] into E and pull back along k.
inline Elem action_core_eval(const SplitExtension& ext, const Word& w) {
  const FactorSignature sig{ext.base(), ext.kernel()};
  if (!in_binary_cosmash(sig, w)) throw AlgebraError("action core needs a word in the cosmash A ⋄ X");
  const Elem v = evaluate_with(w, ext.total(), [&](Letter l) { return l.slot == 0 ? ext.s(l.elem) : ext.k(l.elem); });
  auto back = ext.k_preimage(v);
  if (!back) throw InvariantBreach("action core value escapes the image of k");
  return *back;
}

/// Direct formula: the product over X-letters x_i of α(a_i)(x_i), where a_i
/// is the product of the A-letters before x_i. On cosmash words this is the
/// multiplicative extension of [a,x] -> α(a)(x) x^-1.
inline Elem action_core_direct(const GroupAction& alpha, const Word& w) {
  const FiniteGroup& a = alpha.actor();
  const FiniteGroup& x = alpha.carried();
  Elem prefix = a.identity();
  Elem acc = x.identity();
  for (Letter l : w.letters) {
    if (l.slot == 0)
      prefix = a.mul(prefix, l.elem);
    else
      acc = x.mul(acc, alpha(prefix, l.elem));
  }
  return acc;
}

struct ConsistencyReport {
  std::size_t words_checked = 0;
  std::optional<Word> mismatch;
  bool ok() const { return !mismatch; }
};

/// Compares action_core_eval over the semidirect product with the direct
/// formula on every cosmash word of length <= max_len.
inline ConsistencyReport action_core_consistency(const GroupAction& alpha, std::size_t max_len) {
  const SplitExtension ext = semidirect_product(alpha);
  const FactorSignature sig{alpha.actor(), alpha.carried()};
  ConsistencyReport r;
  for_each_word(sig, max_len, Membership::kBinaryCosmash, [&](const Word& w) {
    ++r.words_checked;
    if (action_core_eval(ext, w) != action_core_direct(alpha, w)) {
      r.mismatch = w;
      return false;
    }
    return true;
  });
  return r;
}

}  // namespace xmodkit
