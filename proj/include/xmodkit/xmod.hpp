#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xmodkit/action.hpp"
#include "xmodkit/construct.hpp"
#include "xmodkit/error.hpp"
#include "xmodkit/group.hpp"
#include "xmodkit/hom_search.hpp"
#include "xmodkit/words.hpp"

namespace xmodkit {

/// A candidate crossed module (T, G, α, ∂). Construction only checks shapes;
/// the axioms are checked by check_axioms.
class CrossedModule {
 public:
  CrossedModule(GroupAction action, GroupHom boundary)
      : action_(std::move(action)), boundary_(std::move(boundary)) {
    if (!(action_.carried() == boundary_.source()) || !(action_.actor() == boundary_.target()))
      throw AlgebraError("crossed module: action and boundary have different groups");
  }

  const FiniteGroup& t() const { return boundary_.source(); }
  const FiniteGroup& g() const { return boundary_.target(); }
  const GroupAction& action() const { return action_; }
  const GroupHom& boundary() const { return boundary_; }

  /// T ⋊ G, built on first use.
  const SplitExtension& extension() const {
    if (!ext_) ext_ = std::make_shared<const SplitExtension>(semidirect_product(action_));
    return *ext_;
  }

  /// ψ̃ on a word of the cosmash G ⋄ T: evaluated in T ⋊ G when that fits
  /// under the order cap, else by the direct formula.
  Elem core(const Word& w) const {
    if (t().order() * g().order() <= kMaxOrder) return action_core_eval(extension(), w);
    if (!in_binary_cosmash(FactorSignature{g(), t()}, w))
      throw AlgebraError("action core needs a word in the cosmash A ⋄ X");
    return action_core_direct(action_, w);
  }

 private:
  GroupAction action_;
  GroupHom boundary_;
  mutable std::shared_ptr<const SplitExtension> ext_;
};

inline CrossedModule xmod_from_normal_subgroup(const FiniteGroup& g, const ElemSet& n) {
  if (!is_subgroup(g, n)) throw AlgebraError("not a subgroup");
  if (auto w = normality_witness(g, n))
    throw AlgebraError("subgroup not normal: " + g.name(w->first) + " conjugates " + g.name(w->second) +
                       " to " + g.name(g.conj(w->first, w->second)));
  const Subgroup sub = materialize_subgroup(g, n);
  return CrossedModule(GroupAction::conjugation_on(sub.inclusion), sub.inclusion);
}

/// (G, G, conjugation, identity).
inline CrossedModule conjugation_xmod(const FiniteGroup& g) {
  return CrossedModule(GroupAction::conjugation(g), GroupHom::identity(g));
}

/// D(X) = (1, X, trivial, 0).
inline CrossedModule discrete(const FiniteGroup& x) {
  const FiniteGroup e = trivial_group();
  return CrossedModule(GroupAction::trivial(x, e), GroupHom::trivial(e, x));
}

/// Componentwise product of two crossed modules.
struct XModProduct {
  CrossedModule xm;
  Product t, g;
};

inline XModProduct product(const CrossedModule& a, const CrossedModule& b) {
  Product pt = direct_product(a.t(), b.t());
  Product pg = direct_product(a.g(), b.g());
  const std::size_t nt = pt.group.order();
  std::vector<Elem> act(pg.group.order() * nt);
  for (std::size_t gi = 0; gi < pg.group.order(); ++gi)
    for (std::size_t ti = 0; ti < nt; ++ti) {
      const auto g = static_cast<Elem>(gi), t = static_cast<Elem>(ti);
      act[gi * nt + ti] = pt.pair(a.action()(pg.proj1(g), pt.proj1(t)), b.action()(pg.proj2(g), pt.proj2(t)));
    }
  auto alpha = GroupAction::unchecked(pg.group, pt.group, std::move(act));
  auto d = product_map(pt, pg, a.boundary(), b.boundary());
  return {CrossedModule(std::move(alpha), std::move(d)), std::move(pt), std::move(pg)};
}

// ---------------------------------------------------------------------------
// Axioms

struct AxiomReport {
  /// (g, t) with ∂(α(g)(t)) != g ∂(t) g^-1.
  std::optional<std::pair<Elem, Elem>> precrossed_witness;
  /// (t, t') with α(∂t)(t') != t t' t^-1.
  std::optional<std::pair<Elem, Elem>> peiffer_witness;

  bool precrossed() const { return !precrossed_witness; }
  bool peiffer() const { return !peiffer_witness; }
  bool ok() const { return precrossed() && peiffer(); }
};

/// Exhaustive elementwise check; the first violation in (g, t) and (t, t')
/// index order is reported.
inline AxiomReport check_axioms(const CrossedModule& xm) {
  AxiomReport r;
  const auto& t = xm.t();
  const auto& g = xm.g();
  const auto& a = xm.action();
  const auto& d = xm.boundary();
  for (std::size_t gi = 0; gi < g.order() && !r.precrossed_witness; ++gi)
    for (std::size_t ti = 0; ti < t.order(); ++ti) {
      const auto ge = static_cast<Elem>(gi), te = static_cast<Elem>(ti);
      if (d(a(ge, te)) != g.conj(ge, d(te))) {
        r.precrossed_witness = {ge, te};
        break;
      }
    }
  for (std::size_t x = 0; x < t.order() && !r.peiffer_witness; ++x)
    for (std::size_t y = 0; y < t.order(); ++y) {
      const auto xe = static_cast<Elem>(x), ye = static_cast<Elem>(y);
      if (a(d(xe), ye) != t.conj(xe, ye)) {
        r.peiffer_witness = {xe, ye};
        break;
      }
    }
  return r;
}

struct WordAuditReport {
  std::size_t words = 0;
  std::optional<Word> violation;
  bool ok() const { return !violation; }
};

/// Conjugation action core χ̄_A: the codiagonal [1, 1] restricted to A ⋄ A.
inline Elem conjugation_core(const FiniteGroup& a, const Word& w) {
  return evaluate_with(w, a, [](Letter l) { return l.elem; });
}

struct WordLevelReport {
  WordAuditReport condition1;  // over (G, T)
  WordAuditReport condition2;  // over (T, T)
  bool precrossed() const { return condition1.ok(); }
  bool peiffer() const { return condition2.ok(); }
  bool ok() const { return precrossed() && peiffer(); }
};

/// The two axioms as equations of morphisms out of cosmash products,
/// audited on every cosmash word of length <= max_len:
///   χ̄_G (1 ⋄ ∂) = ∂ ψ̃  on G ⋄ T,
///   ψ̃ (∂ ⋄ 1) = χ̄_T    on T ⋄ T.
inline WordLevelReport check_axioms_wordlevel(const CrossedModule& xm, std::size_t max_len) {
  WordLevelReport r;
  const FactorSignature gt{xm.g(), xm.t()};
  const FactorSignature tt{xm.t(), xm.t()};
  const GroupHom id_g = GroupHom::identity(xm.g()), id_t = GroupHom::identity(xm.t());
  const FactorSignature gg{xm.g(), xm.g()};
  for_each_word(gt, max_len, Membership::kBinaryCosmash, [&](const Word& w) {
    ++r.condition1.words;
    const GroupHom maps[] = {id_g, xm.boundary()};
    const Elem lhs = conjugation_core(xm.g(), map_slots(gt, gg, w, maps));
    const Elem rhs = xm.boundary()(xm.core(w));
    if (lhs != rhs) r.condition1.violation = w;
    return lhs == rhs;
  });
  for_each_word(tt, max_len, Membership::kBinaryCosmash, [&](const Word& w) {
    ++r.condition2.words;
    const GroupHom maps[] = {xm.boundary(), id_t};
    const Elem lhs = xm.core(map_slots(tt, gt, w, maps));
    const Elem rhs = conjugation_core(xm.t(), w);
    if (lhs != rhs) r.condition2.violation = w;
    return lhs == rhs;
  });
  return r;
}

/// Ternary condition on (G, T, T): ψ̃ S_{1,2} = ψ̃ S_{2,1} (1 ⋄ ∂ ⋄ 1) on
/// every ternary cosmash word of length <= max_len.
inline WordAuditReport check_ternary(const CrossedModule& xm, std::size_t max_len) {
  WordAuditReport r;
  const FactorSignature gtt{xm.g(), xm.t(), xm.t()};
  const FactorSignature ggt{xm.g(), xm.g(), xm.t()};
  const GroupHom maps[] = {GroupHom::identity(xm.g()), xm.boundary(), GroupHom::identity(xm.t())};
  for_each_word(gtt, max_len, Membership::kTernaryCosmash, [&](const Word& w) {
    ++r.words;
    const Elem lhs = xm.core(fold_S12(gtt, w));
    const Elem rhs = xm.core(fold_S21(ggt, map_slots(gtt, ggt, w, maps)));
    if (lhs != rhs) r.violation = w;
    return lhs == rhs;
  });
  return r;
}

// ---------------------------------------------------------------------------
// Morphisms

struct XModMorphism {
  GroupHom f_t;
  GroupHom f_g;
};

struct MorphismReport {
  /// "types", "boundary-square" or "equivariance"; empty when valid.
  std::string failure;
  /// t for the boundary square; (g, t) for equivariance.
  std::optional<std::pair<Elem, Elem>> witness;
  bool ok() const { return failure.empty(); }
};

inline MorphismReport check_morphism(const XModMorphism& m, const CrossedModule& a, const CrossedModule& b) {
  MorphismReport r;
  if (!(m.f_t.source() == a.t()) || !(m.f_t.target() == b.t()) || !(m.f_g.source() == a.g()) ||
      !(m.f_g.target() == b.g())) {
    r.failure = "types";
    return r;
  }
  for (std::size_t ti = 0; ti < a.t().order(); ++ti) {
    const auto t = static_cast<Elem>(ti);
    if (b.boundary()(m.f_t(t)) != m.f_g(a.boundary()(t))) {
      r.failure = "boundary-square";
      r.witness = {t, t};
      return r;
    }
  }
  for (std::size_t gi = 0; gi < a.g().order(); ++gi)
    for (std::size_t ti = 0; ti < a.t().order(); ++ti) {
      const auto g = static_cast<Elem>(gi), t = static_cast<Elem>(ti);
      if (m.f_t(a.action()(g, t)) != b.action()(m.f_g(g), m.f_t(t))) {
        r.failure = "equivariance";
        r.witness = {g, t};
        return r;
      }
    }
  return r;
}

inline XModMorphism identity_morphism(const CrossedModule& xm) {
  return {GroupHom::identity(xm.t()), GroupHom::identity(xm.g())};
}

inline XModMorphism compose(const XModMorphism& second, const XModMorphism& first) {
  return {second.f_t.after(first.f_t), second.f_g.after(first.f_g)};
}

/// A commuting square of normal-inclusion crossed modules. Equivariance is
/// automatic for conjugation actions; it is asserted here, not assumed.
inline XModMorphism square_to_morphism(const CrossedModule& a, const CrossedModule& b, const GroupHom& f_t,
                                       const GroupHom& f_g) {
  XModMorphism m{f_t, f_g};
  const auto r = check_morphism(m, a, b);
  if (r.failure == "types" || r.failure == "boundary-square")
    throw AlgebraError("square does not commute (" + r.failure + ")");
  if (!r.ok()) throw InvariantBreach("commuting square of normal inclusions is not equivariant");
  return m;
}

// ---------------------------------------------------------------------------
// π₀

/// G / image(∂). Normality of the image is required, not repaired.
inline Quotient pi0(const CrossedModule& xm) {
  const ElemSet im = image(xm.boundary());
  if (auto w = normality_witness(xm.g(), im))
    throw AlgebraError("precrossed violation: image of the boundary is not normal (" + xm.g().name(w->first) +
                       " conjugates " + xm.g().name(w->second) + " out of it)");
  return quotient(xm.g(), im);
}

/// The coequalizer of d(t,g) = g and c(t,g) = ∂(t) g on T ⋊ G: the quotient
/// of G by the normal closure of { d(x) c(x)^-1 }.
inline Quotient pi0_via_coequalizer(const CrossedModule& xm) {
  const SplitExtension& ext = xm.extension();
  const FiniteGroup& g = xm.g();
  const std::size_t nt = xm.t().order();
  std::vector<Elem> rel;
  for (std::size_t u = 0; u < ext.total().order(); ++u) {
    const auto t = static_cast<Elem>(u % nt), gg = static_cast<Elem>(u / nt);
    const Elem d = ext.p(static_cast<Elem>(u));
    const Elem c = g.mul(xm.boundary()(t), gg);
    rel.push_back(g.mul(d, g.inv(c)));
  }
  return quotient(g, normal_closure(g, rel));
}

/// The map between two quotients of G induced by the identity, verified to
/// be an isomorphism.
inline GroupHom quotient_comparison(const Quotient& a, const Quotient& b) {
  auto f = induced_on_quotient(a, b.projection);
  if (!is_isomorphism(f)) throw InvariantBreach("quotient comparison is not bijective");
  return f;
}

/// e(t, g) = ∂(t) g on T ⋊ G. Throws when it fails to be a homomorphism,
/// which happens exactly when the precrossed condition fails.
inline GroupHom retraction_e(const CrossedModule& xm) {
  const SplitExtension& ext = xm.extension();
  const std::size_t nt = xm.t().order();
  std::vector<Elem> m(ext.total().order());
  for (std::size_t u = 0; u < m.size(); ++u)
    m[u] = xm.g().mul(xm.boundary()(static_cast<Elem>(u % nt)), static_cast<Elem>(u / nt));
  try {
    return GroupHom::from_table(ext.total(), xm.g(), std::move(m));
  } catch (const AlgebraError& e) {
    throw AlgebraError(std::string("retraction e is not a homomorphism (precrossed condition fails): ") + e.what());
  }
}

/// The homomorphism π₀(m) between component groups induced by f_G.
inline GroupHom pi0_map(const XModMorphism& m, const Quotient& src, const Quotient& tgt) {
  return induced_on_quotient(src, tgt.projection.after(m.f_g));
}

// ---------------------------------------------------------------------------
// Split short exact sequences

/// kernel --k--> middle <--s-- quotient with f: middle -> quotient.
struct XModSplitSES {
  CrossedModule kernel;
  CrossedModule middle;
  CrossedModule quotient;
  XModMorphism k;
  XModMorphism f;
  XModMorphism s;

  std::optional<std::string> violation() const {
    if (auto r = check_morphism(k, kernel, middle); !r.ok()) return "k: " + r.failure;
    if (auto r = check_morphism(f, middle, quotient); !r.ok()) return "f: " + r.failure;
    if (auto r = check_morphism(s, quotient, middle); !r.ok()) return "s: " + r.failure;
    for (int level = 0; level < 2; ++level) {
      const GroupHom& kk = level ? k.f_g : k.f_t;
      const GroupHom& ff = level ? f.f_g : f.f_t;
      const GroupHom& ss = level ? s.f_g : s.f_t;
      const char* name = level ? "G level" : "T level";
      if (!kk.is_injective()) return std::string(name) + ": k not injective";
      if (image(kk) != kernel_elements(ff)) return std::string(name) + ": image of k is not the kernel of f";
      if (!(ff.after(ss) == GroupHom::identity(ff.target()))) return std::string(name) + ": f s is not the identity";
    }
    return std::nullopt;
  }
};

/// The kernel of a split epimorphism f: xm -> xm'' with section s. Action and
/// boundary restrict to the kernels by equivariance; the restriction is
/// checked.
inline XModSplitSES xmod_kernel(const CrossedModule& xm, const CrossedModule& quot, const XModMorphism& f,
                                const XModMorphism& s) {
  if (auto r = check_morphism(f, xm, quot); !r.ok()) throw AlgebraError("f is not a morphism: " + r.failure);
  if (auto r = check_morphism(s, quot, xm); !r.ok()) throw AlgebraError("s is not a morphism: " + r.failure);
  if (!(f.f_t.after(s.f_t) == GroupHom::identity(quot.t())) ||
      !(f.f_g.after(s.f_g) == GroupHom::identity(quot.g())))
    throw AlgebraError("s is not a section of f");
  const Subgroup kt = kernel(f.f_t);
  const Subgroup kg = kernel(f.f_g);
  std::vector<std::optional<Elem>> back_t(xm.t().order()), back_g(xm.g().order());
  for (std::size_t i = 0; i < kt.group.order(); ++i) back_t[kt.inclusion(static_cast<Elem>(i))] = static_cast<Elem>(i);
  for (std::size_t i = 0; i < kg.group.order(); ++i) back_g[kg.inclusion(static_cast<Elem>(i))] = static_cast<Elem>(i);
  std::vector<Elem> act(kg.group.order() * kt.group.order());
  for (std::size_t gi = 0; gi < kg.group.order(); ++gi)
    for (std::size_t ti = 0; ti < kt.group.order(); ++ti) {
      const Elem v = xm.action()(kg.inclusion(static_cast<Elem>(gi)), kt.inclusion(static_cast<Elem>(ti)));
      if (!back_t[v]) throw AlgebraError("equivariance violation: kernel action escapes the kernel");
      act[gi * kt.group.order() + ti] = *back_t[v];
    }
  std::vector<Elem> d(kt.group.order());
  for (std::size_t ti = 0; ti < kt.group.order(); ++ti) {
    const Elem v = xm.boundary()(kt.inclusion(static_cast<Elem>(ti)));
    if (!back_g[v]) throw AlgebraError("boundary square violation: boundary escapes the kernel");
    d[ti] = *back_g[v];
  }
  CrossedModule k(GroupAction::unchecked(kg.group, kt.group, std::move(act)),
                  GroupHom::unchecked(kt.group, kg.group, std::move(d)));
  XModSplitSES ses{k, xm, quot, XModMorphism{kt.inclusion, kg.inclusion}, f, s};
  if (auto v = ses.violation()) throw InvariantBreach("kernel sequence is not split exact: " + *v);
  return ses;
}

/// a --> a × b --> b with section the second inclusion.
inline XModSplitSES product_sequence(const CrossedModule& a, const CrossedModule& b) {
  const XModProduct p = product(a, b);
  XModMorphism f{p.t.proj2, p.g.proj2};
  XModMorphism s{p.t.inj2, p.g.inj2};
  return xmod_kernel(p.xm, b, f, s);
}

struct ProtoadditivityReport {
  bool split_exact = false;
  std::string failure;
};

/// Applies π₀ levelwise to a split short exact sequence and checks that the
/// result is split short exact.
inline ProtoadditivityReport check_protoadditivity(const XModSplitSES& ses) {
  ProtoadditivityReport r;
  const Quotient qk = pi0(ses.kernel), qm = pi0(ses.middle), qq = pi0(ses.quotient);
  const GroupHom k = pi0_map(ses.k, qk, qm);
  const GroupHom f = pi0_map(ses.f, qm, qq);
  const GroupHom s = pi0_map(ses.s, qq, qm);
  if (!k.is_injective())
    r.failure = "π₀(k) not injective";
  else if (image(k) != kernel_elements(f))
    r.failure = "image of π₀(k) differs from the kernel of π₀(f)";
  else if (!(f.after(s) == GroupHom::identity(qq.group)))
    r.failure = "π₀(f) π₀(s) is not the identity";
  r.split_exact = r.failure.empty();
  return r;
}

struct AdjunctionReport {
  std::size_t hom_pi0 = 0;   // |Hom(π₀ xm, X)|
  std::size_t hom_xmod = 0;  // |Hom_XMod(xm, D X)|
  bool bijective = false;
};

/// Hom(π₀ xm, X) -> Hom_XMod(xm, D X), φ -> (0, φ q), checked bijective by
/// enumerating both sides independently.
inline AdjunctionReport adjunction_check(const CrossedModule& xm, const FiniteGroup& x,
                                         const HomSearchOptions& opt = {}) {
  AdjunctionReport r;
  const Quotient q = pi0(xm);
  const CrossedModule dx = discrete(x);
  auto left = enumerate_homs(q.group, x, opt);
  auto gx = enumerate_homs(xm.g(), x, opt);
  if (left.budget_exhausted || gx.budget_exhausted) throw BudgetExhausted("adjunction enumeration");
  std::vector<GroupHom> right;
  const GroupHom zero_t = GroupHom::trivial(xm.t(), dx.t());
  for (auto& f : gx.homs)
    if (check_morphism({zero_t, f}, xm, dx).ok()) right.push_back(f);
  r.hom_pi0 = left.homs.size();
  r.hom_xmod = right.size();
  std::vector<bool> hit(right.size(), false);
  bool ok = left.homs.size() == right.size();
  for (auto& phi : left.homs) {
    const GroupHom comp = phi.after(q.projection);
    bool found = false;
    for (std::size_t i = 0; i < right.size(); ++i)
      if (right[i] == comp) {
        if (hit[i]) ok = false;
        hit[i] = found = true;
      }
    ok = ok && found;
  }
  r.bijective = ok;
  return r;
}

}  // namespace xmodkit
