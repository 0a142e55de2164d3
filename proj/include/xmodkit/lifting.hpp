#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "xmodkit/action.hpp"
#include "xmodkit/construct.hpp"
#include "xmodkit/error.hpp"
#include "xmodkit/group.hpp"
#include "xmodkit/hom_search.hpp"
#include "xmodkit/sse.hpp"
#include "xmodkit/words.hpp"
#include "xmodkit/xmod.hpp"

namespace xmodkit {

/// A regular epimorphism f: source ->> target of crossed modules.
struct XModEpi {
  CrossedModule source;
  CrossedModule target;
  XModMorphism f;
};

/// (Q, Q ⋊ P, conjugation, k) for a split extension Q ↣ E ⇄ P.
inline CrossedModule normal_inclusion(const SplitExtension& ext) {
  return CrossedModule(GroupAction::conjugation_on(ext.k), ext.k);
}

enum class LiftStatus { kSuccess, kPrecondition, kLiftUnavailable, kNoEquivariantSection, kBudgetExhausted, kInternalError };

inline const char* to_string(LiftStatus s) {
  switch (s) {
    case LiftStatus::kSuccess: return "success";
    case LiftStatus::kPrecondition: return "precondition";
    case LiftStatus::kLiftUnavailable: return "lift-unavailable";
    case LiftStatus::kNoEquivariantSection: return "no-equivariant-section";
    case LiftStatus::kBudgetExhausted: return "budget-exhausted";
    case LiftStatus::kInternalError: return "internal-error";
  }
  return "?";
}

struct CheckedEquation {
  std::string label;
  bool passed = false;
  std::string detail;
};

struct SectionCertificate {
  LiftStatus status = LiftStatus::kPrecondition;
  std::string message;
  /// target -> source, present only on success.
  std::optional<XModMorphism> section;
  std::vector<CheckedEquation> equations;
  std::size_t nodes = 0;

  bool all_passed() const {
    for (const auto& e : equations)
      if (!e.passed) return false;
    return true;
  }
  bool ok() const { return status == LiftStatus::kSuccess && all_passed() && section.has_value(); }

  const CheckedEquation* find(std::string_view label) const {
    for (const auto& e : equations)
      if (e.label == label) return &e;
    return nullptr;
  }
};

struct LiftOptions {
  std::size_t budget = HomSearchOptions{}.budget;
  /// Ternary word audit length for the equivariance of the section.
  std::size_t ternary_len = 8;
  /// Binary word audit length on each of the two injections.
  std::size_t binary_len = 4;
};

namespace detail {

inline SectionCertificate fail(SectionCertificate c, LiftStatus s, std::string msg) {
  c.status = s;
  c.message = std::move(msg);
  c.section.reset();
  return c;
}

inline LiftStatus from_search(SearchStatus s, LiftStatus none) {
  return s == SearchStatus::kBudgetExhausted ? LiftStatus::kBudgetExhausted : none;
}

inline void add(SectionCertificate& c, std::string label, bool passed, std::string detail = {}) {
  c.equations.push_back({std::move(label), passed, std::move(detail)});
}

/// First element where two homs with the same type differ.
inline std::optional<Elem> first_difference(const GroupHom& a, const GroupHom& b) {
  for (std::size_t x = 0; x < a.source().order(); ++x)
    if (a(static_cast<Elem>(x)) != b(static_cast<Elem>(x))) return static_cast<Elem>(x);
  return std::nullopt;
}

inline std::string equal_or_witness(const GroupHom& a, const GroupHom& b) {
  auto d = first_difference(a, b);
  return d ? "differs at " + a.source().name(*d) : std::string{};
}

/// g_T ∘ ψ̃_target = ψ̃_source ∘ (g_G ⋄ g_T) on one word over (E, Q).
inline bool equivariant_on(const CrossedModule& target, const CrossedModule& source, const XModMorphism& g,
                           const Word& w) {
  const FactorSignature eq{target.g(), target.t()};
  const FactorSignature gt{source.g(), source.t()};
  const GroupHom maps[] = {g.f_g, g.f_t};
  return g.f_t(target.core(w)) == source.core(map_slots(eq, gt, w, maps));
}

/// The word-level equivariance audits on words supported on the first
/// injection (P ⋄ Q via s), the second (Q ⋄ Q via k), and on the ternary
/// cosmash P ⋄ Q ⋄ Q regrouped through (P + Q) ⋄ Q.
inline void audit_equivariance_words(SectionCertificate& c, const SplitExtension& ext, const CrossedModule& target,
                                     const CrossedModule& source, const XModMorphism& g, const LiftOptions& opt) {
  const FactorSignature eq{ext.total(), ext.kernel()};
  const FiniteGroup& p = ext.base();
  const FiniteGroup& q = ext.kernel();
  const GroupHom id_q = GroupHom::identity(q);

  auto binary = [&](const std::string& label, const FactorSignature& sig, const GroupHom& into) {
    std::size_t words = 0;
    std::optional<Word> bad;
    const GroupHom maps[] = {into, id_q};
    for_each_word(sig, opt.binary_len, Membership::kBinaryCosmash, [&](const Word& w) {
      ++words;
      if (!equivariant_on(target, source, g, map_slots(sig, eq, w, maps))) bad = w;
      return !bad;
    });
    add(c, label, !bad,
        bad ? "fails on " + format_word(sig, *bad) : std::to_string(words) + " words");
  };
  binary("equivariance-first-injection", FactorSignature{p, q}, ext.s);
  binary("equivariance-second-injection", FactorSignature{q, q}, ext.k);

  const FactorSignature pqq{p, q, q};
  std::size_t words = 0;
  std::optional<Word> bad;
  for_each_word(pqq, opt.ternary_len, Membership::kTernaryCosmash, [&](const Word& w) {
    ++words;
    const Word regrouped = apply_regrouped(embed_j(pqq, w), eq, ext.s, ext.k, id_q);
    if (!in_binary_cosmash(eq, regrouped)) throw InvariantBreach("regrouped ternary word left the cosmash");
    if (!equivariant_on(target, source, g, regrouped)) bad = w;
    return !bad;
  });
  add(c, "ternary-equivariance", !bad, bad ? "fails on " + format_word(pqq, *bad) : std::to_string(words) + " words");
}

inline std::optional<std::string> epi_precondition(const XModEpi& e) {
  if (auto r = check_morphism(e.f, e.source, e.target); !r.ok()) return "f is not a morphism (" + r.failure + ")";
  if (!e.f.f_t.is_surjective()) return "f_T is not surjective";
  if (!e.f.f_g.is_surjective()) return "f_G is not surjective";
  if (!check_axioms(e.source).ok()) return "source fails the crossed-module axioms";
  return std::nullopt;
}

}  // namespace detail

/// A section of an epi onto the normal-inclusion crossed module of `ext`,
/// built in four steps: a lift g1 of s over f_G; an equivariant section g_T
/// of f_T for the P-action through g1; g_G(q, p) = ∂(g_T(q)) g1(p); then
/// exhaustive verification and word audits.
inline SectionCertificate projective_section(const XModEpi& e, const SplitExtension& ext,
                                             const LiftOptions& opt = {}) {
  using detail::add;
  SectionCertificate c;
  if (auto v = ext.violation()) return detail::fail(c, LiftStatus::kPrecondition, "target extension: " + *v);
  if (!(e.target.t() == ext.kernel()) || !(e.target.g() == ext.total()) || !(e.target.boundary() == ext.k) ||
      !(e.target.action() == GroupAction::conjugation_on(ext.k)))
    return detail::fail(c, LiftStatus::kPrecondition, "target is not the normal inclusion of the given extension");
  if (auto v = detail::epi_precondition(e)) return detail::fail(c, LiftStatus::kPrecondition, *v);

  const FiniteGroup& t = e.source.t();
  const FiniteGroup& g = e.source.g();
  const FiniteGroup& q = ext.kernel();
  const FiniteGroup& p = ext.base();
  const GroupHom& f_t = e.f.f_t;
  const GroupHom& f_g = e.f.f_g;

  // (i)
  const HomFind g1f = find_hom(p, g, lift_through(f_g, ext.s), opt.budget);
  c.nodes += g1f.nodes;
  if (!g1f.hom)
    return detail::fail(c, detail::from_search(g1f.status, LiftStatus::kLiftUnavailable),
                        "P-lift unavailable: no g1 with f_G g1 = s");
  const GroupHom g1 = *g1f.hom;
  add(c, "lifting-over-fG", f_g.after(g1) == ext.s, detail::equal_or_witness(f_g.after(g1), ext.s));

  // (ii) g_T as the kernel part of a section in SSE_P.
  const GroupAction beta = e.source.action().along(g1);
  const GroupAction psi = action_from_extension(ext);
  const SplitExtension src_sd = semidirect_product(beta);
  const SplitExtension tgt_sd = semidirect_product(psi);
  std::vector<Elem> ft_p(src_sd.total().order());
  for (std::size_t u = 0; u < ft_p.size(); ++u) {
    const auto tt = static_cast<Elem>(u % t.order()), pp = static_cast<Elem>(u / t.order());
    ft_p[u] = sd_pair(psi, f_t(tt), pp);
  }
  const SSEMorphism lifted =
      make_sse_morphism(src_sd, tgt_sd, GroupHom::from_table(src_sd.total(), tgt_sd.total(), std::move(ft_p)));
  const SectionSearch sec = brute_force_section(lifted, opt.budget);
  if (!sec.section)
    return detail::fail(c, detail::from_search(sec.status, LiftStatus::kNoEquivariantSection),
                        "no equivariant section of f_T");
  const GroupHom g_t = sec.section->f;
  add(c, "section-of-fT", f_t.after(g_t) == GroupHom::identity(q),
      detail::equal_or_witness(f_t.after(g_t), GroupHom::identity(q)));
  {
    std::string bad;
    for (std::size_t pi = 0; pi < p.order() && bad.empty(); ++pi)
      for (std::size_t qi = 0; qi < q.order(); ++qi) {
        const auto pe = static_cast<Elem>(pi), qe = static_cast<Elem>(qi);
        if (g_t(psi(pe, qe)) != beta(pe, g_t(qe))) {
          bad = "fails at (" + p.name(pe) + ", " + q.name(qe) + ")";
          break;
        }
      }
    add(c, "fT-section-equivariance", bad.empty(), bad);
  }

  // (iii)
  const FiniteGroup& en = ext.total();
  std::vector<Elem> gg(en.order());
  for (std::size_t u = 0; u < gg.size(); ++u) {
    const auto x = static_cast<Elem>(u);
    const Elem pe = ext.p(x);
    const auto qe = ext.k_preimage(en.mul(x, en.inv(ext.s(pe))));
    if (!qe) throw InvariantBreach("split extension decomposition failed");
    gg[u] = g.mul(e.source.boundary()(g_t(*qe)), g1(pe));
  }
  const GroupHom g_g = GroupHom::unchecked(en, g, std::move(gg));
  const auto law = g_g.law_violation();
  add(c, "coequalizer-formula", !law,
      law ? "not multiplicative at (" + en.name(law->first) + ", " + en.name(law->second) + ")" : "");
  if (law) return detail::fail(c, LiftStatus::kInternalError, "g_G is not a homomorphism");

  // (iv)
  add(c, "section-of-fG", f_g.after(g_g) == GroupHom::identity(en),
      detail::equal_or_witness(f_g.after(g_g), GroupHom::identity(en)));
  const XModMorphism sec_m{g_t, g_g};
  const MorphismReport mr = check_morphism(sec_m, e.target, e.source);
  add(c, "boundary-square", mr.failure != "boundary-square" && mr.failure != "types", mr.failure);
  add(c, "equivariance", mr.ok(), mr.ok() ? "" : mr.failure);
  detail::audit_equivariance_words(c, ext, e.target, e.source, sec_m, opt);

  if (!c.all_passed()) return detail::fail(c, LiftStatus::kInternalError, "constructed section failed verification");
  c.status = LiftStatus::kSuccess;
  c.section = sec_m;
  return c;
}

/// A section of an epi between normal-inclusion crossed modules, built from
/// the induced map h on cokernels, the pullback Q ×_{Coker k'} Coker k, a
/// section of h and a lift over the comparison u.
inline SectionCertificate pullback_section(const XModEpi& e, const LiftOptions& opt = {}) {
  using detail::add;
  SectionCertificate c;
  for (const CrossedModule* xm : {&e.source, &e.target})
    if (!xm->boundary().is_injective() || !(xm->action() == GroupAction::conjugation_on(xm->boundary())))
      return detail::fail(c, LiftStatus::kPrecondition, "both crossed modules must be normal inclusions");
  if (auto v = detail::epi_precondition(e)) return detail::fail(c, LiftStatus::kPrecondition, *v);

  const GroupHom& k = e.source.boundary();
  const GroupHom& k2 = e.target.boundary();
  const GroupHom& f_g = e.f.f_g;
  const FiniteGroup& g = e.source.g();
  const FiniteGroup& q = e.target.g();

  const Quotient ck = quotient(g, image(k));
  const Quotient ck2 = quotient(q, image(k2));
  const GroupHom h = induced_on_quotient(ck, ck2.projection.after(f_g));
  const Pullback pb = pullback(ck2.projection, h);

  std::vector<Elem> um(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) {
    auto idx = pb.find(f_g(static_cast<Elem>(x)), ck.projection(static_cast<Elem>(x)));
    if (!idx) throw InvariantBreach("comparison u does not land in the pullback");
    um[x] = *idx;
  }
  const GroupHom u = GroupHom::from_table(g, pb.group, std::move(um));
  add(c, "regular-pushout", u.is_surjective(), u.is_surjective() ? "" : "comparison u is not surjective");
  if (!u.is_surjective()) return detail::fail(c, LiftStatus::kInternalError, "comparison u is not surjective");

  const HomFind jz = find_section(h, opt.budget);
  c.nodes += jz.nodes;
  if (!jz.hom)
    return detail::fail(c, detail::from_search(jz.status, LiftStatus::kLiftUnavailable),
                        "projectivity-supplied lift unavailable: no section of the cokernel map h");
  add(c, "section-of-h", h.after(*jz.hom) == GroupHom::identity(ck2.group));

  std::vector<Elem> jm(q.order());
  for (std::size_t x = 0; x < q.order(); ++x) {
    const auto xe = static_cast<Elem>(x);
    auto idx = pb.find(xe, (*jz.hom)(ck2.projection(xe)));
    if (!idx) throw InvariantBreach("j_Q does not land in the pullback");
    jm[x] = *idx;
  }
  const GroupHom j_q = GroupHom::unchecked(q, pb.group, std::move(jm));
  add(c, "pullback-map-jQ", !j_q.law_violation());

  const HomFind gf = find_hom(q, g, lift_through(u, j_q), opt.budget);
  c.nodes += gf.nodes;
  if (!gf.hom)
    return detail::fail(c, detail::from_search(gf.status, LiftStatus::kLiftUnavailable),
                        "projectivity-supplied lift unavailable: no g_G with u g_G = j_Q");
  const GroupHom g_g = *gf.hom;
  add(c, "lift-over-u", u.after(g_g) == j_q);

  std::vector<Elem> tm(e.target.t().order());
  std::vector<std::optional<Elem>> kback(g.order());
  for (std::size_t x = 0; x < e.source.t().order(); ++x) kback[k(static_cast<Elem>(x))] = static_cast<Elem>(x);
  for (std::size_t x = 0; x < tm.size(); ++x) {
    const auto v = kback[g_g(k2(static_cast<Elem>(x)))];
    if (!v) return detail::fail(c, LiftStatus::kInternalError, "g_G does not restrict to the kernels");
    tm[x] = *v;
  }
  const GroupHom g_t = GroupHom::from_table(e.target.t(), e.source.t(), std::move(tm));

  add(c, "section-of-fT", e.f.f_t.after(g_t) == GroupHom::identity(e.target.t()),
      detail::equal_or_witness(e.f.f_t.after(g_t), GroupHom::identity(e.target.t())));
  add(c, "section-of-fG", f_g.after(g_g) == GroupHom::identity(q),
      detail::equal_or_witness(f_g.after(g_g), GroupHom::identity(q)));
  const XModMorphism sec_m{g_t, g_g};
  const MorphismReport mr = check_morphism(sec_m, e.target, e.source);
  add(c, "boundary-square", mr.failure != "boundary-square" && mr.failure != "types", mr.failure);
  add(c, "equivariance", mr.ok(), mr.ok() ? "" : mr.failure);

  if (!c.all_passed()) return detail::fail(c, LiftStatus::kInternalError, "constructed section failed verification");
  c.status = LiftStatus::kSuccess;
  c.section = sec_m;
  return c;
}

/// Exhaustive search for a section of an arbitrary epi of crossed modules:
/// sections g_G of f_G in search order, each paired with the least g_T that
/// makes (g_T, g_G) a morphism.
struct XModSectionSearch {
  SearchStatus status = SearchStatus::kNone;
  std::optional<XModMorphism> section;
  std::size_t nodes = 0;
};

inline XModSectionSearch xmod_section_search(const XModEpi& e, std::size_t budget = HomSearchOptions{}.budget) {
  if (auto v = detail::epi_precondition(e)) throw AlgebraError("xmod_section_search: " + *v);
  XModSectionSearch r;
  const CrossedModule& src = e.source;
  const CrossedModule& tgt = e.target;
  HomSearchOptions opt;
  opt.budget = budget;
  const auto gs = enumerate_homs(tgt.g(), src.g(), opt, lift_through(e.f.f_g, GroupHom::identity(tgt.g())));
  r.nodes = gs.nodes;
  std::vector<std::vector<Elem>> fibers(tgt.t().order());
  for (std::size_t x = 0; x < src.t().order(); ++x) fibers[e.f.f_t(static_cast<Elem>(x))].push_back(static_cast<Elem>(x));
  for (const auto& g_g : gs.homs) {
    Constraints c;
    c.candidates = [&](Elem x) {
      std::vector<Elem> out;
      const Elem want = g_g(tgt.boundary()(x));
      for (Elem y : fibers[x])
        if (src.boundary()(y) == want) out.push_back(y);
      return out;
    };
    c.accept = [&](std::span<const Elem> m) {
      for (std::size_t gi = 0; gi < tgt.g().order(); ++gi)
        for (std::size_t ti = 0; ti < tgt.t().order(); ++ti) {
          const auto ge = static_cast<Elem>(gi), te = static_cast<Elem>(ti);
          if (src.boundary()(m[te]) != g_g(tgt.boundary()(te))) return false;
          if (m[tgt.action()(ge, te)] != src.action()(g_g(ge), m[te])) return false;
        }
      return true;
    };
    const HomFind t = find_hom(tgt.t(), src.t(), c, budget);
    r.nodes += t.nodes;
    if (t.hom) {
      r.status = SearchStatus::kFound;
      r.section = XModMorphism{*t.hom, g_g};
      if (!check_morphism(*r.section, tgt, src).ok()) throw InvariantBreach("searched section is not a morphism");
      return r;
    }
    if (t.status == SearchStatus::kBudgetExhausted || r.nodes > budget) {
      r.status = SearchStatus::kBudgetExhausted;
      return r;
    }
  }
  r.status = gs.budget_exhausted ? SearchStatus::kBudgetExhausted : SearchStatus::kNone;
  return r;
}

// ---------------------------------------------------------------------------
// Free crossed modules as word evaluators

/// The morphism L(H) -> xm induced by f: H -> T and g: H -> G, where L(H) is
/// the free crossed module (H♭H, H+H, conjugation, inclusion). Words over
/// (H, H) stand for elements of H + H; flat words for elements of H♭H.
struct FreeXModMorphism {
  FiniteGroup h;
  CrossedModule target;
  GroupHom f;
  GroupHom g;
  FactorSignature signature;
  WordHom f_g;

  /// [g, ∂ f] on any word.
  Elem eval_g(const Word& w) const { return evaluate(w, f_g); }

  /// Kernel component of [s g, k f] in T ⋊ G, on flat words.
  Elem eval_t(const Word& w) const {
    if (!in_flat(signature, w)) throw AlgebraError("f_T is defined on flat words only");
    const SplitExtension& ext = target.extension();
    const Elem v = evaluate_with(w, ext.total(), [&](Letter l) {
      return l.slot == 0 ? ext.s(g(l.elem)) : ext.k(f(l.elem));
    });
    auto back = ext.k_preimage(v);
    if (!back) throw InvariantBreach("flat word evaluates outside the kernel of T ⋊ G");
    return *back;
  }
};

inline FreeXModMorphism free_universal_morphism(const FiniteGroup& h, const CrossedModule& xm, const GroupHom& f,
                                                const GroupHom& g) {
  if (!(f.source() == h) || !(f.target() == xm.t())) throw AlgebraError("f must map H to T");
  if (!(g.source() == h) || !(g.target() == xm.g())) throw AlgebraError("g must map H to G");
  if (!check_axioms(xm).ok()) throw AlgebraError("target fails the crossed-module axioms");
  FactorSignature sig{h, h};
  WordHom fg(sig, xm.g(), {g, xm.boundary().after(f)});
  return {h, xm, f, g, sig, std::move(fg)};
}

struct FreeMorphismAudit {
  std::size_t flat_words = 0;
  std::size_t equivariance_pairs = 0;
  /// ∂ f_T(w) != f_G(w).
  std::optional<Word> boundary_violation;
  /// f_T(η h) != f(h).
  std::optional<Elem> unit_violation;
  /// f_T(u w u^-1) != α(f_G u)(f_T w).
  std::optional<std::pair<Word, Word>> equivariance_violation;
  bool ok() const { return !boundary_violation && !unit_violation && !equivariance_violation; }
};

/// ∂ f_T = f_G on every flat word of length <= flat_len; the unit law on
/// every h; equivariance for acting words of length <= 2 on flat words of
/// length <= equiv_len.
inline FreeMorphismAudit audit_free_morphism(const FreeXModMorphism& m, std::size_t flat_len = 6,
                                             std::size_t equiv_len = 4) {
  FreeMorphismAudit a;
  const auto& sig = m.signature;
  const auto& xm = m.target;
  for (std::size_t x = 0; x < m.h.order() && !a.unit_violation; ++x) {
    const Word eta = letter_word(sig, 1, static_cast<Elem>(x));
    if (m.eval_t(eta) != m.f(static_cast<Elem>(x))) a.unit_violation = static_cast<Elem>(x);
  }
  for_each_word(sig, flat_len, Membership::kFlat, [&](const Word& w) {
    ++a.flat_words;
    if (xm.boundary()(m.eval_t(w)) != m.eval_g(w)) a.boundary_violation = w;
    return !a.boundary_violation;
  });
  std::vector<Word> acting;
  for_each_word(sig, 2, Membership::kAll, [&](const Word& u) {
    acting.push_back(u);
    return true;
  });
  for_each_word(sig, equiv_len, Membership::kFlat, [&](const Word& w) {
    const Elem ft = m.eval_t(w);
    for (const Word& u : acting) {
      ++a.equivariance_pairs;
      const Word conj = concat(sig, concat(sig, u, w), inverse(sig, u));
      if (m.eval_t(conj) != xm.action()(m.eval_g(u), ft)) {
        a.equivariance_violation = std::pair{u, w};
        return false;
      }
    }
    return true;
  });
  return a;
}

struct HomBijectionReport {
  std::size_t pairs = 0;
  std::size_t distinct_evaluators = 0;
  bool round_trip = true;
  bool audits = true;
  bool ok() const { return round_trip && audits && distinct_evaluators == pairs; }
};

/// Enumerates Hom(H, T) × Hom(H, G), builds each induced morphism out of
/// L(H), reads (f, g) back through η and ι₁, and fingerprints evaluators on
/// words of length 1.
inline HomBijectionReport hom_bijection_check(const FiniteGroup& h, const CrossedModule& xm,
                                              std::size_t flat_len = 6,
                                              const HomSearchOptions& opt = {}) {
  HomBijectionReport r;
  auto ft = enumerate_homs(h, xm.t(), opt);
  auto fg = enumerate_homs(h, xm.g(), opt);
  if (ft.budget_exhausted || fg.budget_exhausted) throw BudgetExhausted("hom_bijection_check enumeration");
  std::set<std::vector<Elem>> prints;
  for (const auto& f : ft.homs)
    for (const auto& g : fg.homs) {
      ++r.pairs;
      const FreeXModMorphism m = free_universal_morphism(h, xm, f, g);
      std::vector<Elem> back_f(h.order()), back_g(h.order()), print;
      for (std::size_t x = 0; x < h.order(); ++x) {
        back_f[x] = m.eval_t(letter_word(m.signature, 1, static_cast<Elem>(x)));
        back_g[x] = m.eval_g(letter_word(m.signature, 0, static_cast<Elem>(x)));
        print.push_back(back_f[x]);
        print.push_back(back_g[x]);
      }
      if (!(GroupHom::unchecked(h, xm.t(), back_f) == f) || !(GroupHom::unchecked(h, xm.g(), back_g) == g))
        r.round_trip = false;
      prints.insert(std::move(print));
      if (!audit_free_morphism(m, flat_len).ok()) r.audits = false;
    }
  r.distinct_evaluators = prints.size();
  return r;
}

}  // namespace xmodkit
