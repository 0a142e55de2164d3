#pragma once

#include <algorithm>
#include <cstddef>
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

/// A morphism (f, g) of split extensions over the same base B.
struct SSEMorphism {
  SplitExtension source;
  SplitExtension target;
  GroupHom f;  // X -> X'
  GroupHom g;  // E -> E'

  std::optional<std::string> violation() const {
    if (!(source.base() == target.base())) return "different bases";
    if (!(g.after(source.k) == target.k.after(f))) return "g k != k' f";
    if (!(target.p.after(g) == source.p)) return "p' g != p";
    if (!(g.after(source.s) == target.s)) return "g s != s'";
    return std::nullopt;
  }
};

/// The restriction of g to kernels, for g: E -> E' over B.
inline GroupHom kernel_restriction(const SplitExtension& src, const SplitExtension& tgt, const GroupHom& g) {
  std::vector<Elem> f(src.kernel().order());
  for (std::size_t x = 0; x < f.size(); ++x) {
    auto back = tgt.k_preimage(g(src.k(static_cast<Elem>(x))));
    if (!back) throw AlgebraError("g does not map the kernel into the kernel");
    f[x] = *back;
  }
  return GroupHom::from_table(src.kernel(), tgt.kernel(), std::move(f));
}

inline SSEMorphism make_sse_morphism(const SplitExtension& src, const SplitExtension& tgt, const GroupHom& g) {
  SSEMorphism m{src, tgt, kernel_restriction(src, tgt, g), g};
  if (auto v = m.violation()) throw AlgebraError("not a morphism of split extensions: " + *v);
  return m;
}

/// Regular epi in SSE_B iff f is surjective; surjectivity of g is checked to
/// agree.
inline bool is_regular_epi(const SSEMorphism& m) {
  const bool f = m.f.is_surjective();
  if (f != m.g.is_surjective()) throw InvariantBreach("surjectivity of f and g disagree");
  return f;
}

/// Constraints for homs h: E -> E_t over B: p_t h = p and h s = s_t.
/// `fiber` optionally restricts h(x) to a preimage set.
inline Constraints over_base(const SplitExtension& src, const SplitExtension& tgt) {
  Constraints c;
  for (Elem b : canonical_generators(src.base())) c.fixed.emplace_back(src.s(b), tgt.s(b));
  c.allowed = [sp = src.p, tp = tgt.p](Elem x, Elem y) { return tp(y) == sp(x); };
  return c;
}

/// All morphisms src -> tgt in SSE_B, in the fixed search order.
inline std::vector<SSEMorphism> enumerate_sse_morphisms(const SplitExtension& src, const SplitExtension& tgt,
                                                        const HomSearchOptions& opt = {},
                                                        bool* budget_exhausted = nullptr) {
  auto r = enumerate_homs(src.total(), tgt.total(), opt, over_base(src, tgt));
  if (budget_exhausted) *budget_exhausted = r.budget_exhausted;
  std::vector<SSEMorphism> out;
  for (auto& g : r.homs) out.push_back(make_sse_morphism(src, tgt, g));
  return out;
}

/// A hom l: E_obj -> E_P over B with e.g l = h, if one exists.
inline HomFind lift_over(const SplitExtension& obj, const SSEMorphism& epi, const GroupHom& h,
                         std::size_t budget) {
  Constraints c = over_base(obj, epi.source);
  std::vector<std::vector<Elem>> fibers(epi.g.target().order());
  for (std::size_t y = 0; y < epi.g.source().order(); ++y) fibers[epi.g(static_cast<Elem>(y))].push_back(static_cast<Elem>(y));
  c.candidates = [fibers = std::move(fibers), h](Elem x) { return fibers[h(x)]; };
  return find_hom(obj.total(), epi.source.total(), c, budget);
}

struct SectionSearch {
  SearchStatus status = SearchStatus::kNone;
  std::optional<SSEMorphism> section;
};

/// A section (f', g') of a regular epi in SSE_B, found by exhaustive search.
inline SectionSearch brute_force_section(const SSEMorphism& m, std::size_t budget = HomSearchOptions{}.budget) {
  if (!is_regular_epi(m)) throw AlgebraError("brute_force_section needs a regular epimorphism");
  SectionSearch r;
  const HomFind h = lift_over(m.target, m, GroupHom::identity(m.target.total()), budget);
  r.status = h.status;
  if (h.hom) {
    r.section = make_sse_morphism(m.target, m.source, *h.hom);
    if (!(m.g.after(r.section->g) == GroupHom::identity(m.target.total())))
      throw InvariantBreach("found section does not split g");
  }
  return r;
}

/// A named finite family of regular epis used as the test class for
/// relative projectivity.
struct EpiFamily {
  std::string name;
  std::vector<SSEMorphism> epis;
};

struct ProjectivityReport {
  std::string family;
  bool projective = true;
  bool budget_exhausted = false;
  std::size_t epis = 0;
  std::size_t morphisms = 0;
  /// Index of the first epi with a morphism that does not lift.
  std::optional<std::size_t> failed_epi;
};

/// For each epi e: P -> Q in the family and each morphism obj -> Q, searches
/// a lift obj -> P.
inline ProjectivityReport is_projective_rel(const SplitExtension& obj, const EpiFamily& family,
                                            std::size_t budget = HomSearchOptions{}.budget) {
  ProjectivityReport r;
  r.family = family.name;
  HomSearchOptions opt;
  opt.budget = budget;
  for (std::size_t i = 0; i < family.epis.size(); ++i) {
    const SSEMorphism& e = family.epis[i];
    if (!is_regular_epi(e)) throw AlgebraError("family member " + std::to_string(i) + " is not a regular epi");
    ++r.epis;
    bool exhausted = false;
    auto ms = enumerate_sse_morphisms(obj, e.target, opt, &exhausted);
    if (exhausted) {
      r.budget_exhausted = true;
      r.projective = false;
      return r;
    }
    for (const auto& m : ms) {
      ++r.morphisms;
      const HomFind l = lift_over(obj, e, m.g, budget);
      if (l.status == SearchStatus::kBudgetExhausted) {
        r.budget_exhausted = true;
        r.projective = false;
        return r;
      }
      if (l.status == SearchStatus::kNone) {
        r.projective = false;
        r.failed_epi = i;
        return r;
      }
    }
  }
  return r;
}

/// The free split extension B♭X ↣ B+X ⇄ B, as a word evaluator only.
struct FreeSSE {
  FactorSignature signature;  // (B, X)

  FreeSSE(const FiniteGroup& b, const FiniteGroup& x) : signature{b, x} {}
  const FiniteGroup& base() const { return signature[0]; }
  const FiniteGroup& generators() const { return signature[1]; }
  bool in_kernel(const Word& w) const { return in_flat(signature, w); }
};

struct FreeCoverCertificate {
  /// [s, k p] : B + R -> X ⋊ B.
  WordHom evaluator;
  /// The letter images generate the total group.
  bool total_surjective = false;
  /// Every x is k p(r) for a single-letter flat word η(r).
  bool kernel_surjective = false;
  bool ok() const { return total_surjective && kernel_surjective; }
};

/// The cover B + R ->> E of a split extension E over B, given p: R ->> X.
inline FreeCoverCertificate free_cover(const SplitExtension& ext, const GroupHom& p) {
  if (!(p.target() == ext.kernel())) throw AlgebraError("free_cover: p must land in the kernel");
  if (!p.is_surjective()) throw AlgebraError("free_cover: p is not surjective");
  const FreeSSE free(ext.base(), p.source());
  WordHom ev(free.signature, ext.total(), {ext.s, ext.k.after(p)});
  FreeCoverCertificate c{ev};
  std::vector<Elem> gens;
  for (std::size_t b = 0; b < ext.base().order(); ++b) gens.push_back(ext.s(static_cast<Elem>(b)));
  for (std::size_t r = 0; r < p.source().order(); ++r) gens.push_back(ext.k(p(static_cast<Elem>(r))));
  c.total_surjective = generated_subgroup(ext.total(), gens).size() == ext.total().order();
  std::vector<bool> hit(ext.kernel().order(), false);
  for (std::size_t r = 0; r < p.source().order(); ++r) {
    const Word eta = letter_word(free.signature, 1, static_cast<Elem>(r));
    if (!free.in_kernel(eta)) throw InvariantBreach("η(r) is not flat");
    auto back = ext.k_preimage(evaluate(eta, ev));
    if (!back) throw InvariantBreach("flat word evaluates outside the kernel");
    hit[*back] = true;
  }
  c.kernel_surjective = std::find(hit.begin(), hit.end(), false) == hit.end();
  return c;
}

}  // namespace xmodkit
