#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "xmodkit/action.hpp"
#include "xmodkit/construct.hpp"
#include "xmodkit/corpus.hpp"
#include "xmodkit/error.hpp"
#include "xmodkit/group.hpp"
#include "xmodkit/hom_search.hpp"
#include "xmodkit/lifting.hpp"
#include "xmodkit/xmod.hpp"
#include "xmodkit/z4.hpp"

namespace xmodkit {

// ---------------------------------------------------------------------------
// Crossed modules of Z/4-modules: homomorphisms ∂: T -> G, trivial action.

inline CrossedModule module_xmod(const GroupHom& d) {
  require_z4_module(d.source());
  require_z4_module(d.target());
  return CrossedModule(GroupAction::trivial(d.target(), d.source()), d);
}

/// Structure criterion for projective arrows of modules: ∂ injective with
/// T and G/∂T projective.
inline bool projective_arrow_z4(const CrossedModule& xm) {
  if (!xm.boundary().is_injective()) return false;
  return projective_z4(xm.t()) && projective_z4(quotient(xm.g(), image(xm.boundary())).group);
}

/// The restriction of f to subgroups: a.group -> b.group.
inline GroupHom restrict_hom(const GroupHom& f, const Subgroup& a, const Subgroup& b) {
  std::vector<std::optional<Elem>> back(b.inclusion.target().order());
  for (std::size_t x = 0; x < b.group.order(); ++x) back[b.inclusion(static_cast<Elem>(x))] = static_cast<Elem>(x);
  std::vector<Elem> m(a.group.order());
  for (std::size_t x = 0; x < m.size(); ++x) {
    auto v = back[f(a.inclusion(static_cast<Elem>(x)))];
    if (!v) throw AlgebraError("restriction does not land in the target subgroup");
    m[x] = *v;
  }
  return GroupHom::from_table(a.group, b.group, std::move(m));
}

/// k ↣ . ⇄ f with section s: the first broken condition, if any.
inline std::optional<std::string> split_exact_violation(const GroupHom& k, const GroupHom& f, const GroupHom& s) {
  if (!(k.target() == f.source()) || !(s.source() == f.target()) || !(s.target() == f.source()))
    return "maps do not compose";
  if (!k.is_injective()) return "k is not injective";
  if (image(k) != kernel_elements(f)) return "image of k is not the kernel of f";
  if (!(f.after(s) == GroupHom::identity(f.target()))) return "f s is not the identity";
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Epi families onto a module crossed module

struct NamedEpi {
  std::string name;
  XModEpi epi;
};

struct XModEpiFamily {
  std::string name;
  std::vector<NamedEpi> epis;
};

namespace detail {

/// Free cover of an arrow from chosen generator images: the source is
/// F_T ↣ F_T ⊕ F_G with ∂' the first inclusion.
inline XModEpi arrow_cover(const CrossedModule& xm, const std::vector<Elem>& t_images,
                           const std::vector<Elem>& g_images) {
  const Z4Module ft = free_z4(t_images.size());
  const Z4Module fg = free_z4(t_images.size() + g_images.size());
  std::vector<Elem> inc;
  for (std::size_t i = 0; i < ft.rank(); ++i) inc.push_back(fg.basis(i));
  const GroupHom d = module_hom(ft, fg.group, inc);
  const GroupHom f_t = module_hom(ft, xm.t(), t_images);
  std::vector<Elem> gi;
  for (Elem x : t_images) gi.push_back(xm.boundary()(x));
  gi.insert(gi.end(), g_images.begin(), g_images.end());
  const GroupHom f_g = module_hom(fg, xm.g(), gi);
  return {module_xmod(d), xm, {f_t, f_g}};
}

inline std::vector<Elem> gens_or_empty(const FiniteGroup& g) {
  return g.is_trivial() ? std::vector<Elem>{} : canonical_generators(g);
}

}  // namespace detail

namespace detail {

/// Canonical generators of G beyond those seeded by ∂ of T's generators.
inline std::vector<Elem> extra_generators(const CrossedModule& xm, const std::vector<Elem>& t_images) {
  std::vector<Elem> seed;
  for (Elem x : t_images) seed.push_back(xm.boundary()(x));
  auto all = canonical_generators(xm.g(), seed);
  return std::vector<Elem>(all.begin() + static_cast<std::ptrdiff_t>(seed.size()), all.end());
}

}  // namespace detail

/// F_T ↣ F_T ⊕ F_R ->> (T, G), where T's generators cover T and R's cover
/// what ∂T misses of G.
inline XModEpi canonical_cover(const CrossedModule& xm) {
  const auto tg = detail::gens_or_empty(xm.t());
  return detail::arrow_cover(xm, tg, detail::extra_generators(xm, tg));
}

/// (T ⊕ K, G ⊕ K) ->> (T, G) when `both`, else (T, G ⊕ K) ->> (T, G).
inline XModEpi collapse_epi(const CrossedModule& xm, const FiniteGroup& k, bool both) {
  const Product gk = direct_product(xm.g(), k);
  if (both) {
    const Product tk = direct_product(xm.t(), k);
    const GroupHom d = product_map(tk, gk, xm.boundary(), GroupHom::identity(k));
    return {module_xmod(d), xm, {tk.proj1, gk.proj1}};
  }
  return {module_xmod(gk.inj1.after(xm.boundary())), xm, {GroupHom::identity(xm.t()), gk.proj1}};
}

/// A cover of the canonical shape with seeded random generator images.
inline XModEpi random_cover(const CrossedModule& xm, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](const FiniteGroup& g, std::size_t n, const std::vector<Elem>& base) {
    for (int attempt = 0; attempt < 200; ++attempt) {
      std::vector<Elem> v(n);
      for (auto& x : v) x = static_cast<Elem>(rng() % g.order());
      std::vector<Elem> all = base;
      all.insert(all.end(), v.begin(), v.end());
      if (generated_subgroup(g, all).size() == g.order()) return v;
    }
    return std::vector<Elem>{};
  };
  const auto tg = detail::gens_or_empty(xm.t());
  const auto gg = detail::extra_generators(xm, tg);
  auto ti = pick(xm.t(), tg.size(), {});
  if (ti.size() != tg.size()) ti = tg;
  std::vector<Elem> dt;
  for (Elem x : ti) dt.push_back(xm.boundary()(x));
  auto gi = pick(xm.g(), gg.size(), dt);
  if (gi.size() != gg.size()) {
    ti = tg;
    gi = gg;
  }
  return detail::arrow_cover(xm, ti, gi);
}

/// The canonical cover, collapses of Z/2 and Z/4 complements, and a seeded
/// random cover. Collapses exceeding the order cap are left out; without the
/// canonical cover the family certifies nothing.
inline XModEpiFamily default_family(const CrossedModule& xm, std::uint64_t seed = 0) {
  XModEpiFamily fam{"default", {}};
  auto add = [&](std::string name, auto make) {
    try {
      fam.epis.push_back({std::move(name), make()});
    } catch (const AlgebraError&) {
    }
  };
  add("canonical-cover", [&] { return canonical_cover(xm); });
  for (std::size_t n : {2u, 4u}) {
    const auto k = cyclic_group(n);
    add("collapse-both-Z" + std::to_string(n), [&] { return collapse_epi(xm, k, true); });
    add("collapse-G-Z" + std::to_string(n), [&] { return collapse_epi(xm, k, false); });
  }
  add("random-cover", [&] { return random_cover(xm, seed); });
  return fam;
}

struct RelProjectivity {
  bool projective = true;
  bool budget_exhausted = false;
  std::size_t epis = 0;
  std::optional<std::string> failed_epi;
};

/// Every family member onto xm splits, by exhaustive section search.
inline RelProjectivity certify_rel_projective(const XModEpiFamily& fam, std::size_t budget = HomSearchOptions{}.budget) {
  RelProjectivity r;
  if (fam.epis.empty() || fam.epis.front().name != "canonical-cover") {
    r.projective = false;
    r.budget_exhausted = true;
    r.failed_epi = "canonical-cover unavailable";
    return r;
  }
  for (const auto& ne : fam.epis) {
    ++r.epis;
    const auto s = xmod_section_search(ne.epi, budget);
    if (s.status == SearchStatus::kBudgetExhausted) {
      r.projective = false;
      r.budget_exhausted = true;
      r.failed_epi = ne.name;
      return r;
    }
    if (!s.section) {
      r.projective = false;
      r.failed_epi = ne.name;
      return r;
    }
  }
  return r;
}

inline RelProjectivity certify_rel_projective(const CrossedModule& xm, std::uint64_t seed = 0,
                                              std::size_t budget = HomSearchOptions{}.budget) {
  return certify_rel_projective(default_family(xm, seed), budget);
}

// ---------------------------------------------------------------------------
// Instance checks

struct PInstanceReport {
  std::string name;
  bool middle_projective = false;
  bool kernel_projective = false;
  bool budget_exhausted = false;
  bool pass() const { return !middle_projective || kernel_projective; }
};

/// Module sequence K ↣ X ⇄ Y against a projectivity oracle.
inline PInstanceReport check_P_instance(const std::string& name, const GroupHom& k, const GroupHom& f,
                                        const GroupHom& s,
                                        const std::function<bool(const FiniteGroup&)>& oracle = projective_z4) {
  if (auto v = split_exact_violation(k, f, s)) throw AlgebraError("not split exact: " + *v);
  PInstanceReport r{name};
  r.middle_projective = oracle(k.target());
  r.kernel_projective = oracle(k.source());
  return r;
}

/// Crossed-module sequence against relative projectivity on default families.
inline PInstanceReport check_P_instance(const std::string& name, const XModSplitSES& ses, std::uint64_t seed = 0,
                                        std::size_t budget = HomSearchOptions{}.budget) {
  if (auto v = ses.violation()) throw AlgebraError("not split exact: " + *v);
  PInstanceReport r{name};
  const auto mid = certify_rel_projective(ses.middle, seed, budget);
  r.budget_exhausted = mid.budget_exhausted;
  r.middle_projective = mid.projective;
  if (r.middle_projective) {
    const auto ker = certify_rel_projective(ses.kernel, seed, budget);
    r.budget_exhausted = r.budget_exhausted || ker.budget_exhausted;
    r.kernel_projective = ker.projective;
  }
  return r;
}

// ---------------------------------------------------------------------------
// The 3×3 diagram over a split epi of finite sets

struct DiagramObject {
  std::string name;
  std::size_t order = 0;
  bool projective = false;
  /// Free cover splits, checked independently of the structure criterion.
  bool cover_splits = false;
};

struct DiagramReport {
  std::vector<DiagramObject> objects;
  /// (name, violation or empty) for the three rows and three columns.
  std::vector<std::pair<std::string, std::string>> sequences;
  std::vector<SectionCertificate> certificates;
  bool crossed_module_ok = false;
  bool crossed_module_projective = false;
  bool generic_route_agrees = false;

  bool ok() const {
    for (const auto& o : objects)
      if (!o.projective || !o.cover_splits) return false;
    for (const auto& [n, v] : sequences)
      if (!v.empty()) return false;
    return crossed_module_ok && crossed_module_projective && generic_route_agrees;
  }
};

/// f: X -> Y with section s (f s = id), as index maps. Builds, in Z/4-modules,
/// the nine objects P, X♭X, Y♭Y / Q, X+X, Y+Y / Z, F X, F Y, checks every row
/// and column is split short exact, and certifies (P, Q, 0, k) projective
/// relative to its default family through projective_section.
inline DiagramReport pipeline_diagram_P(const std::vector<std::size_t>& f, const std::vector<std::size_t>& s,
                                        std::uint64_t seed = 0, const LiftOptions& opt = {}) {
  const std::size_t nx = f.size(), ny = s.size();
  for (std::size_t x : f)
    if (x >= ny) throw AlgebraError("set map: image out of range");
  for (std::size_t y = 0; y < ny; ++y)
    if (s[y] >= nx || f[s[y]] != y) throw AlgebraError("set map is not split by the given section");

  DiagramReport r;
  const Z4Module fx = free_z4(nx), fy = free_z4(ny);
  std::vector<Elem> fim, sim;
  for (std::size_t x = 0; x < nx; ++x) fim.push_back(fy.basis(f[x]));
  for (std::size_t y = 0; y < ny; ++y) sim.push_back(fx.basis(s[y]));
  const GroupHom ff = module_hom(fx, fy.group, fim);
  const GroupHom fs = module_hom(fy, fx.group, sim);

  const Product sx = direct_product(fx.group, fx.group), sy = direct_product(fy.group, fy.group);
  const GroupHom sf = product_map(sx, sy, ff, ff), ss = product_map(sy, sx, fs, fs);
  // X♭X = ker [1, 0] : X + X -> X, which in modules is the second summand.
  const Subgroup flat_x = kernel(sx.proj1), flat_y = kernel(sy.proj1);
  const GroupHom flat_f = restrict_hom(sf, flat_x, flat_y), flat_s = restrict_hom(ss, flat_y, flat_x);

  const Subgroup p = kernel(flat_f), q = kernel(sf), z = kernel(ff);

  auto seq = [&](std::string name, const GroupHom& k, const GroupHom& e, const GroupHom& sec) {
    auto v = split_exact_violation(k, e, sec);
    r.sequences.emplace_back(std::move(name), v ? *v : "");
  };
  seq("row flat", p.inclusion, flat_f, flat_s);
  seq("row sum", q.inclusion, sf, ss);
  seq("row free", z.inclusion, ff, fs);
  seq("column X", flat_x.inclusion, sx.proj1, sx.inj1);
  seq("column Y", flat_y.inclusion, sy.proj1, sy.inj1);

  // Left column from kernel restrictions.
  const GroupHom k = restrict_hom(flat_x.inclusion.after(p.inclusion),
                                  Subgroup{p.group, GroupHom::identity(p.group)}, q);
  const GroupHom e = restrict_hom(sx.proj1, q, z);
  const GroupHom sec = restrict_hom(sx.inj1, z, q);
  seq("column kernels", k, e, sec);

  auto obj = [&](std::string name, const FiniteGroup& g) {
    r.objects.push_back({std::move(name), g.order(), projective_z4(g), z4_cover_splits(g) == SearchStatus::kFound});
  };
  obj("P", p.group);
  obj("Q", q.group);
  obj("Z", z.group);
  obj("FX♭FX", flat_x.group);
  obj("FY♭FY", flat_y.group);
  obj("FX+FX", sx.group);
  obj("FY+FY", sy.group);
  obj("FX", fx.group);
  obj("FY", fy.group);

  if (!r.sequences.back().second.empty()) return r;
  const SplitExtension ext(k, e, sec);
  const CrossedModule xm = normal_inclusion(ext);
  r.crossed_module_ok = check_axioms(xm).ok();
  const XModEpiFamily fam = default_family(xm, seed);
  r.crossed_module_projective = !fam.epis.empty();
  for (const auto& ne : fam.epis) {
    r.certificates.push_back(projective_section(ne.epi, ext, opt));
    if (!r.certificates.back().ok()) r.crossed_module_projective = false;
  }
  r.generic_route_agrees = certify_rel_projective(fam, opt.budget).projective == r.crossed_module_projective;
  return r;
}

// ---------------------------------------------------------------------------
// Free shape and the non-Schreier candidate

struct SetEpi {
  std::vector<std::size_t> f;
  std::vector<std::size_t> s;
};

/// Every surjection f: {0..n-1} -> {0..m-1} with n <= max_x, paired with each
/// of its sections.
inline std::vector<SetEpi> split_set_epis(std::size_t max_x) {
  std::vector<SetEpi> out;
  for (std::size_t nx = 0; nx <= max_x; ++nx)
    for (std::size_t ny = nx ? 1 : 0; ny <= nx; ++ny) {
      std::vector<std::size_t> f(nx, 0);
      while (true) {
        std::vector<std::vector<std::size_t>> fibers(ny);
        for (std::size_t x = 0; x < nx; ++x) fibers[f[x]].push_back(x);
        bool onto = true;
        for (auto& fb : fibers) onto = onto && !fb.empty();
        if (onto) {
          std::vector<std::size_t> pick(ny, 0);
          while (true) {
            std::vector<std::size_t> s(ny);
            for (std::size_t y = 0; y < ny; ++y) s[y] = fibers[y][pick[y]];
            out.push_back({f, s});
            std::size_t y = 0;
            while (y < ny && ++pick[y] == fibers[y].size()) pick[y++] = 0;
            if (y == ny) break;
          }
        }
        std::size_t x = 0;
        while (x < nx && ++f[x] == ny) f[x++] = 0;
        if (x == nx) break;
      }
    }
  return out;
}

struct FreeShape {
  bool free_shaped = false;
  std::string reason;
};

/// Free crossed modules of modules have the shape F ↣ F ⊕ F, so |G| = |T|².
/// When the cardinalities match, searches an isomorphism of arrows onto it.
inline FreeShape free_shape(const CrossedModule& xm, std::size_t budget = HomSearchOptions{}.budget) {
  const std::size_t t = xm.t().order(), g = xm.g().order();
  if (g != t * t)
    return {false, std::to_string(t) + "^2 = " + std::to_string(t * t) + " != " + std::to_string(g)};
  std::size_t r = 0;
  for (std::size_t n = 1; n < t; n *= 4) ++r;
  std::size_t pw = 1;
  for (std::size_t i = 0; i < r; ++i) pw *= 4;
  if (pw != t) return {false, "|T| = " + std::to_string(t) + " is not a power of 4"};
  const Z4Module f = free_z4(r);
  const Product ff = direct_product(f.group, f.group);
  HomSearchOptions opt;
  opt.budget = budget;
  Constraints ct;
  ct.allowed = [&](Elem x, Elem y) { return xm.t().element_order(x) == f.group.element_order(y); };
  const auto isos_t = enumerate_homs(xm.t(), f.group, opt, ct);
  for (const auto& phi : isos_t.homs) {
    if (!phi.is_injective()) continue;
    Constraints cg;
    cg.accept = [&](std::span<const Elem> m) {
      std::vector<bool> seen(m.size(), false);
      for (Elem v : m) {
        if (seen[v]) return false;
        seen[v] = true;
      }
      for (std::size_t x = 0; x < t; ++x)
        if (m[xm.boundary()(static_cast<Elem>(x))] != ff.inj2(phi(static_cast<Elem>(x)))) return false;
      return true;
    };
    if (find_hom(xm.g(), ff.group, cg, budget).hom) return {true, "isomorphic to the free object on " + std::to_string(r) + " generators"};
  }
  return {false, "cardinalities match but no isomorphism of arrows exists"};
}

/// Relabels every carrier of a split extension by seeded random permutations.
inline SplitExtension relabel_extension(const SplitExtension& ext, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto perm = [&](std::size_t n) {
    std::vector<Elem> p(n);
    std::iota(p.begin(), p.end(), Elem{0});
    std::shuffle(p.begin(), p.end(), rng);
    return p;
  };
  const auto pq = perm(ext.kernel().order()), pe = perm(ext.total().order()), pb = perm(ext.base().order());
  const FiniteGroup q = relabel(ext.kernel(), pq), e = relabel(ext.total(), pe), b = relabel(ext.base(), pb);
  auto carry = [](const GroupHom& h, const FiniteGroup& src, const FiniteGroup& tgt, const std::vector<Elem>& ps,
                  const std::vector<Elem>& pt) {
    std::vector<Elem> m(src.order());
    for (std::size_t x = 0; x < m.size(); ++x) m[ps[x]] = pt[h(static_cast<Elem>(x))];
    return GroupHom::from_table(src, tgt, std::move(m));
  };
  SplitExtension out(carry(ext.k, q, e, pq, pe), carry(ext.p, e, b, pe, pb), carry(ext.s, b, e, pb, pe));
  out.validate();
  return out;
}

struct NonSchreierReport {
  std::size_t t_order = 0;
  std::size_t g_order = 0;
  std::vector<std::pair<std::string, SectionCertificate>> certificates;
  bool relatively_projective = false;
  bool generic_route_agrees = false;
  FreeShape shape;
  bool relabel_stable = false;
  std::uint64_t seed = 0;
  bool ok() const { return relatively_projective && generic_route_agrees && !shape.free_shaped && relabel_stable; }
};

namespace detail {

inline void non_schreier_verdicts(const SplitExtension& ext, std::uint64_t seed, const LiftOptions& opt,
                                  NonSchreierReport& r) {
  const CrossedModule xm = normal_inclusion(ext);
  r.t_order = xm.t().order();
  r.g_order = xm.g().order();
  const XModEpiFamily fam = default_family(xm, seed);
  r.relatively_projective = !fam.epis.empty();
  for (const auto& ne : fam.epis) {
    r.certificates.emplace_back(ne.name, projective_section(ne.epi, ext, opt));
    if (!r.certificates.back().second.ok()) r.relatively_projective = false;
  }
  r.generic_route_agrees = certify_rel_projective(fam, opt.budget).projective == r.relatively_projective;
  r.shape = free_shape(xm, opt.budget);
}

}  // namespace detail

/// T = (Z/4)² inside G = Z/4 ⊕ (Z/4)², the second summand, trivial action.
inline SplitExtension non_schreier_extension() {
  const Z4Module p = free_z4(1), x = free_z4(2);
  return semidirect_product(GroupAction::trivial(p.group, x.group));
}

inline NonSchreierReport non_schreier_demo(std::uint64_t seed = 0, const LiftOptions& opt = {}) {
  NonSchreierReport r;
  r.seed = seed;
  const SplitExtension ext = non_schreier_extension();
  detail::non_schreier_verdicts(ext, seed, opt, r);
  NonSchreierReport again;
  detail::non_schreier_verdicts(relabel_extension(ext, seed ^ 0x9e3779b97f4a7c15ull), seed, opt, again);
  r.relabel_stable = again.relatively_projective == r.relatively_projective &&
                     again.shape.free_shaped == r.shape.free_shaped && again.t_order == r.t_order &&
                     again.g_order == r.g_order && again.generic_route_agrees == r.generic_route_agrees;
  return r;
}

// ---------------------------------------------------------------------------
// π₀ preservation

struct Pi0PreservationReport {
  std::size_t projective_checked = 0;
  std::vector<std::string> projective_failures;
  std::size_t discrete_checked = 0;
  std::vector<std::string> discrete_failures;
  std::size_t sequences_checked = 0;
  std::vector<std::string> exactness_failures;
  bool ok() const { return projective_failures.empty() && discrete_failures.empty() && exactness_failures.empty(); }
};

struct NamedXMod {
  std::string name;
  CrossedModule xm;
};

/// Small module crossed modules, projective and not.
inline std::vector<NamedXMod> module_xmod_pool() {
  std::vector<NamedXMod> out;
  const auto z2 = z4_module(0, 1).group, z4 = free_z4(1).group, z0 = free_z4(0).group;
  const auto z4z2 = z4_module(1, 1).group, f2 = free_z4(2).group;
  auto hom = [](const FiniteGroup& a, const FiniteGroup& b, std::vector<std::pair<Elem, Elem>> g) {
    return g.empty() ? GroupHom::trivial(a, b) : GroupHom::from_generators(a, b, g);
  };
  out.push_back({"0->0", module_xmod(GroupHom::trivial(z0, z0))});
  out.push_back({"Z4=Z4", module_xmod(GroupHom::identity(z4))});
  out.push_back({"0->Z4", module_xmod(GroupHom::trivial(z0, z4))});
  out.push_back({"0->Z2", module_xmod(GroupHom::trivial(z0, z2))});
  out.push_back({"Z2=Z2", module_xmod(GroupHom::identity(z2))});
  out.push_back({"Z4-0->Z4", module_xmod(GroupHom::trivial(z4, z4))});
  out.push_back({"Z2>->Z4", module_xmod(hom(z2, z4, {{1, 2}}))});
  out.push_back({"Z4->>Z2", module_xmod(hom(z4, z2, {{1, 1}}))});
  out.push_back({"Z4>->Z4+Z4", module_xmod(hom(z4, f2, {{1, free_z4(2).basis(1)}}))});
  out.push_back({"Z4->0", module_xmod(GroupHom::trivial(z4, z0))});
  out.push_back({"0->Z4+Z2", module_xmod(GroupHom::trivial(z0, z4z2))});
  out.push_back({"Z4>->Z4+Z2", module_xmod(hom(z4, z4z2, {{1, z4_module(1, 1).basis(0)}}))});
  return out;
}

/// (a) certified projective module crossed modules have projective π₀;
/// (b) discrete free modules are certified projective; (c) the π₀ image of
/// (N∩M ⊴ M) -> (N ⊴ G) -> (NM/M ⊴ G/M) is exact, over normal pairs of the
/// small groups up to `max_order`.
inline Pi0PreservationReport pi0_preservation_suite(std::uint64_t seed = 0, std::size_t max_order = 12) {
  Pi0PreservationReport r;
  for (const auto& [name, xm] : module_xmod_pool()) {
    const auto cert = certify_rel_projective(xm, seed);
    if (!cert.projective) continue;
    ++r.projective_checked;
    if (!projective_z4(pi0(xm).group)) r.projective_failures.push_back(name);
  }
  for (std::size_t rank = 0; rank <= 3; ++rank) {
    ++r.discrete_checked;
    if (!certify_rel_projective(discrete(free_z4(rank).group), seed).projective)
      r.discrete_failures.push_back("discrete (Z4)^" + std::to_string(rank));
  }
  for (const auto& [gname, g] : small_groups()) {
    if (g.order() > max_order) continue;
    const auto normals = normal_subgroups(g);
    for (std::size_t ni = 0; ni < normals.size(); ++ni)
      for (std::size_t mi = 0; mi < normals.size(); ++mi) {
        const ElemSet& n = normals[ni];
        const ElemSet& m = normals[mi];
        const std::string name = gname + " N#" + std::to_string(ni) + " M#" + std::to_string(mi);
        ++r.sequences_checked;
        const Subgroup msub = materialize_subgroup(g, m);
        ElemSet nm_in_m;
        for (std::size_t x = 0; x < msub.group.order(); ++x)
          if (contains(n, msub.inclusion(static_cast<Elem>(x)))) nm_in_m.push_back(static_cast<Elem>(x));
        const CrossedModule a = xmod_from_normal_subgroup(msub.group, nm_in_m);
        const CrossedModule b = xmod_from_normal_subgroup(g, n);
        const Quotient gm = quotient(g, m);
        ElemSet nm_mod_m = image(gm.projection.after(b.boundary()));
        const CrossedModule c = xmod_from_normal_subgroup(gm.group, nm_mod_m);
        // Morphisms at the T level are the restrictions of the G-level maps.
        const Subgroup at{a.t(), a.boundary()}, bt{b.t(), b.boundary()}, ct{c.t(), c.boundary()};
        const XModMorphism ab{restrict_hom(msub.inclusion, at, bt), msub.inclusion};
        const XModMorphism bc{restrict_hom(gm.projection, bt, ct), gm.projection};
        if (!check_morphism(ab, a, b).ok() || !check_morphism(bc, b, c).ok()) {
          r.exactness_failures.push_back(name + ": not morphisms");
          continue;
        }
        const Quotient qa = pi0(a), qb = pi0(b), qc = pi0(c);
        const GroupHom u = pi0_map(ab, qa, qb), v = pi0_map(bc, qb, qc);
        if (!v.is_surjective())
          r.exactness_failures.push_back(name + ": second map not surjective");
        else if (image(u) != kernel_elements(v))
          r.exactness_failures.push_back(name + ": image differs from kernel");
      }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Transfer of (P) between modules and their crossed modules

struct TransferReport {
  std::uint64_t seed = 0;
  std::size_t sequences = 0;
  std::size_t middle_projective = 0;
  std::size_t discrete_instances = 0;
  std::size_t budget_exhausted = 0;
  std::vector<std::string> counterexamples;
  /// Instances where relative certification and the structure criterion
  /// disagree.
  std::vector<std::string> oracle_disagreements;
  bool ok() const { return counterexamples.empty() && oracle_disagreements.empty() && budget_exhausted == 0; }
};

/// Seeded split exact sequences A ↣ A × B ->> B of module crossed modules
/// (products of pool members, the non-Schreier candidate with complements),
/// plus discrete sequences 0→K ↣ 0→X ->> 0→Y for module splittings.
inline TransferReport theorem_P_transfer_check(std::uint64_t seed = 0, std::size_t count = 30) {
  TransferReport r;
  r.seed = seed;
  std::mt19937_64 rng(seed);
  std::vector<NamedXMod> pool = module_xmod_pool();
  pool.push_back({"non-Schreier", normal_inclusion(non_schreier_extension())});

  auto small = [](const CrossedModule& x) { return x.t().order() * x.g().order() <= 256; };
  auto run = [&](const std::string& name, const XModSplitSES& ses) {
    ++r.sequences;
    const std::uint64_t s = rng();
    const PInstanceReport p = check_P_instance(name, ses, s);
    if (p.budget_exhausted) ++r.budget_exhausted;
    if (p.middle_projective) ++r.middle_projective;
    if (!p.pass()) r.counterexamples.push_back(name);
    if (p.middle_projective != projective_arrow_z4(ses.middle) ||
        (p.middle_projective && p.kernel_projective != projective_arrow_z4(ses.kernel)))
      r.oracle_disagreements.push_back(name);
  };

  // Complements of the non-Schreier candidate first, then random products.
  const CrossedModule ns = pool.back().xm;
  for (const auto& [name, xm] : pool)
    if (xm.g().order() <= 4 && xm.t().order() <= 4) run("non-Schreier x " + name, product_sequence(xm, ns));
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i + 1 < pool.size(); ++i)
    if (small(pool[i].xm)) idx.push_back(i);
  while (r.sequences < count) {
    const auto& a = pool[idx[rng() % idx.size()]];
    const auto& b = pool[idx[rng() % idx.size()]];
    if (a.xm.g().order() * b.xm.g().order() * a.xm.t().order() * b.xm.t().order() > 4096) continue;
    run(a.name + " x " + b.name, product_sequence(a.xm, b.xm));
  }

  // The discrete embedding: K ↣ X ⇄ Y of modules becomes 0→K ↣ 0→X ⇄ 0→Y.
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t a = 0; a <= n; ++a) {
      const std::string name = "discrete (Z4)^" + std::to_string(a) + " in (Z4)^" + std::to_string(n);
      const XModSplitSES ses = product_sequence(discrete(free_z4(a).group), discrete(free_z4(n - a).group));
      ++r.discrete_instances;
      const PInstanceReport p = check_P_instance(name, ses, rng());
      if (p.budget_exhausted) ++r.budget_exhausted;
      if (!p.middle_projective || !p.kernel_projective || !projective_z4(pi0(ses.kernel).group))
        r.counterexamples.push_back(name);
    }
  {
    // Non-projective X: vacuous.
    const XModSplitSES ses = product_sequence(discrete(z4_module(0, 1).group), discrete(free_z4(1).group));
    ++r.discrete_instances;
    const PInstanceReport p = check_P_instance("discrete Z2 in Z2+Z4", ses, rng());
    if (!p.pass() || p.middle_projective) r.counterexamples.push_back("discrete Z2 in Z2+Z4");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Pullback-lifting instances

struct PullbackInstance {
  std::string name;
  XModEpi epi;
};

/// (P ⊕ K ↣ Q ⊕ K) ->> (P ↣ Q), collapsing the complement K, for module
/// inclusions P ↣ Q and complements K.
inline std::vector<PullbackInstance> pullback_corpus() {
  std::vector<PullbackInstance> out;
  const Z4Module z4 = free_z4(1), z2 = z4_module(0, 1), f2 = free_z4(2), m = z4_module(1, 1), z0 = free_z4(0);
  const std::vector<std::pair<std::string, GroupHom>> incs = {
      {"0 in Z4", GroupHom::trivial(z0.group, z4.group)},
      {"Z4 = Z4", GroupHom::identity(z4.group)},
      {"Z4 in Z4+Z4", module_hom(z4, f2.group, {f2.basis(0)})},
      {"Z2 in Z4", module_hom(z2, z4.group, {2})},
      {"Z2 in Z4+Z2", module_hom(z2, m.group, {m.basis(1)})},
      {"Z4 in Z4+Z2", module_hom(z4, m.group, {m.basis(0)})},
  };
  const std::vector<std::pair<std::string, FiniteGroup>> comps = {
      {"Z2", z2.group}, {"Z4", z4.group}, {"Z4+Z2", m.group}};
  for (const auto& [iname, k] : incs)
    for (const auto& [kname, kk] : comps) {
      const Product pk = direct_product(k.source(), kk), qk = direct_product(k.target(), kk);
      const CrossedModule src = module_xmod(product_map(pk, qk, k, GroupHom::identity(kk)));
      out.push_back({"(" + iname + ") + " + kname, {src, module_xmod(k), {pk.proj1, qk.proj1}}});
    }
  return out;
}

/// (0 ↣ Z4) ->> (0 ↣ Z2) by reduction: the cokernel map has no section.
inline PullbackInstance pullback_no_section_fixture() {
  const auto z0 = free_z4(0).group, z4 = free_z4(1).group, z2 = z4_module(0, 1).group;
  const GroupHom red = GroupHom::from_generators(z4, z2, {{1, 1}});
  return {"Z4 onto Z2 cokernels",
          {module_xmod(GroupHom::trivial(z0, z4)), module_xmod(GroupHom::trivial(z0, z2)),
           {GroupHom::identity(z0), red}}};
}

}  // namespace xmodkit
