#pragma once

#include <string>
#include <utility>
#include <vector>

#include "xmodkit/action.hpp"
#include "xmodkit/construct.hpp"
#include "xmodkit/group.hpp"
#include "xmodkit/hom_search.hpp"
#include "xmodkit/lifting.hpp"
#include "xmodkit/sse.hpp"
#include "xmodkit/xmod.hpp"

namespace xmodkit {

struct NamedGroup {
  std::string name;
  FiniteGroup group;
};

/// A_n for n <= 5, generated by the elements of order 3 (the 3-cycles).
inline FiniteGroup alternating_group(std::size_t n) {
  const FiniteGroup s = symmetric_group(n);
  std::vector<Elem> threes;
  for (std::size_t a = 0; a < s.order(); ++a)
    if (s.element_order(static_cast<Elem>(a)) == 3) threes.push_back(static_cast<Elem>(a));
  return materialize_subgroup(s, generated_subgroup(s, threes)).group;
}

/// Small groups used throughout the corpora, all of order <= 24.
inline std::vector<NamedGroup> small_groups() {
  return {
      {"Z1", cyclic_group(1)},
      {"Z2", cyclic_group(2)},
      {"Z3", cyclic_group(3)},
      {"Z4", cyclic_group(4)},
      {"V4", direct_product(cyclic_group(2), cyclic_group(2)).group},
      {"Z6", cyclic_group(6)},
      {"S3", symmetric_group(3)},
      {"Z8", cyclic_group(8)},
      {"Z2xZ4", direct_product(cyclic_group(2), cyclic_group(4)).group},
      {"D4", dihedral_group(4)},
      {"Q8", quaternion_group()},
      {"D5", dihedral_group(5)},
      {"A4", alternating_group(4)},
      {"D6", dihedral_group(6)},
      {"S4", symmetric_group(4)},
  };
}

struct Candidate {
  std::string name;
  CrossedModule xm;
  /// Built to break an axiom.
  bool designed_violation = false;
};

/// (T, T/Z(T), induced conjugation, projection).
inline CrossedModule central_quotient_xmod(const FiniteGroup& t) {
  ElemSet center;
  for (std::size_t a = 0; a < t.order(); ++a) {
    bool central = true;
    for (std::size_t b = 0; b < t.order() && central; ++b)
      central = t.mul(static_cast<Elem>(a), static_cast<Elem>(b)) == t.mul(static_cast<Elem>(b), static_cast<Elem>(a));
    if (central) center.push_back(static_cast<Elem>(a));
  }
  const Quotient q = quotient(t, center);
  // Pick the least representative of each coset to act by conjugation.
  std::vector<Elem> rep(q.group.order(), 0);
  std::vector<bool> set(q.group.order(), false);
  for (std::size_t a = 0; a < t.order(); ++a) {
    const Elem c = q.projection(static_cast<Elem>(a));
    if (!set[c]) {
      rep[c] = static_cast<Elem>(a);
      set[c] = true;
    }
  }
  std::vector<Elem> act(q.group.order() * t.order());
  for (std::size_t c = 0; c < q.group.order(); ++c)
    for (std::size_t x = 0; x < t.order(); ++x) act[c * t.order() + x] = t.conj(rep[c], static_cast<Elem>(x));
  return CrossedModule(GroupAction::from_table(q.group, t, std::move(act)), q.projection);
}

/// Inversion by the generator of a cyclic group of even order acting on an
/// abelian group.
inline GroupAction inversion_action(const FiniteGroup& actor, const FiniteGroup& x) {
  std::vector<Elem> inv(x.order());
  for (std::size_t i = 0; i < x.order(); ++i) inv[i] = x.inv(static_cast<Elem>(i));
  return GroupAction::from_generators(actor, x, {{1, inv}});
}

/// Crossed-module candidates: every normal inclusion in the small groups,
/// discrete and zero-boundary modules, central quotients, abelian examples,
/// and deliberate axiom violations.
inline std::vector<Candidate> axiom_corpus() {
  std::vector<Candidate> out;
  for (const auto& [name, g] : small_groups()) {
    std::size_t i = 0;
    for (const auto& n : normal_subgroups(g))
      out.push_back({"normal:" + name + "#" + std::to_string(i++) + "(order " + std::to_string(n.size()) + ")",
                     xmod_from_normal_subgroup(g, n)});
  }
  const auto z2 = cyclic_group(2), z3 = cyclic_group(3), z4 = cyclic_group(4), s3 = symmetric_group(3);
  const auto q8 = quaternion_group(), d4 = dihedral_group(4);
  for (const auto& [name, g] : std::vector<NamedGroup>{{"Z4", z4}, {"S3", s3}, {"Q8", q8}})
    out.push_back({"discrete:" + name, discrete(g)});
  out.push_back({"zero-boundary:Z3<-Z2", CrossedModule(inversion_action(z2, z3), GroupHom::trivial(z3, z2))});
  out.push_back({"zero-boundary:Z4<-Z2", CrossedModule(inversion_action(z2, z4), GroupHom::trivial(z4, z2))});
  out.push_back({"central:Q8->V4", central_quotient_xmod(q8)});
  out.push_back({"central:D4->V4", central_quotient_xmod(d4)});
  out.push_back({"central:S3->S3", central_quotient_xmod(s3)});
  const auto red = GroupHom::from_generators(z4, z2, {{1, 1}});
  const auto inc = GroupHom::from_generators(z2, z4, {{1, 2}});
  out.push_back({"abelian:Z4->Z2", CrossedModule(GroupAction::trivial(z2, z4), red)});
  out.push_back({"abelian:Z2->Z4", CrossedModule(GroupAction::trivial(z4, z2), inc)});

  // Violations.
  out.push_back({"violation:S3 over trivial",
                 CrossedModule(GroupAction::trivial(trivial_group(), s3), GroupHom::trivial(s3, trivial_group())),
                 true});
  out.push_back({"violation:Z4 inverted by Z2 with reduction", CrossedModule(inversion_action(z2, z4), red), true});
  {
    const auto a3 = materialize_subgroup(s3, generated_subgroup(s3, {*s3.find("(1 2 3)")}));
    out.push_back({"violation:A3 in S3 with trivial action",
                   CrossedModule(GroupAction::trivial(s3, a3.group), a3.inclusion), true});
  }
  {
    const auto inv_by_z4 = inversion_action(z2, z4).along(red);
    out.push_back({"violation:Z4 identity with inversion", CrossedModule(inv_by_z4, GroupHom::identity(z4)), true});
  }
  out.push_back({"violation:S3 conjugation with zero boundary",
                 CrossedModule(GroupAction::conjugation(s3), GroupHom::trivial(s3, s3)), true});
  out.push_back({"violation:S3 identity with trivial action",
                 CrossedModule(GroupAction::trivial(s3, s3), GroupHom::identity(s3)), true});
  {
    const auto cq = central_quotient_xmod(q8);
    out.push_back({"violation:Q8 over V4 with trivial action",
                   CrossedModule(GroupAction::trivial(cq.g(), q8), cq.boundary()), true});
  }
  return out;
}

/// Every action of the cyclic group Z/n (generator 1) on X, one per
/// automorphism φ with φ^n = 1, in hom enumeration order.
inline std::vector<GroupAction> cyclic_actions(const FiniteGroup& zn, const FiniteGroup& x) {
  std::vector<GroupAction> out;
  if (zn.order() == 1) {
    out.push_back(GroupAction::trivial(zn, x));
    return out;
  }
  for (const auto& phi : enumerate_homs(x, x).homs) {
    if (!phi.is_injective()) continue;
    GroupHom power = GroupHom::identity(x);
    for (std::size_t i = 0; i < zn.order(); ++i) power = phi.after(power);
    if (!(power == GroupHom::identity(x))) continue;
    std::vector<Elem> perm(phi.table().begin(), phi.table().end());
    out.push_back(GroupAction::from_generators(zn, x, {{1, perm}}));
  }
  return out;
}

struct NamedExtension {
  std::string name;
  SplitExtension ext;
};

/// Semidirect products X ⋊ B for small cyclic B and small X, every cyclic
/// action.
inline std::vector<NamedExtension> split_extension_corpus(const FiniteGroup& base) {
  std::vector<NamedExtension> out;
  for (const auto& [name, x] : small_groups()) {
    if (x.order() > 8) continue;
    std::size_t i = 0;
    for (const auto& a : cyclic_actions(base, x))
      out.push_back({name + "#" + std::to_string(i++), semidirect_product(a)});
  }
  return out;
}

struct LiftingInstance {
  std::string name;
  XModEpi epi;
  SplitExtension ext;
};

/// Epis onto normal-inclusion targets Q ↣ Q ⋊ P: each target times a valid
/// small crossed module, collapsing the second factor, plus the target
/// extended by a trivially acted complement K.
inline std::vector<LiftingInstance> projective_section_corpus() {
  std::vector<LiftingInstance> out;
  std::vector<NamedExtension> targets;
  for (const auto& base : {cyclic_group(1), cyclic_group(2)})
    for (auto& ne : split_extension_corpus(base))
      if (ne.ext.total().order() <= 8) targets.push_back({ne.name + " over Z" + std::to_string(base.order()), ne.ext});
  std::vector<Candidate> factors;
  for (auto& c : axiom_corpus())
    if (!c.designed_violation && c.xm.t().order() * c.xm.g().order() <= 8) factors.push_back(c);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const SplitExtension& ext = targets[i].ext;
    const CrossedModule tgt = normal_inclusion(ext);
    const Candidate& c = factors[i % factors.size()];
    const XModProduct p = product(tgt, c.xm);
    out.push_back({"(" + targets[i].name + ") x " + c.name, {p.xm, tgt, {p.t.proj1, p.g.proj1}}, ext});

    // Q × K ↣ (Q × K) ⋊ P with P acting trivially on K.
    const FiniteGroup k = cyclic_group(2 + i % 2);
    const GroupAction psi = action_from_extension(ext);
    const Product qk = direct_product(ext.kernel(), k);
    std::vector<Elem> act(ext.base().order() * qk.group.order());
    for (std::size_t b = 0; b < ext.base().order(); ++b)
      for (std::size_t x = 0; x < qk.group.order(); ++x)
        act[b * qk.group.order() + x] =
            qk.pair(psi(static_cast<Elem>(b), qk.proj1(static_cast<Elem>(x))), qk.proj2(static_cast<Elem>(x)));
    const GroupAction psik = GroupAction::from_table(ext.base(), qk.group, std::move(act));
    const SplitExtension big = semidirect_product(psik);
    const CrossedModule src = normal_inclusion(big);
    const GroupHom ext_cmp = extension_comparison(ext);
    std::vector<Elem> fg(big.total().order());
    for (std::size_t u = 0; u < fg.size(); ++u) {
      const auto x = static_cast<Elem>(u % qk.group.order()), b = static_cast<Elem>(u / qk.group.order());
      fg[u] = ext_cmp(sd_pair(psi, qk.proj1(x), b));
    }
    XModMorphism f{qk.proj1, GroupHom::from_table(big.total(), ext.total(), std::move(fg))};
    out.push_back({"(" + targets[i].name + ") with trivial Z" + std::to_string(k.order()), {src, tgt, f}, ext});
  }
  return out;
}

/// V4 ↣ V4 ⋊ Z2 (swap) onto Z2 ↣ Z2 × Z2 by the sum map: f_T has sections,
/// but none commutes with the swap.
inline LiftingInstance no_equivariant_section_fixture() {
  const auto z2 = cyclic_group(2);
  const Product v4 = direct_product(z2, z2);
  std::vector<Elem> swap(4);
  for (Elem x = 0; x < 4; ++x) swap[x] = v4.pair(v4.proj2(x), v4.proj1(x));
  const GroupAction sw = GroupAction::from_generators(z2, v4.group, {{1, swap}});
  const GroupAction triv = GroupAction::trivial(z2, z2);
  const SplitExtension src = semidirect_product(sw), tgt = semidirect_product(triv);
  std::vector<Elem> sum(4), fg(src.total().order());
  for (Elem x = 0; x < 4; ++x) sum[x] = z2.mul(v4.proj1(x), v4.proj2(x));
  for (Elem x = 0; x < 4; ++x)
    for (Elem p = 0; p < 2; ++p) fg[sd_pair(sw, x, p)] = sd_pair(triv, sum[x], p);
  XModMorphism f{GroupHom::from_table(v4.group, z2, sum), GroupHom::from_table(src.total(), tgt.total(), fg)};
  return {"swap-sum", {normal_inclusion(src), normal_inclusion(tgt), f}, tgt};
}

/// (1 ↣ Z4) onto (1 ↣ Z2): the section of Z2 does not lift over the
/// reduction Z4 ->> Z2.
inline LiftingInstance p_lift_unavailable_fixture() {
  const auto e = trivial_group(), z2 = cyclic_group(2), z4 = cyclic_group(4);
  const SplitExtension tgt = semidirect_product(GroupAction::trivial(z2, e));
  const SplitExtension src = semidirect_product(GroupAction::trivial(z4, e));
  const GroupHom red = GroupHom::from_generators(src.total(), tgt.total(), {{src.s(1), tgt.s(1)}});
  return {"Z4 onto Z2", {normal_inclusion(src), normal_inclusion(tgt), {GroupHom::identity(e), red}}, tgt};
}

}  // namespace xmodkit
