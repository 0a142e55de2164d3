#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "xmodkit/construct.hpp"
#include "xmodkit/group.hpp"
#include "xmodkit/hom_search.hpp"

using namespace xmodkit;

namespace {

// Oracle: every map Z/m -> Z/n determined by the image of 1, checked
// pointwise against the group law.
std::size_t count_cyclic_homs_naive(std::size_t m, std::size_t n) {
  if (m == 1) return 1;
  std::size_t count = 0;
  for (std::size_t y = 0; y < n; ++y) {
    bool ok = true;
    for (std::size_t a = 0; a < m && ok; ++a)
      for (std::size_t b = 0; b < m && ok; ++b)
        ok = ((a + b) % m * y) % n == (a * y + b * y) % n;
    count += ok;
  }
  return count;
}

Elem perm_elem(const FiniteGroup& s, std::string_view name) {
  auto e = s.find(name);
  EXPECT_TRUE(e.has_value()) << name;
  return *e;
}

}  // namespace

TEST(Cyclic, Basics) {
  EXPECT_EQ(cyclic_group(1).order(), 1u);
  EXPECT_TRUE(cyclic_group(1).is_trivial());
  const auto z4 = cyclic_group(4);
  EXPECT_EQ(z4.order(), 4u);
  EXPECT_EQ(z4.exponent(), 4u);
  EXPECT_TRUE(z4.is_commutative());
  EXPECT_EQ(cyclic_group(6).mul(2, 5), 1);
  EXPECT_THROW(cyclic_group(0), AlgebraError);
}

TEST(Symmetric, Orders) {
  EXPECT_EQ(symmetric_group(1).order(), 1u);
  const auto s3 = symmetric_group(3);
  EXPECT_EQ(s3.order(), 6u);
  EXPECT_FALSE(s3.is_commutative());
  EXPECT_EQ(symmetric_group(4).order(), 24u);
  EXPECT_THROW(symmetric_group(6), AlgebraError);
  EXPECT_THROW(symmetric_group(0), AlgebraError);
}

TEST(Symmetric, CycleNamesAndComposition) {
  const auto s3 = symmetric_group(3);
  const Elem t12 = perm_elem(s3, "(1 2)");
  const Elem t13 = perm_elem(s3, "(1 3)");
  // (13)(12)(13) = (23)
  EXPECT_EQ(s3.name(s3.conj(t13, t12)), "(2 3)");
  EXPECT_EQ(s3.name(s3.identity()), "()");
}

TEST(FromTable, RejectsNonAssociative) {
  // Latin square without associativity (a loop of order 5).
  std::vector<Elem> t = {0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3,
                         3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
  EXPECT_THROW(FiniteGroup::from_table(5, t), AlgebraError);
}

TEST(Hom, ReductionAndRejection) {
  const auto z4 = cyclic_group(4), z2 = cyclic_group(2);
  const auto red = GroupHom::from_generators(z4, z2, {{1, 1}});
  EXPECT_EQ(red(3), 1);
  EXPECT_TRUE(red.is_surjective());
  EXPECT_THROW(GroupHom::from_generators(z2, z4, {{1, 1}}), AlgebraError);
  const auto id = GroupHom::from_generators(z4, z4, {{1, 1}});
  EXPECT_TRUE(id == GroupHom::identity(z4));
}

TEST(Subobjects, KernelImageQuotient) {
  const auto z4 = cyclic_group(4), z2 = cyclic_group(2);
  const auto red = GroupHom::from_generators(z4, z2, {{1, 1}});
  EXPECT_EQ(kernel_elements(red), (ElemSet{0, 2}));
  EXPECT_EQ(kernel(red).group.order(), 2u);

  const auto s3 = symmetric_group(3);
  const ElemSet a3 = generated_subgroup(s3, {perm_elem(s3, "(1 2 3)")});
  EXPECT_EQ(quotient(s3, a3).group.order(), 2u);
  const ElemSet c2 = generated_subgroup(s3, {perm_elem(s3, "(1 2)")});
  EXPECT_THROW(quotient(s3, c2), AlgebraError);
  auto w = normality_witness(s3, c2);
  ASSERT_TRUE(w.has_value());
  EXPECT_FALSE(contains(c2, s3.conj(w->first, w->second)));
}

TEST(Subobjects, FirstIsomorphismTheoremOverAllHoms) {
  const auto s3 = symmetric_group(3);
  for (const auto& src : {s3, cyclic_group(6), dihedral_group(4)}) {
    for (const auto& tgt : {s3, cyclic_group(4), cyclic_group(2)}) {
      auto r = enumerate_homs(src, tgt);
      ASSERT_FALSE(r.budget_exhausted);
      for (const auto& f : r.homs) {
        EXPECT_EQ(image(f).size() * kernel_elements(f).size(), src.order());
        auto q = quotient(src, kernel_elements(f));
        auto fb = induced_on_quotient(q, f);
        EXPECT_TRUE(fb.is_injective());
      }
    }
  }
}

TEST(Pullback, Examples) {
  const auto z4 = cyclic_group(4), z2 = cyclic_group(2), e = trivial_group();
  const auto red = GroupHom::from_generators(z4, z2, {{1, 1}});
  auto pb = pullback(red, red);
  // Oracle: count pairs with equal parity.
  std::size_t pairs = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) pairs += (a % 2 == b % 2);
  EXPECT_EQ(pb.group.order(), pairs);
  for (std::size_t x = 0; x < pb.group.order(); ++x)
    EXPECT_EQ(red(pb.p1(static_cast<Elem>(x))), red(pb.p2(static_cast<Elem>(x))));

  const auto s3 = symmetric_group(3);
  auto over_trivial = pullback(GroupHom::trivial(z4, e), GroupHom::trivial(s3, e));
  EXPECT_EQ(over_trivial.group.order(), 24u);
  auto diag = pullback(GroupHom::identity(s3), GroupHom::identity(s3));
  EXPECT_EQ(diag.group.order(), 6u);
}

TEST(HomEnumeration, CountsAgainstNaiveOracle) {
  for (std::size_t m = 1; m <= 8; ++m)
    for (std::size_t n = 1; n <= 8; ++n)
      EXPECT_EQ(enumerate_homs(cyclic_group(m), cyclic_group(n)).homs.size(),
                count_cyclic_homs_naive(m, n))
          << m << " -> " << n;
  EXPECT_EQ(enumerate_homs(cyclic_group(2), cyclic_group(4)).homs.size(), 2u);
  EXPECT_EQ(enumerate_homs(cyclic_group(3), cyclic_group(4)).homs.size(), 1u);
  EXPECT_EQ(enumerate_homs(symmetric_group(4), trivial_group()).homs.size(), 1u);
}

TEST(HomEnumeration, NonAbelianCountsAgainstPointwiseOracle) {
  // Oracle: all maps S3 -> target determined by images of (1 2) and (1 2 3),
  // each completed by words and checked on the full table.
  const auto s3 = symmetric_group(3);
  for (const auto& tgt : {s3, cyclic_group(6), dihedral_group(4)}) {
    std::size_t count = 0;
    for (std::size_t y = 0; y < tgt.order(); ++y)
      for (std::size_t z = 0; z < tgt.order(); ++z) {
        try {
          GroupHom::from_generators(s3, tgt,
                                    {{perm_elem(s3, "(1 2)"), static_cast<Elem>(y)},
                                     {perm_elem(s3, "(1 2 3)"), static_cast<Elem>(z)}});
          ++count;
        } catch (const AlgebraError&) {
        }
      }
    EXPECT_EQ(enumerate_homs(s3, tgt).homs.size(), count);
  }
}

TEST(HomEnumeration, AutomorphismsFormAGroup) {
  for (const auto& g : {cyclic_group(4), symmetric_group(3), dihedral_group(4),
                        quaternion_group()}) {
    std::vector<GroupHom> autos;
    for (auto& f : enumerate_homs(g, g).homs)
      if (f.is_injective()) autos.push_back(f);
    for (auto& a : autos)
      for (auto& b : autos)
        EXPECT_TRUE(std::find(autos.begin(), autos.end(), a.after(b)) != autos.end());
  }
  std::size_t aut_z4 = 0;
  for (auto& f : enumerate_homs(cyclic_group(4), cyclic_group(4)).homs) aut_z4 += f.is_injective();
  EXPECT_EQ(aut_z4, 2u);
}

TEST(HomEnumeration, DeterministicOrderAndBudget) {
  const auto s4 = symmetric_group(4);
  auto a = enumerate_homs(s4, s4);
  auto b = enumerate_homs(s4, s4);
  ASSERT_EQ(a.homs.size(), b.homs.size());
  for (std::size_t i = 0; i < a.homs.size(); ++i) EXPECT_TRUE(a.homs[i] == b.homs[i]);
  HomSearchOptions tiny;
  tiny.budget = 5;
  auto c = enumerate_homs(s4, s4, tiny);
  EXPECT_TRUE(c.budget_exhausted);
}

TEST(HomEnumeration, SectionsAndIsomorphisms) {
  const auto z4 = cyclic_group(4), z2 = cyclic_group(2);
  const auto red = GroupHom::from_generators(z4, z2, {{1, 1}});
  EXPECT_EQ(find_section(red).status, SearchStatus::kNone);
  auto v4 = direct_product(z2, z2);
  auto s = find_section(v4.proj1);
  ASSERT_EQ(s.status, SearchStatus::kFound);
  EXPECT_TRUE(v4.proj1.after(*s.hom) == GroupHom::identity(z2));
  EXPECT_EQ(find_isomorphism(symmetric_group(3), dihedral_group(3)).status, SearchStatus::kFound);
  EXPECT_EQ(find_isomorphism(quaternion_group(), dihedral_group(4)).status, SearchStatus::kNone);
}

TEST(Groups, RelabelIsIsomorphic) {
  const auto d4 = dihedral_group(4);
  std::vector<Elem> perm = {0, 7, 6, 5, 4, 3, 2, 1};
  auto r = relabel(d4, perm);
  EXPECT_EQ(find_isomorphism(d4, r).status, SearchStatus::kFound);
}

TEST(Groups, NormalSubgroupCounts) {
  // Known counts of normal subgroups.
  EXPECT_EQ(normal_subgroups(symmetric_group(3)).size(), 3u);
  EXPECT_EQ(normal_subgroups(symmetric_group(4)).size(), 4u);
  EXPECT_EQ(normal_subgroups(dihedral_group(4)).size(), 6u);
  EXPECT_EQ(normal_subgroups(quaternion_group()).size(), 6u);
}
