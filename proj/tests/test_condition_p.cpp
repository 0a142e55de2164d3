#include <gtest/gtest.h>

#include "xmodkit/condition_p.hpp"

using namespace xmodkit;

TEST(ModuleArrows, StructureCriterionMatchesCertification) {
  for (const auto& [name, xm] : module_xmod_pool()) {
    const auto r = certify_rel_projective(xm, 7);
    ASSERT_FALSE(r.budget_exhausted) << name;
    EXPECT_EQ(r.projective, projective_arrow_z4(xm)) << name;
  }
}

TEST(ModuleArrows, CanonicalCoverIsAnEpi) {
  for (const auto& [name, xm] : module_xmod_pool()) {
    const XModEpi e = canonical_cover(xm);
    EXPECT_TRUE(check_morphism(e.f, e.source, e.target).ok()) << name;
    EXPECT_TRUE(e.f.f_t.is_surjective() && e.f.f_g.is_surjective()) << name;
    // The cover source is a projective arrow.
    EXPECT_TRUE(projective_arrow_z4(e.source)) << name;
  }
}

TEST(ConditionP, ModuleInstances) {
  const Z4Module f2 = free_z4(2), z4 = free_z4(1);
  const Product p = direct_product(z4.group, z4.group);
  const auto r = check_P_instance("Z4+Z4 onto Z4", p.inj1, p.proj2, p.inj2);
  EXPECT_TRUE(r.middle_projective);
  EXPECT_TRUE(r.kernel_projective);
  EXPECT_TRUE(r.pass());

  const auto z2 = z4_module(0, 1).group, e = free_z4(0).group;
  const auto r2 = check_P_instance("Z2", GroupHom::trivial(e, z2), GroupHom::identity(z2), GroupHom::identity(z2));
  EXPECT_FALSE(r2.middle_projective);
  EXPECT_TRUE(r2.pass());
  (void)f2;
}

TEST(ConditionP, EveryFreeSplittingPasses) {
  for (std::size_t n = 0; n <= 3; ++n)
    for (std::size_t a = 0; a <= n; ++a) {
      const auto k = free_z4(a).group, y = free_z4(n - a).group;
      const Product p = direct_product(k, y);
      EXPECT_TRUE(check_P_instance("free", p.inj1, p.proj2, p.inj2).pass());
    }
}

TEST(ConditionP, RejectsNonExactInput) {
  const auto z4 = free_z4(1).group;
  EXPECT_THROW(check_P_instance("bad", GroupHom::identity(z4), GroupHom::identity(z4), GroupHom::identity(z4)),
               AlgebraError);
}

TEST(Pipeline, TwoPointsOntoOne) {
  const auto r = pipeline_diagram_P({0, 0}, {0});
  EXPECT_TRUE(r.ok());
  for (const auto& o : r.objects)
    if (o.name == "Z") {
      EXPECT_EQ(o.order, 4u);
    }
}

TEST(Pipeline, IdentityHasTrivialKernels) {
  const auto r = pipeline_diagram_P({0}, {0});
  EXPECT_TRUE(r.ok());
  for (const auto& o : r.objects)
    if (o.name == "P" || o.name == "Q" || o.name == "Z") {
      EXPECT_EQ(o.order, 1u);
    }
}

TEST(Pipeline, ThreeOntoTwo) {
  const auto r = pipeline_diagram_P({0, 1, 1}, {0, 1});
  EXPECT_TRUE(r.ok());
  for (const auto& [name, v] : r.sequences) EXPECT_TRUE(v.empty()) << name << ": " << v;
}

TEST(Pipeline, RejectsUnsplitMaps) {
  EXPECT_THROW(pipeline_diagram_P({0, 0}, {0, 1}), AlgebraError);
  EXPECT_THROW(pipeline_diagram_P({0, 2}, {0, 1}), AlgebraError);
}

TEST(NonSchreier, Verdicts) {
  const auto r = non_schreier_demo(1);
  EXPECT_EQ(r.t_order, 16u);
  EXPECT_EQ(r.g_order, 64u);
  EXPECT_TRUE(r.relatively_projective);
  EXPECT_TRUE(r.generic_route_agrees);
  EXPECT_FALSE(r.shape.free_shaped);
  EXPECT_EQ(r.shape.reason, "16^2 = 256 != 64");
  EXPECT_TRUE(r.relabel_stable);
  for (const auto& [name, c] : r.certificates) EXPECT_TRUE(c.ok()) << name << ": " << c.message;
}

TEST(NonSchreier, Deterministic) {
  const auto a = non_schreier_demo(5), b = non_schreier_demo(5);
  ASSERT_EQ(a.certificates.size(), b.certificates.size());
  for (std::size_t i = 0; i < a.certificates.size(); ++i) {
    EXPECT_TRUE(a.certificates[i].second.section->f_t == b.certificates[i].second.section->f_t);
    EXPECT_TRUE(a.certificates[i].second.section->f_g == b.certificates[i].second.section->f_g);
  }
}

TEST(FreeShape, FreeObjectIsRecognised) {
  const Z4Module f = free_z4(1);
  const Product ff = direct_product(f.group, f.group);
  EXPECT_TRUE(free_shape(module_xmod(ff.inj2)).free_shaped);
  EXPECT_FALSE(free_shape(module_xmod(GroupHom::trivial(f.group, ff.group))).free_shaped);
}

TEST(Pi0Preservation, Suite) {
  const auto r = pi0_preservation_suite(3);
  EXPECT_GT(r.projective_checked, 0u);
  EXPECT_EQ(r.discrete_checked, 4u);
  EXPECT_GT(r.sequences_checked, 20u);
  EXPECT_TRUE(r.ok());
  for (const auto& f : r.exactness_failures) ADD_FAILURE() << f;
}

TEST(Transfer, SeededCorpus) {
  const auto r = theorem_P_transfer_check(11, 30);
  EXPECT_GE(r.sequences + r.discrete_instances, 30u);
  EXPECT_GT(r.middle_projective, 0u);
  EXPECT_TRUE(r.ok());
  for (const auto& c : r.counterexamples) ADD_FAILURE() << c;
  for (const auto& c : r.oracle_disagreements) ADD_FAILURE() << "oracle: " << c;
}
