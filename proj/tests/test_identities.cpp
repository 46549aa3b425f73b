#include <gtest/gtest.h>

#include "qexp/qexp.hpp"

using namespace qexp;

namespace {

RatFun lit(const SymbolTablePtr& t, const char* s) { return parse_ratfun(s, t); }

const std::size_t kOrder = 6;

}  // namespace

TEST(Identities, CorpusPassesAtSmallOrder) {
  for (const auto& [name, build] : identity_builders()) {
    IdentityReport r = evaluate(build(kOrder, 7));
    EXPECT_TRUE(r.passed) << name << " fails at index " << r.first_failure->index;
    EXPECT_EQ(r.name, name);
    EXPECT_EQ(r.order, kOrder);
  }
}

TEST(Identities, BuildersAreSortedAndUnique) {
  auto builders = identity_builders();
  for (std::size_t i = 1; i < builders.size(); ++i) EXPECT_LT(builders[i - 1].first, builders[i].first);
}

TEST(Identities, PerturbationIsDetected) {
  for (const auto& [name, build] : identity_builders()) {
    IdentityInstance inst = build(kOrder, 7);
    for (std::size_t j = 0; j < inst.rhs_terms.size(); ++j) {
      auto low = lowest_nonzero(inst.rhs_terms[j]);
      if (!low) continue;  // a term vanishing to this order cannot be perturbed
      IdentityReport r = evaluate(inst, j);
      EXPECT_FALSE(r.passed) << name << " term " << j;
      ASSERT_TRUE(r.first_failure) << name;
      EXPECT_EQ(r.first_failure->index, *low) << name << " term " << j;
    }
  }
}

TEST(Identities, CooganOnoLowCoefficients) {
  IdentityInstance co = build_coogan_ono(12);
  auto t = co.lhs.table();
  EXPECT_TRUE(evaluate(co).passed);
  EXPECT_TRUE(co.lhs[1].is_zero());
  EXPECT_TRUE(co.lhs[2].equals(lit(t, "-q")));

  IdentityInstance variant = build_coogan_ono_variant(12);
  EXPECT_TRUE(evaluate(variant).passed);
  EXPECT_TRUE(variant.lhs[0].is_one());
  EXPECT_TRUE(variant.lhs[2].equals(lit(variant.lhs.table(), "-2*q")));
}

TEST(Identities, RogersFineSpecializations) {
  EXPECT_TRUE(check_specialization_coogan_ono(10).passed);
  EXPECT_TRUE(check_specialization_coogan_ono_variant(10).passed);
}

TEST(Identities, GeneralTransformInstances) {
  EXPECT_TRUE(evaluate(build_general_transform_unit(10)).passed);
  EXPECT_TRUE(evaluate(build_general_transform_3phi2(8)).passed);
  EXPECT_TRUE(evaluate(build_general_transform_random(8, 7)).passed);
  EXPECT_TRUE(evaluate(build_general_transform_random(8, 12345)).passed);
}

TEST(Identities, PhiTransform) {
  EXPECT_TRUE(evaluate(build_phi_transform(8)).passed);
  EXPECT_TRUE(evaluate(build_phi_transform_collapsed(8)).passed);
}

TEST(Identities, HeineSpecializationUpperEqualsLower) {
  auto t = make_symbols({"q", "A", "B"});
  RatFun A = lit(t, "A"), B = lit(t, "B");
  IdentityInstance inst = build_heine_4phi3(A, B, A, 6, "heine_4phi3", {{"C", "A"}});
  EXPECT_TRUE(evaluate(inst).passed);
  EXPECT_TRUE(inst.lhs[0].equals(rhs_total(inst)[0]));
}

TEST(Identities, PartialThetaAtQZero) {
  IdentityInstance inst = build_partial_theta(12);
  EXPECT_TRUE(evaluate(inst).passed);
  auto t = inst.lhs.table();
  TruncSeries rhs = rhs_total(inst);
  for (std::size_t n = 0; n <= 12; ++n) {
    RatFun l = substitute(inst.lhs[n], {{"q", RatFun(t)}}, t);
    RatFun r = substitute(rhs[n], {{"q", RatFun(t)}}, t);
    EXPECT_TRUE(l.equals(r)) << n;
  }
  EXPECT_TRUE(inst.lhs[0].equals(lit(t, "2")));
}

TEST(Identities, Psi11EqualParameters) {
  // With a = b the base is {z^n}, so f = 1/(1 - z) and every coefficient is 1.
  auto t = make_symbols({"q", "a"});
  RatFun aq = lit(t, "a*q");
  TruncSeries f(t, 8);
  for (std::size_t k = 0; k <= 8; ++k) f += base_element(k, aq, aq, 8);
  for (std::size_t n = 0; n <= 8; ++n) EXPECT_TRUE(f[n].is_one());
  for (const auto& c : expand_triangular(f, aq, aq).coeffs) EXPECT_TRUE(c.is_one());
  EXPECT_TRUE(evaluate(build_psi11_coefficients(8)).passed);
}

TEST(Identities, FloorSum) {
  IdentityInstance inst = build_floor_sum(12);
  EXPECT_TRUE(evaluate(inst).passed);
  TruncSeries rhs = rhs_total(inst);
  EXPECT_TRUE(rhs[0].is_one());
  EXPECT_TRUE(rhs[1].is_one());
}

TEST(Registry, RunAllAtOrderZero) {
  for (const auto& r : run_all(0)) EXPECT_TRUE(r.passed) << r.name;
}

TEST(Registry, FilterSelectsRogersFine) {
  auto reports = run_all(4, "rogers");
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_EQ(reports[0].name, "rogers_fine");
}

TEST(Registry, NamesSortedAndUnknownRejected) {
  auto names = check_names();
  EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
  EXPECT_THROW(run_named({"nosuch"}, 4), StructuralError);
  auto r = run_named({"floor_sum", "coogan_ono"}, 4);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].name, "floor_sum");
}

TEST(Properties, SmallOrders) {
  EXPECT_TRUE(check_inverse_pair(6).passed);
  EXPECT_TRUE(check_inverse_closed_form(6).passed);
  EXPECT_TRUE(check_b_column_peel(6).passed);
  EXPECT_TRUE(check_expansion_dual_path(6, 4, 7).passed);
  EXPECT_TRUE(check_inverse_recurrence(6).passed);
  EXPECT_TRUE(check_inverse_three_term(6).passed);
  EXPECT_TRUE(check_inverse_column_equation(6, 4).passed);
  EXPECT_TRUE(check_inverse_homogeneity(6).passed);
  EXPECT_TRUE(check_inverse_k0_identity(6).passed);
  EXPECT_TRUE(check_finite_genfun(5).passed);
  EXPECT_TRUE(check_sn_divisibility(4).passed);
  EXPECT_TRUE(check_gn_specialization(8).passed);
  EXPECT_TRUE(check_carlitz_consistency(6, 7).passed);
  EXPECT_TRUE(check_b_zero_consistency(6, 7).passed);
  EXPECT_TRUE(check_b_eq_aq_consistency(6, 7).passed);
  EXPECT_TRUE(check_polynomial_b_eq_aq(6).passed);
}

TEST(Reports, JsonShape) {
  IdentityInstance inst = build_coogan_ono(4);
  Json ok = to_json(evaluate(inst));
  EXPECT_EQ(ok["kind"], "symbolic");
  EXPECT_TRUE(ok["first_failure"].is_null());
  Json bad = to_json(evaluate(inst, 0));
  EXPECT_FALSE(bad["passed"].get<bool>());
  EXPECT_EQ(bad["first_failure"]["index"], 0);
  EXPECT_FALSE(bad["first_failure"].contains("column"));
}
