#include <gtest/gtest.h>

#include "qexp/qexp.hpp"

using namespace qexp;

namespace {

SymbolTablePtr qab() { return make_symbols({"q", "a", "b"}); }

RatFun lit(const SymbolTablePtr& t, const char* s) { return parse_ratfun(s, t); }

void expect_coeffs(const std::vector<RatFun>& got, const std::vector<RatFun>& want) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_TRUE(got[i].equals(want[i])) << "index " << i << ": " << to_string(got[i]) << " vs " << to_string(want[i]);
  }
}

std::vector<RatFun> unit(const SymbolTablePtr& t, std::size_t n, std::size_t k) {
  std::vector<RatFun> v(n + 1, RatFun(t));
  v[k] = RatFun::constant(t, 1);
  return v;
}

}  // namespace

TEST(Inversion, BaseMatrixEntries) {
  auto t = qab();
  LTMatrix m = base_matrix(lit(t, "a"), lit(t, "b"), 4);
  for (std::size_t k = 0; k <= 4; ++k) EXPECT_TRUE(m(k, k).is_one());
  EXPECT_TRUE(m(2, 1).equals(lit(t, "b - a")));
  EXPECT_TRUE(m(3, 2).equals(lit(t, "(1 + q)*(b - a)")));
  EXPECT_THROW(m.set(1, 2, RatFun(t)), StructuralError);
}

TEST(Inversion, LtInverse) {
  auto t = qab();
  LTMatrix id = LTMatrix::identity(t, 3);
  EXPECT_FALSE(identity_defect(lt_inverse(id)));
  LTMatrix inv = lt_inverse(base_matrix(lit(t, "a"), lit(t, "b"), 4));
  EXPECT_TRUE(inv(2, 1).equals(lit(t, "a - b")));
  EXPECT_TRUE(inv(3, 2).equals(lit(t, "(1 + q)*(a - b)")));
  for (std::size_t n = 1; n <= 4; ++n) EXPECT_TRUE(inv(n, 0).is_zero());

  LTMatrix bad = LTMatrix::identity(t, 2);
  bad.set(1, 1, lit(t, "2"));
  EXPECT_THROW(lt_inverse(bad), SingularityError);
}

TEST(Inversion, InversePairSmall) {
  auto t = qab();
  LTMatrix a = base_matrix(lit(t, "a"), lit(t, "b"), 6);
  LTMatrix b = lt_inverse(a);
  EXPECT_FALSE(identity_defect(a * b));
  EXPECT_FALSE(identity_defect(b * a));
}

TEST(Inversion, BColumn) {
  auto t = qab();
  auto col = b_column1(lit(t, "a"), lit(t, "b"), 6);
  LTMatrix inv = lt_inverse(base_matrix(lit(t, "a"), lit(t, "b"), 6));
  EXPECT_TRUE(col[1].is_one());
  EXPECT_TRUE(col[2].equals(lit(t, "a - b")));
  for (std::size_t n = 1; n <= 6; ++n) EXPECT_TRUE(col[n].equals(inv(n, 1))) << n;
  auto same = b_column1(lit(t, "a"), lit(t, "a"), 6);
  for (std::size_t n = 2; n <= 6; ++n) EXPECT_TRUE(same[n].is_zero());
}

TEST(Inversion, ExpandTriangularSimpleInputs) {
  auto t = qab();
  RatFun a = lit(t, "a"), b = lit(t, "b");
  auto r = expand_triangular(TruncSeries::one(t, 5), a, b);
  EXPECT_EQ(r.method, ExpansionMethod::triangular_solve);
  expect_coeffs(r.coeffs, unit(t, 5, 0));
  expect_coeffs(expand_triangular(base_element(3, a, b, 5), a, b).coeffs, unit(t, 5, 3));
}

TEST(Inversion, CooganOnoInputGivesOnes) {
  auto t = qab();
  RatFun one = RatFun::constant(t, 1), mq = lit(t, "-q");
  TruncSeries theta = partial_theta(2, q_power(t, 1), 2, 12);
  TruncSeries f = theta + theta.lifted(1, 12);
  std::vector<RatFun> ones(13, one);
  expect_coeffs(expand_triangular(f, one, mq).coeffs, ones);
  expect_coeffs(expand_closed_form(f, one, mq).coeffs, ones);
}

TEST(Inversion, ClosedFormMatchesTriangular) {
  auto t = qab();
  RatFun a = lit(t, "a"), b = lit(t, "b");
  auto one = expand_closed_form(TruncSeries::one(t, 6), a, b);
  EXPECT_EQ(one.method, ExpansionMethod::closed_form);
  expect_coeffs(one.coeffs, unit(t, 6, 0));
  DeterministicRng rng(derive_seed(11, "inversion_test"));
  for (int i = 0; i < 3; ++i) {
    TruncSeries f = random_series(t, 8, rng);
    expect_coeffs(expand_closed_form(f, a, b).coeffs, expand_triangular(f, a, b).coeffs);
    TruncSeries back = reconstruct(expand_triangular(f, a, b), a, b, 8);
    EXPECT_FALSE(first_difference(back, f));
  }
}

TEST(Inversion, ClosedFormEntries) {
  auto t = qab();
  RatFun a = lit(t, "a"), b = lit(t, "b");
  EXPECT_TRUE(inverse_entry_closed_form(4, 4, a, b).is_one());
  EXPECT_TRUE(inverse_entry_closed_form(2, 1, a, b).equals(lit(t, "a - b")));
  EXPECT_TRUE(inverse_entry_closed_form(3, 0, a, b).is_zero());
  LTMatrix inv = lt_inverse(base_matrix(a, b, 6));
  LTMatrix closed = inverse_matrix_closed_form(a, b, 6);
  for (std::size_t n = 0; n <= 6; ++n) {
    for (std::size_t k = 0; k <= n; ++k) EXPECT_TRUE(inv(n, k).equals(closed(n, k))) << n << "," << k;
  }
}

TEST(Inversion, GnPolynomials) {
  auto t = make_symbols({"q", "a"});
  auto g = gn_polynomials(t, 12);
  EXPECT_TRUE(g[1].is_one());
  EXPECT_TRUE(g[2].equals(lit(t, "1 - q")));
  EXPECT_TRUE(g[3].equals(lit(t, "1 - 2*q^2 + q^3")));
  RatFun a = lit(t, "a");
  auto col = b_column1(a, a * q_power(t, 1), 12);
  for (std::size_t n = 1; n <= 12; ++n) EXPECT_TRUE(col[n].equals(g[n] * a.pow(static_cast<int>(n) - 1))) << n;
}

TEST(Inversion, SpecialCases) {
  auto t = qab();
  RatFun a = lit(t, "a"), b = lit(t, "b"), zero(t);
  DeterministicRng rng(derive_seed(3, "special_cases"));
  TruncSeries f = random_series(t, 7, rng);

  auto carlitz = carlitz_coeffs(f, b);
  EXPECT_EQ(carlitz.method, ExpansionMethod::carlitz);
  EXPECT_TRUE(carlitz.coeffs[0].equals(f[0]));
  expect_coeffs(carlitz.coeffs, expand_triangular(f, zero, b).coeffs);
  TruncSeries geo = pochhammer_finite(b, 1, 7).inverse();
  expect_coeffs(carlitz_coeffs(geo, b).coeffs, expand_triangular(geo, zero, b).coeffs);
  expect_coeffs(carlitz_coeffs(TruncSeries::one(t, 4), b).coeffs, unit(t, 4, 0));

  expect_coeffs(expand_b_zero(f, a).coeffs, expand_triangular(f, a, zero).coeffs);
  expect_coeffs(expand_b_eq_aq(f, a).coeffs, expand_triangular(f, a, a * q_power(t, 1)).coeffs);
  expect_coeffs(expand_b_eq_aq(TruncSeries::one(t, 4), a).coeffs, unit(t, 4, 0));
}

TEST(Inversion, PolynomialBEqAq) {
  auto t = make_symbols({"q", "a", "t1", "t2"});
  RatFun a = lit(t, "a");
  for (std::vector<RatFun> ts : {std::vector<RatFun>{}, {lit(t, "t1")}, {lit(t, "t1"), lit(t, "t2")}}) {
    TruncSeries f = TruncSeries::one(t, 7).times_binomial(a, 1);
    for (const auto& ti : ts) f = f.times_binomial(ti, 1);
    expect_coeffs(polynomial_b_eq_aq(a, ts, 7).coeffs, expand_triangular(f, a, a * q_power(t, 1)).coeffs);
  }
}

TEST(Inversion, FiniteGeneratingFunction) {
  auto t = make_symbols({"q", "a", "b", "y"});
  RatFun a = lit(t, "a"), b = lit(t, "b"), y = lit(t, "y");
  LTMatrix inv = lt_inverse(base_matrix(a, b, 5));
  auto col = b_column1(a, b, 5);
  for (std::size_t n = 1; n <= 5; ++n) {
    RatFun row(t);
    for (std::size_t k = 0; k <= n; ++k) row += inv(n, k) * y.pow(static_cast<int>(k));
    EXPECT_TRUE(finite_genfun_rhs(n, a, b, y, col).equals(row)) << n;
  }
  // S_1 vanishes at y = a.
  RatFun s1 = sn_polynomial(1, a, b, y);
  EXPECT_TRUE(substitute(s1, {{"y", a}}, t).is_zero());
}
