#include <gtest/gtest.h>

#include "qexp/qexp.hpp"

using namespace qexp;

namespace {

BigComplex num(const char* s, mpfr_prec_t prec = 128) { return BigComplex(BigReal::parse(s, prec)); }

BigReal tol(const char* s = "1e-25", mpfr_prec_t prec = 128) { return BigReal::parse(s, prec); }

}  // namespace

TEST(BigReal, ParseAndArithmetic) {
  BigReal third = BigReal::parse("1/3");
  BigReal one = third * BigReal(3, 128);
  EXPECT_LT(abs(one - BigReal(1, 128)), tol("1e-37"));
  EXPECT_THROW(BigReal::parse("abc"), ParseError);
  EXPECT_THROW(BigReal::parse("1/0"), ParseError);
  EXPECT_EQ(BigReal::parse("0.5", 64).precision(), 64);
  EXPECT_EQ((BigReal(1, 64) + BigReal(1, 256)).precision(), 256);
  BigReal r = BigReal::from_rational(BigRational(22, 7), 128);
  EXPECT_LT(abs(r - BigReal::parse("22/7")), tol("1e-37"));
}

TEST(BigComplex, Arithmetic) {
  BigComplex i(BigReal(0, 128), BigReal(1, 128));
  BigComplex m = i * i;
  EXPECT_EQ(m.real().to_double(), -1.0);
  EXPECT_TRUE(m.imag().is_zero());
  EXPECT_EQ(pow(num("2"), -2).real().to_double(), 0.25);
  EXPECT_THROW(num("1") / BigComplex(128), ArithmeticError);
}

TEST(QPochNum, Basics) {
  BigComplex q = num("0.3");
  EXPECT_EQ(qpoch_num(BigComplex(128), kInfinite, q).real().to_double(), 1.0);
  EXPECT_EQ(qpoch_num(num("0.7"), 0, q).real().to_double(), 1.0);
  EXPECT_THROW(qpoch_num(num("0.5"), kInfinite, num("1")), DomainError);
  // (c;q)_{-1} = 1/(1 - c/q)
  BigComplex v = qpoch_num(num("0.2"), -1, q);
  EXPECT_LT(abs(v - num("1") / (num("1") - num("0.2") / q)), tol("1e-35"));
}

TEST(QPochNum, IndependentLogSum) {
  // (1/2;1/2)_inf against exp(sum log(1 - 2^{-1-i})) at 64 extra bits.
  const mpfr_prec_t prec = 128, wide = prec + 64;
  BigComplex half = num("1/2", prec);
  BigReal value = qpoch_num(half, kInfinite, half).real();
  BigReal logsum(wide);
  for (long i = 0; i < 400; ++i) logsum += log(BigReal(1, wide) - BigReal::power_of_two(-1 - i, wide));
  BigReal oracle = exp(logsum);
  EXPECT_LT(abs(value - oracle), tol("1e-36"));
}

TEST(QPochNum, FiniteTimesTail) {
  BigComplex c = num("0.4"), q = num("0.6");
  for (long n : {0L, 1L, 5L, 17L}) {
    BigComplex lhs = qpoch_num(c, n, q) * qpoch_num(c * pow(q, n), kInfinite, q);
    EXPECT_LT(abs(lhs - qpoch_num(c, kInfinite, q)), tol("1e-30")) << n;
  }
  PochValue pv = qpoch_infinite_num(c, q);
  EXPECT_GT(pv.factors, 0u);
  EXPECT_LT(pv.tail_bound, tol("1e-38"));
}

TEST(Numeric, SpecPoints) {
  auto t = tol();
  EXPECT_TRUE(rogers_fine_numeric({{"q", "0.1"}, {"a", "0.3"}, {"b", "0.5"}, {"z", "0.2"}}, t, 128).passed);
  EXPECT_TRUE(coogan_ono_numeric({{"q", "0.3"}, {"z", "0.4"}}, t, 128).passed);
  EXPECT_TRUE(ramanujan_1psi1_numeric({{"q", "0.2"}, {"a", "2.0"}, {"b", "0.1"}, {"z", "0.5"}}, t, 128).passed);
  for (long m : {1L, 2L, 3L}) {
    for (const char* q : {"1/2", "1/3"}) EXPECT_TRUE(check_qqq(m, q, t, 128).passed) << m << " " << q;
  }
}

TEST(Numeric, ReportInvariant) {
  auto r = coogan_ono_variant_numeric({{"q", "0.5"}, {"z", "-0.7"}}, tol(), 128);
  EXPECT_EQ(r.passed, r.abs_diff <= r.tolerance);
  EXPECT_GT(r.terms, 0u);
  auto strict = coogan_ono_variant_numeric({{"q", "0.5"}, {"z", "-0.7"}}, tol("1e-300"), 128);
  EXPECT_EQ(strict.passed, strict.abs_diff <= strict.tolerance);
}

TEST(Numeric, RegionViolationsAreDomainErrors) {
  auto t = tol();
  EXPECT_THROW(coogan_ono_numeric({{"q", "0.3"}, {"z", "1.2"}}, t, 128), DomainError);
  EXPECT_THROW(coogan_ono_numeric({{"q", "1.0"}, {"z", "0.2"}}, t, 128), DomainError);
  EXPECT_THROW(ramanujan_1psi1_numeric({{"q", "0.2"}, {"a", "2"}, {"b", "1.5"}, {"z", "0.5"}}, t, 128), DomainError);
  EXPECT_THROW(rogers_fine_numeric({{"q", "0.2"}, {"a", "0.1"}, {"z", "0.5"}}, t, 128), DomainError);
  EXPECT_THROW(check_qqq(0, "1/2", t, 128), DomainError);
  EXPECT_THROW(check_qqq(1, "1.5", t, 128), DomainError);
  EXPECT_THROW(check_identity_numeric("nosuch", {}, t, 128), StructuralError);
}

TEST(Numeric, GridStableUnderPrecisionDoubling) {
  for (const auto& [name, point] : default_numeric_grid()) {
    auto lo = check_identity_numeric(name, point, tol("1e-25", 128), 128);
    auto hi = check_identity_numeric(name, point, tol("1e-25", 256), 256);
    EXPECT_TRUE(lo.passed) << name;
    EXPECT_EQ(lo.passed, hi.passed) << name;
  }
}

TEST(SpotCheck, ConstantSeries) {
  auto t = make_symbols({"q"});
  auto closed = [](const std::map<std::string, BigComplex>&) { return BigComplex(1, 128); };
  auto r = spot_check_series(TruncSeries::one(t, 5), {{"q", "0.3"}, {"z", "0.5"}}, closed, tol(), 128);
  EXPECT_EQ(r.status, SpotStatus::passed);
}

TEST(SpotCheck, InfiniteProductSeries) {
  // pochhammer_infinite(a) at a=0.2, q=0.3, z=0.1, N=20 against qpoch_num(az; q).
  auto t = make_symbols({"q", "a"});
  TruncSeries s = pochhammer_infinite(parse_ratfun("a", t), 20);
  auto closed = [](const std::map<std::string, BigComplex>& v) {
    return qpoch_num(v.at("a") * v.at("z"), kInfinite, v.at("q"));
  };
  auto r = spot_check_series(s, {{"q", "0.3"}, {"a", "0.2"}, {"z", "0.1"}}, closed, tol(), 128);
  EXPECT_EQ(r.status, SpotStatus::passed);
  EXPECT_EQ(spot_check_series(s, {{"q", "0.3"}, {"a", "0.2"}, {"z", "0.1"}},
                              [&](const auto& v) { return closed(v) + num("1e-10"); }, tol(), 128)
                .status,
            SpotStatus::failed);
}

TEST(SpotCheck, NearRadiusIsInconclusive) {
  auto t = make_symbols({"q"});
  TruncSeries geo = TruncSeries::one(t, 4).over_binomial(RatFun::constant(t, 1), 1);  // 1/(1-z)
  auto closed = [](const std::map<std::string, BigComplex>& v) { return BigComplex(1, 128) / (BigComplex(1, 128) - v.at("z")); };
  auto r = spot_check_series(geo, {{"q", "0.3"}, {"z", "0.95"}}, closed, tol(), 128);
  EXPECT_EQ(r.status, SpotStatus::inconclusive);
}

TEST(SpotCheck, SymbolicIdentitiesAtRandomPoints) {
  // Both sides of identities that pass symbolically agree numerically at three points.
  DeterministicRng rng(derive_seed(7, "spot_points"));
  for (const char* name : {"coogan_ono", "coogan_ono_variant", "rogers_fine"}) {
    auto builders = identity_builders();
    auto it = std::find_if(builders.begin(), builders.end(), [&](const auto& e) { return e.first == name; });
    ASSERT_NE(it, builders.end());
    IdentityInstance inst = it->second(20, 7);
    TruncSeries rhs = rhs_total(inst);
    for (int i = 0; i < 3; ++i) {
      NumericPoint p{{"q", "0." + std::to_string(rng.uniform(1, 4))}, {"z", "0.0" + std::to_string(rng.uniform(1, 5))}};
      if (inst.lhs.table()->size() > 1) {
        p.emplace_back("a", "0." + std::to_string(rng.uniform(1, 5)));
        p.emplace_back("b", "0." + std::to_string(rng.uniform(1, 5)));
      }
      auto left = spot_check_series(inst.lhs, p, [](const auto&) { return BigComplex(128); }, tol("1e-20"), 128);
      auto right = spot_check_series(rhs, p, [](const auto&) { return BigComplex(128); }, tol("1e-20"), 128);
      ASSERT_NE(left.status, SpotStatus::inconclusive) << name;
      EXPECT_LT(abs(left.series_value - right.series_value), tol("1e-20")) << name;
    }
  }
}

TEST(Points, ParseFile) {
  auto pts = parse_points(R"([{"q": "0.1", "z": 0.25}, {"q": "1/3"}])");
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[0][0].first, "q");
  EXPECT_EQ(pts[0][1].second, "0.25");
  EXPECT_THROW(parse_points("{"), ParseError);
  EXPECT_THROW(parse_points(R"({"q": 1})"), ParseError);
  EXPECT_THROW(parse_points(R"([{"q": true}])"), ParseError);
}
