#include "liouville/region.hpp"

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <random>

using namespace liouville::region;
using boost::multiprecision::cpp_int;

namespace {

// Oracle values computed once with exact integer Horner evaluation of the
// coefficient lists and a 40-digit root solve of Q1, then frozen here.
constexpr double kL1AtZero = 3.0487127572808945317;
constexpr double kL1AtMinus19 = 0.11656691313924304187;
constexpr double kL1AtOne = 4.9085091581755873939;
constexpr double kL1AtMinusOne = 1.3474454396847332287;

cpp_int horner_int(const auto& coeffs, long long x) {
  cpp_int s = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) s = s * x + coeffs[i];
  return s;
}

}  // namespace

TEST(Polynomials, ConstantTerms) {
  EXPECT_EQ(eval_A1(0.0), 252756288.0);
  EXPECT_EQ(eval_A2(0.0), 619127091200.0);
}

TEST(Polynomials, FrozenIntegerValues) {
  EXPECT_EQ(eval_A1(1.0), -51538409.0);
  EXPECT_EQ(eval_A1(2.0), -110592000.0);
  EXPECT_EQ(eval_A2(1.0), 134629202175.0);
  EXPECT_EQ(eval_A1_exact(1), exact_rational(-51538409));
  EXPECT_EQ(eval_A2_exact(1), exact_rational(134629202175LL));
  EXPECT_EQ(eval_A2_exact(exact_rational(1, 2)), exact_rational(326331264792015LL, 1024));
}

TEST(Polynomials, ExactPathMatchesIntegerHorner) {
  for (long long x = -4; x <= 4; ++x) {
    EXPECT_EQ(eval_A1_exact(x), exact_rational(horner_int(kA1Coefficients, x)));
    EXPECT_EQ(eval_A2_exact(x), exact_rational(horner_int(kA2Coefficients, x)));
  }
}

TEST(Polynomials, CompensatedHornerCloseToExact) {
  for (int k = 0; k <= 400; ++k) {
    const double x = -2.0 + 4.0 * k / 400;
    const double exact = static_cast<double>(eval_A2_exact(to_exact(x)));
    EXPECT_NEAR(eval_A2(x), exact, 1e-14 * std::abs(exact)) << x;
    const double exact1 = static_cast<double>(eval_A1_exact(to_exact(x)));
    EXPECT_NEAR(eval_A1(x), exact1, 1e-13 * std::max(1.0, std::abs(exact1))) << x;
  }
}

TEST(Polynomials, A2PositiveOnDomain) {
  // Exact rational samples; the conjugate-root branch is never reached on [-2, 2].
  for (int k = 0; k <= 1000; ++k) {
    const exact_rational x = exact_rational(-2) + exact_rational(4 * k, 1000);
    EXPECT_GT(eval_A2_exact(x), 0) << k;
  }
}

TEST(ToExact, DyadicRoundTrip) {
  EXPECT_EQ(to_exact(0.5), exact_rational(1, 2));
  EXPECT_EQ(to_exact(-3.25), exact_rational(-13, 4));
  EXPECT_EQ(static_cast<double>(to_exact(0.1)), 0.1);
}

TEST(Q1, PrintedValueAtMidpoint) {
  EXPECT_NEAR(eval_Q1(2.0, 10.0 / 14.0), 6.0 / 49.0 * 18.0 * 18.0, 1e-10);
  for (double l : {-1.5, 0.0, 1.0}) {
    EXPECT_NEAR(eval_Q1(l, (8.0 + l) / 14.0), 6.0 / 49.0 * (20.0 - l) * (20.0 - l), 1e-9);
  }
}

TEST(Q1, ConstantTerm) { EXPECT_EQ(eval_Q1(0.0, 0.0), -480.0); }

TEST(Q1, VanishesAtBoundaryCurve) {
  for (int k = 1; k < 100; ++k) {
    const double l = -2.0 + (x_star() + 2.0) * k / 100;
    EXPECT_NEAR(eval_Q1(l, eval_L1(l) / (3.0 * (2.0 + l))), 0.0, 1e-9) << l;
  }
}

TEST(Q1, DerivativeMatchesDifferenceQuotient) {
  const double h = 1e-6;
  for (double l : {-1.0, 0.5})
    for (double x : {0.2, 0.7})
      EXPECT_NEAR(eval_Q1_prime(l, x), (eval_Q1(l, x + h) - eval_Q1(l, x - h)) / (2 * h), 1e-4);
}

TEST(Q1, MonotoneSamples) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> dl(-1.999, x_star() - 1e-3);
  std::uniform_real_distribution<double> dx(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double l = dl(gen);
    double a = dx(gen), b = dx(gen);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    EXPECT_LT(eval_Q1(l, a), eval_Q1(l, b));
  }
}

TEST(Q1, MonotonicityCertificate) {
  EXPECT_EQ(q1_monotonicity_certificate(0.0), 16.0 * -833136.0);
  EXPECT_LT(q1_monotonicity_certificate(1.1), 0.0);
  for (int k = 1; k <= 1000; ++k) {
    const double l = -2.0 + (x_star() + 2.0) * k / 1001;
    EXPECT_LT(q1_monotonicity_certificate(l), 0.0) << l;
  }
  // Cross-check against the discriminant of the quadratic Q1' itself.
  for (double l : {-1.5, 0.0, 1.0}) {
    const double a = 336.0 * (14.0 - l);
    const double b = -4.0 * (996.0 + 332.0 * l - 67.0 * l * l);
    const double c = 1552.0 + 432.0 * l - 70.0 * l * l - 9.0 * l * l * l;
    EXPECT_NEAR(q1_monotonicity_certificate(l), b * b - 4.0 * a * c,
                1e-9 * std::abs(b * b));
  }
}

TEST(XStar, ClosedForm) {
  EXPECT_NEAR(x_star(), 1.126343967037228, 1e-15);
  EXPECT_LT(x_star(), 1.13);
}

TEST(L1, Endpoints) {
  EXPECT_EQ(eval_L1(2.0), 6.0);
  EXPECT_NEAR(eval_L1(-2.0), 0.0, 1e-12);
  EXPECT_LT(eval_L1(-2.0 + 1e-6), 1e-3);
  EXPECT_EQ(eval_L1(1.5), 5.5);
}

TEST(L1, FrozenValues) {
  EXPECT_NEAR(eval_L1(0.0), kL1AtZero, 1e-12);
  EXPECT_NEAR(eval_L1(-1.9), kL1AtMinus19, 1e-12);
  EXPECT_NEAR(eval_L1(1.0), kL1AtOne, 1e-12);
  EXPECT_NEAR(eval_L1(-1.0), kL1AtMinusOne, 1e-12);
}

TEST(L1, DomainError) {
  EXPECT_THROW(eval_L1(-2.1), std::domain_error);
  EXPECT_THROW(eval_L1(2.5), std::domain_error);
  EXPECT_THROW(eval_L1(std::nan("")), std::domain_error);
}

TEST(L1, ContinuousAtBranchPoint) {
  const double xs = x_star();
  EXPECT_NEAR(eval_L1(xs - 1e-8), 4.0 + xs, 1e-6);
  EXPECT_EQ(eval_L1(xs), 4.0 + xs);
}

TEST(L1, BelowOnofriLine) {
  for (int k = 0; k <= 1000; ++k) {
    const double x = -2.0 + 4.0 * k / 1000;
    const double v = eval_L1(x);
    EXPECT_LE(v, 4.0 + x + 1e-9);
    if (x < x_star() - 1e-3) EXPECT_LT(v, 4.0 + x);
    if (x >= x_star()) EXPECT_EQ(v, 4.0 + x);
  }
}

TEST(L1, AgreesWithRootOracle) {
  for (int k = 1; k <= 1000; ++k) {
    const double x = -2.0 + (x_star() + 2.0) * k / 1001;
    const double closed = eval_L1(x);
    EXPECT_LE(std::abs(closed - l1_root_oracle(x, 1e-12)), 1e-9 * std::max(1.0, closed)) << x;
  }
}

TEST(L1, ConjugateCubeRootBranch) {
  // z^3 - 3z - 1 = 0 has three real roots; Cardano with p = -1, q = -1/2
  // gives a = 1/2, d = 1/4 - 1 < 0 and the root 2 cos(pi/9).
  EXPECT_NEAR(detail::sum_conjugate_cbrt(0.5, -0.75), 2.0 * std::cos(M_PI / 9.0), 1e-14);
  EXPECT_NEAR(detail::sum_conjugate_cbrt(1.0, 0.0), 2.0, 1e-15);
  // Real branch with a negative radicand.
  EXPECT_NEAR(detail::sum_conjugate_cbrt(0.0, 8.0), 0.0, 1e-15);
}

TEST(RootOracle, Preconditions) {
  EXPECT_THROW(l1_root_oracle(-2.0, 1e-12), std::domain_error);
  EXPECT_THROW(l1_root_oracle(1.5, 1e-12), std::domain_error);
  const double y = l1_root_oracle(0.0, 1e-12);
  EXPECT_LE(std::abs(eval_Q1(0.0, y / 6.0)), 1e-9);
  const double small = l1_root_oracle(-1.9, 1e-12);
  EXPECT_GT(small, 0.0);
  EXPECT_LT(small, 0.2);
}

TEST(Classify, PaperPoints) {
  EXPECT_EQ(classify({2.0, 6.0, 1.0}).tag, RegionTag::GreenBoundary);
  EXPECT_EQ(classify({-3.0, 0.5, 1.0}).tag, RegionTag::RedOnly);
  EXPECT_EQ(classify({0.0, 10.0, 1.0}).tag, RegionTag::Outside);
  EXPECT_EQ(classify({1.0, 3.0, 1.0}).tag, RegionTag::GreenInterior);
  EXPECT_EQ(classify({0.0, 0.0, 1.0}).tag, RegionTag::Outside);
  EXPECT_EQ(classify({0.0, 3.5, 1.0}).tag, RegionTag::RedOnly);  // L1(0) < 3.5 < 4
  EXPECT_EQ(classify({-4.0, 0.1, 1.0}).tag, RegionTag::Outside);
}

TEST(Classify, BoundaryTolerance) {
  const double l = 0.0;
  const double b = eval_L1(l);
  EXPECT_EQ(classify({l, b, 1.0}).tag, RegionTag::GreenBoundary);
  EXPECT_EQ(classify({l, b - 1e-9, 1.0}).tag, RegionTag::GreenInterior);
  EXPECT_EQ(classify({l, b + 1e-9, 1.0}).tag, RegionTag::RedOnly);
  EXPECT_EQ(classify({l, b + 1e-9, 1.0}, {1e-6}).tag, RegionTag::GreenBoundary);
}

TEST(Classify, WitnessesRecorded) {
  const auto c = classify({-3.0, 0.5, 1.0});
  EXPECT_TRUE(c.witnesses.lambda2_positive);
  EXPECT_FALSE(c.witnesses.lambda1_green_range);
  EXPECT_TRUE(c.witnesses.lambda1_red_range);
  EXPECT_TRUE(c.witnesses.below_onofri_line);
}

TEST(Classify, KappaInvariant) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> d1(-4.5, 2.5), d2(-0.5, 6.5), dk(0.01, 100.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = d1(gen), b = d2(gen);
    EXPECT_EQ(classify({a, b, 1.0}).tag, classify({a, b, dk(gen)}).tag);
  }
}

TEST(Conditions, PaperExamples) {
  const auto r = check_conditions({2.0, 6.0, 1.0});
  EXPECT_TRUE(r.cond1);
  EXPECT_DOUBLE_EQ(r.cond1_slack, 120.0 - 84.0);
  const auto s = check_conditions({0.0, 4.0, 1.0});
  EXPECT_FALSE(s.cond1);
  EXPECT_LT(kL1AtZero, 24.0 / 7.0);
  EXPECT_THROW(check_conditions({-2.0, 1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(check_conditions({2.5, 1.0, 1.0}), std::invalid_argument);
}

TEST(Conditions, ChainOnGreenGrid) {
  int count = 0;
  for (int i = 1; i <= 40; ++i) {
    const double l1 = -2.0 + 4.0 * i / 40;
    const double top = eval_L1(l1);
    for (int j = 1; j <= 25; ++j) {
      const ParamPoint p{l1, top * j / 25, 1.0};
      const auto r = check_conditions(p);
      EXPECT_TRUE(r.cond1) << l1 << ' ' << p.lambda2;
      EXPECT_TRUE(r.cond2);
      EXPECT_TRUE(r.aux1_holds);
      EXPECT_TRUE(r.aux2_holds);
      const auto e = check_conditions_exact(p);
      EXPECT_TRUE(e.cond1 && e.aux1_holds && e.aux2_holds);
      ++count;
    }
  }
  EXPECT_EQ(count, 1000);
}

TEST(Discriminant, FactorisationAgrees) {
  const auto a = discriminant({0.0, 1.0, 1.0});
  EXPECT_LT(a.direct, 0.0);
  EXPECT_NEAR(a.direct, a.factored, 1e-9 * std::abs(a.factored));
  const auto b = discriminant({0.0, 4.0, 1.0});
  EXPECT_GT(b.direct, 0.0);
  EXPECT_NEAR(b.direct, b.factored, 1e-9 * std::abs(b.factored));
  for (double l : {-1.5, -0.5, 0.0, 0.7, 1.1}) {
    const auto d = discriminant({l, eval_L1(l), 1.0});
    EXPECT_NEAR(d.direct, 0.0, 1e-7);
    EXPECT_NEAR(d.factored, 0.0, 1e-7);
  }
  EXPECT_THROW(discriminant({1.5, 1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(discriminant({0.0, 0.0, 1.0}), std::invalid_argument);
}

TEST(CaseConstant, Values) {
  EXPECT_DOUBLE_EQ(case_constant_c({1.5, 5.0, 2.0}), 5.0 / 3.0);
  EXPECT_DOUBLE_EQ(case2_constant_c(0.0, 4.0), 5.0 / 3.0);
  EXPECT_DOUBLE_EQ(case_constant_c({0.0, 2.0, 1.0}), -1.0 / 3.0);
  EXPECT_THROW(case2_constant_c(2.0, 6.0), std::domain_error);
  EXPECT_THROW(case_constant_c({0.0, 10.0, 1.0}), std::invalid_argument);
  EXPECT_LT(case2_constant_c(-1.0, 1.0), 5.0 / 3.0);
}
