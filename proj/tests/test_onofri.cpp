#include "liouville/onofri.hpp"
#include "liouville/pde.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace liouville;
using namespace liouville::onofri;
using liouville::sphere::AxiField;

namespace {

double qd(const quad& x) { return static_cast<double>(x); }

AxiField<quad> four_family(double t, double kappa = 1.0) {
  const auto grid = sphere::make_grid<quad>(pde::nodes_for_family(t));
  return pde::family<quad>({t, kappa}, grid) * quad(4);
}

}  // namespace

TEST(Functional, ConstantsVanish) {
  const auto grid = sphere::make_grid<double>(16);
  for (double lambda1 : {-4.0, 0.0, 2.0}) {
    const auto c = AxiField<double>::constant(grid, 1.5, 3.0);
    EXPECT_NEAR(functional_J(c, lambda1), 0.0, 1e-14);
    EXPECT_NEAR(jensen_gap(c), 0.0, 1e-15);
  }
}

TEST(Functional, ExtremalFamilyAtLambdaTwo) {
  for (double t : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    for (double k : {1.0, 2.0}) {
      EXPECT_NEAR(qd(functional_J<quad>(four_family(t, k), 2)), 0.0, 1e-7) << t << ' ' << k;
    }
  }
}

TEST(Functional, StrictlyPositiveInsideForNontrivialFamily) {
  for (double t : {0.75, 1.0, 2.0}) {
    const auto f = four_family(t);
    for (double lambda1 : {-4.0, -1.0, 0.0, 1.9}) {
      EXPECT_GT(qd(functional_J<quad>(f, quad(lambda1))), 1e-6) << t << ' ' << lambda1;
    }
  }
}

TEST(Functional, SmallAmplitudeExpansion) {
  // The quadratic term cancels and the cubic one vanishes by symmetry; the
  // quartic coefficient is (2/7)(4 + lambda1) kappa^2 from the fourth
  // cumulant -6/7 of psi_1.
  const auto grid = sphere::make_grid<quad>(32);
  const auto psi1 = sphere::basis<quad>(1, grid);
  for (double lambda1 : {-2.0, 0.0, 2.0}) {
    const double eps = 1e-3;
    const quad j = functional_J<quad>(psi1 * quad(eps), quad(lambda1));
    EXPECT_LT(std::abs(qd(j)), std::pow(eps, 3));
    EXPECT_NEAR(qd(j) / std::pow(eps, 4), 2.0 / 7.0 * (4.0 + lambda1), 1e-5);
    const quad j2 = functional_J<quad>(psi1 * quad(2 * eps), quad(lambda1));
    EXPECT_NEAR(std::log2(qd(j2 / j)), 4.0, 1e-4);
  }
  const auto k2 = AxiField<quad>::from_coeffs(grid, quad(2), psi1.coeffs());
  EXPECT_NEAR(qd(functional_J<quad>(k2 * quad(1e-3), quad(0))) / 1e-12, 4.0 * 8.0 / 7.0, 1e-5);
}

TEST(Functional, LinearInLambda1) {
  const auto grid = sphere::make_grid<double>(48);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto f = sphere::random_field<double>(grid, 1.0, 8, 2.0, seed);
    for (double theta : {0.0, 0.3, 0.5, 1.0}) {
      const double a = -4.0, b = 2.0;
      const double mixed = functional_J(f, theta * a + (1 - theta) * b);
      const double combo = theta * functional_J(f, a) + (1 - theta) * functional_J(f, b);
      EXPECT_NEAR(mixed, combo, 1e-12 * (1 + std::abs(combo)));
    }
  }
}

TEST(Functional, NonNegativeAtEndpointsForRandomFields) {
  const auto grid = sphere::make_grid<double>(64);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto f = sphere::random_field<double>(grid, 1.0, 8, 2.0, seed);
    EXPECT_GE(functional_J(f, 2.0), -1e-8) << seed;
    EXPECT_GE(functional_J(f, -4.0), -1e-8) << seed;
  }
}

TEST(Jensen, Examples) {
  const auto grid = sphere::make_grid<double>(32);
  const auto s = AxiField<double>::from_function(grid, 1.0, [](double x) { return x; });
  EXPECT_GT(jensen_gap(s), 0.0);
  // (3/4) int e^s (1 - s^2) ds = 3 / e.
  EXPECT_NEAR(log_mean_exp(s), std::log(3.0 / std::exp(1.0)), 1e-14);
  EXPECT_GT(qd(jensen_gap(four_family(1.0))), 0.0);
}

TEST(Jensen, LargeAmplitudeNoOverflow) {
  const auto grid = sphere::make_grid<double>(64);
  const auto s = AxiField<double>::from_function(grid, 1.0, [](double x) { return x; });
  for (double a : {50.0, 500.0, 5000.0}) {
    const double v = log_mean_exp(s * a);
    EXPECT_TRUE(std::isfinite(v)) << a;
    EXPECT_LE(v, a);
    EXPECT_GT(jensen_gap(s * a), 0.0);
  }
  // Exact at a = 50: log(3/4) + log int e^{50 s}(1 - s^2) ds.
  const double a = 50.0;
  const double exact = a + std::log(0.75 * (2.0 / (a * a) - 2.0 / (a * a * a) +
                                            std::exp(-2 * a) * (2.0 / (a * a) + 2.0 / (a * a * a))));
  EXPECT_NEAR(log_mean_exp(s * a), exact, 1e-12);
}

TEST(Poincare, Examples) {
  const auto grid = sphere::make_grid<double>(32);
  for (double k : {1.0, 2.5}) {
    const auto p1 = sphere::basis<double>(1, grid, k);
    const auto g1 = poincare_gaps(p1);
    EXPECT_NEAR(g1.h1_gap, 0.0, 1e-12);
    EXPECT_NEAR(g1.h2_gap, 0.0, 1e-12);
    const auto g2 = poincare_gaps(sphere::basis<double>(2, grid, k));
    EXPECT_NEAR(g2.h2_gap, 60.0 * k * k, 1e-10);
    EXPECT_NEAR(g2.h1_gap, 6.0 * k, 1e-12);
    const auto gc = poincare_gaps(AxiField<double>::constant(grid, k, 1.0));
    EXPECT_EQ(gc.h1_gap, 0.0);
    EXPECT_EQ(gc.h2_gap, 0.0);
  }
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto g = poincare_gaps(sphere::random_field<double>(grid, 1.0, 12, 2.0, seed));
    EXPECT_GE(g.h1_gap, -1e-10);
    EXPECT_GE(g.h2_gap, -1e-10);
  }
}

TEST(Poincare, EnergiesMatchQuadrature) {
  const auto grid = sphere::make_grid<double>(48);
  const auto f = sphere::random_field<double>(grid, 1.3, 10, 1.0, 17);
  const auto e = energies(f);
  EXPECT_NEAR(e.dirichlet, sphere::integrate(sphere::grad2(f)), 1e-10);
  const auto l = sphere::lap(f);
  EXPECT_NEAR(e.hessian, sphere::integrate(l * l), 1e-8);
  EXPECT_NEAR(e.mean, sphere::integrate(f), 1e-14);
}

TEST(Rigidity, FieldExamples) {
  const auto grid = sphere::make_grid<quad>(pde::nodes_for_family(1.0));
  const auto zero = rigidity_field<quad>(quad(0), quad(1), grid);
  for (const auto& v : zero.values()) EXPECT_EQ(v, quad(0));
  const auto f = rigidity_field<quad>(sinh(quad(1)), cosh(quad(1)), grid);
  const auto g = pde::family<quad>({1.0, 1.0}, grid) * quad(4);
  for (int i = 0; i < f.size(); ++i) EXPECT_LT(qd(abs(f.values()[i] - g.values()[i])), 1e-30);
  EXPECT_THROW(rigidity_field<quad>(quad(1), quad(1), grid), std::invalid_argument);
  EXPECT_THROW(rigidity_field<quad>(quad(-0.5), quad(1), grid), std::invalid_argument);
}

TEST(Rigidity, ScaleFreeInC) {
  // -4 log(0.5 s + 2) differs from 4 family(t), cosh t = 2 / sqrt(3.75), by a constant.
  const auto grid = sphere::make_grid<quad>(96);
  for (double k : {1.0, 3.0}) {
    const auto f = rigidity_field<quad>(quad(0.5), quad(2), grid, quad(k));
    EXPECT_NEAR(qd(functional_J<quad>(f, 2)), 0.0, 1e-7);
    EXPECT_GT(qd(functional_J<quad>(f, 0)), 0.0);
  }
}

TEST(Check, ConstantIsEquality) {
  const auto grid = sphere::make_grid<double>(16);
  for (double lambda : {1.0 / 48.0, 0.1, 10.0}) {
    const auto r = onofri_check(AxiField<double>::constant(grid, 1.0, -2.0), lambda);
    EXPECT_NEAR(r.direct_gap, 0.0, 1e-14);
    EXPECT_NEAR(r.J, 0.0, 1e-12);
    EXPECT_TRUE(r.passed_direct && r.passed_J && r.verdicts_agree);
  }
}

TEST(Check, RandomFieldsAtSharpConstant) {
  const auto grid = sphere::make_grid<double>(64);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto f = sphere::random_field<double>(grid, 1.0, 8, 2.0, seed);
    const auto r = onofri_check(f, 1.0 / 48.0);
    EXPECT_NEAR(r.lambda1, 2.0, 1e-14);
    EXPECT_GE(r.direct_gap, -1e-9) << seed;
    EXPECT_TRUE(r.passed_direct && r.passed_J && r.passed_h1 && r.passed_h2) << seed;
    EXPECT_TRUE(r.verdicts_agree);
    EXPECT_NEAR(r.J, r.direct_gap / r.lambda, 1e-9 * (1 + std::abs(r.J)));
  }
}

TEST(Check, ExtremalFamilyIsEqualityAtSharpConstant) {
  const auto r = onofri_check<quad>(four_family(1.0), quad(1) / 48);
  EXPECT_NEAR(qd(r.direct_gap), 0.0, 1e-9);
  EXPECT_TRUE(r.verdicts_agree);
}

TEST(Check, LargeLambdaFollowsPoincareGap) {
  const auto grid = sphere::make_grid<double>(48);
  for (double k : {1.0, 2.0}) {
    const auto f = sphere::random_field<double>(grid, k, 8, 1.0, 5);
    const auto a = onofri_check(f, 10.0);
    const auto b = onofri_check(f, 20.0);
    // direct_gap is affine in lambda with slope h2_gap / kappa^2.
    EXPECT_NEAR((b.direct_gap - a.direct_gap) / 10.0, a.h2_gap / (k * k), 1e-9 * (1 + a.h2_gap));
    EXPECT_GT(a.direct_gap, 0.0);
    EXPECT_TRUE(a.verdicts_agree && b.verdicts_agree);
  }
}

TEST(Check, VerdictsAgreeOnFailures) {
  // Below the sharp range the inequality can fail; both forms must say so.
  const auto grid = sphere::make_grid<double>(32);
  const auto psi1 = sphere::basis<double>(1, grid);
  OnofriTolerances tight{0.0, 0.0};
  const auto r = onofri_check(psi1 * 3.0, 1.0 / 48.0, tight);
  EXPECT_TRUE(r.verdicts_agree);
  EXPECT_THROW(onofri_check(psi1, 1.0 / 49.0), std::invalid_argument);
  const auto qgrid = sphere::make_grid<quad>(8);
  EXPECT_NO_THROW(onofri_check<quad>(sphere::basis<quad>(1, qgrid), quad(1.0 / 48.0)));
}
