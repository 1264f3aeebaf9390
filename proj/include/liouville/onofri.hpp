#pragma once

// The functional
//   J[f; l1] = int |Lap f|^2 + l1 kappa int |grad f|^2
//              - 8 (4 + l1) kappa^2 (log int e^f - int f)
// under the normalized measure, together with the Jensen gap, the two
// Poincare gaps with principal eigenvalue 4 kappa, and the extremal fields
// f = -4 log(a s + c).
//
// Quadratic energies are evaluated from the coefficients: with
// f = sum c_l psi_l and e_l = l(l+3) kappa,
//   int |grad f|^2 = sum e_l c_l^2,   int |Lap f|^2 = sum e_l^2 c_l^2.

#include "liouville/numeric.hpp"
#include "liouville/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace liouville::onofri {

using sphere::AxiField;

template <RealScalar Real>
struct Energies {
  Real mean;       // int f
  Real variance;   // int f^2 - (int f)^2
  Real dirichlet;  // int |grad f|^2
  Real hessian;    // int |Lap f|^2
};

template <RealScalar Real>
Energies<Real> energies(const AxiField<Real>& f) {
  const Real k = f.kappa();
  Energies<Real> e{f.coeffs()[0], Real(0), Real(0), Real(0)};
  for (int l = 1; l < f.size(); ++l) {
    const Real c2 = f.coeffs()[l] * f.coeffs()[l];
    const Real eig = Real(l) * Real(l + 3) * k;
    e.variance += c2;
    e.dirichlet += eig * c2;
    e.hessian += eig * eig * c2;
  }
  return e;
}

/// log int e^f, shifted by max f and using expm1/log1p so that it stays
/// accurate both for large amplitudes and for f close to constant.
template <RealScalar Real>
Real log_mean_exp(const AxiField<Real>& f) {
  using std::expm1;
  using std::log1p;
  const auto& v = f.values();
  const Real m = *std::max_element(v.begin(), v.end());
  const auto& w = f.grid()->weights();
  Real s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += w[i] * expm1(v[i] - m);
  return m + log1p(s);
}

/// log int e^f - int f; non-negative, zero for constants.
template <RealScalar Real>
Real jensen_gap(const AxiField<Real>& f) {
  return log_mean_exp(f) - sphere::integrate(f);
}

template <RealScalar Real>
Real functional_J(const AxiField<Real>& f, Real lambda1) {
  const Real k = f.kappa();
  const auto e = energies(f);
  return e.hessian + lambda1 * k * e.dirichlet - 8 * (4 + lambda1) * k * k * jensen_gap(f);
}

template <RealScalar Real>
struct PoincareGaps {
  Real h1_gap;  // int |grad f|^2 - 4 kappa (int f^2 - (int f)^2)
  Real h2_gap;  // int |Lap f|^2 - 4 kappa int |grad f|^2
};

template <RealScalar Real>
PoincareGaps<Real> poincare_gaps(const AxiField<Real>& f) {
  const Real k = f.kappa();
  const auto e = energies(f);
  return {e.dirichlet - 4 * k * e.variance, e.hessian - 4 * k * e.dirichlet};
}

/// f(s) = -4 log(a s + c) with a = |a| / sqrt(kappa) >= 0 and c > a.
template <RealScalar Real>
AxiField<Real> rigidity_field(Real a_over_sqrtk, Real c, sphere::GridPtr<Real> grid,
                              Real kappa = Real(1)) {
  if (!(a_over_sqrtk >= 0) || !(c > a_over_sqrtk)) {
    throw std::invalid_argument("rigidity_field: requires 0 <= a < c");
  }
  return AxiField<Real>::from_function(std::move(grid), kappa, [&](const Real& s) {
    using std::log;
    return -4 * log(a_over_sqrtk * s + c);
  });
}

struct OnofriTolerances {
  double inequality = 1e-9;
  double poincare = 1e-10;
};

template <RealScalar Real>
struct OnofriReport {
  Real lambda;
  Real lambda1;     // 1/(8 lambda) - 4
  Real J;           // J[f; lambda1]
  Real direct_gap;  // right side minus left side of the inequality
  Real jensen_gap;
  Real h1_gap;
  Real h2_gap;
  bool passed_direct = false;
  bool passed_J = false;
  bool passed_h1 = false;
  bool passed_h2 = false;
  bool verdicts_agree = false;
};

/// log int e^f - int f <= (lambda/kappa^2) int |Lap f|^2
///                         + (1/kappa)(1/8 - 4 lambda) int |grad f|^2,
/// checked directly and through J at lambda1 = 1/(8 lambda) - 4, where
/// J = (kappa^2/lambda) * direct_gap. The J verdict uses the tolerance
/// scaled by the same factor so both verdicts describe one inequality.
template <RealScalar Real>
OnofriReport<Real> onofri_check(const AxiField<Real>& f, Real lambda,
                                OnofriTolerances tol = {}) {
  // 1/48 is not a binary fraction; accept its double rounding in any precision.
  if (!(48 * lambda >= Real(1) - Real(1e-15))) {
    throw std::invalid_argument("onofri_check: lambda < 1/48");
  }
  const Real k = f.kappa();
  const auto e = energies(f);
  OnofriReport<Real> r;
  r.lambda = lambda;
  r.lambda1 = 1 / (8 * lambda) - 4;
  r.jensen_gap = jensen_gap(f);
  r.direct_gap = lambda / (k * k) * e.hessian + (Real(1) / 8 - 4 * lambda) / k * e.dirichlet -
                 r.jensen_gap;
  r.J = functional_J(f, r.lambda1);
  r.h1_gap = e.dirichlet - 4 * k * e.variance;
  r.h2_gap = e.hessian - 4 * k * e.dirichlet;
  r.passed_direct = r.direct_gap >= -Real(tol.inequality);
  r.passed_J = r.J >= -Real(tol.inequality) * k * k / lambda;
  r.passed_h1 = r.h1_gap >= -Real(tol.poincare);
  r.passed_h2 = r.h2_gap >= -Real(tol.poincare);
  r.verdicts_agree = r.passed_direct == r.passed_J;
  return r;
}

}  // namespace liouville::onofri
