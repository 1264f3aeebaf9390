#pragma once

// The 3x3 quadratic form behind the second-derivative estimate: the general
// matrix built from the weight functions h1, h2, h3 and their first two
// derivatives, its specialisation to constant/exponential weights, and the
// parameter choice that decouples the middle row.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace liouville::quadform {

/// Value and first two u-derivatives of one weight function at a point.
struct Jet2 {
  double h = 1.0;
  double dh = 0.0;
  double d2h = 0.0;

  static Jet2 constant(double value) { return {value, 0.0, 0.0}; }
  /// Jet of e^{rate u} at u.
  static Jet2 exponential(double rate, double u) {
    const double v = std::exp(rate * u);
    return {v, rate * v, rate * rate * v};
  }
};

/// Symmetric 3x3 matrix; only the upper triangle is stored.
struct Matrix3 {
  double a11 = 0, a12 = 0, a13 = 0, a22 = 0, a23 = 0, a33 = 0;

  double operator()(int i, int j) const {
    if (i > j) std::swap(i, j);
    static constexpr std::array<std::array<int, 3>, 3> idx{
        {{0, 1, 2}, {-1, 3, 4}, {-1, -1, 5}}};
    const std::array<double, 6> v{a11, a12, a13, a22, a23, a33};
    return v[idx[i][j]];
  }

  Eigen::Matrix3d to_eigen() const {
    Eigen::Matrix3d m;
    m << a11, a12, a13, a12, a22, a23, a13, a23, a33;
    return m;
  }

  /// q^T A q.
  double form(const std::array<double, 3>& q) const {
    return a11 * q[0] * q[0] + a22 * q[1] * q[1] + a33 * q[2] * q[2] +
           2.0 * (a12 * q[0] * q[1] + a13 * q[0] * q[2] + a23 * q[1] * q[2]);
  }
};

namespace detail {

// (1/h)' and (1/h)''.
inline double inv_d1(const Jet2& j) { return -j.dh / (j.h * j.h); }
inline double inv_d2(const Jet2& j) {
  return 2.0 * j.dh * j.dh / (j.h * j.h * j.h) - j.d2h / (j.h * j.h);
}

}  // namespace detail

/// General matrix for dimension n, evaluated pointwise from the jets of
/// h1, h2, h3 and the value f(u). K is the free coefficient of the added
/// Phi^2 term.
inline Matrix3 matrix_A_general(int n, const Jet2& j1, const Jet2& j2, const Jet2& j3,
                                double lambda1, double kappa, double f_u, double K) {
  if (n < 2) throw std::invalid_argument("matrix_A_general: dimension n < 2");
  if (!(j1.h > 0.0 && j2.h > 0.0 && j3.h > 0.0)) {
    throw std::invalid_argument("matrix_A_general: weights must be positive");
  }
  const double nn = n;
  const double h1 = j1.h, h2 = j2.h, h3 = j3.h;
  const double r3 = j3.dh / h3;  // h3'/h3
  const double inv_h1_d1 = detail::inv_d1(j1);

  // n/(n-2) * (h1^p)'' with p = -(n-2)/n, written so that n = 2 is regular:
  // n/(n-2) * p = -1.
  const double p = -(nn - 2.0) / nn;
  const double pow_term = -((p - 1.0) * std::pow(h1, p - 2.0) * j1.dh * j1.dh +
                            std::pow(h1, p - 1.0) * j1.d2h);

  Matrix3 a;
  a.a11 = K + 2.0 / nn + r3 / h1;
  a.a12 = -4.0 / nn - (nn + 4.0) / (2.0 * nn) * inv_h1_d1 - 1.5 * r3 / h1 -
          h3 / (2.0 * h1 * h1) * detail::inv_d2(j3);
  a.a13 = 2.0 / nn + (lambda1 * kappa - j2.dh) / (2.0 * h1 * h2) + r3 / (2.0 * h1);
  a.a22 = -2.0 * (nn - 4.0) / nn - (nn - 8.0) / nn * inv_h1_d1 -
          std::pow(h1, -(nn + 2.0) / nn) * pow_term;
  a.a23 = -4.0 / nn - (nn + 4.0) / (2.0 * nn) * inv_h1_d1 +
          ((2.0 * nn - 2.0 - lambda1) * kappa + 3.0 * j2.dh) / (2.0 * h1 * h2) -
          j2.d2h / (2.0 * h1 * h1 * h2);
  a.a33 = 2.0 / nn + (lambda1 * kappa - j2.dh) / (h1 * h2) -
          f_u * kappa * kappa / (h1 * h2 * h2);
  return a;
}

/// Entries for h1 = a1, h2 = a2 kappa, h3 = e^{a3 u} in dimension four with
/// f = lambda2. Independent of kappa and u.
inline Matrix3 matrix_A_liouville(double a1, double a2, double a3, double lambda1,
                                  double lambda2, double K) {
  if (!(a1 > 0.0 && a2 > 0.0)) {
    throw std::invalid_argument("matrix_A_liouville: requires a1, a2 > 0");
  }
  Matrix3 a;
  a.a11 = K + 0.5 + a3 / a1;
  a.a12 = -(2.0 * a1 + a3) * (a1 + a3) / (2.0 * a1 * a1);
  a.a13 = (a2 * (a1 + a3) + lambda1) / (2.0 * a1 * a2);
  a.a22 = 0.0;
  a.a23 = (6.0 - lambda1) / (2.0 * a1 * a2) - 1.0;
  a.a33 = 0.5 + lambda1 / (a1 * a2) - lambda2 / (a1 * a2 * a2);
  return a;
}

struct ParamSelection {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  bool admissible = false;  // a2 > 4 lambda2 / (3 (2 + lambda1)), i.e. A33 > 0
};

/// a1 = (6 - lambda1)/(2 a2) = -a3, which cancels A12 and A23.
inline ParamSelection select_parameters(double lambda1, double lambda2, double a2) {
  if (!(lambda1 > -2.0 && lambda1 < 6.0) || !(lambda2 > 0.0) || !(a2 > 0.0)) {
    throw std::invalid_argument(
        "select_parameters: requires -2 < lambda1 < 6, lambda2 > 0, a2 > 0");
  }
  ParamSelection s;
  s.a2 = a2;
  s.a1 = (6.0 - lambda1) / (2.0 * a2);
  s.a3 = -s.a1;
  s.admissible = a2 > 4.0 * lambda2 / (3.0 * (2.0 + lambda1));
  return s;
}

/// Positive semidefiniteness through the eigenvalues of the symmetric form.
inline bool psd_check(const Matrix3& a, double tol = 1e-12) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(a.to_eigen(),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

/// Smallest K for which the form is PSD, assuming the middle row vanishes.
/// Throws if A33 <= 0 or the middle row is not zero.
inline double min_K_psd(double a1, double a2, double a3, double lambda1, double lambda2) {
  const Matrix3 a = matrix_A_liouville(a1, a2, a3, lambda1, lambda2, 0.0);
  if (!(a.a33 > 0.0)) throw std::domain_error("min_K_psd: A33 <= 0");
  if (std::abs(a.a12) > 1e-12 || std::abs(a.a23) > 1e-12) {
    throw std::domain_error("min_K_psd: A12 and A23 must vanish");
  }
  const double base = 0.5 + a3 / a1;  // A11 at K = 0
  return std::max(-base, a.a13 * a.a13 / a.a33 - base);
}

}  // namespace liouville::quadform
