#pragma once

// Analytics for the (lambda1, lambda2) parameter plane: the boundary curve
// L1, the admissibility conditions of the rigidity argument, the cubic Q1
// and the discriminant that ties them together.

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace liouville::region {

using exact_rational = boost::multiprecision::cpp_rational;

/// Coefficients in increasing degree. All fit exactly in a double.
inline constexpr std::array<std::int64_t, 7> kA1Coefficients = {
    252756288, -470882880, 170417232, 11016224, -18178788, 3558300, -224785};

inline constexpr std::array<std::int64_t, 11> kA2Coefficients = {
    619127091200, -710561935360, 194617078784, 70308920320,
    -43978140992, 3834335296,    1625924432,   -352127584,
    4233764,      4104276,       -281961};

namespace detail {

// Knuth's TwoSum.
inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

}  // namespace detail

/// Compensated Horner scheme (Graillat, Langlois, Louvet). Coefficients are
/// given in increasing degree. Result is as accurate as if computed in twice
/// the working precision and then rounded.
inline double comp_horner(std::span<const double> coeffs, double x) {
  if (coeffs.empty()) return 0.0;
  const std::size_t n = coeffs.size() - 1;
  double s = coeffs[n];
  double c = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    const double p = s * x;
    const double pe = std::fma(s, x, -p);
    double e = 0.0;
    detail::two_sum(p, coeffs[k], s, e);
    c = c * x + (pe + e);
  }
  return s + c;
}

template <std::size_t N>
double comp_horner(const std::array<std::int64_t, N>& coeffs, double x) {
  std::array<double, N> c{};
  for (std::size_t i = 0; i < N; ++i) c[i] = static_cast<double>(coeffs[i]);
  return comp_horner(std::span<const double>(c), x);
}

template <std::size_t N>
exact_rational horner_exact(const std::array<std::int64_t, N>& coeffs,
                            const exact_rational& x) {
  exact_rational s = 0;
  for (std::size_t k = N; k-- > 0;) s = s * x + exact_rational(coeffs[k]);
  return s;
}

inline double eval_A1(double x) { return comp_horner(kA1Coefficients, x); }
inline double eval_A2(double x) { return comp_horner(kA2Coefficients, x); }

inline exact_rational eval_A1_exact(const exact_rational& x) {
  return horner_exact(kA1Coefficients, x);
}
inline exact_rational eval_A2_exact(const exact_rational& x) {
  return horner_exact(kA2Coefficients, x);
}

/// Every finite double is a dyadic rational; this is that rational.
inline exact_rational to_exact(double v) {
  if (!std::isfinite(v)) throw std::domain_error("to_exact: non-finite value");
  int exp = 0;
  const double mant = std::frexp(v, &exp);
  // mant * 2^53 is an integer for IEEE double.
  const auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exact_rational r(m);
  exp -= 53;
  using boost::multiprecision::cpp_int;
  if (exp >= 0) {
    r *= exact_rational(cpp_int(1) << exp);
  } else {
    r /= exact_rational(cpp_int(1) << (-exp));
  }
  return r;
}

/// Branch point of L1: (2/129)(sqrt(18673) - 64), evaluated on demand.
inline double x_star() { return 2.0 / 129.0 * (std::sqrt(18673.0) - 64.0); }

/// Q1(x) for fixed lambda1; a cubic in x.
inline double eval_Q1(double lambda1, double x) {
  const double l = lambda1;
  const double c3 = 112.0 * (14.0 - l);
  const double c2 = -2.0 * (996.0 + 332.0 * l - 67.0 * l * l);
  const double c1 = 1552.0 + 432.0 * l - 70.0 * l * l - 9.0 * l * l * l;
  const double c0 = -3.0 * (4.0 + l) * (40.0 - 4.0 * l - l * l);
  return ((c3 * x + c2) * x + c1) * x + c0;
}

/// Derivative of Q1 with respect to x.
inline double eval_Q1_prime(double lambda1, double x) {
  const double l = lambda1;
  return (336.0 * (14.0 - l) * x - 4.0 * (996.0 + 332.0 * l - 67.0 * l * l)) * x +
         1552.0 + 432.0 * l - 70.0 * l * l - 9.0 * l * l * l;
}

/// Discriminant of Q1'(x) as a quadratic in x, in the factored quartic form.
/// Negative on (-2, x*), which makes Q1 strictly increasing there.
inline double q1_monotonicity_certificate(double lambda1) {
  const double l = lambda1;
  return 16.0 *
         ((((3733.0 * l - 39784.0) * l + 95368.0) * l + 283680.0) * l - 833136.0);
}

namespace detail {

/// cbrt(a + sqrt(d)) + cbrt(a - sqrt(d)) as a real number. For d < 0 the two
/// radicands are complex conjugates; the principal cube roots are conjugate
/// too and their sum is twice the real part of one of them.
inline double sum_conjugate_cbrt(double a, double d) {
  if (d >= 0.0) {
    const double r = std::sqrt(d);
    return std::cbrt(a + r) + std::cbrt(a - r);
  }
  const std::complex<double> z(a, std::sqrt(-d));
  return 2.0 * std::pow(z, 1.0 / 3.0).real();
}

}  // namespace detail

/// Upper boundary of the region where the rigidity theorem applies.
/// Defined on [-2, 2]; throws std::domain_error outside.
inline double eval_L1(double x) {
  if (!(x >= -2.0 && x <= 2.0)) {
    throw std::domain_error("eval_L1: argument outside [-2, 2]");
  }
  if (x >= x_star()) return 4.0 + x;
  const double a1 = eval_A1(x);
  const double a2 = eval_A2(x);
  const double k = 42.0 * (14.0 - x);
  // sqrt(3 A2) scaled by k, squared: k^2 * 3 A2.
  const double roots = detail::sum_conjugate_cbrt(a1, k * k * 3.0 * a2);
  return (2.0 + x) / (56.0 * (14.0 - x)) *
         (996.0 + 332.0 * x - 67.0 * x * x + roots);
}

/// Independent route to L1 on (-2, x*): the unique root y in (0, 4 + x] of
/// Q1(y / (3(2 + x))) = 0, found by bisection on a bracket whose validity
/// follows from Q1(0) < 0 < Q1((8 + x)/14) and monotonicity of Q1.
inline double l1_root_oracle(double x, double tol) {
  if (!(x > -2.0 && x < x_star())) {
    throw std::domain_error("l1_root_oracle: argument outside (-2, x*)");
  }
  const double scale = 3.0 * (2.0 + x);
  auto g = [&](double y) { return eval_Q1(x, y / scale); };
  double lo = 0.0;
  double hi = scale * (8.0 + x) / 14.0;
  double glo = g(lo);
  double ghi = g(hi);
  if (!(glo < 0.0 && ghi > 0.0)) {
    throw std::logic_error("l1_root_oracle: bracket does not straddle a root");
  }
  for (int it = 0; it < 400 && hi - lo > tol * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if (gm < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct ParamPoint {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double kappa = 1.0;
};

enum class RegionTag { GreenInterior, GreenBoundary, RedOnly, Outside };

inline std::string_view to_string(RegionTag tag) {
  switch (tag) {
    case RegionTag::GreenInterior: return "green_interior";
    case RegionTag::GreenBoundary: return "green_boundary";
    case RegionTag::RedOnly: return "red_only";
    case RegionTag::Outside: return "outside";
  }
  return "unknown";
}

inline bool is_green(RegionTag tag) {
  return tag == RegionTag::GreenInterior || tag == RegionTag::GreenBoundary;
}

/// Which of the defining inequalities held.
struct RegionWitnesses {
  bool lambda2_positive = false;
  bool lambda1_green_range = false;  // -2 < lambda1 <= 2
  bool below_L1 = false;             // lambda2 <= L1(lambda1) + tol
  bool on_L1 = false;                // |lambda2 - L1(lambda1)| <= tol
  bool lambda1_red_range = false;    // -4 < lambda1 <= 2
  bool below_onofri_line = false;    // lambda2 <= 4 + lambda1
};

struct RegionClass {
  RegionTag tag = RegionTag::Outside;
  RegionWitnesses witnesses;
};

struct ClassifyOptions {
  double boundary_tol = 1e-12;
};

inline RegionClass classify(const ParamPoint& p, const ClassifyOptions& opt = {}) {
  RegionClass out;
  auto& w = out.witnesses;
  w.lambda2_positive = p.lambda2 > 0.0;
  w.lambda1_green_range = p.lambda1 > -2.0 && p.lambda1 <= 2.0;
  w.lambda1_red_range = p.lambda1 > -4.0 && p.lambda1 <= 2.0;
  w.below_onofri_line = p.lambda2 <= 4.0 + p.lambda1;
  if (w.lambda1_green_range) {
    const double l1 = eval_L1(p.lambda1);
    w.below_L1 = p.lambda2 <= l1 + opt.boundary_tol;
    w.on_L1 = std::abs(p.lambda2 - l1) <= opt.boundary_tol;
  }
  if (w.lambda2_positive && w.lambda1_green_range && w.below_L1) {
    out.tag = w.on_L1 ? RegionTag::GreenBoundary : RegionTag::GreenInterior;
  } else if (w.lambda2_positive && w.lambda1_red_range && w.below_onofri_line) {
    out.tag = RegionTag::RedOnly;
  } else {
    out.tag = RegionTag::Outside;
  }
  return out;
}

struct ConditionReport {
  bool cond1 = false;        // 14 lambda2 <= 3 (8 + lambda1)(2 + lambda1)
  double cond1_slack = 0.0;  // 3 (8 + lambda1)(2 + lambda1) - 14 lambda2
  bool cond2 = false;        // 8 lambda2 < 7 (6 - lambda1)(2 + lambda1)
  double cond2_slack = 0.0;  // 7 (6 - lambda1)(2 + lambda1) - 8 lambda2
  double wide_slack = 0.0;   // 9 (6 - lambda1)(2 + lambda1) - 8 lambda2
  double aux_bound1 = 0.0;   // (1/7)(2 + lambda1)(198 - 61 lambda1)
  double aux_bound2 = 0.0;   // (3/7)(2 + lambda1)(94 - 25 lambda1)
  bool aux1_holds = false;   // cond2_slack >= aux_bound1
  bool aux2_holds = false;   // wide_slack >= aux_bound2
};

inline ConditionReport check_conditions(const ParamPoint& p) {
  const double l1 = p.lambda1;
  const double l2 = p.lambda2;
  if (!(l1 > -2.0 && l1 <= 2.0)) {
    throw std::invalid_argument("check_conditions: requires -2 < lambda1 <= 2");
  }
  ConditionReport r;
  r.cond1_slack = 3.0 * (8.0 + l1) * (2.0 + l1) - 14.0 * l2;
  r.cond1 = 14.0 * l2 <= 3.0 * (8.0 + l1) * (2.0 + l1);
  r.cond2_slack = 7.0 * (6.0 - l1) * (2.0 + l1) - 8.0 * l2;
  r.cond2 = 8.0 * l2 < 7.0 * (6.0 - l1) * (2.0 + l1);
  r.wide_slack = 9.0 * (6.0 - l1) * (2.0 + l1) - 8.0 * l2;
  r.aux_bound1 = (2.0 + l1) * (198.0 - 61.0 * l1) / 7.0;
  r.aux_bound2 = 3.0 * (2.0 + l1) * (94.0 - 25.0 * l1) / 7.0;
  r.aux1_holds = r.cond2_slack >= r.aux_bound1;
  r.aux2_holds = r.wide_slack >= r.aux_bound2;
  return r;
}

/// Exact-rational verdict on the auxiliary bounds: the inputs are taken as
/// the dyadic rationals they are, so no rounding enters the comparison.
struct ExactAuxVerdict {
  bool cond1 = false;
  bool aux1_holds = false;
  bool aux2_holds = false;
};

inline ExactAuxVerdict check_conditions_exact(const ParamPoint& p) {
  const exact_rational l1 = to_exact(p.lambda1);
  const exact_rational l2 = to_exact(p.lambda2);
  ExactAuxVerdict v;
  v.cond1 = 14 * l2 <= 3 * (8 + l1) * (2 + l1);
  v.aux1_holds = 7 * (6 - l1) * (2 + l1) - 8 * l2 >=
                 (2 + l1) * (198 - 61 * l1) / exact_rational(7);
  v.aux2_holds = 9 * (6 - l1) * (2 + l1) - 8 * l2 >=
                 3 * (2 + l1) * (94 - 25 * l1) / exact_rational(7);
  return v;
}

struct Discriminant {
  double direct = 0.0;
  double factored = 0.0;
};

/// The quadratic-trinomial discriminant from the Case 2 argument, evaluated
/// both as printed and through its Q1 factorisation.
inline Discriminant discriminant(const ParamPoint& p) {
  const double l1 = p.lambda1;
  const double l2 = p.lambda2;
  if (!(l1 > -2.0 && l1 < x_star()) || !(l2 > 0.0)) {
    throw std::invalid_argument(
        "discriminant: requires -2 < lambda1 < x* and lambda2 > 0");
  }
  const double r = (2.0 + l1) * (4.0 + l1 - l2) / l2;
  const double linear = 2.0 - l1 - r;
  const double coef_e = 8.0 + l1 - 14.0 * l2 / (3.0 * (2.0 + l1));
  const double coef_l = 4.0 / 3.0 * (2.0 - l1) +
                        (2.0 + l1) * (4.0 + l1 - l2) / (8.0 * l2 * l2) *
                            (9.0 * (6.0 - l1) * (2.0 + l1) - 8.0 * l2);
  Discriminant d;
  d.direct = 9.0 * linear * linear - 4.0 * coef_e * coef_l;
  d.factored = 3.0 * (2.0 + l1) * (2.0 + l1) / (2.0 * l2 * l2) *
               eval_Q1(l1, l2 / (3.0 * (2.0 + l1)));
  return d;
}

/// Case 2 constant; throws at lambda1 = 2 where the formula divides by zero.
inline double case2_constant_c(double lambda1, double lambda2) {
  if (lambda1 == 2.0) {
    throw std::domain_error("case2_constant_c: division by zero at lambda1 = 2");
  }
  if (!(lambda2 > 0.0)) throw std::domain_error("case2_constant_c: lambda2 <= 0");
  return 5.0 / 3.0 -
         2.0 * (2.0 + lambda1) * (4.0 + lambda1 - lambda2) / ((2.0 - lambda1) * lambda2);
}

inline double case_constant_c(const ParamPoint& p) {
  if (!is_green(classify(p).tag)) {
    throw std::invalid_argument("case_constant_c: point is not in the green region");
  }
  if (p.lambda1 >= x_star()) return 5.0 / 3.0;
  return case2_constant_c(p.lambda1, p.lambda2);
}

}  // namespace liouville::region
