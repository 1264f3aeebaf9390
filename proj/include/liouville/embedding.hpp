#pragma once

// Finite-difference calculus on S^4(R) through the Euclidean space R^5.
//
// A function f of s = x_5 / |x| has the 0-homogeneous extension
// F(x) = f(x_5 / |x|). For such F the radial derivative vanishes, so at a
// point of the sphere of radius R the Euclidean gradient is the intrinsic
// gradient, tangential second directional derivatives are intrinsic Hessian
// entries, and the Euclidean Laplacian is the Laplace-Beltrami operator.
// Nested operators re-project to the sphere before each evaluation so the
// intermediate functions stay 0-homogeneous.
//
// None of this shares code with the spectral module; it exists to check it.

#include "liouville/numeric.hpp"
#include "liouville/sphere.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace liouville::embedding {

template <RealScalar Real>
using Point5 = std::array<Real, 5>;

template <RealScalar Real>
using Scalar5 = std::function<Real(const Point5<Real>&)>;

/// Central difference order for all stencils.
enum class Stencil { Second = 2, Fourth = 4 };

template <RealScalar Real>
struct FdOptions {
  Real step = Real(1e-3);
  Stencil stencil = Stencil::Fourth;
};

namespace detail {

template <RealScalar Real>
Real norm(const Point5<Real>& x) {
  using std::sqrt;
  Real s = 0;
  for (const auto& v : x) s += v * v;
  return sqrt(s);
}

template <RealScalar Real>
Point5<Real> axpy(const Point5<Real>& x, const Real& a, const Point5<Real>& d) {
  Point5<Real> y;
  for (int i = 0; i < 5; ++i) y[i] = x[i] + a * d[i];
  return y;
}

/// Roundoff in a k-th difference quotient is about eps / h^k. Reject steps
/// where that exceeds 1e-6 relative.
template <RealScalar Real>
void check_step(const Real& h, int order_of_derivative) {
  if (!(h > 0)) throw std::invalid_argument("finite difference: step must be positive");
  Real hk = 1;
  for (int i = 0; i < order_of_derivative; ++i) hk *= h;
  if (epsilon<Real>() / hk > Real(1e-6)) {
    throw std::invalid_argument("finite difference: step too small for this precision");
  }
}

}  // namespace detail

/// d/dh F(x + h d) at h = 0.
template <RealScalar Real>
Real directional_first(const Scalar5<Real>& f, const Point5<Real>& x, const Point5<Real>& d,
                       const FdOptions<Real>& opt) {
  const Real h = opt.step;
  const Real fp = f(detail::axpy(x, h, d));
  const Real fm = f(detail::axpy(x, -h, d));
  if (opt.stencil == Stencil::Second) return (fp - fm) / (2 * h);
  const Real fp2 = f(detail::axpy(x, 2 * h, d));
  const Real fm2 = f(detail::axpy(x, -2 * h, d));
  return (-fp2 + 8 * fp - 8 * fm + fm2) / (12 * h);
}

/// d^2/dh^2 F(x + h d) at h = 0, i.e. d^T Hess F d.
template <RealScalar Real>
Real directional_second(const Scalar5<Real>& f, const Point5<Real>& x, const Point5<Real>& d,
                        const FdOptions<Real>& opt) {
  const Real h = opt.step;
  const Real f0 = f(x);
  const Real fp = f(detail::axpy(x, h, d));
  const Real fm = f(detail::axpy(x, -h, d));
  if (opt.stencil == Stencil::Second) return (fp - 2 * f0 + fm) / (h * h);
  const Real fp2 = f(detail::axpy(x, 2 * h, d));
  const Real fm2 = f(detail::axpy(x, -2 * h, d));
  return (-fp2 + 16 * fp - 30 * f0 + 16 * fm - fm2) / (12 * h * h);
}

/// Euclidean Laplacian from the five coordinate second differences.
template <RealScalar Real>
Real laplacian(const Scalar5<Real>& f, const Point5<Real>& x, const FdOptions<Real>& opt) {
  detail::check_step(opt.step, 2);
  Real sum = 0;
  for (int k = 0; k < 5; ++k) {
    Point5<Real> e{};
    e[k] = 1;
    sum += directional_second(f, x, e, opt);
  }
  return sum;
}

/// Euclidean gradient.
template <RealScalar Real>
Point5<Real> gradient(const Scalar5<Real>& f, const Point5<Real>& x, const FdOptions<Real>& opt) {
  detail::check_step(opt.step, 1);
  Point5<Real> g;
  for (int k = 0; k < 5; ++k) {
    Point5<Real> e{};
    e[k] = 1;
    g[k] = directional_first(f, x, e, opt);
  }
  return g;
}

/// Hessian entry a^T H b by polarization of directional second differences.
template <RealScalar Real>
Real hessian_entry(const Scalar5<Real>& f, const Point5<Real>& x, const Point5<Real>& a,
                   const Point5<Real>& b, const FdOptions<Real>& opt) {
  detail::check_step(opt.step, 2);
  Point5<Real> plus, minus;
  for (int i = 0; i < 5; ++i) {
    plus[i] = a[i] + b[i];
    minus[i] = a[i] - b[i];
  }
  return (directional_second(f, x, plus, opt) - directional_second(f, x, minus, opt)) / 4;
}

/// Sphere of radius R = 1/sqrt(kappa) and the frame adapted to s.
template <RealScalar Real>
struct SphereChart {
  Real radius;

  explicit SphereChart(Real kappa) {
    using std::sqrt;
    if (!(kappa > 0)) throw std::invalid_argument("SphereChart: kappa must be positive");
    radius = 1 / sqrt(kappa);
  }

  /// Point with x_5 / |x| = s in the (x_1, x_5) half plane.
  Point5<Real> point(const Real& s) const {
    using std::sqrt;
    return {radius * sqrt(1 - s * s), Real(0), Real(0), Real(0), radius * s};
  }
  /// Unit tangent along grad s (pointing toward increasing s up to sign).
  static Point5<Real> radial_tangent(const Real& s) {
    using std::sqrt;
    return {-s, Real(0), Real(0), Real(0), sqrt(1 - s * s)};
  }
  /// Unit tangent orthogonal to grad s; k in {1, 2, 3}.
  static Point5<Real> transverse_tangent(int k) {
    Point5<Real> e{};
    e[k] = 1;
    return e;
  }
  Point5<Real> project(const Point5<Real>& x) const {
    const Real r = detail::norm(x);
    Point5<Real> y;
    for (int i = 0; i < 5; ++i) y[i] = radius * x[i] / r;
    return y;
  }

  /// The 0-homogeneous extension of a profile f(s).
  Scalar5<Real> extend(std::function<Real(const Real&)> profile) const {
    return [profile = std::move(profile)](const Point5<Real>& x) {
      return profile(x[4] / detail::norm(x));
    };
  }

  /// 0-homogeneous function x -> (Lap F)(R x / |x|).
  Scalar5<Real> laplacian_of(Scalar5<Real> f, FdOptions<Real> opt) const {
    return [f = std::move(f), opt, chart = *this](const Point5<Real>& x) {
      return laplacian(f, chart.project(x), opt);
    };
  }
};

/// Laplace-Beltrami of a profile at the nodes of a grid.
template <RealScalar Real>
sphere::AxiField<Real> fd_oracle_lap(std::function<Real(const Real&)> profile,
                                     sphere::GridPtr<Real> grid, Real kappa,
                                     FdOptions<Real> opt = {}) {
  const SphereChart<Real> chart(kappa);
  const auto ext = chart.extend(std::move(profile));
  std::vector<Real> v(grid->size());
  for (int i = 0; i < grid->size(); ++i) v[i] = laplacian(ext, chart.point(grid->nodes()[i]), opt);
  return sphere::AxiField<Real>::from_values(std::move(grid), kappa, std::move(v));
}

/// Same for a field, evaluated off-grid through its expansion.
template <RealScalar Real>
sphere::AxiField<Real> fd_oracle_lap(const sphere::AxiField<Real>& f, FdOptions<Real> opt = {}) {
  return fd_oracle_lap<Real>([f](const Real& s) { return f.at(s); }, f.grid(), f.kappa(), opt);
}

/// Pointwise oracle values of the basic differential quantities of a profile.
template <RealScalar Real>
struct PointDerivatives {
  Real lap;
  Real bilap;
  Real grad2;
  Real hess_radial;
  Real hess_tangential;
};

template <RealScalar Real>
PointDerivatives<Real> fd_point(const std::function<Real(const Real&)>& profile, const Real& s,
                                const Real& kappa, FdOptions<Real> opt = {}) {
  const SphereChart<Real> chart(kappa);
  const auto ext = chart.extend(profile);
  const auto x = chart.point(s);
  PointDerivatives<Real> out;
  out.lap = laplacian(ext, x, opt);
  detail::check_step(opt.step, 4);
  out.bilap = laplacian(chart.laplacian_of(ext, opt), x, opt);
  const auto g = gradient(ext, x, opt);
  out.grad2 = 0;
  for (const auto& c : g) out.grad2 += c * c;
  out.hess_radial = directional_second(ext, x, SphereChart<Real>::radial_tangent(s), opt);
  out.hess_tangential = directional_second(ext, x, SphereChart<Real>::transverse_tangent(1), opt);
  return out;
}

}  // namespace liouville::embedding
