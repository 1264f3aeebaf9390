#pragma once

// Axisymmetric spectral calculus on the round 4-sphere of radius 1/sqrt(kappa).
//
// A function of the polar coordinate s = cos(theta) is expanded in the
// Gegenbauer family C_l^{(3/2)}(s), which are the zonal spherical harmonics
// of S^4. With the normalized volume measure (total mass one) the density in
// s is (3/4)(1 - s^2) on [-1, 1]; the basis psi_l is orthonormal for it and
// satisfies  Lap psi_l = -l(l+3) kappa psi_l.
//
// A grid with N nodes is the N-point Gauss rule for that density. Degree
// N-1 polynomials are determined by their node values and the discrete
// transform between node values and coefficients is exact in both
// directions. Nonlinear terms are formed at the nodes and re-expanded.

#include "liouville/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace liouville::sphere {

namespace detail {

/// C_n^{(3/2)}(x) and C_{n-1}^{(3/2)}(x) by the three-term recurrence.
template <RealScalar Real>
std::pair<Real, Real> gegenbauer_pair(int n, const Real& x) {
  Real prev = 1;  // C_0
  if (n == 0) return {prev, Real(0)};
  Real cur = 3 * x;  // C_1
  for (int k = 1; k < n; ++k) {
    const Real next = (2 * (Real(k) + Real(1.5)) * x * cur - Real(k + 2) * prev) / Real(k + 1);
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

}  // namespace detail

/// L2 norm of C_l^{(3/2)} under the normalized measure.
template <RealScalar Real>
Real gegenbauer_norm(int l) {
  using std::sqrt;
  return sqrt(Real(3 * (l + 1) * (l + 2)) / Real(4 * l + 6));
}

/// Gauss rule for  integral f(s) (3/4)(1 - s^2) ds  on [-1, 1]. Weights sum
/// to one; polynomials of degree 2N-1 are integrated exactly.
template <RealScalar Real>
class QuadratureRule {
 public:
  explicit QuadratureRule(int n) : nodes_(n), weights_(n) {
    if (n < 2) throw std::invalid_argument("QuadratureRule: need at least 2 nodes");
    using std::abs;
    using std::cos;
    // Nodes are the zeros of C_n^{(3/2)} (equivalently P_n^{(1,1)}).
    // Compute the positive half and mirror for exact symmetry.
    const Real tol = 4 * epsilon<Real>();
    for (int k = 0; k < n / 2; ++k) {
      Real x = cos(pi<Real>() * (Real(k) + Real(1.25)) / (Real(n) + Real(1.5)));
      for (int it = 0; it < 100; ++it) {
        const auto [c, cm1] = detail::gegenbauer_pair<Real>(n, x);
        // (1 - x^2) C_n' = -n x C_n + (n + 2) C_{n-1}
        const Real dc = (-Real(n) * x * c + Real(n + 2) * cm1) / (1 - x * x);
        const Real dx = c / dc;
        x -= dx;
        if (abs(dx) <= tol * abs(x) + tol) {
          // One more step to settle the last bit.
          const auto [c2, cm12] = detail::gegenbauer_pair<Real>(n, x);
          x -= c2 / ((-Real(n) * x * c2 + Real(n + 2) * cm12) / (1 - x * x));
          break;
        }
      }
      nodes_[n - 1 - k] = x;
      nodes_[k] = -x;
    }
    if (n % 2 == 1) nodes_[n / 2] = 0;

    // Christoffel numbers: w_k = 1 / sum_l psi_l(x_k)^2.
    Real total = 0;
    for (int k = 0; k < n; ++k) {
      const Real x = nodes_[k];
      Real prev = 1;
      Real cur = 3 * x;
      Real sum = 1;  // psi_0 = 1
      if (n > 1) {
        const Real nrm = gegenbauer_norm<Real>(1);
        sum += (cur / nrm) * (cur / nrm);
      }
      for (int l = 1; l + 1 < n; ++l) {
        const Real next =
            (2 * (Real(l) + Real(1.5)) * x * cur - Real(l + 2) * prev) / Real(l + 1);
        prev = cur;
        cur = next;
        const Real p = cur / gegenbauer_norm<Real>(l + 1);
        sum += p * p;
      }
      weights_[k] = 1 / sum;
      total += weights_[k];
    }
    for (auto& w : weights_) w /= total;
    // Exact symmetry of the weights as well.
    for (int k = 0; k < n / 2; ++k) {
      const Real w = (weights_[k] + weights_[n - 1 - k]) / 2;
      weights_[k] = weights_[n - 1 - k] = w;
    }
  }

  int size() const { return static_cast<int>(nodes_.size()); }
  int exact_degree() const { return 2 * size() - 1; }
  const std::vector<Real>& nodes() const { return nodes_; }
  const std::vector<Real>& weights() const { return weights_; }

  Real integrate(std::span<const Real> values) const {
    if (values.size() != nodes_.size()) {
      throw std::invalid_argument("QuadratureRule::integrate: size mismatch");
    }
    Real s = 0;
    for (std::size_t i = 0; i < values.size(); ++i) s += weights_[i] * values[i];
    return s;
  }

 private:
  std::vector<Real> nodes_;
  std::vector<Real> weights_;
};

template <RealScalar Real>
QuadratureRule<Real> make_rule(int n) {
  return QuadratureRule<Real>(n);
}

/// Quadrature rule plus the orthonormal basis tabulated at its nodes.
template <RealScalar Real>
class SphereGrid {
 public:
  explicit SphereGrid(int n) : rule_(n), basis_(static_cast<std::size_t>(n) * n) {
    const auto& x = rule_.nodes();
    for (int i = 0; i < n; ++i) {
      Real prev = 1;
      Real cur = 3 * x[i];
      at(0, i) = 1;
      if (n > 1) at(1, i) = cur / gegenbauer_norm<Real>(1);
      for (int l = 1; l + 1 < n; ++l) {
        const Real next =
            (2 * (Real(l) + Real(1.5)) * x[i] * cur - Real(l + 2) * prev) / Real(l + 1);
        prev = cur;
        cur = next;
        at(l + 1, i) = cur / gegenbauer_norm<Real>(l + 1);
      }
    }
  }

  int size() const { return rule_.size(); }
  /// Highest degree representable on this grid.
  int max_degree() const { return size() - 1; }
  const QuadratureRule<Real>& rule() const { return rule_; }
  const std::vector<Real>& nodes() const { return rule_.nodes(); }
  const std::vector<Real>& weights() const { return rule_.weights(); }

  Real psi(int l, int i) const { return basis_[static_cast<std::size_t>(l) * size() + i]; }

  /// c_l = sum_i w_i f(s_i) psi_l(s_i), l = 0..N-1.
  std::vector<Real> analyze(std::span<const Real> values) const {
    const int n = size();
    if (static_cast<int>(values.size()) != n) {
      throw std::invalid_argument("SphereGrid::analyze: size mismatch");
    }
    std::vector<Real> wf(n);
    for (int i = 0; i < n; ++i) wf[i] = weights()[i] * values[i];
    std::vector<Real> c(n);
    for (int l = 0; l < n; ++l) {
      const Real* row = &basis_[static_cast<std::size_t>(l) * n];
      Real s = 0;
      for (int i = 0; i < n; ++i) s += row[i] * wf[i];
      c[l] = s;
    }
    return c;
  }

  /// Node values of sum_l c_l psi_l. Fewer than N coefficients is fine.
  std::vector<Real> synthesize(std::span<const Real> coeffs) const {
    const int n = size();
    if (static_cast<int>(coeffs.size()) > n) {
      throw std::invalid_argument("SphereGrid::synthesize: too many coefficients");
    }
    std::vector<Real> v(n, Real(0));
    for (std::size_t l = 0; l < coeffs.size(); ++l) {
      const Real c = coeffs[l];
      if (c == 0) continue;
      const Real* row = &basis_[l * n];
      for (int i = 0; i < n; ++i) v[i] += c * row[i];
    }
    return v;
  }

  /// Evaluate the expansion at an arbitrary s in [-1, 1].
  static Real evaluate(std::span<const Real> coeffs, const Real& s) {
    if (coeffs.empty()) return 0;
    Real prev = 1;
    Real cur = 3 * s;
    Real sum = coeffs[0];
    if (coeffs.size() > 1) sum += coeffs[1] * cur / gegenbauer_norm<Real>(1);
    for (std::size_t l = 1; l + 1 < coeffs.size(); ++l) {
      const Real next = (2 * (Real(l) + Real(1.5)) * s * cur - Real(l + 2) * prev) /
                        Real(static_cast<int>(l) + 1);
      prev = cur;
      cur = next;
      sum += coeffs[l + 1] * cur / gegenbauer_norm<Real>(static_cast<int>(l) + 1);
    }
    return sum;
  }

  /// Coefficients of d/ds in the same basis. Uses
  ///   d/ds C_l = sum_{k = l-1, l-3, ...} 2 (k + 3/2) C_k.
  static std::vector<Real> differentiate(std::span<const Real> coeffs) {
    const int n = static_cast<int>(coeffs.size());
    std::vector<Real> out(n, Real(0));
    if (n < 2) return out;
    Real acc[2] = {Real(0), Real(0)};
    for (int k = n - 2; k >= 0; --k) {
      acc[k % 2] += coeffs[k + 1] / gegenbauer_norm<Real>(k + 1);
      out[k] = 2 * (Real(k) + Real(1.5)) * acc[k % 2] * gegenbauer_norm<Real>(k);
    }
    return out;
  }

 private:
  Real& at(int l, int i) { return basis_[static_cast<std::size_t>(l) * size() + i]; }

  QuadratureRule<Real> rule_;
  std::vector<Real> basis_;  // row l, column i
};

template <RealScalar Real>
using GridPtr = std::shared_ptr<const SphereGrid<Real>>;

template <RealScalar Real>
GridPtr<Real> make_grid(int n) {
  return std::make_shared<const SphereGrid<Real>>(n);
}

/// Axisymmetric function on S^4(1/sqrt(kappa)), held both as node values and
/// as coefficients in the orthonormal zonal basis.
template <RealScalar Real>
class AxiField {
 public:
  AxiField() = default;

  static AxiField from_values(GridPtr<Real> grid, Real kappa, std::vector<Real> values) {
    check(grid, kappa);
    if (static_cast<int>(values.size()) != grid->size()) {
      throw std::invalid_argument("AxiField: node count mismatch");
    }
    AxiField f;
    f.coeffs_ = grid->analyze(values);
    f.values_ = std::move(values);
    f.grid_ = std::move(grid);
    f.kappa_ = kappa;
    return f;
  }

  static AxiField from_coeffs(GridPtr<Real> grid, Real kappa, std::vector<Real> coeffs) {
    check(grid, kappa);
    if (static_cast<int>(coeffs.size()) > grid->size()) {
      throw std::invalid_argument("AxiField: degree exceeds grid resolution");
    }
    coeffs.resize(grid->size(), Real(0));
    AxiField f;
    f.values_ = grid->synthesize(coeffs);
    f.coeffs_ = std::move(coeffs);
    f.grid_ = std::move(grid);
    f.kappa_ = kappa;
    return f;
  }

  template <class F>
  static AxiField from_function(GridPtr<Real> grid, Real kappa, F&& fn) {
    check(grid, kappa);
    std::vector<Real> v(grid->size());
    for (int i = 0; i < grid->size(); ++i) v[i] = fn(grid->nodes()[i]);
    return from_values(std::move(grid), kappa, std::move(v));
  }

  static AxiField constant(GridPtr<Real> grid, Real kappa, Real value) {
    std::vector<Real> c(grid->size(), Real(0));
    c[0] = value;
    return from_coeffs(std::move(grid), kappa, std::move(c));
  }

  const GridPtr<Real>& grid() const { return grid_; }
  Real kappa() const { return kappa_; }
  int size() const { return static_cast<int>(values_.size()); }
  const std::vector<Real>& values() const { return values_; }
  const std::vector<Real>& coeffs() const { return coeffs_; }
  const std::vector<Real>& nodes() const { return grid_->nodes(); }

  /// Highest l with |c_l| > tol.
  int degree(Real tol = Real(0)) const {
    using std::abs;
    for (int l = size() - 1; l >= 0; --l)
      if (abs(coeffs_[l]) > tol) return l;
    return 0;
  }

  Real at(const Real& s) const { return SphereGrid<Real>::evaluate(coeffs_, s); }

  AxiField truncated(int max_degree) const {
    std::vector<Real> c = coeffs_;
    for (int l = max_degree + 1; l < size(); ++l) c[l] = 0;
    return from_coeffs(grid_, kappa_, std::move(c));
  }

  AxiField with_kappa(Real kappa) const { return from_coeffs(grid_, kappa, coeffs_); }

  /// Pointwise map at the nodes followed by re-expansion.
  template <class F>
  AxiField map(F&& fn) const {
    std::vector<Real> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(values_[i]);
    return from_values(grid_, kappa_, std::move(v));
  }

  friend AxiField operator+(const AxiField& a, const AxiField& b) {
    a.same_space(b);
    std::vector<Real> c(a.coeffs_);
    for (std::size_t l = 0; l < c.size(); ++l) c[l] += b.coeffs_[l];
    std::vector<Real> v(a.values_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += b.values_[i];
    return a.raw(std::move(v), std::move(c));
  }
  friend AxiField operator-(const AxiField& a, const AxiField& b) {
    return a + (b * Real(-1));
  }
  friend AxiField operator*(const AxiField& a, const Real& k) {
    std::vector<Real> c(a.coeffs_);
    for (auto& x : c) x *= k;
    std::vector<Real> v(a.values_);
    for (auto& x : v) x *= k;
    return a.raw(std::move(v), std::move(c));
  }
  friend AxiField operator*(const Real& k, const AxiField& a) { return a * k; }
  /// Collocated product.
  friend AxiField operator*(const AxiField& a, const AxiField& b) {
    a.same_space(b);
    std::vector<Real> v(a.values_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= b.values_[i];
    return from_values(a.grid_, a.kappa_, std::move(v));
  }

  void same_space(const AxiField& other) const {
    if (grid_ != other.grid_ || kappa_ != other.kappa_) {
      throw std::invalid_argument("AxiField: operands live on different grids");
    }
  }

 private:
  static void check(const GridPtr<Real>& grid, const Real& kappa) {
    if (!grid) throw std::invalid_argument("AxiField: null grid");
    if (!(kappa > 0)) throw std::invalid_argument("AxiField: kappa must be positive");
  }

  AxiField raw(std::vector<Real> v, std::vector<Real> c) const {
    AxiField f;
    f.grid_ = grid_;
    f.kappa_ = kappa_;
    f.values_ = std::move(v);
    f.coeffs_ = std::move(c);
    return f;
  }

  GridPtr<Real> grid_;
  Real kappa_ = 1;
  std::vector<Real> values_;
  std::vector<Real> coeffs_;
};

/// Diagonal operator in the zonal basis.
template <RealScalar Real>
struct SpectralOperator {
  std::vector<Real> multipliers;

  static SpectralOperator laplacian(int size, Real kappa) {
    SpectralOperator op;
    op.multipliers.resize(size);
    for (int l = 0; l < size; ++l) op.multipliers[l] = -Real(l) * Real(l + 3) * kappa;
    return op;
  }

  AxiField<Real> apply(const AxiField<Real>& f) const {
    if (static_cast<int>(multipliers.size()) < f.size()) {
      throw std::invalid_argument("SpectralOperator: too few multipliers");
    }
    std::vector<Real> c(f.coeffs());
    for (std::size_t l = 0; l < c.size(); ++l) c[l] *= multipliers[l];
    return AxiField<Real>::from_coeffs(f.grid(), f.kappa(), std::move(c));
  }

  /// (this ∘ other); multipliers multiply.
  SpectralOperator compose(const SpectralOperator& other) const {
    SpectralOperator op;
    const std::size_t n = std::min(multipliers.size(), other.multipliers.size());
    op.multipliers.resize(n);
    for (std::size_t l = 0; l < n; ++l) op.multipliers[l] = multipliers[l] * other.multipliers[l];
    return op;
  }
};

/// Unit-mean-square zonal harmonic of degree l.
template <RealScalar Real>
AxiField<Real> basis(int l, GridPtr<Real> grid, Real kappa = Real(1)) {
  if (l < 0 || l > grid->max_degree()) {
    throw std::invalid_argument("basis: degree out of range for grid");
  }
  std::vector<Real> c(grid->size(), Real(0));
  c[l] = 1;
  return AxiField<Real>::from_coeffs(std::move(grid), kappa, std::move(c));
}

template <RealScalar Real>
Real integrate(const AxiField<Real>& f) {
  return f.grid()->rule().integrate(f.values());
}

/// Node values of df/ds.
template <RealScalar Real>
std::vector<Real> nodal_derivative(const SphereGrid<Real>& grid, std::span<const Real> coeffs) {
  return grid.synthesize(SphereGrid<Real>::differentiate(coeffs));
}

/// df/ds as a field.
template <RealScalar Real>
AxiField<Real> derivative(const AxiField<Real>& f) {
  return AxiField<Real>::from_coeffs(f.grid(), f.kappa(),
                                     SphereGrid<Real>::differentiate(f.coeffs()));
}

template <RealScalar Real>
AxiField<Real> lap(const AxiField<Real>& f) {
  return SpectralOperator<Real>::laplacian(f.size(), f.kappa()).apply(f);
}

template <RealScalar Real>
AxiField<Real> bilap(const AxiField<Real>& f) {
  const auto l = SpectralOperator<Real>::laplacian(f.size(), f.kappa());
  return l.compose(l).apply(f);
}

/// |grad f|^2 = kappa (1 - s^2) (f')^2 at the nodes.
template <RealScalar Real>
AxiField<Real> grad2(const AxiField<Real>& f) {
  const auto df = nodal_derivative<Real>(*f.grid(), f.coeffs());
  const auto& s = f.nodes();
  std::vector<Real> v(df.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.kappa() * (1 - s[i] * s[i]) * df[i] * df[i];
  return AxiField<Real>::from_values(f.grid(), f.kappa(), std::move(v));
}

/// <grad f, grad g> = kappa (1 - s^2) f' g'.
template <RealScalar Real>
AxiField<Real> inner_grad(const AxiField<Real>& f, const AxiField<Real>& g) {
  f.same_space(g);
  const auto df = nodal_derivative<Real>(*f.grid(), f.coeffs());
  const auto dg = nodal_derivative<Real>(*g.grid(), g.coeffs());
  const auto& s = f.nodes();
  std::vector<Real> v(df.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.kappa() * (1 - s[i] * s[i]) * df[i] * dg[i];
  return AxiField<Real>::from_values(f.grid(), f.kappa(), std::move(v));
}

template <RealScalar Real>
struct HessianEigs {
  AxiField<Real> radial;      // along grad s, multiplicity 1
  AxiField<Real> tangential;  // orthogonal to grad s, multiplicity 3
};

/// Eigenvalues of the Hessian of an axisymmetric function:
///   radial      kappa [(1 - s^2) f'' - s f'],
///   tangential  -kappa s f'.
template <RealScalar Real>
HessianEigs<Real> hess_eigs(const AxiField<Real>& f) {
  const auto d1 = SphereGrid<Real>::differentiate(f.coeffs());
  const auto d2 = SphereGrid<Real>::differentiate(d1);
  const auto v1 = f.grid()->synthesize(d1);
  const auto v2 = f.grid()->synthesize(d2);
  const auto& s = f.nodes();
  const Real k = f.kappa();
  std::vector<Real> hr(v1.size()), ht(v1.size());
  for (std::size_t i = 0; i < v1.size(); ++i) {
    hr[i] = k * ((1 - s[i] * s[i]) * v2[i] - s[i] * v1[i]);
    ht[i] = -k * s[i] * v1[i];
  }
  return {AxiField<Real>::from_values(f.grid(), k, std::move(hr)),
          AxiField<Real>::from_values(f.grid(), k, std::move(ht))};
}

/// Node values of div(phi grad s) = kappa [(1 - s^2) phi' - 4 s phi] for
/// node values phi.
template <RealScalar Real>
std::vector<Real> div_radial_nodal(const SphereGrid<Real>& grid, const Real& kappa,
                                   std::span<const Real> phi) {
  const auto dphi = nodal_derivative<Real>(grid, grid.analyze(phi));
  const auto& s = grid.nodes();
  std::vector<Real> out(phi.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = kappa * ((1 - s[i] * s[i]) * dphi[i] - 4 * s[i] * phi[i]);
  }
  return out;
}

template <RealScalar Real>
AxiField<Real> div_radial(const AxiField<Real>& phi) {
  const auto dphi = nodal_derivative<Real>(*phi.grid(), phi.coeffs());
  const auto& s = phi.nodes();
  std::vector<Real> out(phi.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = phi.kappa() * ((1 - s[i] * s[i]) * dphi[i] - 4 * s[i] * phi.values()[i]);
  }
  return AxiField<Real>::from_values(phi.grid(), phi.kappa(), std::move(out));
}

/// Volume of the unit 3-sphere, 2 pi^{n/2} / Gamma(n/2) at n = 4. The
/// normalized quadrature makes it unnecessary for any computation here.
inline constexpr double kOmega4 = 2.0 * 3.14159265358979323846 * 3.14159265358979323846;

/// Seeded random smooth field: c_0 ~ U(-a, a), c_l ~ U(-a, a) l^{-2}.
template <RealScalar Real>
AxiField<Real> random_field(GridPtr<Real> grid, Real kappa, int max_degree,
                            double amplitude, std::uint64_t seed) {
  if (max_degree > grid->max_degree()) {
    throw std::invalid_argument("random_field: degree exceeds grid resolution");
  }
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-amplitude, amplitude);
  std::vector<Real> c(grid->size(), Real(0));
  for (int l = 0; l <= max_degree; ++l) {
    const double scale = l == 0 ? 1.0 : 1.0 / (double(l) * l);
    c[l] = Real(dist(gen) * scale);
  }
  return AxiField<Real>::from_coeffs(std::move(grid), kappa, std::move(c));
}

}  // namespace liouville::sphere
