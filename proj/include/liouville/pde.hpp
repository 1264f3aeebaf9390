#pragma once

// The equation  Lap^2 u - lambda1 kappa Lap u + lambda2 kappa^2 (1 - e^{4u}) = 0
// on S^4(1/sqrt(kappa)) restricted to axisymmetric u: residuals, the explicit
// family of solutions at (2, 6), pointwise estimates, and a Galerkin Newton
// solver.

#include "liouville/numeric.hpp"
#include "liouville/quadform.hpp"
#include "liouville/sphere.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace liouville::pde {

using sphere::AxiField;
using sphere::GridPtr;

/// Residual of the equation at the nodes.
template <RealScalar Real>
AxiField<Real> residual(const AxiField<Real>& u, Real lambda1, Real lambda2) {
  if (!(lambda2 > 0)) throw std::invalid_argument("residual: lambda2 must be positive");
  const Real k = u.kappa();
  const auto l = sphere::lap(u);
  const auto b = sphere::bilap(u);
  std::vector<Real> r(u.size());
  for (int i = 0; i < u.size(); ++i) {
    using std::exp;
    r[i] = b.values()[i] - lambda1 * k * l.values()[i] +
           lambda2 * k * k * (1 - exp(4 * u.values()[i]));
  }
  return AxiField<Real>::from_values(u.grid(), k, std::move(r));
}

template <RealScalar Real>
Real max_abs(const AxiField<Real>& f) {
  using std::abs;
  Real m = 0;
  for (const auto& v : f.values()) m = std::max(m, Real(abs(v)));
  return m;
}

struct FamilyParams {
  double t = 0.0;  // boost parameter; the sign selects the axis +s or -s
  double kappa = 1.0;
};

/// u(s) = -log(cosh t + s sinh t).
template <RealScalar Real>
Real family_profile(const Real& t, const Real& s) {
  using std::cosh;
  using std::log;
  using std::sinh;
  return -log(cosh(t) + s * sinh(t));
}

template <RealScalar Real>
AxiField<Real> family(const FamilyParams& p, GridPtr<Real> grid) {
  if (!(p.kappa > 0)) throw std::invalid_argument("family: kappa must be positive");
  const Real t = p.t;
  return AxiField<Real>::from_function(std::move(grid), Real(p.kappa),
                                       [&](const Real& s) { return family_profile(t, s); });
}

/// Node count that resolves family(t) to roughly 25 significant digits in
/// values and keeps five spectral derivatives accurate in quad precision.
/// The profile has a log singularity at s = -coth t, so coefficients decay
/// like coth(t/2)^{-l}.
inline int nodes_for_family(double t, double budget = 60.0, int min_nodes = 48,
                            int max_nodes = 2048) {
  const double a = std::abs(t);
  if (a < 1e-3) return min_nodes;
  const double log_rho = std::log(1.0 / std::tanh(a / 2.0));
  const int n = static_cast<int>(std::ceil(budget / log_rho));
  return std::clamp(n, min_nodes, max_nodes);
}

/// Integral of e^{4u} under the normalized measure.
template <RealScalar Real>
Real normalization(const AxiField<Real>& u) {
  using std::exp;
  std::vector<Real> v(u.size());
  for (int i = 0; i < u.size(); ++i) v[i] = exp(4 * u.values()[i]);
  return u.grid()->rule().integrate(v);
}

template <RealScalar Real>
struct PhiEstimate {
  AxiField<Real> field;
  Real sup;
};

/// Lap u + (3(6 - l1)(2 + l1) / (8 l2)) |grad u|^2 - 4 l2 kappa / (3(2 + l1)).
template <RealScalar Real>
PhiEstimate<Real> phi_estimate(const AxiField<Real>& u, Real lambda1, Real lambda2) {
  if (!(lambda1 > -2 && lambda1 < 6) || !(lambda2 > 0)) {
    throw std::invalid_argument("phi_estimate: requires -2 < lambda1 < 6 and lambda2 > 0");
  }
  const Real k = u.kappa();
  const Real gradient_coeff = 3 * (6 - lambda1) * (2 + lambda1) / (8 * lambda2);
  const Real shift = 4 * lambda2 * k / (3 * (2 + lambda1));
  const auto l = sphere::lap(u);
  const auto g = sphere::grad2(u);
  std::vector<Real> v(u.size());
  Real sup = 0;
  for (int i = 0; i < u.size(); ++i) {
    v[i] = l.values()[i] + gradient_coeff * g.values()[i] - shift;
    sup = i == 0 ? v[i] : std::max(sup, v[i]);
  }
  return {AxiField<Real>::from_values(u.grid(), k, std::move(v)), sup};
}

/// min over nodes of (1/h3) L Phi - h1 q^T A q with h1 = a1, h2 = a2 kappa,
/// h3 = e^{a3 u}, Phi = h3 (Lap u + h1 |grad u|^2 - h2),
/// L Phi = Lap Phi - 2 (h1 + h3'/h3) <grad u, grad Phi> + K (h1/h3) Phi^2 and
/// q = (Phi/h3, h1 |grad u|^2, h2).
template <RealScalar Real>
Real lemma_est_gap(const AxiField<Real>& u, double lambda1, double lambda2, double a1, double a2,
                   double a3, double K) {
  using std::exp;
  const Real k = u.kappa();
  const auto A = quadform::matrix_A_liouville(a1, a2, a3, lambda1, lambda2, K);
  const auto l = sphere::lap(u);
  const auto g = sphere::grad2(u);
  const int n = u.size();
  std::vector<Real> h3(n), phi(n);
  for (int i = 0; i < n; ++i) {
    h3[i] = exp(Real(a3) * u.values()[i]);
    phi[i] = h3[i] * (l.values()[i] + Real(a1) * g.values()[i] - Real(a2) * k);
  }
  const auto phi_field = AxiField<Real>::from_values(u.grid(), k, phi);
  const auto lap_phi = sphere::lap(phi_field);
  const auto cross = sphere::inner_grad(u, phi_field);

  Real gap = 0;
  for (int i = 0; i < n; ++i) {
    const Real op = lap_phi.values()[i] - 2 * (Real(a1) + Real(a3)) * cross.values()[i] +
                    Real(K) * Real(a1) / h3[i] * phi[i] * phi[i];
    const Real q0 = phi[i] / h3[i];
    const Real q1 = Real(a1) * g.values()[i];
    const Real q2 = Real(a2) * k;
    const Real form = Real(A.a11) * q0 * q0 + Real(A.a22) * q1 * q1 + Real(A.a33) * q2 * q2 +
                      2 * (Real(A.a12) * q0 * q1 + Real(A.a13) * q0 * q2 + Real(A.a23) * q1 * q2);
    const Real value = op / h3[i] - Real(a1) * form;
    gap = i == 0 ? value : std::min(gap, value);
  }
  return gap;
}

/// Eigenvalue of the linearization at u = 0 on degree-l harmonics.
inline double linearized_mu(int l, double lambda1, double lambda2, double kappa) {
  if (l < 0) throw std::invalid_argument("linearized_mu: l must be non-negative");
  const double e = static_cast<double>(l) * (l + 3);
  return kappa * kappa * (e * (e + lambda1) - 4.0 * lambda2);
}

enum class Continuation { Auto, Always, Never };

struct SolveOptions {
  double tol = 1e-8;
  int max_iter = 50;
  double damping = 0.5;        // backtracking factor
  double damping_floor = 1e-4; // smallest step length tried
  double pinv_threshold = 1e-10;
  double continuation_step = 0.1;
  Continuation continuation = Continuation::Auto;
};

struct SolveResult {
  AxiField<double> solution;
  double residual_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;  // residual_norm before each iteration and at the end
  bool singular_jacobian = false;
  bool used_continuation = false;
  std::string message;
};

namespace detail {

struct Galerkin {
  const sphere::SphereGrid<double>& grid;
  int degree;
  double kappa;
  double lambda1;
  double lambda2;

  double linear_multiplier(int l) const {
    const double e = static_cast<double>(l) * (l + 3) * kappa;
    return e * e + lambda1 * kappa * e;
  }

  /// Galerkin residual coefficients for the expansion c (length degree+1).
  Eigen::VectorXd residual(const Eigen::VectorXd& c, std::vector<double>& exp4u) const {
    const int n = grid.size();
    std::vector<double> cc(c.data(), c.data() + c.size());
    const auto u = grid.synthesize(cc);
    exp4u.resize(n);
    std::vector<double> nl(n);
    for (int i = 0; i < n; ++i) {
      exp4u[i] = std::exp(4.0 * u[i]);
      nl[i] = lambda2 * kappa * kappa * (1.0 - exp4u[i]);
    }
    const auto proj = grid.analyze(nl);
    Eigen::VectorXd r(degree + 1);
    for (int l = 0; l <= degree; ++l) r[l] = linear_multiplier(l) * c[l] + proj[l];
    return r;
  }

  Eigen::MatrixXd jacobian(const std::vector<double>& exp4u) const {
    const int n = grid.size();
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(degree + 1, degree + 1);
    const double scale = -4.0 * lambda2 * kappa * kappa;
    for (int l = 0; l <= degree; ++l) {
      for (int m = l; m <= degree; ++m) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += grid.weights()[i] * exp4u[i] * grid.psi(l, i) * grid.psi(m, i);
        j(l, m) = scale * s;
        j(m, l) = j(l, m);
      }
      j(l, l) += linear_multiplier(l);
    }
    return j;
  }

  double norm(const Eigen::VectorXd& r) const {
    std::vector<double> rr(r.data(), r.data() + r.size());
    const auto v = grid.synthesize(rr);
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
};

inline SolveResult newton_direct(const AxiField<double>& init, double lambda1, double lambda2,
                                 int degree, const SolveOptions& opt) {
  const auto& grid = *init.grid();
  Galerkin g{grid, degree, init.kappa(), lambda1, lambda2};
  Eigen::VectorXd c(degree + 1);
  for (int l = 0; l <= degree; ++l) c[l] = init.coeffs()[l];

  SolveResult res;
  std::vector<double> e4;
  Eigen::VectorXd r = g.residual(c, e4);
  double rn = g.norm(r);
  res.history.push_back(rn);
  // Stop once the residual is below tol and the last update was too. The
  // extra step matters where the Jacobian has small eigenvalues (lambda2
  // near 0), since there a small residual still allows a larger error in u.
  double last_step = rn > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  for (int it = 0; it < opt.max_iter && !(rn <= opt.tol && last_step <= opt.tol); ++it) {
    res.iterations = it + 1;
    const Eigen::MatrixXd j = g.jacobian(e4);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    const auto& ev = es.eigenvalues();
    const double cutoff = opt.pinv_threshold * ev.cwiseAbs().maxCoeff();
    Eigen::VectorXd proj = es.eigenvectors().transpose() * r;
    for (int i = 0; i < ev.size(); ++i) {
      if (std::abs(ev[i]) < cutoff) {
        proj[i] = 0.0;
        res.singular_jacobian = true;
      } else {
        proj[i] /= ev[i];
      }
    }
    const Eigen::VectorXd step = es.eigenvectors() * proj;

    // Backtracking on the Euclidean norm of the Galerkin residual.
    const double r2 = r.norm();
    double alpha = 1.0;
    bool accepted = false;
    Eigen::VectorXd trial_c;
    Eigen::VectorXd trial_r;
    std::vector<double> trial_e4;
    while (alpha >= opt.damping_floor) {
      trial_c = c - alpha * step;
      trial_r = g.residual(trial_c, trial_e4);
      if (trial_r.allFinite() && trial_r.norm() < r2) {
        accepted = true;
        break;
      }
      alpha *= opt.damping;
    }
    if (!accepted) {
      res.message = "line search failed";
      break;
    }
    last_step = (alpha * step).cwiseAbs().maxCoeff();
    c = trial_c;
    r = trial_r;
    e4 = std::move(trial_e4);
    rn = g.norm(r);
    res.history.push_back(rn);
  }
  std::vector<double> coeffs(c.data(), c.data() + c.size());
  res.solution = AxiField<double>::from_coeffs(init.grid(), init.kappa(), std::move(coeffs));
  res.residual_norm = rn;
  res.converged = rn <= opt.tol;
  if (!res.converged && res.message.empty()) res.message = "iteration limit reached";
  return res;
}

}  // namespace detail

/// Damped Newton on the Galerkin system in psi_0..psi_degree. The initial
/// field fixes grid and kappa; its coefficients above `degree` are dropped.
/// Falls back to continuation in lambda2 when the direct iteration stalls.
inline SolveResult newton_solve(const AxiField<double>& init, double lambda1, double lambda2,
                                int degree, const SolveOptions& opt = {}) {
  if (!(lambda2 > 0.0)) throw std::invalid_argument("newton_solve: lambda2 must be positive");
  if (degree < 1 || degree > init.grid()->max_degree()) {
    throw std::invalid_argument("newton_solve: degree out of range for grid");
  }
  if (opt.continuation != Continuation::Always) {
    auto res = detail::newton_direct(init, lambda1, lambda2, degree, opt);
    if (res.converged || opt.continuation == Continuation::Never) return res;
  }

  // March lambda2 from a small value up to the target, reusing each solution.
  std::vector<double> path;
  for (double v = std::min(opt.continuation_step, lambda2); v < lambda2; v += opt.continuation_step) {
    path.push_back(v);
  }
  path.push_back(lambda2);
  AxiField<double> current = init;
  SolveResult res;
  bool singular = false;
  int total = 0;
  std::vector<double> history;
  for (double l2 : path) {
    res = detail::newton_direct(current, lambda1, l2, degree, opt);
    total += res.iterations;
    singular = singular || res.singular_jacobian;
    history.insert(history.end(), res.history.begin(), res.history.end());
    current = res.solution;
  }
  res.iterations = total;
  res.history = std::move(history);
  res.singular_jacobian = singular;
  res.used_continuation = true;
  return res;
}

struct FamilyFit {
  double t = 0.0;
  double err = 0.0;  // max nodal deviation from family(t)
};

/// Least-squares fit of the family parameter (signed) to u.
template <RealScalar Real>
FamilyFit fit_family(const AxiField<Real>& u) {
  using std::abs;
  const auto& s = u.nodes();
  const auto& w = u.grid()->weights();
  const int n = u.size();
  // u(1) = -t exactly on the family; start there and refine by Gauss-Newton.
  Real t = -u.at(Real(1));
  for (int it = 0; it < 50; ++it) {
    using std::cosh;
    using std::sinh;
    Real num = 0, den = 0;
    for (int i = 0; i < n; ++i) {
      const Real q = cosh(t) + s[i] * sinh(t);
      const Real model = family_profile(t, s[i]);
      const Real dmodel = -(sinh(t) + s[i] * cosh(t)) / q;
      num += w[i] * dmodel * (u.values()[i] - model);
      den += w[i] * dmodel * dmodel;
    }
    if (den == 0) break;
    const Real dt = num / den;
    t += dt;
    if (abs(dt) <= 100 * epsilon<Real>() * (1 + abs(t))) break;
  }
  Real err = 0;
  for (int i = 0; i < n; ++i) err = std::max(err, Real(abs(u.values()[i] - family_profile(t, s[i]))));
  return {to_double(t), to_double(err)};
}

}  // namespace liouville::pde
