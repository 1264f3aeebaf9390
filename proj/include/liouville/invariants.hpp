#pragma once

// Scalar contractions of the invariant tensors for axisymmetric u.
//
// With b = -1:
//   E_ij = u_ij - u_i u_j - (1/4)(Lap u - |grad u|^2) g_ij
//   F_i  = (Lap u)_i - (3/2) Lap u u_i - (1/2)|grad u|^2 u_i + 4 kappa u_i
//   G    = Lap^2 u - (3/2)(|grad u|^2 + Lap u)^2 + 6 kappa |grad u|^2 + 4 kappa Lap u
//   L_ij = u_i u_j - (1/4)|grad u|^2 g_ij
//
// For u = u(s) every vector field is a multiple of grad s and E_ij is
// diagonal in the frame (grad s, three transverse directions), with
// eigenvalues e_r and e_t = -e_r / 3. Writing P = |grad u|^2 and D = d/ds:
//   e_r = h_r - P - (Lap u - P)/4,   e_t = h_t - (Lap u - P)/4
//   F_i = phi_F grad s,  phi_F = D(Lap u) - (3/2) Lap u Du - (1/2) P Du + 4 kappa Du
//   E_i = e_r Du grad s
// so E_ij E^ij = (4/3) e_r^2, E = e_r P, F = kappa (1 - s^2) phi_F Du, etc.

#include "liouville/numeric.hpp"
#include "liouville/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace liouville::invariants {

using sphere::AxiField;

/// Per-node values of every contraction used by the identities.
template <RealScalar Real>
struct TensorScalars {
  std::vector<Real> du;       // Du
  std::vector<Real> lap_u;    // Lap u
  std::vector<Real> grad2_u;  // |grad u|^2
  std::vector<Real> bilap_u;  // Lap^2 u
  std::vector<Real> e_r;      // eigenvalue of E_ij along grad s
  std::vector<Real> e_t;      // transverse eigenvalue of E_ij
  std::vector<Real> E_sq;     // E_ij E^ij
  std::vector<Real> E_scal;   // E = E_ij u^i u^j
  std::vector<Real> Ei_sq;    // E_i E^i
  std::vector<Real> F_scal;   // F = F_i u^i
  std::vector<Real> Fi_sq;    // F_i F^i
  std::vector<Real> EiFi;     // E_i F^i
  std::vector<Real> G;
  std::vector<Real> R_def;    // Ric(grad u, grad u) - 3 kappa |grad u|^2, zero on the round sphere
  std::vector<Real> L_sq;     // L_ij L^ij
  std::vector<Real> EL;       // E_ij L^ij
  std::vector<Real> phi_F;    // F_i = phi_F grad s

  int size() const { return static_cast<int>(du.size()); }
};

template <RealScalar Real>
TensorScalars<Real> tensor_scalars(const AxiField<Real>& u) {
  const auto& grid = *u.grid();
  const Real k = u.kappa();
  const auto& s = u.nodes();
  const int n = u.size();

  const auto lap_u = sphere::lap(u);
  const auto bilap_u = sphere::bilap(u);
  const auto hess = sphere::hess_eigs(u);
  const auto du = sphere::nodal_derivative<Real>(grid, u.coeffs());
  const auto dlap = sphere::nodal_derivative<Real>(grid, lap_u.coeffs());

  TensorScalars<Real> t;
  t.du = du;
  t.lap_u = lap_u.values();
  t.bilap_u = bilap_u.values();
  for (auto* v : {&t.grad2_u, &t.e_r, &t.e_t, &t.E_sq, &t.E_scal, &t.Ei_sq, &t.F_scal, &t.Fi_sq,
                  &t.EiFi, &t.G, &t.R_def, &t.L_sq, &t.EL, &t.phi_F}) {
    v->assign(n, Real(0));
  }
  for (int i = 0; i < n; ++i) {
    const Real metric = k * (1 - s[i] * s[i]);  // |grad s|^2
    const Real P = metric * du[i] * du[i];
    const Real L = t.lap_u[i];
    const Real trace_part = (L - P) / 4;
    const Real er = hess.radial.values()[i] - P - trace_part;
    const Real et = hess.tangential.values()[i] - trace_part;
    const Real phi = dlap[i] - Real(1.5) * L * du[i] - P * du[i] / 2 + 4 * k * du[i];
    const Real F = metric * phi * du[i];

    t.grad2_u[i] = P;
    t.e_r[i] = er;
    t.e_t[i] = et;
    t.E_sq[i] = er * er + 3 * et * et;
    t.E_scal[i] = er * P;
    t.Ei_sq[i] = er * er * P;
    t.F_scal[i] = F;
    t.Fi_sq[i] = metric * phi * phi;
    t.EiFi[i] = er * F;
    t.G[i] = t.bilap_u[i] - Real(1.5) * (P + L) * (P + L) + 6 * k * P + 4 * k * L;
    t.R_def[i] = 0;
    t.L_sq[i] = Real(0.75) * P * P;
    // L_ij is diagonal with entries (3/4)P and -(1/4)P in the same frame.
    t.EL[i] = er * Real(0.75) * P + 3 * et * (-P / 4);
    t.phi_F[i] = phi;
  }
  return t;
}

namespace detail {

template <RealScalar Real>
Real max_abs(std::span<const Real> v) {
  using std::abs;
  Real m = 0;
  for (const auto& x : v) m = std::max(m, Real(abs(x)));
  return m;
}

}  // namespace detail

/// max |div E_i - (E_ij E^ij + R + E/2 + 3F/4)| over nodes.
template <RealScalar Real>
Real check_divE(const AxiField<Real>& u) {
  const auto t = tensor_scalars(u);
  std::vector<Real> phi(t.size());
  for (int i = 0; i < t.size(); ++i) phi[i] = t.e_r[i] * t.du[i];
  const auto div = sphere::div_radial_nodal<Real>(*u.grid(), u.kappa(), phi);
  std::vector<Real> r(t.size());
  for (int i = 0; i < t.size(); ++i) {
    r[i] = div[i] - (t.E_sq[i] + t.R_def[i] + t.E_scal[i] / 2 + Real(0.75) * t.F_scal[i]);
  }
  return detail::max_abs<Real>(r);
}

/// max |div F_i - (-E - 3F/2 + G)| over nodes.
template <RealScalar Real>
Real check_divF(const AxiField<Real>& u) {
  const auto t = tensor_scalars(u);
  const auto div = sphere::div_radial_nodal<Real>(*u.grid(), u.kappa(), t.phi_F);
  std::vector<Real> r(t.size());
  for (int i = 0; i < t.size(); ++i) r[i] = div[i] - (-t.E_scal[i] - Real(1.5) * t.F_scal[i] + t.G[i]);
  return detail::max_abs<Real>(r);
}

/// Residual of the gradient relation for G, measured as the length of the
/// vector difference. Holds only when u solves the equation at
/// (lambda1, lambda2).
template <RealScalar Real>
Real check_gradG(const AxiField<Real>& u, Real lambda1, Real lambda2) {
  using std::sqrt;
  const auto t = tensor_scalars(u);
  const Real k = u.kappa();
  const auto& s = u.nodes();
  const auto dG = sphere::nodal_derivative<Real>(*u.grid(), u.grid()->analyze(t.G));
  std::vector<Real> r(t.size());
  for (int i = 0; i < t.size(); ++i) {
    const Real P = t.grad2_u[i];
    const Real L = t.lap_u[i];
    const Real Ei = t.e_r[i] * t.du[i];
    const Real Fi = t.phi_F[i];
    const Real rhs = -3 * (P + L) * (2 * Ei + Fi) + 12 * k * Ei + (4 + lambda1) * k * Fi +
                     4 * t.G[i] * t.du[i] - (1 - lambda1 / 2) * (P - 5 * L) * k * t.du[i] +
                     4 * (lambda2 - lambda1 - 4) * k * k * t.du[i];
    r[i] = (dG[i] - rhs) * sqrt(k * (1 - s[i] * s[i]));
  }
  return detail::max_abs<Real>(r);
}

/// Terms of the master identity that can be switched off to test sensitivity.
struct IdentityMutation {
  bool drop_E_sq = false;  // remove the E_ij E^ij term on the right side
};

/// Both sides of the master identity at the nodes.
template <RealScalar Real>
struct IdentitySides {
  std::vector<Real> lhs;
  std::vector<Real> rhs;
};

template <RealScalar Real>
IdentitySides<Real> main_identity_sides(const AxiField<Real>& u, Real lambda1, Real lambda2,
                                        Real c, IdentityMutation mutation = {}) {
  const auto t = tensor_scalars(u);
  const Real k = u.kappa();
  const auto& s = u.nodes();
  const int n = t.size();

  // Vector field inside e^{-u}[...], as a multiple of grad s.
  std::vector<Real> psi(n);
  for (int i = 0; i < n; ++i) {
    const Real P = t.grad2_u[i];
    const Real L = t.lap_u[i];
    psi[i] = -Real(2) / 3 * (P + 7 * L - 2 * (8 + lambda1) * k) * t.e_r[i] * t.du[i] +
             (3 * P + L) * t.phi_F[i] - t.G[i] * t.du[i] + c * (2 - lambda1) * k * P * t.du[i];
  }
  // e^u div(e^{-u} psi grad s) = div(psi grad s) - <grad u, psi grad s>.
  const auto div = sphere::div_radial_nodal<Real>(*u.grid(), k, psi);

  IdentitySides<Real> out;
  out.lhs.resize(n);
  out.rhs.resize(n);
  for (int i = 0; i < n; ++i) {
    const Real P = t.grad2_u[i];
    const Real L = t.lap_u[i];
    out.lhs[i] = div[i] - k * (1 - s[i] * s[i]) * t.du[i] * psi[i];
    const Real e_sq = mutation.drop_E_sq ? Real(0) : t.E_sq[i];
    out.rhs[i] = -Real(2) / 3 * (P + 7 * L - 2 * (8 + lambda1) * k) * (e_sq + t.R_def[i]) +
                 (t.Fi_sq[i] + Real(4) / 3 * t.EiFi[i] + Real(4) / 9 * t.Ei_sq[i]) -
                 Real(16) / 9 * t.Ei_sq[i] +
                 (2 - lambda1) * k * ((1 + c) * P * P - (5 - 3 * c) * P * L) / 2 +
                 2 * (Real(1) / 3 + c) * (2 - lambda1) * k * t.E_scal[i] +
                 4 * (4 + lambda1 - lambda2) * k * k * P;
  }
  return out;
}

/// max |LHS - RHS| of the master identity. Holds only for solutions.
template <RealScalar Real>
Real check_main_identity(const AxiField<Real>& u, Real lambda1, Real lambda2, Real c,
                         IdentityMutation mutation = {}) {
  const auto sides = main_identity_sides(u, lambda1, lambda2, c, mutation);
  std::vector<Real> r(sides.lhs.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = sides.lhs[i] - sides.rhs[i];
  return detail::max_abs<Real>(r);
}

/// min over nodes of |grad u|^2 E_ij E^ij - (4/3) E_i E^i.
template <RealScalar Real>
Real gradient_cs_gap(const AxiField<Real>& u) {
  const auto t = tensor_scalars(u);
  Real m = 0;
  for (int i = 0; i < t.size(); ++i) {
    const Real g = t.grad2_u[i] * t.E_sq[i] - Real(4) / 3 * t.Ei_sq[i];
    m = i == 0 ? g : std::min(m, g);
  }
  return m;
}

}  // namespace liouville::invariants
