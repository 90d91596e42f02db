#pragma once

#include <cmath>

#include "diracpolar/observables.hpp"

namespace diracpolar {

/// Polar coordinates of a Dirac spinor: psi = phi e^{-i beta pi/2}
/// e^{i gauge_phase} L.S psi_rest.
///
/// L is stored lab-ward: L.Lambda carries (1,0,0,0) to u and (0,0,0,1) to s,
/// and L.S right-multiplies the rest spinor in the reconstruction.
struct PolarData {
  double phi = 1;         // module, > 0
  double beta = 0;        // chiral angle, in (-pi, pi]
  RVec4 u{1, 0, 0, 0};    // unit time-like velocity, Latin index up
  RVec4 s{0, 0, 0, 1};    // unit space-like spin, Latin index up
  SpinGroupElement L;     // boost-rotation taking the rest configuration to (u, s)
  double gauge_phase = 0;
};

/// Extracts the real Lorentz matrix tied to a spin-group matrix by
/// L^{-1} gamma^i L = Lambda^i_j gamma^j, via traces against the gammas.
/// Throws NotSpinGroup if the result fails eta-orthogonality beyond 1e-6.
inline Mat4 real_lorentz_of(const Mat4c& L, const GammaBasis& g = gamma_basis()) {
  const Mat4c Linv = inverse(L);
  Mat4 lam;
  double imag_max = 0;
  for (int i = 0; i < 4; ++i) {
    const Mat4c lhs = Linv * g.gamma[i] * L;
    for (int k = 0; k < 4; ++k) {
      const cplx t = (lhs * (eta(k) * g.gamma[k])).trace() * cplx(0.25);
      lam(i, k) = t.real();
      imag_max = std::max(imag_max, std::abs(t.imag()));
    }
  }
  Mat4 ortho = lam.transpose() * eta_matrix() * lam - eta_matrix();
  if (ortho.max_abs() > 1e-6 || imag_max > 1e-6)
    throw NotSpinGroup("matrix does not represent a spin-group element");
  return lam;
}

namespace detail {

inline SpinGroupElement boost_to(const RVec4& u) {
  const double sp = std::sqrt(u[1] * u[1] + u[2] * u[2] + u[3] * u[3]);
  if (sp < 1e-15) return SpinGroupElement{};
  const double r = std::acosh(std::max(1.0, u[0]));
  return exp_spin({r * u[1] / sp, r * u[2] / sp, r * u[3] / sp}, {0, 0, 0});
}

inline SpinGroupElement rotate_z_to(const std::array<double, 3>& n) {
  const double cx = -n[1];  // e3 x n
  const double cy = n[0];
  const double sn = std::sqrt(cx * cx + cy * cy);
  const double cs = n[2];
  if (sn < 1e-15) {
    if (cs > 0) return SpinGroupElement{};
    return exp_spin({0, 0, 0}, {M_PI, 0, 0});  // n = -e3: rotate pi about axis 1
  }
  const double angle = std::atan2(sn, cs);
  return exp_spin({0, 0, 0}, {angle * cx / sn, angle * cy / sn, 0});
}

}  // namespace detail

/// Decomposes a non-singular Dirac spinor into its polar data.
/// 2 phi^2 = sqrt(Theta^2 + Phi^2), beta = atan2(Theta, Phi), u = U/(2 phi^2),
/// s = S/(2 phi^2); L is the pure boost to u followed by the rotation taking
/// the third axis to the boosted-back spin direction.
inline PolarData polar_decompose(const Spinor& psi, const GammaBasis& g = gamma_basis()) {
  const Bilinears b = bilinears(psi, g);
  const double n2 = b.Theta * b.Theta + b.Phi * b.Phi;
  double nrm2 = 0;
  for (const auto& c : psi.c) nrm2 += std::norm(c);
  if (n2 <= 1e-12 * nrm2 * nrm2)
    throw SingularSpinor("flag spinor: Phi^2 + Theta^2 ~ 0 admits no polar form");

  PolarData p;
  const double rho = std::sqrt(n2);  // 2 phi^2
  p.phi = std::sqrt(0.5 * rho);
  p.beta = std::atan2(b.Theta, b.Phi);
  if (p.beta <= -M_PI) p.beta = M_PI;
  p.u = (1.0 / rho) * b.U;
  p.s = (1.0 / rho) * b.S;

  const SpinGroupElement boost = detail::boost_to(p.u);
  const RVec4 s_rest = matvec(lorentz_inverse(boost.Lambda), p.s);
  const SpinGroupElement rot = detail::rotate_z_to({s_rest[1], s_rest[2], s_rest[3]});
  p.L = boost * rot;

  // Fix the residual U(1) phase against a well-conditioned component.
  const Spinor cand = [&] {
    Spinor r;
    Mat4c chiral;
    for (int i = 0; i < 4; ++i) chiral(i, i) = std::exp(cplx(0, -0.5 * p.beta) * g.pi(i, i));
    r.c = cplx(p.phi) * matvec(chiral * p.L.S, rest_spinor().c);
    return r;
  }();
  double cmax = 0;
  for (const auto& c : psi.c) cmax = std::max(cmax, std::abs(c));
  for (int k = 0; k < 4; ++k)
    if (std::abs(psi.c[k]) > 0.5 * cmax) {
      p.gauge_phase = std::arg(psi.c[k] / cand.c[k]);
      break;
    }
  return p;
}

/// Rebuilds the spinor phi e^{-i beta pi /2} e^{i gauge_phase} L.S (1,0,1,0)^T.
/// Throws InvalidPolarData when the polar invariants are violated beyond 1e-8.
inline Spinor polar_reconstruct(const PolarData& p, const GammaBasis& g = gamma_basis()) {
  double viol = std::abs(mdot(p.u, p.u) - 1.0);
  viol = std::max(viol, std::abs(mdot(p.s, p.s) + 1.0));
  viol = std::max(viol, std::abs(mdot(p.u, p.s)));
  const RVec4 lu = matvec(p.L.Lambda, RVec4{1, 0, 0, 0});
  const RVec4 ls = matvec(p.L.Lambda, RVec4{0, 0, 0, 1});
  viol = std::max(viol, max_abs(lu - p.u));
  viol = std::max(viol, max_abs(ls - p.s));
  if (!(p.phi > 0) || viol > 1e-8)
    throw InvalidPolarData("polar data violates norm/orthogonality/frame invariants");

  Mat4c chiral;
  for (int i = 0; i < 4; ++i) chiral(i, i) = std::exp(cplx(0, -0.5 * p.beta) * g.pi(i, i));
  Spinor out;
  out.c = cplx(p.phi) * std::exp(cplx(0, p.gauge_phase)) * matvec(chiral * p.L.S, rest_spinor().c);
  return out;
}

}  // namespace diracpolar
