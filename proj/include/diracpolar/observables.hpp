#pragma once

#include <cmath>
#include <random>

#include "diracpolar/clifford.hpp"

namespace diracpolar {

/// The real tensors built from a spinor: scalars Theta/Phi, vector U,
/// axial-vector S, antisymmetric tensors M and Sigma (index-up, Latin).
struct Bilinears {
  double Theta = 0;
  double Phi = 0;
  RVec4 U{};
  RVec4 S{};
  Mat4 M{};      // M^{ab} = 2i psi_bar sigma^{ab} psi
  Mat4 Sigma{};  // Sigma^{ab} = 2 psi_bar sigma^{ab} pi psi
};

/// Computes all bilinears, checking that the defining contractions are real.
/// Throws NonRealBilinear if an imaginary residue exceeds 1e-10 (relative to
/// the spinor scale) - the signature of a broken gamma basis.
inline Bilinears bilinears(const Spinor& psi, const GammaBasis& g = gamma_basis()) {
  Bilinears b;
  double nrm2 = 0;
  for (const auto& c : psi.c) nrm2 += std::norm(c);
  const double scale = std::max(1.0, nrm2);
  double imag_max = 0;
  auto take_real = [&](cplx v) {
    imag_max = std::max(imag_max, std::abs(v.imag()));
    return v.real();
  };

  const cplx I(0, 1);
  b.Phi = take_real(sandwich(psi, Mat4c::identity(), g));
  b.Theta = take_real(I * sandwich(psi, g.pi, g));
  for (int a = 0; a < 4; ++a) {
    b.U[a] = take_real(sandwich(psi, g.gamma[a], g));
    b.S[a] = take_real(sandwich(psi, g.gamma[a] * g.pi, g));
  }
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 4; ++c) {
      b.M(a, c) = take_real(cplx(2) * I * sandwich(psi, g.sigma[a][c], g));
      b.Sigma(a, c) = take_real(cplx(2) * sandwich(psi, g.sigma[a][c] * g.pi, g));
    }
  if (imag_max > 1e-10 * scale)
    throw NonRealBilinear("bilinear contraction has imaginary residue " + std::to_string(imag_max));
  return b;
}

/// Residuals of the Fierz-type interdependencies, relative to the natural
/// scale of each identity (Theta^2 + Phi^2 is quartic in the spinor).
struct FierzReport {
  double norm_u = 0;      // U.U - (Theta^2 + Phi^2)
  double norm_s = 0;      // S.S + (Theta^2 + Phi^2)
  double orthogonal = 0;  // U.S
  double hodge = 0;       // Sigma^{ij} + 1/2 eps^{abij} M_{ab}
  double m_identity = 0;  // M_{ab}(Phi^2+Theta^2) - Phi U^j S^k eps_{jkab} - Theta U_[a S_b]

  double max() const {
    return std::max({norm_u, norm_s, orthogonal, hodge, m_identity});
  }
};

inline FierzReport fierz_residuals(const Bilinears& b) {
  FierzReport r;
  const double n2 = b.Theta * b.Theta + b.Phi * b.Phi;
  const double s4 = std::max(1.0, n2);
  const double s6 = std::max(1.0, n2 * std::sqrt(n2));

  r.norm_u = std::abs(mdot(b.U, b.U) - n2) / s4;
  r.norm_s = std::abs(mdot(b.S, b.S) + n2) / s4;
  r.orthogonal = std::abs(mdot(b.U, b.S)) / s4;

  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double h = b.Sigma(i, j);
      for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c) {
          const int e = levi_civita_upper(a, c, i, j);
          if (e) h += 0.5 * e * eta(a) * eta(c) * b.M(a, c);
        }
      r.hodge = std::max(r.hodge, std::abs(h) / s4);

      // Eq for M with all indices lowered; U_[a S_b] without the 1/2.
      const double Ma = eta(i) * eta(j) * b.M(i, j);
      double rhs = 0;
      for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c) {
          const int e = levi_civita(a, c, i, j);
          if (e) rhs += b.Phi * b.U[a] * b.S[c] * e;
        }
      rhs += b.Theta * (eta(i) * b.U[i] * eta(j) * b.S[j] - eta(j) * b.U[j] * eta(i) * b.S[i]);
      r.m_identity = std::max(r.m_identity, std::abs(Ma * n2 - rhs) / s6);
    }
  return r;
}

enum class AuxForm { raw, normalized };

/// Residual of the auxiliary spinor identity.
/// raw:        |2 U_m S_n sigma^{mn} pi psi + U^2 psi|      (always defined)
/// normalized: |u_[m s_n] sigma^{mn} pi psi + psi|          (needs Phi^2+Theta^2 > 0)
/// Both are reported relative to their natural scales.
inline double aux_residual(const Spinor& psi, AuxForm form = AuxForm::raw,
                           const GammaBasis& g = gamma_basis()) {
  const Bilinears b = bilinears(psi, g);
  const double n2 = b.Theta * b.Theta + b.Phi * b.Phi;
  double nrm2 = 0;
  for (const auto& c : psi.c) nrm2 += std::norm(c);

  if (form == AuxForm::normalized) {
    if (n2 <= 1e-12 * nrm2 * nrm2)
      throw SingularSpinor("flag spinor: Phi^2 + Theta^2 ~ 0, normalized aux form undefined");
    Mat4c op;
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n)
        op += cplx(2.0 * eta(m) * b.U[m] * eta(n) * b.S[n] / n2) * (g.sigma[m][n] * g.pi);
    CVec4 res = matvec(op, psi.c) + psi.c;
    return norm(res) / std::max(1.0, norm(psi.c));
  }

  Mat4c op;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      op += cplx(2.0 * eta(m) * b.U[m] * eta(n) * b.S[n]) * (g.sigma[m][n] * g.pi);
  CVec4 res = matvec(op, psi.c) + cplx(mdot(b.U, b.U)) * psi.c;
  return norm(res) / std::max(1.0, n2 * norm(psi.c));
}

/// Seeded pseudo-random spinor: independent real/imaginary parts uniform in
/// [-1, 1], for reproducible property tests.
inline Spinor random_spinor(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Spinor psi;
  for (auto& c : psi.c) {
    const double re = dist(rng);
    const double im = dist(rng);
    c = cplx(re, im);
  }
  return psi;
}

}  // namespace diracpolar
