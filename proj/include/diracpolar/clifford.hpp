#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "diracpolar/linalg.hpp"

namespace diracpolar {

/// Dirac spinor: four complex components in a given tetrad frame.
struct Spinor {
  CVec4 c{};
  std::string frame{};

  cplx& operator[](int i) { return c[i]; }
  const cplx& operator[](int i) const { return c[i]; }
};

/// The rest-frame spin-up reference spinor (1,0,1,0)^T.
inline Spinor rest_spinor() { return Spinor{{cplx(1), cplx(0), cplx(1), cplx(0)}, {}}; }

/// Fixed chiral-representation Clifford algebra: gamma^a, pi, sigma^{ab}.
///
/// gamma^0 has off-diagonal identity blocks, gamma^k off-diagonal +/-Pauli
/// blocks, and pi = diag(-1,-1,+1,+1), the sign fixed so that (1,0,1,0)^T
/// carries Theta = 0, Phi > 0. Signature (+,-,-,-), eps_{0123} = +1.
struct GammaBasis {
  std::array<Mat4c, 4> gamma;                 // gamma^a, Latin index up
  Mat4c pi;                                   // "fifth gamma", parity projector pair
  std::array<std::array<Mat4c, 4>, 4> sigma;  // sigma^{ab} = [gamma^a, gamma^b]/4

  const Mat4c& sig(int a, int b) const { return sigma[a][b]; }

  /// sigma_{ab} with both indices lowered by eta.
  Mat4c sigma_lower(int a, int b) const { return eta(a) * eta(b) * sigma[a][b]; }
};

inline GammaBasis build_gamma_basis() {
  GammaBasis g{};
  const cplx I(0, 1);
  auto& g0 = g.gamma[0];
  g0(0, 2) = 1;
  g0(1, 3) = 1;
  g0(2, 0) = 1;
  g0(3, 1) = 1;
  // Pauli matrices in the off-diagonal blocks: gamma^k = [[0, s^k], [-s^k, 0]]
  const cplx s1[2][2] = {{0, 1}, {1, 0}};
  const cplx s2[2][2] = {{0, -I}, {I, 0}};
  const cplx s3[2][2] = {{1, 0}, {0, -1}};
  const cplx(*pauli[3])[2] = {s1, s2, s3};
  for (int k = 0; k < 3; ++k) {
    auto& gk = g.gamma[k + 1];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        gk(i, j + 2) = pauli[k][i][j];
        gk(i + 2, j) = -pauli[k][i][j];
      }
  }
  g.pi(0, 0) = -1;
  g.pi(1, 1) = -1;
  g.pi(2, 2) = 1;
  g.pi(3, 3) = 1;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      g.sigma[a][b] = (g.gamma[a] * g.gamma[b] - g.gamma[b] * g.gamma[a]) * cplx(0.25);
  return g;
}

/// Shared immutable basis instance.
inline const GammaBasis& gamma_basis() {
  static const GammaBasis g = build_gamma_basis();
  return g;
}

/// Dirac adjoint psi_bar = psi^dagger gamma^0, as a row of components
/// pairing through plain sums: psi_bar . M . psi.
inline CVec4 bar(const Spinor& psi, const GammaBasis& g = gamma_basis()) {
  CVec4 b{};
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) b[j] += std::conj(psi.c[i]) * g.gamma[0](i, j);
  return b;
}

/// psi_bar . M . psi
inline cplx sandwich(const Spinor& psi, const Mat4c& m, const GammaBasis& g = gamma_basis()) {
  const CVec4 b = bar(psi, g);
  cplx r = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r += b[i] * m(i, j) * psi.c[j];
  return r;
}

/// Element of the spin group together with its real Lorentz image.
///
/// The pair satisfies S^{-1} gamma^i S = Lambda^i_j gamma^j, i.e. a spinor
/// transforming by S has its bilinear vectors transforming by Lambda.
struct SpinGroupElement {
  Mat4c S = Mat4c::identity();
  Mat4 Lambda = Mat4::identity();
  double phase = 0;

  friend SpinGroupElement operator*(const SpinGroupElement& l, const SpinGroupElement& r) {
    return SpinGroupElement{l.S * r.S, l.Lambda * r.Lambda, l.phase + r.phase};
  }

  SpinGroupElement inverse() const {
    return SpinGroupElement{diracpolar::inverse(S), lorentz_inverse(Lambda), -phase};
  }
};

namespace detail {

/// omega_{ab} for rapidities w (boosts, omega_{0k} = w_k) and angles th
/// (rotations, omega_{ij} = eps_{ijk} th_k).
inline Mat4 lorentz_parameters(const std::array<double, 3>& w, const std::array<double, 3>& th) {
  Mat4 om;
  for (int k = 0; k < 3; ++k) {
    om(0, k + 1) = w[k];
    om(k + 1, 0) = -w[k];
  }
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      for (int k = 1; k <= 3; ++k) om(i, j) += levi_civita(0, i, j, k) * th[k - 1];
  return om;
}

inline Mat4c spin_generator(const Mat4& om, const GammaBasis& g) {
  Mat4c gen;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) gen += cplx(0.5 * om(a, b)) * g.sigma[a][b];
  return gen;
}

inline Mat4 vector_generator(const Mat4& om) {
  Mat4 m;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) m(a, b) = eta(a) * om(a, b);
  return m;
}

}  // namespace detail

/// Exponentiates the Lorentz generators: S = exp(1/2 omega_{ab} sigma^{ab})
/// e^{i q phase}, Lambda the matching real transformation.
inline SpinGroupElement exp_spin(const std::array<double, 3>& rapidities,
                                 const std::array<double, 3>& angles, double phase = 0,
                                 double charge = 0, const GammaBasis& g = gamma_basis()) {
  const Mat4 om = detail::lorentz_parameters(rapidities, angles);
  SpinGroupElement e;
  e.S = expm(detail::spin_generator(om, g)) * std::exp(cplx(0, charge * phase));
  e.Lambda = expm(detail::vector_generator(om));
  e.phase = phase;
  return e;
}

/// Residuals of the representation identities the basis must satisfy.
struct AlgebraReport {
  double anticommutator = 0;   // {gamma^a, gamma^b} - 2 eta^{ab} I
  double sigma_def = 0;        // sigma^{ab} - [gamma^a,gamma^b]/4
  double duality = 0;          // 2i sigma_{ab} - eps_{abcd} pi sigma^{cd}
  double sigma_gamma = 0;      // [sigma^{nr}, gamma^a] - (eta^{ar} gamma^n - eta^{an} gamma^r)
  double sigma_anticomm = 0;   // 2{sigma_ab, sigma_cd} - [(eta eta - eta eta) I + i eps pi]
  double gamma_sandwich = 0;   // gamma_s [gamma_i, gamma_j] gamma^s

  double max() const {
    double m = anticommutator;
    m = std::max(m, sigma_def);
    m = std::max(m, duality);
    m = std::max(m, sigma_gamma);
    m = std::max(m, sigma_anticomm);
    m = std::max(m, gamma_sandwich);
    return m;
  }
};

inline AlgebraReport check_algebra_identities(const GammaBasis& g) {
  AlgebraReport rep;
  const Mat4c id = Mat4c::identity();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      Mat4c anti = g.gamma[a] * g.gamma[b] + g.gamma[b] * g.gamma[a] - cplx(2 * eta(a, b)) * id;
      rep.anticommutator = std::max(rep.anticommutator, anti.max_abs());

      Mat4c sd = g.sigma[a][b] - (g.gamma[a] * g.gamma[b] - g.gamma[b] * g.gamma[a]) * cplx(0.25);
      rep.sigma_def = std::max(rep.sigma_def, sd.max_abs());

      Mat4c dual = cplx(0, 2) * g.sigma_lower(a, b);
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          const int e = levi_civita(a, b, c, d);
          if (e) dual -= cplx(e) * (g.pi * g.sigma[c][d]);
        }
      rep.duality = std::max(rep.duality, dual.max_abs());

      for (int c = 0; c < 4; ++c) {
        Mat4c comm = g.sigma[a][b] * g.gamma[c] - g.gamma[c] * g.sigma[a][b] -
                     (cplx(eta(c, b)) * g.gamma[a] - cplx(eta(c, a)) * g.gamma[b]);
        rep.sigma_gamma = std::max(rep.sigma_gamma, comm.max_abs());
      }

      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          const Mat4c sab = g.sigma_lower(a, b);
          const Mat4c scd = g.sigma_lower(c, d);
          Mat4c lhs = (sab * scd + scd * sab) * cplx(2);
          Mat4c rhs = cplx(eta(a, d) * eta(b, c) - eta(a, c) * eta(b, d)) * id +
                      cplx(0, 1) * cplx(levi_civita(a, b, c, d)) * g.pi;
          rep.sigma_anticomm = std::max(rep.sigma_anticomm, (lhs - rhs).max_abs());
        }

      Mat4c sand;
      for (int s = 0; s < 4; ++s)
        sand += eta(s) * (g.gamma[s] * (g.gamma[a] * g.gamma[b] - g.gamma[b] * g.gamma[a]) *
                          g.gamma[s]);
      rep.gamma_sandwich = std::max(rep.gamma_sandwich, sand.max_abs());
    }
  return rep;
}

}  // namespace diracpolar
