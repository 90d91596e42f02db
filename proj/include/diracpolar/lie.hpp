#pragma once

#include "diracpolar/observables.hpp"
#include "diracpolar/tensorial.hpp"

namespace diracpolar {

/// Killing field data at a point: values, derivatives, curl, covariant
/// derivative and the Killing-equation residual.
struct XiSample {
  RVec4 xi_up{};             // xi^m
  RVec4 xi_low{};            // xi_m
  double dxi_up[4][4]{};     // d_m xi^n
  double nabla_low[4][4]{};  // nabla_m xi_n
  double curl[4][4]{};       // (dxi)_{mn} = d_m xi_n - d_n xi_m
  double killing_residual = 0;
};

inline XiSample sample_killing(const SpacetimeChart& chart, const KillingField& k,
                               const ChartFrame& f) {
  XiSample xs;
  const Env env = chart.env_at(f.x);
  const auto& coords = chart.coords();
  for (int n = 0; n < 4; ++n) {
    xs.xi_up[n] = k.xi[n].eval(env);
    for (int m = 0; m < 4; ++m) xs.dxi_up[m][n] = k.xi[n].diff(coords[m]).eval(env);
  }
  for (int n = 0; n < 4; ++n)
    for (int s = 0; s < 4; ++s) xs.xi_low[n] += f.g[n][s] * xs.xi_up[s];
  double dlow[4][4];  // d_m xi_n
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      dlow[m][n] = 0;
      for (int s = 0; s < 4; ++s)
        dlow[m][n] += f.dg[m][n][s] * xs.xi_up[s] + f.g[n][s] * xs.dxi_up[m][s];
    }
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      double cov = dlow[m][n];
      for (int s = 0; s < 4; ++s) cov -= f.Gamma[s][m][n] * xs.xi_low[s];
      xs.nabla_low[m][n] = cov;
      xs.curl[m][n] = dlow[m][n] - dlow[n][m];
    }
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      xs.killing_residual =
          std::max(xs.killing_residual, std::abs(xs.nabla_low[m][n] + xs.nabla_low[n][m]));
  return xs;
}

namespace detail {

inline CVec4 bar_vec(const CVec4& v, const GammaBasis& g) {
  CVec4 b{};
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) b[j] += std::conj(v[i]) * g.gamma[0](i, j);
  return b;
}

inline cplx row_mat_col(const CVec4& row, const Mat4c& m, const CVec4& col) {
  cplx r = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r += row[i] * m(i, j) * col[j];
  return r;
}

/// The covariant Lie derivative xi^m nabla_m psi + 1/4 (dxi)_{ab} sigma^{ab} psi,
/// with no Killing gate (callers decide).
inline CVec4 lie_spinor_unchecked(const FieldSample& fs, const XiSample& xs,
                                  const GammaBasis& g) {
  CVec4 out{};
  for (int m = 0; m < 4; ++m) out = out + cplx(xs.xi_up[m]) * fs.nabla_psi(m, g);
  // Convert the curl to frame indices and contract with sigma^{ab}.
  Mat4c op;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double c = 0;
      for (int al = 0; al < 4; ++al)
        for (int be = 0; be < 4; ++be)
          c += fs.geo.einv[a][al] * fs.geo.einv[b][be] * xs.curl[al][be];
      op += cplx(0.25 * c) * g.sigma[a][b];
    }
  return out + matvec(op, fs.psi.c);
}

inline void require_killing(const XiSample& xs) {
  if (xs.killing_residual > 1e-6)
    throw NotKilling("vector field fails the Killing equation (residual " +
                     std::to_string(xs.killing_residual) + ")");
}

inline void require_nonsingular(const FieldSample& fs) {
  if (fs.phi * fs.phi <= 1e-12)
    throw SingularSpinor("polar field is singular (phi ~ 0) at the sample point");
}

}  // namespace detail

/// Lie derivative of the spinor field along a Killing vector, covariant form.
inline CVec4 lie_spinor(const PolarField& field, const SpacetimeChart& chart,
                        const KillingField& k, const RVec4& x,
                        const GammaBasis& g = gamma_basis()) {
  const FieldSample fs = sample_field(field, chart, x, g);
  const XiSample xs = sample_killing(chart, k, fs.geo);
  detail::require_killing(xs);
  return detail::lie_spinor_unchecked(fs, xs, g);
}

/// Tetrad form: xi^m (d_m + i q A_m) psi + 1/2 (L_xi e_k)^al sigma_al^k psi.
/// Agrees with the covariant form identically.
inline CVec4 lie_spinor_tetrad_form(const PolarField& field, const SpacetimeChart& chart,
                                    const KillingField& k, const RVec4& x,
                                    const GammaBasis& g = gamma_basis()) {
  const FieldSample fs = sample_field(field, chart, x, g);
  const XiSample xs = sample_killing(chart, k, fs.geo);
  detail::require_killing(xs);
  const ChartFrame& f = fs.geo;

  CVec4 out{};
  for (int m = 0; m < 4; ++m)
    out = out + cplx(xs.xi_up[m]) *
                    (fs.dpsi[m] + cplx(0, fs.q * fs.Aval[m]) * fs.psi.c);

  double dei[4][4][4];  // dei[l][a][mu] = d_l e_a^mu
  for (int l = 0; l < 4; ++l)
    for (int a = 0; a < 4; ++a)
      for (int mu = 0; mu < 4; ++mu) {
        dei[l][a][mu] = 0;
        for (int b = 0; b < 4; ++b)
          for (int nu = 0; nu < 4; ++nu)
            dei[l][a][mu] -= f.einv[a][nu] * f.de[l][b][nu] * f.einv[b][mu];
      }
  Mat4c op;
  for (int kk = 0; kk < 4; ++kk) {
    RVec4 lie_ek{};  // (L_xi e_k)^alpha
    for (int al = 0; al < 4; ++al) {
      for (int m = 0; m < 4; ++m)
        lie_ek[al] += xs.xi_up[m] * dei[m][kk][al] - f.einv[kk][m] * xs.dxi_up[m][al];
    }
    for (int c = 0; c < 4; ++c) {
      double coeff = 0;  // (L_xi e_k)^al e_{c al}
      for (int al = 0; al < 4; ++al) coeff += lie_ek[al] * eta(c) * f.e[c][al];
      op += cplx(0.5 * coeff) * g.sigma[c][kk];
    }
  }
  return out + matvec(op, fs.psi.c);
}

/// Lie derivatives of the bilinears along a Killing field.
struct WeakResiduals {
  double theta = 0, phi = 0;
  double u = 0, s = 0, m = 0;
  double max() const { return std::max({theta, phi, u, s, m}); }
};

namespace detail {

struct BilinearDerivatives {
  double Theta, Phi;
  RVec4 dTheta, dPhi;         // coordinate gradients
  RVec4 Uc, Sc;               // U^alpha, S^alpha coordinate up
  double nabU[4][4], nabS[4][4];  // nabla_m U^alpha
  double Mc[4][4];            // M^{alpha beta} coordinate
  double nabM[4][4][4];       // nabla_m M^{alpha beta}
};

inline BilinearDerivatives bilinear_derivatives(const FieldSample& fs, const GammaBasis& g) {
  BilinearDerivatives bd{};
  const double phi2 = fs.phi * fs.phi;
  RVec4 dphi2;
  for (int m = 0; m < 4; ++m) dphi2[m] = 2 * fs.phi * fs.dphi[m];

  bd.Theta = 2 * phi2 * std::sin(fs.beta);
  bd.Phi = 2 * phi2 * std::cos(fs.beta);
  for (int m = 0; m < 4; ++m) {
    bd.dTheta[m] = 2 * dphi2[m] * std::sin(fs.beta) + 2 * phi2 * std::cos(fs.beta) * fs.dbeta[m];
    bd.dPhi[m] = 2 * dphi2[m] * std::cos(fs.beta) - 2 * phi2 * std::sin(fs.beta) * fs.dbeta[m];
  }

  for (int al = 0; al < 4; ++al) {
    for (int a = 0; a < 4; ++a) {
      bd.Uc[al] += fs.geo.einv[a][al] * 2 * phi2 * fs.u[a];
      bd.Sc[al] += fs.geo.einv[a][al] * 2 * phi2 * fs.s[a];
    }
    for (int m = 0; m < 4; ++m) {
      bd.nabU[m][al] = 0;
      bd.nabS[m][al] = 0;
      for (int a = 0; a < 4; ++a) {
        bd.nabU[m][al] +=
            fs.geo.einv[a][al] * (2 * dphi2[m] * fs.u[a] + 2 * phi2 * fs.nabla_u(m, a));
        bd.nabS[m][al] +=
            fs.geo.einv[a][al] * (2 * dphi2[m] * fs.s[a] + 2 * phi2 * fs.nabla_s(m, a));
      }
    }
  }

  // M^{ab} and its covariant derivative from the spinor and its derivative.
  const CVec4 psibar = bar_vec(fs.psi.c, g);
  double Mlat[4][4], dMlat[4][4][4];
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      Mlat[a][b] = (cplx(0, 2) * row_mat_col(psibar, g.sigma[a][b], fs.psi.c)).real();
      for (int m = 0; m < 4; ++m) {
        const CVec4 dbar = bar_vec(fs.dpsi[m], g);
        dMlat[m][a][b] = (cplx(0, 2) * (row_mat_col(dbar, g.sigma[a][b], fs.psi.c) +
                                        row_mat_col(psibar, g.sigma[a][b], fs.dpsi[m])))
                             .real();
      }
    }
  double nabMlat[4][4][4];
  for (int m = 0; m < 4; ++m)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        double v = dMlat[m][a][b];
        for (int c = 0; c < 4; ++c)
          v += fs.geo.C[a][c][m] * eta(c) * Mlat[c][b] + fs.geo.C[b][c][m] * eta(c) * Mlat[a][c];
        nabMlat[m][a][b] = v;
      }
  for (int al = 0; al < 4; ++al)
    for (int be = 0; be < 4; ++be) {
      bd.Mc[al][be] = 0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          bd.Mc[al][be] += fs.geo.einv[a][al] * fs.geo.einv[b][be] * Mlat[a][b];
      for (int m = 0; m < 4; ++m) {
        bd.nabM[m][al][be] = 0;
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b)
            bd.nabM[m][al][be] +=
                fs.geo.einv[a][al] * fs.geo.einv[b][be] * nabMlat[m][a][b];
      }
    }
  return bd;
}

inline double nabla_xi_up(const ChartFrame& f, const XiSample& xs, int m, int al) {
  double r = 0;
  for (int n = 0; n < 4; ++n) r += f.ginv[al][n] * xs.nabla_low[m][n];
  return r;
}

}  // namespace detail

/// Lie derivatives of every bilinear along xi, coordinate indices up.
struct BilinearLie {
  double theta = 0, phi = 0;
  RVec4 u{}, s{};
  double m[4][4]{};
};

inline BilinearLie lie_bilinear_values(const PolarField& field, const SpacetimeChart& chart,
                                       const KillingField& k, const RVec4& x,
                                       const GammaBasis& g = gamma_basis()) {
  const FieldSample fs = sample_field(field, chart, x, g);
  const XiSample xs = sample_killing(chart, k, fs.geo);
  detail::require_killing(xs);
  const auto bd = detail::bilinear_derivatives(fs, g);

  BilinearLie lie;
  for (int m = 0; m < 4; ++m) {
    lie.theta += xs.xi_up[m] * bd.dTheta[m];
    lie.phi += xs.xi_up[m] * bd.dPhi[m];
  }
  for (int al = 0; al < 4; ++al)
    for (int m = 0; m < 4; ++m) {
      lie.u[al] +=
          xs.xi_up[m] * bd.nabU[m][al] - bd.Uc[m] * detail::nabla_xi_up(fs.geo, xs, m, al);
      lie.s[al] +=
          xs.xi_up[m] * bd.nabS[m][al] - bd.Sc[m] * detail::nabla_xi_up(fs.geo, xs, m, al);
    }
  for (int al = 0; al < 4; ++al)
    for (int be = 0; be < 4; ++be)
      for (int m = 0; m < 4; ++m)
        lie.m[al][be] += xs.xi_up[m] * bd.nabM[m][al][be] -
                         bd.Mc[m][be] * detail::nabla_xi_up(fs.geo, xs, m, al) -
                         bd.Mc[al][m] * detail::nabla_xi_up(fs.geo, xs, m, be);
  return lie;
}

inline WeakResiduals lie_bilinears(const PolarField& field, const SpacetimeChart& chart,
                                   const KillingField& k, const RVec4& x,
                                   const GammaBasis& g = gamma_basis()) {
  const BilinearLie lie = lie_bilinear_values(field, chart, k, x, g);
  WeakResiduals w;
  w.theta = std::abs(lie.theta);
  w.phi = std::abs(lie.phi);
  w.u = max_abs(lie.u);
  w.s = max_abs(lie.s);
  for (int al = 0; al < 4; ++al)
    for (int be = 0; be < 4; ++be) w.m = std::max(w.m, std::abs(lie.m[al][be]));
  return w;
}

/// || psibar L_xi gamma^alpha psi || over alpha, computed from the defining
/// decomposition L_xi(psibar gamma psi) - (L_xi psi)bar gamma psi - psibar
/// gamma L_xi psi. Vanishes along Killing fields; for general xi it equals
/// the symmetrized-gradient contraction. No Killing gate.
struct LieGammaReport {
  double value_norm = 0;     // || psibar L_xi gamma^al psi ||
  double identity_norm = 0;  // || value + 1/2 U_n (nabla^al xi^n + nabla^n xi^al) ||
};

inline LieGammaReport lie_gamma_report(const PolarField& field, const SpacetimeChart& chart,
                                       const KillingField& k, const RVec4& x,
                                       const GammaBasis& g = gamma_basis()) {
  const FieldSample fs = sample_field(field, chart, x, g);
  const XiSample xs = sample_killing(chart, k, fs.geo);
  const auto bd = detail::bilinear_derivatives(fs, g);
  const CVec4 lie = detail::lie_spinor_unchecked(fs, xs, g);
  const CVec4 liebar = detail::bar_vec(lie, g);
  const CVec4 psibar = detail::bar_vec(fs.psi.c, g);

  LieGammaReport rep;
  double v2 = 0, i2 = 0;
  for (int al = 0; al < 4; ++al) {
    // L_xi U^alpha from the tensor formula.
    double lu = 0;
    for (int m = 0; m < 4; ++m)
      lu += xs.xi_up[m] * bd.nabU[m][al] - bd.Uc[m] * detail::nabla_xi_up(fs.geo, xs, m, al);
    // (L_xi psi)bar gamma^alpha psi + psibar gamma^alpha L_xi psi with
    // gamma^alpha = e_a^alpha gamma^a.
    Mat4c gal;
    for (int a = 0; a < 4; ++a) gal += cplx(fs.geo.einv[a][al]) * g.gamma[a];
    const double via_spinor = (detail::row_mat_col(liebar, gal, fs.psi.c) +
                               detail::row_mat_col(psibar, gal, lie))
                                  .real();
    const double lie_gamma = lu - via_spinor;  // psibar (L_xi gamma^al) psi
    // Symmetrized gradient term 1/2 U_n (nabla^al xi^n + nabla^n xi^al).
    double sym = 0;
    for (int n = 0; n < 4; ++n) {
      double nab_al_n = 0, nab_n_al = 0;  // nabla^al xi^n etc, both up
      for (int p = 0; p < 4; ++p)
        for (int r = 0; r < 4; ++r) {
          nab_al_n += fs.geo.ginv[al][p] * fs.geo.ginv[n][r] * xs.nabla_low[p][r];
          nab_n_al += fs.geo.ginv[n][p] * fs.geo.ginv[al][r] * xs.nabla_low[p][r];
        }
      double Un = 0;  // U_n lower
      for (int p = 0; p < 4; ++p) Un += fs.geo.g[n][p] * bd.Uc[p];
      sym += 0.5 * Un * (nab_al_n + nab_n_al);
    }
    v2 += lie_gamma * lie_gamma;
    i2 += (lie_gamma + sym) * (lie_gamma + sym);
  }
  rep.value_norm = std::sqrt(v2);
  rep.identity_norm = std::sqrt(i2);
  return rep;
}

inline double lie_gamma_residual(const PolarField& field, const SpacetimeChart& chart,
                                 const KillingField& k, const RVec4& x,
                                 const GammaBasis& g = gamma_basis()) {
  return lie_gamma_report(field, chart, k, x, g).value_norm;
}

/// Right-hand side of the polar decomposition of the Lie derivative: the
/// Lie derivatives of beta, ln phi, u and s, plus the bracket term built
/// from the curl of xi and xi.(P - V).
struct PolarLieDecomposition {
  CVec4 lie;       // xi^m nabla_m psi + 1/4 curl sigma psi
  CVec4 polar_rhs; // the observable-wise decomposition
  double residual; // componentwise difference (an identity; numerics only)
};

inline PolarLieDecomposition polar_lie_decomposition(const PolarField& field,
                                                     const SpacetimeChart& chart,
                                                     const KillingField& k, const RVec4& x,
                                                     const GammaBasis& g = gamma_basis()) {
  const FieldSample fs = sample_field(field, chart, x, g);
  const XiSample xs = sample_killing(chart, k, fs.geo);
  detail::require_killing(xs);
  detail::require_nonsingular(fs);
  const ChartFrame& f = fs.geo;

  // Scalars.
  double lie_beta = 0, lie_lnphi = 0;
  for (int m = 0; m < 4; ++m) {
    lie_beta += xs.xi_up[m] * fs.dbeta[m];
    lie_lnphi += xs.xi_up[m] * fs.dphi[m] / fs.phi;
  }

  // Lie derivatives of the unit vectors, coordinate index up.
  const RVec4 uc = fs.u_coord();
  const RVec4 sc = fs.s_coord();
  RVec4 lie_u{}, lie_s{};
  for (int al = 0; al < 4; ++al)
    for (int m = 0; m < 4; ++m) {
      lie_u[al] += xs.xi_up[m] * fs.nabla_u_coord(m, al) -
                   uc[m] * detail::nabla_xi_up(f, xs, m, al);
      lie_s[al] += xs.xi_up[m] * fs.nabla_s_coord(m, al) -
                   sc[m] * detail::nabla_xi_up(f, xs, m, al);
    }

  auto low = [&](const RVec4& v, int n) {
    double r = 0;
    for (int p = 0; p < 4; ++p) r += f.g[n][p] * v[p];
    return r;
  };
  double s_dot_lie_u = 0;
  for (int n = 0; n < 4; ++n) s_dot_lie_u += low(sc, n) * lie_u[n];

  // Coefficient matrix K^{al ro} multiplying sigma_{al ro}.
  double K[4][4];
  for (int al = 0; al < 4; ++al)
    for (int ro = 0; ro < 4; ++ro)
      K[al][ro] = -uc[al] * lie_u[ro] - lie_s[al] * sc[ro] - uc[al] * sc[ro] * s_dot_lie_u;

  // Bracket term: 1/4 (dxi)_{mn} P^{al m} P^{ro n} with the u,s projectors.
  double proj[4][4];  // P^{al m} = g^{al m} - u^al u^m + s^al s^m
  for (int al = 0; al < 4; ++al)
    for (int m = 0; m < 4; ++m)
      proj[al][m] = f.ginv[al][m] - uc[al] * uc[m] + sc[al] * sc[m];
  for (int al = 0; al < 4; ++al)
    for (int ro = 0; ro < 4; ++ro) {
      double t = 0;
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) t += 0.25 * xs.curl[m][n] * proj[al][m] * proj[ro][n];
      K[al][ro] += t;
    }

  // Assemble: convert K to frame indices and contract with sigma_{ab}.
  Mat4c op;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double klat = 0;
      for (int al = 0; al < 4; ++al)
        for (int ro = 0; ro < 4; ++ro) klat += f.e[a][al] * f.e[b][ro] * K[al][ro];
      op += cplx(klat) * g.sigma_lower(a, b);
    }
  double xi_pv = 0;
  for (int m = 0; m < 4; ++m) xi_pv += xs.xi_up[m] * (fs.P[m] - fs.V[m]);
  op += cplx(lie_lnphi) * Mat4c::identity();
  op += cplx(0, -0.5 * lie_beta) * g.pi;
  op += cplx(0, -xi_pv) * Mat4c::identity();

  PolarLieDecomposition out;
  out.lie = detail::lie_spinor_unchecked(fs, xs, g);
  out.polar_rhs = matvec(op, fs.psi.c);
  double r = 0;
  for (int i = 0; i < 4; ++i) r = std::max(r, std::abs(out.lie[i] - out.polar_rhs[i]));
  out.residual = r;
  return out;
}

/// The scalar condition: 1/4 (dxi)_{mn} s_tau u_sig eps^{mn tau sig}
/// - 2 xi^m (P_m - V_m). Zero iff weak and strong Lie-invariance coincide.
inline double cond_scalar(const PolarField& field, const SpacetimeChart& chart,
                          const KillingField& k, const RVec4& x,
                          const GammaBasis& g = gamma_basis()) {
  const FieldSample fs = sample_field(field, chart, x, g);
  detail::require_nonsingular(fs);
  const XiSample xs = sample_killing(chart, k, fs.geo);
  const ChartFrame& f = fs.geo;
  const RVec4 uc = fs.u_coord();
  const RVec4 sc = fs.s_coord();
  auto low = [&](const RVec4& v, int n) {
    double r = 0;
    for (int p = 0; p < 4; ++p) r += f.g[n][p] * v[p];
    return r;
  };
  double lhs = 0;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      for (int ta = 0; ta < 4; ++ta)
        for (int si = 0; si < 4; ++si) {
          const int e = levi_civita_upper(m, n, ta, si);
          if (e) lhs += 0.25 * xs.curl[m][n] * low(sc, ta) * low(uc, si) * e / f.dete;
        }
  double rhs = 0;
  for (int m = 0; m < 4; ++m) rhs += 2.0 * xs.xi_up[m] * (fs.P[m] - fs.V[m]);
  return lhs - rhs;
}

/// Numerical certificate of the equivalence theorem at one point: the
/// bracket operator of the strong-minus-weak difference annihilates psi
/// exactly when the scalar condition vanishes, and in general
/// bracket psi = (i/2) cond psi.
struct EquivalenceReport {
  double bracket_norm = 0;      // || bracket psi ||
  double cond = 0;              // signed scalar condition
  double psi_norm = 0;
  double ratio = 0;             // 2 ||bracket psi|| / (|cond| ||psi||), 0 if cond ~ 0
  double proportionality = 0;   // || bracket psi - (i/2) cond psi ||
  double omega[4][4]{};         // omega^{al ro} of the compact form
};

inline EquivalenceReport equivalence_check(const PolarField& field, const SpacetimeChart& chart,
                                           const KillingField& k, const RVec4& x,
                                           double weak_tolerance = 1e-8,
                                           const GammaBasis& g = gamma_basis()) {
  const FieldSample fs = sample_field(field, chart, x, g);
  const XiSample xs = sample_killing(chart, k, fs.geo);
  detail::require_killing(xs);
  detail::require_nonsingular(fs);
  const WeakResiduals w = lie_bilinears(field, chart, k, x, g);
  if (w.max() > weak_tolerance)
    throw NotWeaklyInvariant("field is not weakly Lie-invariant at the sample point (residual " +
                             std::to_string(w.max()) + ")");

  const ChartFrame& f = fs.geo;
  const RVec4 uc = fs.u_coord();
  const RVec4 sc = fs.s_coord();
  double proj[4][4];
  for (int al = 0; al < 4; ++al)
    for (int m = 0; m < 4; ++m)
      proj[al][m] = f.ginv[al][m] - uc[al] * uc[m] + sc[al] * sc[m];

  EquivalenceReport rep;
  for (int al = 0; al < 4; ++al)
    for (int ro = 0; ro < 4; ++ro) {
      double t = 0;
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) t += 0.5 * xs.curl[m][n] * proj[al][m] * proj[ro][n];
      rep.omega[al][ro] = t;
    }

  Mat4c op;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double klat = 0;
      for (int al = 0; al < 4; ++al)
        for (int ro = 0; ro < 4; ++ro)
          klat += f.e[a][al] * f.e[b][ro] * 0.5 * rep.omega[al][ro];
      op += cplx(klat) * g.sigma_lower(a, b);
    }
  double xi_pv = 0;
  for (int m = 0; m < 4; ++m) xi_pv += xs.xi_up[m] * (fs.P[m] - fs.V[m]);
  op += cplx(0, -xi_pv) * Mat4c::identity();

  const CVec4 bp = matvec(op, fs.psi.c);
  rep.bracket_norm = norm(bp);
  rep.psi_norm = norm(fs.psi.c);
  rep.cond = cond_scalar(field, chart, k, x, g);
  const CVec4 predicted = cplx(0, 0.5 * rep.cond) * fs.psi.c;
  rep.proportionality = norm(bp - predicted);
  if (std::abs(rep.cond) * rep.psi_norm > 1e-14)
    rep.ratio = 2.0 * rep.bracket_norm / (std::abs(rep.cond) * rep.psi_norm);
  return rep;
}

/// Summary used by the command-line front end.
struct LieReport {
  double strong_residual = 0;
  WeakResiduals weak;
  double cond_residual = 0;
  double lie_gamma = 0;
  double lie_gamma_identity = 0;
  double final_equation_residual = 0;
};

inline LieReport lie_report(const PolarField& field, const SpacetimeChart& chart,
                            const KillingField& k, const RVec4& x,
                            const GammaBasis& g = gamma_basis()) {
  LieReport rep;
  rep.strong_residual = norm(lie_spinor(field, chart, k, x, g));
  rep.weak = lie_bilinears(field, chart, k, x, g);
  rep.cond_residual = cond_scalar(field, chart, k, x, g);
  const auto lg = lie_gamma_report(field, chart, k, x, g);
  rep.lie_gamma = lg.value_norm;
  rep.lie_gamma_identity = lg.identity_norm;
  rep.final_equation_residual = polar_lie_decomposition(field, chart, k, x, g).residual;
  return rep;
}

}  // namespace diracpolar
