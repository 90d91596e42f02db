#pragma once

#include "diracpolar/clifford.hpp"
#include "diracpolar/geometry.hpp"

namespace diracpolar {

/// Polar spinor field on a chart: module phi, chiral angle beta, gauge phase
/// zeta, and the frame transformation given as boost rapidities and rotation
/// angles (the spin transform applied to the rest spinor is
/// boost(rapidities) * rotation(angles)). A_mu is the gauge potential with a
/// lower coordinate index, q the charge.
///
/// The spinor field is psi(x) = phi e^{-i beta pi/2} e^{-i q zeta} S(x) psi0.
struct PolarField {
  FieldExpr phi = FieldExpr(1.0);
  FieldExpr beta = FieldExpr(0.0);
  FieldExpr zeta = FieldExpr(0.0);
  std::array<FieldExpr, 3> rapidities{FieldExpr(0.0), FieldExpr(0.0), FieldExpr(0.0)};
  std::array<FieldExpr, 3> angles{FieldExpr(0.0), FieldExpr(0.0), FieldExpr(0.0)};
  std::array<FieldExpr, 4> A{FieldExpr(0.0), FieldExpr(0.0), FieldExpr(0.0), FieldExpr(0.0)};
  double q = 0;
};

/// Everything about a polar field at one point, with exact derivatives:
/// the geometry frame, the scalars and their gradients, the frame
/// transformation Lambda/S with first (and for Lambda second) derivatives,
/// the velocity u and spin s, the tensorial connections F, P and the vector
/// V, and the spinor with its coordinate derivatives.
struct FieldSample {
  ChartFrame geo;
  double q = 0;

  double phi = 1;
  RVec4 dphi{};
  double beta = 0;
  RVec4 dbeta{};
  double zeta = 0;
  RVec4 dzeta{};
  double d2zeta[4][4]{};
  RVec4 Aval{};
  double dA[4][4]{};  // dA[n][m] = d_n A_m

  Mat4 Lambda;
  Mat4 dLambda[4];
  Mat4 d2Lambda[4][4];
  Mat4c S;
  Mat4c dS[4];

  RVec4 u{};            // u^a, Latin up
  RVec4 s{};            // s^a
  double du[4][4]{};    // du[mu][a] = d_mu u^a
  double ds[4][4]{};

  double Omega[4][4][4]{};   // Goldstone connection Omega^{ij}_mu
  double F[4][4][4]{};       // F^{ij}_mu = Omega - C
  double dF[4][4][4][4]{};   // dF[nu][i][j][mu]
  RVec4 P{};                 // P_mu
  double dP[4][4]{};         // dP[n][m] = d_n P_m
  RVec4 V{};                 // V_mu = 1/4 F_{ij mu} eps^{ijcd} u_c s_d

  Spinor psi;
  CVec4 dpsi[4]{};

  // -- derived quantities ---------------------------------------------------

  /// nabla_mu u^a (mixed coordinate/Latin covariant derivative).
  double nabla_u(int mu, int a) const {
    double r = du[mu][a];
    for (int b = 0; b < 4; ++b) r += geo.C[a][b][mu] * eta(b) * u[b];
    return r;
  }
  double nabla_s(int mu, int a) const {
    double r = ds[mu][a];
    for (int b = 0; b < 4; ++b) r += geo.C[a][b][mu] * eta(b) * s[b];
    return r;
  }

  /// Coordinate components, index up.
  RVec4 u_coord() const {
    RVec4 r{};
    for (int m = 0; m < 4; ++m)
      for (int a = 0; a < 4; ++a) r[m] += geo.einv[a][m] * u[a];
    return r;
  }
  RVec4 s_coord() const {
    RVec4 r{};
    for (int m = 0; m < 4; ++m)
      for (int a = 0; a < 4; ++a) r[m] += geo.einv[a][m] * s[a];
    return r;
  }

  /// nabla_mu u^alpha in pure coordinate components.
  double nabla_u_coord(int mu, int alpha) const {
    double r = 0;
    for (int a = 0; a < 4; ++a) r += geo.einv[a][alpha] * nabla_u(mu, a);
    return r;
  }
  double nabla_s_coord(int mu, int alpha) const {
    double r = 0;
    for (int a = 0; a < 4; ++a) r += geo.einv[a][alpha] * nabla_s(mu, a);
    return r;
  }

  /// Full spinor covariant derivative nabla_mu psi = (d_mu + 1/2 C_{ab mu}
  /// sigma^{ab} + i q A_mu) psi.
  CVec4 nabla_psi(int mu, const GammaBasis& g = gamma_basis()) const {
    Mat4c conn;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        conn += cplx(0.5 * geo.C[a][b][mu]) * g.sigma_lower(a, b);
    conn += cplx(0, q * Aval[mu]) * Mat4c::identity();
    return dpsi[mu] + matvec(conn, psi.c);
  }

  /// F with the first index pair lowered: F_{ij mu}.
  double F_low(int i, int j, int mu) const { return eta(i) * eta(j) * F[i][j][mu]; }
};

/// Evaluates a polar field and all its exact derivatives at a point.
inline FieldSample sample_field(const PolarField& field, const SpacetimeChart& chart,
                                const RVec4& x, const GammaBasis& g = gamma_basis()) {
  FieldSample fs;
  fs.geo = chart.frame(x);
  fs.q = field.q;
  const Env env = chart.env_at(x);
  const auto& coords = chart.coords();

  fs.phi = field.phi.eval(env);
  fs.beta = field.beta.eval(env);
  fs.zeta = field.zeta.eval(env);
  for (int m = 0; m < 4; ++m) {
    fs.dphi[m] = field.phi.diff(coords[m]).eval(env);
    fs.dbeta[m] = field.beta.diff(coords[m]).eval(env);
    const FieldExpr dz = field.zeta.diff(coords[m]);
    fs.dzeta[m] = dz.eval(env);
    for (int n = 0; n < 4; ++n) fs.d2zeta[n][m] = dz.diff(coords[n]).eval(env);
    fs.Aval[m] = field.A[m].eval(env);
    for (int n = 0; n < 4; ++n) fs.dA[n][m] = field.A[m].diff(coords[n]).eval(env);
  }

  // Parameter values and derivatives of the two exponential factors.
  std::array<double, 3> w{}, th{};
  double dw[4][3], dth[4][3], d2w[4][4][3], d2th[4][4][3];
  for (int k = 0; k < 3; ++k) {
    w[k] = field.rapidities[k].eval(env);
    th[k] = field.angles[k].eval(env);
    for (int m = 0; m < 4; ++m) {
      const FieldExpr dwk = field.rapidities[k].diff(coords[m]);
      const FieldExpr dthk = field.angles[k].diff(coords[m]);
      dw[m][k] = dwk.eval(env);
      dth[m][k] = dthk.eval(env);
      for (int n = 0; n < 4; ++n) {
        d2w[m][n][k] = dwk.diff(coords[n]).eval(env);
        d2th[m][n][k] = dthk.diff(coords[n]).eval(env);
      }
    }
  }

  using detail::lorentz_parameters;
  using detail::spin_generator;
  using detail::vector_generator;
  auto boost_pars = [&](const std::array<double, 3>& p) { return lorentz_parameters(p, {0, 0, 0}); };
  auto rot_pars = [&](const std::array<double, 3>& p) { return lorentz_parameters({0, 0, 0}, p); };

  const Mat4 Mb = vector_generator(boost_pars(w));
  const Mat4 Mr = vector_generator(rot_pars(th));
  const Mat4c Gb = spin_generator(boost_pars(w), g);
  const Mat4c Gr = spin_generator(rot_pars(th), g);

  const Mat4 Lb = expm(Mb), Lr = expm(Mr);
  const Mat4c Sb = expm(Gb), Sr = expm(Gr);
  fs.Lambda = Lb * Lr;
  fs.S = Sb * Sr;

  Mat4 dLb[4], dLr[4];
  Mat4c dSb[4], dSr[4];
  for (int m = 0; m < 4; ++m) {
    const Mat4 Hb = vector_generator(boost_pars({dw[m][0], dw[m][1], dw[m][2]}));
    const Mat4 Hr = vector_generator(rot_pars({dth[m][0], dth[m][1], dth[m][2]}));
    dLb[m] = expm_d1(Mb, Hb);
    dLr[m] = expm_d1(Mr, Hr);
    dSb[m] = expm_d1(Gb, spin_generator(boost_pars({dw[m][0], dw[m][1], dw[m][2]}), g));
    dSr[m] = expm_d1(Gr, spin_generator(rot_pars({dth[m][0], dth[m][1], dth[m][2]}), g));
    fs.dLambda[m] = dLb[m] * Lr + Lb * dLr[m];
    fs.dS[m] = dSb[m] * Sr + Sb * dSr[m];
  }
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      const Mat4 Hm = vector_generator(boost_pars({dw[m][0], dw[m][1], dw[m][2]}));
      const Mat4 Hn = vector_generator(boost_pars({dw[n][0], dw[n][1], dw[n][2]}));
      const Mat4 Hmn = vector_generator(boost_pars({d2w[m][n][0], d2w[m][n][1], d2w[m][n][2]}));
      const Mat4 d2Lb = expm_d1(Mb, Hmn) + expm_d2(Mb, Hm, Hn);
      const Mat4 Km = vector_generator(rot_pars({dth[m][0], dth[m][1], dth[m][2]}));
      const Mat4 Kn = vector_generator(rot_pars({dth[n][0], dth[n][1], dth[n][2]}));
      const Mat4 Kmn = vector_generator(rot_pars({d2th[m][n][0], d2th[m][n][1], d2th[m][n][2]}));
      const Mat4 d2Lr = expm_d1(Mr, Kmn) + expm_d2(Mr, Km, Kn);
      fs.d2Lambda[m][n] = d2Lb * Lr + dLb[m] * dLr[n] + dLb[n] * dLr[m] + Lb * d2Lr;
    }

  for (int a = 0; a < 4; ++a) {
    fs.u[a] = fs.Lambda(a, 0);
    fs.s[a] = fs.Lambda(a, 3);
    for (int m = 0; m < 4; ++m) {
      fs.du[m][a] = fs.dLambda[m](a, 0);
      fs.ds[m][a] = fs.dLambda[m](a, 3);
    }
  }

  // Goldstone connection Omega^{ij}_mu = -Lambda^{js} d_mu Lambda^i_s and its
  // derivative; F = Omega - C.
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int m = 0; m < 4; ++m) {
        double om = 0;
        for (int sdx = 0; sdx < 4; ++sdx)
          om -= fs.Lambda(j, sdx) * eta(sdx) * fs.dLambda[m](i, sdx);
        fs.Omega[i][j][m] = om;
        fs.F[i][j][m] = om - fs.geo.C[i][j][m];
        for (int n = 0; n < 4; ++n) {
          double dom = 0;
          for (int sdx = 0; sdx < 4; ++sdx)
            dom -= eta(sdx) * (fs.dLambda[n](j, sdx) * fs.dLambda[m](i, sdx) +
                               fs.Lambda(j, sdx) * fs.d2Lambda[m][n](i, sdx));
          fs.dF[n][i][j][m] = dom - fs.geo.dC[n][i][j][m];
        }
      }

  for (int m = 0; m < 4; ++m) {
    fs.P[m] = field.q * (fs.dzeta[m] - fs.Aval[m]);
    for (int n = 0; n < 4; ++n) fs.dP[n][m] = field.q * (fs.d2zeta[n][m] - fs.dA[n][m]);
  }

  for (int m = 0; m < 4; ++m) {
    double v = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d) {
            const int e = levi_civita_upper(i, j, c, d);
            if (e) v += 0.25 * fs.F_low(i, j, m) * e * eta(c) * fs.u[c] * eta(d) * fs.s[d];
          }
    fs.V[m] = v;
  }

  // Spinor and its exact coordinate derivatives.
  Mat4c chiral;
  Mat4c dchiral;  // d(chiral)/dbeta = -i/2 pi chiral
  for (int i = 0; i < 4; ++i) {
    chiral(i, i) = std::exp(cplx(0, -0.5 * fs.beta) * g.pi(i, i));
    dchiral(i, i) = cplx(0, -0.5) * g.pi(i, i) * chiral(i, i);
  }
  const cplx gauge = std::exp(cplx(0, -field.q * fs.zeta));
  const CVec4 base = matvec(fs.S, rest_spinor().c);
  fs.psi.c = cplx(fs.phi) * gauge * matvec(chiral, base);
  for (int m = 0; m < 4; ++m) {
    CVec4 term = cplx(fs.dphi[m]) * gauge * matvec(chiral, base);
    term = term + cplx(fs.phi) * gauge * cplx(0, -field.q * fs.dzeta[m]) * matvec(chiral, base);
    term = term + cplx(fs.phi * fs.dbeta[m]) * gauge * matvec(dchiral, base);
    term = term + cplx(fs.phi) * gauge * matvec(chiral, matvec(fs.dS[m], rest_spinor().c));
    fs.dpsi[m] = term;
  }
  return fs;
}

}  // namespace diracpolar
