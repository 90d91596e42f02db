#pragma once

#include "diracpolar/lie.hpp"

namespace diracpolar {

/// Mass and charge entering the Dirac residuals and the energy tensor.
struct DynamicsContext {
  double mass = 0;
  double charge = 0;
};

/// The two first-order combinations of polar derivatives entering the Dirac
/// equations, coordinate lower index.
struct ZYPair {
  RVec4 Z{};
  RVec4 Y{};
};

namespace detail {

struct PolarKinematics {
  const FieldSample& fs;
  RVec4 uc, sc;             // coordinate up
  double nab_u[4][4];       // nabla_m u^al (coordinate both)
  double nab_s[4][4];
  RVec4 u_low, s_low;
  double div_u = 0, div_s = 0;

  explicit PolarKinematics(const FieldSample& f) : fs(f) {
    uc = f.u_coord();
    sc = f.s_coord();
    for (int m = 0; m < 4; ++m)
      for (int al = 0; al < 4; ++al) {
        nab_u[m][al] = f.nabla_u_coord(m, al);
        nab_s[m][al] = f.nabla_s_coord(m, al);
      }
    for (int n = 0; n < 4; ++n) {
      u_low[n] = 0;
      s_low[n] = 0;
      for (int p = 0; p < 4; ++p) {
        u_low[n] += f.geo.g[n][p] * uc[p];
        s_low[n] += f.geo.g[n][p] * sc[p];
      }
    }
    for (int m = 0; m < 4; ++m) {
      div_u += nab_u[m][m];
      div_s += nab_s[m][m];
    }
  }

  double nab_u_low(int m, int n) const {  // nabla_m u_n
    double r = 0;
    for (int p = 0; p < 4; ++p) r += fs.geo.g[n][p] * nab_u[m][p];
    return r;
  }
  double nab_s_low(int m, int n) const {
    double r = 0;
    for (int p = 0; p < 4; ++p) r += fs.geo.g[n][p] * nab_s[m][p];
    return r;
  }
};

}  // namespace detail

/// Z and Y of the compact polar Dirac equations, from exact derivatives.
inline ZYPair zy_vectors(const PolarField& field, const SpacetimeChart& chart, const RVec4& x,
                         const GammaBasis& g = gamma_basis()) {
  const FieldSample fs = sample_field(field, chart, x, g);
  detail::require_nonsingular(fs);
  const detail::PolarKinematics k(fs);
  const ChartFrame& f = fs.geo;

  ZYPair zy;
  for (int m = 0; m < 4; ++m) {
    // nabla_m ln phi^2 + u_m div u - s_m div s - u^n nabla_n u_m + s^n nabla_n s_m
    // + (u_m s^n - u^n s_m) (nabla_n u_i) s^i
    double z = 2 * fs.dphi[m] / fs.phi + k.u_low[m] * k.div_u - k.s_low[m] * k.div_s;
    for (int n = 0; n < 4; ++n) {
      z += -k.uc[n] * k.nab_u_low(n, m) + k.sc[n] * k.nab_s_low(n, m);
      double udots = 0;  // (nabla_n u_i) s^i
      for (int i = 0; i < 4; ++i) udots += k.nab_u_low(n, i) * k.sc[i];
      z += (k.u_low[m] * k.sc[n] - k.uc[n] * k.s_low[m]) * udots;
    }
    zy.Z[m] = 0.5 * z;

    // nabla_m beta - eps_{m a n b} u^a nabla^n u^b + eps_{m b n a} s^b nabla^n s^a
    // + eps_{m a b n} u^a s^b (nabla^n u_i) s^i
    double y = fs.dbeta[m];
    RVec4 w{};  // w^n = (nabla^n u_i) s^i
    for (int n = 0; n < 4; ++n)
      for (int p = 0; p < 4; ++p)
        for (int i = 0; i < 4; ++i) w[n] += f.ginv[n][p] * k.nab_u_low(p, i) * k.sc[i];
    for (int a = 0; a < 4; ++a)
      for (int n = 0; n < 4; ++n)
        for (int b = 0; b < 4; ++b) {
          if (!levi_civita(m, a, n, b)) continue;
          double nun = 0, nsn = 0;  // nabla^n u^b, nabla^n s^b
          for (int p = 0; p < 4; ++p) {
            nun += f.ginv[n][p] * k.nab_u[p][b];
            nsn += f.ginv[n][p] * k.nab_s[p][b];
          }
          y += -f.eps_low(m, a, n, b) * k.uc[a] * nun;
          y += f.eps_low(m, a, n, b) * k.sc[a] * nsn;  // eps_{m b' n a'} s^{b'} nab^n s^{a'}
          y += f.eps_low(m, a, b, n) * k.uc[a] * k.sc[b] * w[n];
        }
    zy.Y[m] = 0.5 * y;
  }
  return zy;
}

/// Residual 4-vectors of the polar Dirac equations, in both the raw and the
/// compact form, and their mutual agreement.
struct DiracResiduals {
  RVec4 sm{};  // compact module equation
  RVec4 ca{};  // compact chiral-angle equation
  RVec4 d1{};  // raw module equation
  RVec4 d2{};  // raw chiral-angle equation
  double agreement = 0;  // max |d1 - 2 sm|, |d2 - 2 ca|

  double max_compact() const { return std::max(max_abs(sm), max_abs(ca)); }
};

inline DiracResiduals dirac_residuals(const PolarField& field, const SpacetimeChart& chart,
                                      const DynamicsContext& ctx, const RVec4& x,
                                      const GammaBasis& g = gamma_basis()) {
  const FieldSample fs = sample_field(field, chart, x, g);
  detail::require_nonsingular(fs);
  const detail::PolarKinematics k(fs);
  const ChartFrame& f = fs.geo;
  const ZYPair zy = zy_vectors(field, chart, x, g);
  const double m = ctx.mass;

  RVec4 P_up{}, V_up{}, PV_up{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      P_up[a] += f.ginv[a][b] * fs.P[b];
      V_up[a] += f.ginv[a][b] * fs.V[b];
    }
  for (int a = 0; a < 4; ++a) PV_up[a] = P_up[a] - V_up[a];

  // F with coordinate indices.
  double Fc[4][4][4];  // F_{mu nu rho}
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      for (int r = 0; r < 4; ++r) {
        Fc[mu][nu][r] = 0;
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b)
            Fc[mu][nu][r] += f.e[a][mu] * f.e[b][nu] * fs.F_low(a, b, r);
      }

  DiracResiduals res;
  for (int mu = 0; mu < 4; ++mu) {
    double sm = zy.Z[mu] + m * k.s_low[mu] * std::sin(fs.beta);
    double d1 = 2 * fs.dphi[mu] / fs.phi + 2 * m * k.s_low[mu] * std::sin(fs.beta);
    for (int r = 0; r < 4; ++r)
      for (int n = 0; n < 4; ++n) {
        for (int a = 0; a < 4; ++a) {
          sm -= PV_up[r] * k.uc[n] * k.sc[a] * f.eps_low(mu, r, n, a);
          d1 -= 2 * P_up[r] * k.uc[n] * k.sc[a] * f.eps_low(mu, r, n, a);
        }
        d1 += f.ginv[n][r] * Fc[mu][n][r];
      }
    res.sm[mu] = sm;
    res.d1[mu] = d1;

    double ca = zy.Y[mu] + m * k.s_low[mu] * std::cos(fs.beta);
    double d2 = fs.dbeta[mu] + 2 * m * k.s_low[mu] * std::cos(fs.beta);
    for (int n = 0; n < 4; ++n) {
      ca -= PV_up[n] * (k.u_low[n] * k.s_low[mu] - k.u_low[mu] * k.s_low[n]);
      d2 -= 2 * P_up[n] * (k.u_low[n] * k.s_low[mu] - k.u_low[mu] * k.s_low[n]);
    }
    // 1/2 eps_{mu a n i} F^{a n i}
    for (int a = 0; a < 4; ++a)
      for (int n = 0; n < 4; ++n)
        for (int i = 0; i < 4; ++i) {
          if (!levi_civita(mu, a, n, i)) continue;
          double Fup = 0;
          for (int p = 0; p < 4; ++p)
            for (int q2 = 0; q2 < 4; ++q2)
              for (int r = 0; r < 4; ++r)
                Fup += f.ginv[a][p] * f.ginv[n][q2] * f.ginv[i][r] * Fc[p][q2][r];
          d2 += 0.5 * f.eps_low(mu, a, n, i) * Fup;
        }
    res.ca[mu] = ca;
    res.d2[mu] = d2;
  }
  for (int mu = 0; mu < 4; ++mu) {
    res.agreement = std::max(res.agreement, std::abs(res.d1[mu] - 2 * res.sm[mu]));
    res.agreement = std::max(res.agreement, std::abs(res.d2[mu] - 2 * res.ca[mu]));
  }
  return res;
}

/// The generalized momentum m cos(beta) u + Y-type and Z-type spin terms;
/// equals P - V (index up) whenever the field solves the Dirac equations.
inline RVec4 momentum(const PolarField& field, const SpacetimeChart& chart,
                      const DynamicsContext& ctx, const RVec4& x,
                      const GammaBasis& g = gamma_basis()) {
  const FieldSample fs = sample_field(field, chart, x, g);
  detail::require_nonsingular(fs);
  const detail::PolarKinematics k(fs);
  const ChartFrame& f = fs.geo;
  const ZYPair zy = zy_vectors(field, chart, x, g);

  RVec4 out{};
  for (int h = 0; h < 4; ++h) {
    out[h] = ctx.mass * std::cos(fs.beta) * k.uc[h];
    for (int m = 0; m < 4; ++m) {
      // Y_mu u^[mu s^h] with Y lower, u and s up.
      out[h] += zy.Y[m] * (k.uc[m] * k.sc[h] - k.uc[h] * k.sc[m]);
      // Z_mu u_pi s_tau eps^{mu pi tau h}.
      for (int p = 0; p < 4; ++p)
        for (int t = 0; t < 4; ++t)
          out[h] += zy.Z[m] * k.u_low[p] * k.s_low[t] * f.eps_up(m, p, t, h);
    }
  }
  return out;
}

/// Energy tensor in polar form, frame (Latin) indices both up. Cross-checked
/// in the tests against the spinorial definition with exact derivatives.
inline Mat4 energy_tensor(const PolarField& field, const SpacetimeChart& chart, const RVec4& x,
                          const GammaBasis& g = gamma_basis()) {
  const FieldSample fs = sample_field(field, chart, x, g);
  const detail::PolarKinematics k(fs);
  const ChartFrame& f = fs.geo;
  const double phi2 = fs.phi * fs.phi;

  RVec4 PV_up{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) PV_up[a] += f.ginv[a][b] * (fs.P[b] - fs.V[b]);

  Mat4 T;  // coordinate first, then convert
  for (int r = 0; r < 4; ++r)
    for (int s = 0; s < 4; ++s) {
      double dbeta_r = 0, dbeta_s = 0;
      for (int p = 0; p < 4; ++p) {
        dbeta_r += f.ginv[r][p] * fs.dbeta[p];
        dbeta_s += f.ginv[s][p] * fs.dbeta[p];
      }
      double v = PV_up[r] * k.uc[s] + PV_up[s] * k.uc[r] + 0.5 * k.sc[s] * dbeta_r +
                 0.5 * k.sc[r] * dbeta_s;
      for (int n = 0; n < 4; ++n)
        for (int kp = 0; kp < 4; ++kp)
          for (int al = 0; al < 4; ++al) {
            double nab_s_un = 0, nab_r_un = 0;  // nabla^s u_n
            for (int p = 0; p < 4; ++p) {
              nab_s_un += f.ginv[s][p] * k.nab_u_low(p, n);
              nab_r_un += f.ginv[r][p] * k.nab_u_low(p, n);
            }
            v += -0.5 * k.s_low[kp] * k.u_low[al] * nab_s_un * f.eps_up(r, n, kp, al) -
                 0.5 * k.s_low[kp] * k.u_low[al] * nab_r_un * f.eps_up(s, n, kp, al);
          }
      T(r, s) = phi2 * v;
    }
  Mat4 Tlat;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double v = 0;
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) v += f.e[a][r] * f.e[b][s] * T(r, s);
      Tlat(a, b) = v;
    }
  return Tlat;
}

/// Energy tensor from the spinorial definition, frame indices both up,
/// evaluated with the exact spinor derivatives (used as the cross-check).
inline Mat4 energy_tensor_spinorial(const PolarField& field, const SpacetimeChart& chart,
                                    const RVec4& x, const GammaBasis& g = gamma_basis()) {
  const FieldSample fs = sample_field(field, chart, x, g);
  const ChartFrame& f = fs.geo;
  CVec4 nab[4];
  for (int m = 0; m < 4; ++m) nab[m] = fs.nabla_psi(m, g);
  const CVec4 psibar = detail::bar_vec(fs.psi.c, g);

  Mat4 T;
  for (int r = 0; r < 4; ++r)
    for (int s = 0; s < 4; ++s) {
      Mat4c gup_r, gup_s;
      for (int a = 0; a < 4; ++a) {
        gup_r += cplx(f.einv[a][r]) * g.gamma[a];
        gup_s += cplx(f.einv[a][s]) * g.gamma[a];
      }
      CVec4 nab_up_r{}, nab_up_s{};
      for (int p = 0; p < 4; ++p) {
        nab_up_r = nab_up_r + cplx(f.ginv[r][p]) * nab[p];
        nab_up_s = nab_up_s + cplx(f.ginv[s][p]) * nab[p];
      }
      const CVec4 bar_r = detail::bar_vec(nab_up_r, g);
      const CVec4 bar_s = detail::bar_vec(nab_up_s, g);
      cplx v = detail::row_mat_col(psibar, gup_r, nab_up_s) -
               detail::row_mat_col(bar_s, gup_r, fs.psi.c) +
               detail::row_mat_col(psibar, gup_s, nab_up_r) -
               detail::row_mat_col(bar_r, gup_s, fs.psi.c);
      T(r, s) = (cplx(0, 0.25) * v).real();
    }
  Mat4 Tlat;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double v = 0;
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) v += f.e[a][r] * f.e[b][s] * T(r, s);
      Tlat(a, b) = v;
    }
  return Tlat;
}

/// nabla_i S^i - 4 m phi^2 sin beta, which vanishes for Dirac-solving fields.
inline double spin_divergence_residual(const PolarField& field, const SpacetimeChart& chart,
                                       const DynamicsContext& ctx, const RVec4& x,
                                       const GammaBasis& g = gamma_basis()) {
  const FieldSample fs = sample_field(field, chart, x, g);
  const ChartFrame& f = fs.geo;
  double div = 0;
  for (int m = 0; m < 4; ++m)
    for (int a = 0; a < 4; ++a)
      div += f.einv[a][m] * (4 * fs.phi * fs.dphi[m] * fs.s[a] +
                             2 * fs.phi * fs.phi * fs.nabla_s(m, a));
  return div - 4 * ctx.mass * fs.phi * fs.phi * std::sin(fs.beta);
}

}  // namespace diracpolar
