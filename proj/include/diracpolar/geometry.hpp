#pragma once

#include <map>
#include <string>
#include <vector>

#include "diracpolar/expr.hpp"
#include "diracpolar/linalg.hpp"

namespace diracpolar {

/// Killing vector field, contravariant coordinate components.
struct KillingField {
  std::string name;
  std::array<FieldExpr, 4> xi;
};

/// All pointwise geometry of a chart: tetrad, metric, Levi-Civita and spin
/// connections, curvature, and the exact first derivatives of each.
/// Index conventions: e[a][mu] = e^a_mu, einv[a][mu] = e_a^mu,
/// de[nu][a][mu] = d_nu e^a_mu, C[a][b][mu] = C^{ab}_mu (antisymmetric in ab),
/// R[a][b][mu][nu] = R^{ab}_{mu nu}, Gamma[s][m][n] = Gamma^s_{mn}.
struct ChartFrame {
  RVec4 x{};
  double e[4][4]{};
  double einv[4][4]{};
  double de[4][4][4]{};
  double d2e[4][4][4][4]{};  // d2e[nu][rho][a][mu]
  double dete = 0;
  double g[4][4]{};
  double ginv[4][4]{};
  double dg[4][4][4]{};      // dg[nu][m][r]
  double d2g[4][4][4][4]{};  // d2g[nu][rho][m][r]
  double Gamma[4][4][4]{};
  double dGamma[4][4][4][4]{};  // dGamma[l][s][m][n] = d_l Gamma^s_{mn}
  double C[4][4][4]{};
  double dC[4][4][4][4]{};  // dC[l][a][b][mu]
  double R[4][4][4][4]{};

  /// Coordinate-basis Levi-Civita tensor (lower indices).
  double eps_low(int m, int n, int r, int s) const {
    return dete * levi_civita(m, n, r, s);
  }
  double eps_up(int m, int n, int r, int s) const {
    return levi_civita_upper(m, n, r, s) / dete;
  }
};

namespace detail {

struct DomainGuard {
  FieldExpr lhs, rhs;
  enum Op { lt, le, gt, ge } op;
  std::string text;

  bool ok(const Env& env) const {
    const double a = lhs.eval(env);
    const double b = rhs.eval(env);
    switch (op) {
      case lt: return a < b;
      case le: return a <= b;
      case gt: return a > b;
      case ge: return a >= b;
    }
    return false;
  }
};

inline DomainGuard parse_guard(const std::string& text) {
  for (const auto& [tok, op] : {std::pair<const char*, DomainGuard::Op>{"<=", DomainGuard::le},
                                {">=", DomainGuard::ge},
                                {"<", DomainGuard::lt},
                                {">", DomainGuard::gt}}) {
    const auto pos = text.find(tok);
    if (pos == std::string::npos) continue;
    return DomainGuard{parse_field_expr(text.substr(0, pos)),
                       parse_field_expr(text.substr(pos + std::string(tok).size())), op, text};
  }
  throw InvalidScenario("domain guard '" + text + "' has no comparison operator");
}

}  // namespace detail

/// Coordinate chart described by a tetrad field e^a_mu; the metric is derived
/// as g = eta_{ab} e^a e^b. All derivatives used downstream are exact
/// symbolic derivatives of the tetrad expressions.
class SpacetimeChart {
 public:
  SpacetimeChart() = default;

  static SpacetimeChart from_tetrad(std::array<std::string, 4> coords,
                                    std::array<std::array<FieldExpr, 4>, 4> tetrad,
                                    std::map<std::string, double> params = {},
                                    std::vector<std::string> domain = {}) {
    SpacetimeChart c;
    c.coords_ = std::move(coords);
    c.params_ = std::move(params);
    c.e_ = std::move(tetrad);
    for (const auto& d : domain) c.guards_.push_back(detail::parse_guard(d));
    c.domain_text_ = std::move(domain);
    for (int a = 0; a < 4; ++a)
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
          c.de_[nu][a][mu] = c.e_[a][mu].diff(c.coords_[nu]);
          for (int rho = 0; rho < 4; ++rho)
            c.d2e_[nu][rho][a][mu] = c.de_[nu][a][mu].diff(c.coords_[rho]);
        }
    return c;
  }

  static SpacetimeChart preset(const std::string& name);

  const std::array<std::string, 4>& coords() const { return coords_; }
  const std::map<std::string, double>& params() const { return params_; }
  const std::vector<std::string>& domain_text() const { return domain_text_; }

  Env env_at(const RVec4& x) const { return Env{&coords_, x, &params_}; }

  bool in_domain(const RVec4& x) const {
    const Env env = env_at(x);
    for (const auto& gd : guards_)
      if (!gd.ok(env)) return false;
    return true;
  }

  void require_domain(const RVec4& x) const {
    const Env env = env_at(x);
    for (const auto& gd : guards_)
      if (!gd.ok(env))
        throw OutOfDomain("point violates domain guard '" + gd.text + "'");
  }

  ChartFrame frame(const RVec4& x) const {
    require_domain(x);
    ChartFrame f;
    f.x = x;
    const Env env = env_at(x);

    for (int a = 0; a < 4; ++a)
      for (int mu = 0; mu < 4; ++mu) {
        f.e[a][mu] = e_[a][mu].eval(env);
        for (int nu = 0; nu < 4; ++nu) {
          f.de[nu][a][mu] = de_[nu][a][mu].eval(env);
          for (int rho = 0; rho < 4; ++rho)
            f.d2e[nu][rho][a][mu] = d2e_[nu][rho][a][mu].eval(env);
        }
      }

    Mat4 em;
    for (int a = 0; a < 4; ++a)
      for (int mu = 0; mu < 4; ++mu) em(a, mu) = f.e[a][mu];
    f.dete = determinant(em);
    double esc = std::max(1.0, em.max_abs());
    if (std::abs(f.dete) <= 1e-12 * esc * esc * esc * esc)
      throw DegenerateTetrad("tetrad determinant vanishes at the evaluation point");
    const Mat4 ei = inverse(em);  // ei(mu, a) = e_a^mu
    for (int a = 0; a < 4; ++a)
      for (int mu = 0; mu < 4; ++mu) f.einv[a][mu] = ei(mu, a);

    // Metric and its exact derivatives from the tetrad.
    for (int m = 0; m < 4; ++m)
      for (int r = 0; r < 4; ++r) {
        for (int a = 0; a < 4; ++a) f.g[m][r] += eta(a) * f.e[a][m] * f.e[a][r];
        for (int nu = 0; nu < 4; ++nu) {
          for (int a = 0; a < 4; ++a)
            f.dg[nu][m][r] +=
                eta(a) * (f.de[nu][a][m] * f.e[a][r] + f.e[a][m] * f.de[nu][a][r]);
          for (int rho = 0; rho < 4; ++rho)
            for (int a = 0; a < 4; ++a)
              f.d2g[nu][rho][m][r] +=
                  eta(a) * (f.d2e[nu][rho][a][m] * f.e[a][r] + f.de[nu][a][m] * f.de[rho][a][r] +
                            f.de[rho][a][m] * f.de[nu][a][r] + f.e[a][m] * f.d2e[nu][rho][a][r]);
        }
      }
    Mat4 gm;
    for (int m = 0; m < 4; ++m)
      for (int r = 0; r < 4; ++r) gm(m, r) = f.g[m][r];
    const Mat4 gi = inverse(gm);
    for (int m = 0; m < 4; ++m)
      for (int r = 0; r < 4; ++r) f.ginv[m][r] = gi(m, r);

    // Levi-Civita connection and its derivative.
    for (int s = 0; s < 4; ++s)
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
          for (int r = 0; r < 4; ++r)
            f.Gamma[s][m][n] +=
                0.5 * f.ginv[s][r] * (f.dg[m][r][n] + f.dg[n][r][m] - f.dg[r][m][n]);

    double dginv[4][4][4];  // dginv[l][s][r] = d_l g^{sr}
    for (int l = 0; l < 4; ++l)
      for (int s = 0; s < 4; ++s)
        for (int r = 0; r < 4; ++r) {
          dginv[l][s][r] = 0;
          for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
              dginv[l][s][r] -= f.ginv[s][a] * f.dg[l][a][b] * f.ginv[b][r];
        }
    for (int l = 0; l < 4; ++l)
      for (int s = 0; s < 4; ++s)
        for (int m = 0; m < 4; ++m)
          for (int n = 0; n < 4; ++n)
            for (int r = 0; r < 4; ++r)
              f.dGamma[l][s][m][n] +=
                  0.5 * dginv[l][s][r] * (f.dg[m][r][n] + f.dg[n][r][m] - f.dg[r][m][n]) +
                  0.5 * f.ginv[s][r] *
                      (f.d2g[l][m][r][n] + f.d2g[l][n][r][m] - f.d2g[l][r][m][n]);

    // Spin connection from the tetrad postulate, C^a_{b mu} e^b_nu =
    // Gamma^s_{mu nu} e^a_s - d_mu e^a_nu, then raised to C^{ab}_mu.
    double dei[4][4][4];  // dei[l][a][mu] = d_l e_a^mu
    for (int l = 0; l < 4; ++l)
      for (int a = 0; a < 4; ++a)
        for (int mu = 0; mu < 4; ++mu) {
          dei[l][a][mu] = 0;
          for (int b = 0; b < 4; ++b)
            for (int nu = 0; nu < 4; ++nu)
              dei[l][a][mu] -= f.einv[a][nu] * f.de[l][b][nu] * f.einv[b][mu];
        }
    double Cmix[4][4][4];   // C^a_{b mu}
    double dCmix[4][4][4][4];
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int mu = 0; mu < 4; ++mu) {
          Cmix[a][b][mu] = 0;
          for (int nu = 0; nu < 4; ++nu) {
            double t = -f.de[mu][a][nu];
            for (int s = 0; s < 4; ++s) t += f.Gamma[s][mu][nu] * f.e[a][s];
            Cmix[a][b][mu] += t * f.einv[b][nu];
          }
          for (int l = 0; l < 4; ++l) {
            double acc = 0;
            for (int nu = 0; nu < 4; ++nu) {
              double t = -f.de[mu][a][nu];
              double dt = -f.d2e[l][mu][a][nu];
              for (int s = 0; s < 4; ++s) {
                t += f.Gamma[s][mu][nu] * f.e[a][s];
                dt += f.dGamma[l][s][mu][nu] * f.e[a][s] + f.Gamma[s][mu][nu] * f.de[l][a][s];
              }
              acc += dt * f.einv[b][nu] + t * dei[l][b][nu];
            }
            dCmix[l][a][b][mu] = acc;
          }
        }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int mu = 0; mu < 4; ++mu) {
          f.C[a][b][mu] = Cmix[a][b][mu] * eta(b);
          for (int l = 0; l < 4; ++l) f.dC[l][a][b][mu] = dCmix[l][a][b][mu] * eta(b);
        }

    // Curvature of the spin connection.
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int m = 0; m < 4; ++m)
          for (int n = 0; n < 4; ++n) {
            double r = f.dC[m][a][b][n] - f.dC[n][a][b][m];
            for (int c = 0; c < 4; ++c)
              r += eta(c) * (f.C[a][c][m] * f.C[c][b][n] - f.C[a][c][n] * f.C[c][b][m]);
            f.R[a][b][m][n] = r;
          }
    return f;
  }

  /// Metric alone (no derivatives) - cheap helper for sampling and oracles.
  Mat4 metric(const RVec4& x) const {
    require_domain(x);
    const Env env = env_at(x);
    Mat4 g;
    for (int a = 0; a < 4; ++a) {
      RVec4 row{};
      for (int mu = 0; mu < 4; ++mu) row[mu] = e_[a][mu].eval(env);
      for (int m = 0; m < 4; ++m)
        for (int r = 0; r < 4; ++r) g(m, r) += eta(a) * row[m] * row[r];
    }
    return g;
  }

  /// Lorentzian signature (+,-,-,-) via the signs of leading principal minors.
  bool signature_ok(const RVec4& x) const {
    const Mat4 g = metric(x);
    double minor_sign[4];
    for (int k = 1; k <= 4; ++k) {
      Mat4 sub;  // embed the k x k leading block into identity
      for (int i = 0; i < 4; ++i) sub(i, i) = 1;
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub(i, j) = g(i, j);
      minor_sign[k - 1] = determinant(sub);
    }
    return minor_sign[0] > 0 && minor_sign[1] < 0 && minor_sign[2] > 0 && minor_sign[3] < 0;
  }

  const std::array<std::array<FieldExpr, 4>, 4>& tetrad_exprs() const { return e_; }

  /// Max |nabla_m xi_n + nabla_n xi_m| at x.
  double killing_residual(const KillingField& k, const RVec4& x) const {
    return killing_residual_frame(k, frame(x));
  }

  double killing_residual_frame(const KillingField& k, const ChartFrame& f) const {
    const Env env = env_at(f.x);
    RVec4 xiu{};
    double dxiu[4][4];  // dxiu[m][n] = d_m xi^n
    for (int n = 0; n < 4; ++n) {
      xiu[n] = k.xi[n].eval(env);
      for (int m = 0; m < 4; ++m) dxiu[m][n] = k.xi[n].diff(coords_[m]).eval(env);
    }
    double res = 0;
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) {
        double dmn = 0, dnm = 0;
        for (int s = 0; s < 4; ++s) {
          dmn += f.dg[m][n][s] * xiu[s] + f.g[n][s] * dxiu[m][s];
          dnm += f.dg[n][m][s] * xiu[s] + f.g[m][s] * dxiu[n][s];
          for (int r = 0; r < 4; ++r) {
            dmn -= f.Gamma[s][m][n] * f.g[s][r] * xiu[r];
            dnm -= f.Gamma[s][n][m] * f.g[s][r] * xiu[r];
          }
        }
        res = std::max(res, std::abs(dmn + dnm));
      }
    return res;
  }

  /// |symbolic derivative - 4th order central difference|, maximized over
  /// coordinates; steps must stay inside the domain.
  double fd_crosscheck(const FieldExpr& expr, const RVec4& x) const {
    require_domain(x);
    double worst = 0;
    for (int m = 0; m < 4; ++m) {
      const double h = 1e-3 * std::max(1.0, std::abs(x[m]));
      RVec4 p = x;
      auto value = [&](double step) {
        p[m] = x[m] + step;
        require_domain(p);
        const Env env = env_at(p);
        return expr.eval(env);
      };
      const double fd = (-value(2 * h) + 8 * value(h) - 8 * value(-h) + value(-2 * h)) / (12 * h);
      const double sym = expr.diff(coords_[m]).eval(env_at(x));
      worst = std::max(worst, std::abs(sym - fd));
    }
    return worst;
  }

  /// Killing fields this chart knows by name.
  std::vector<KillingField> killing_fields() const;
  KillingField named_killing(const std::string& name) const {
    for (auto& k : killing_fields())
      if (k.name == name) return k;
    throw Error("unknown Killing field '" + name + "' for this chart");
  }

 private:
  std::array<std::string, 4> coords_{};
  std::map<std::string, double> params_;
  std::array<std::array<FieldExpr, 4>, 4> e_{};
  FieldExpr de_[4][4][4];
  FieldExpr d2e_[4][4][4][4];
  std::vector<detail::DomainGuard> guards_;
  std::vector<std::string> domain_text_;
};

/// Stationary spherically symmetric chart: A, B, C, eta functions of r.
/// Tetrad: e^0 = e^A dt + e^B sinh(eta) dr, e^1 = e^B cosh(eta) dr,
/// e^2 = e^C dtheta, e^3 = e^C sin(theta) dphi.
inline SpacetimeChart stationary_spherical_chart(const FieldExpr& A, const FieldExpr& B,
                                                 const FieldExpr& C, const FieldExpr& h,
                                                 std::map<std::string, double> params = {}) {
  const FieldExpr theta = FieldExpr::symbol("theta");
  std::array<std::array<FieldExpr, 4>, 4> e{};
  e[0][0] = exp(A);
  e[0][1] = exp(B) * sinh(h);
  e[1][1] = exp(B) * cosh(h);
  e[2][2] = exp(C);
  e[3][3] = exp(C) * sin(theta);
  return SpacetimeChart::from_tetrad({"t", "r", "theta", "phi"}, e, std::move(params),
                                     {"r > 0", "theta > 0", "theta < pi"});
}

inline SpacetimeChart SpacetimeChart::preset(const std::string& name) {
  auto S = [](const char* s) { return FieldExpr::symbol(s); };
  if (name == "flat-cartesian") {
    std::array<std::array<FieldExpr, 4>, 4> e{};
    for (int a = 0; a < 4; ++a) e[a][a] = FieldExpr(1.0);
    return from_tetrad({"t", "x", "y", "z"}, e);
  }
  if (name == "flat-spherical") {
    std::array<std::array<FieldExpr, 4>, 4> e{};
    e[0][0] = FieldExpr(1.0);
    e[1][1] = FieldExpr(1.0);
    e[2][2] = S("r");
    e[3][3] = S("r") * sin(S("theta"));
    return from_tetrad({"t", "r", "theta", "phi"}, e, {},
                       {"r > 0", "theta > 0", "theta < pi"});
  }
  if (name == "schwarzschild") {
    std::array<std::array<FieldExpr, 4>, 4> e{};
    const FieldExpr f = FieldExpr(1.0) - FieldExpr(2.0) * S("M") / S("r");
    e[0][0] = sqrt(f);
    e[1][1] = FieldExpr(1.0) / sqrt(f);
    e[2][2] = S("r");
    e[3][3] = S("r") * sin(S("theta"));
    return from_tetrad({"t", "r", "theta", "phi"}, e, {{"M", 1.0}},
                       {"r > 2*M", "theta > 0", "theta < pi"});
  }
  if (name == "stationary-spherical") {
    const FieldExpr r = S("r");
    return stationary_spherical_chart(
        S("a0") / (FieldExpr(1.0) + r), S("b0") / (FieldExpr(1.0) + r),
        log(r) + S("c0") / (FieldExpr(1.0) + r), S("h0") * r / (FieldExpr(1.0) + r * r),
        {{"a0", 0.2}, {"b0", -0.15}, {"c0", 0.1}, {"h0", 0.3}});
  }
  throw InvalidScenario("unknown chart preset '" + name + "'");
}

inline std::vector<KillingField> SpacetimeChart::killing_fields() const {
  auto P = [](const char* s) { return parse_field_expr(s); };
  const FieldExpr zero(0.0), one(1.0);
  std::vector<KillingField> out;
  if (coords_ == std::array<std::string, 4>{"t", "x", "y", "z"}) {
    out.push_back({"dt", {one, zero, zero, zero}});
    out.push_back({"dx", {zero, one, zero, zero}});
    out.push_back({"dy", {zero, zero, one, zero}});
    out.push_back({"dz", {zero, zero, zero, one}});
    out.push_back({"rot-x", {zero, zero, -P("z"), P("y")}});
    out.push_back({"rot-y", {zero, P("z"), zero, -P("x")}});
    out.push_back({"rot-z", {zero, -P("y"), P("x"), zero}});
    out.push_back({"boost-x", {P("x"), P("t"), zero, zero}});
    out.push_back({"boost-y", {P("y"), zero, P("t"), zero}});
    out.push_back({"boost-z", {P("z"), zero, zero, P("t")}});
  } else if (coords_ == std::array<std::string, 4>{"t", "r", "theta", "phi"}) {
    out.push_back({"xi0", {one, zero, zero, zero}});
    out.push_back({"xi1", {zero, zero, -P("cos(phi)"), P("sin(phi)*cot(theta)")}});
    out.push_back({"xi2", {zero, zero, P("sin(phi)"), P("cos(phi)*cot(theta)")}});
    out.push_back({"xi3", {zero, zero, zero, one}});
  }
  return out;
}

/// Torsion-free metric-compatible spin connection C^{ab}_mu at x.
inline std::array<std::array<RVec4, 4>, 4> spin_connection(const SpacetimeChart& chart,
                                                           const RVec4& x) {
  const ChartFrame f = chart.frame(x);
  std::array<std::array<RVec4, 4>, 4> out{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int mu = 0; mu < 4; ++mu) out[a][b][mu] = f.C[a][b][mu];
  return out;
}

/// Curvature R^{ab}_{mu nu} of the spin connection at x; riemann(...)[a][b][mu][nu].
inline std::array<std::array<std::array<RVec4, 4>, 4>, 4> riemann(const SpacetimeChart& chart,
                                                                  const RVec4& x) {
  const ChartFrame f = chart.frame(x);
  std::array<std::array<std::array<RVec4, 4>, 4>, 4> out{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) out[a][b][m][n] = f.R[a][b][m][n];
  return out;
}

}  // namespace diracpolar
