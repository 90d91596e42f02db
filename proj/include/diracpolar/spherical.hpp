#pragma once

#include <limits>
#include <string>
#include <vector>

#include "diracpolar/lie.hpp"

namespace diracpolar {

/// Stationary spherically symmetric scenario: the metric functions A, B, C,
/// eta and the weakly-invariant ansatz functions alpha, phi, beta, all
/// functions of the radial coordinate, plus the sample points.
struct SphericalScenario {
  FieldExpr A = FieldExpr(0.0);
  FieldExpr B = FieldExpr(0.0);
  FieldExpr C = log(FieldExpr::symbol("r"));
  FieldExpr eta = FieldExpr(0.0);
  FieldExpr alpha = FieldExpr(0.0);
  FieldExpr phi = FieldExpr(1.0);
  FieldExpr beta = FieldExpr(0.0);
  std::vector<RVec4> samples;
  std::map<std::string, double> params;
  FieldExpr tetrad_rotation = FieldExpr(0.0);  // optional chi(theta) rotating legs 1,2

  SpacetimeChart chart() const {
    double rot_const = 0;
    const bool rotated = !(tetrad_rotation.is_constant(&rot_const) && rot_const == 0);
    if (!rotated) {
      auto c = stationary_spherical_chart(A, B, C, eta, params);
      return c;
    }
    const FieldExpr theta = FieldExpr::symbol("theta");
    const FieldExpr chi = tetrad_rotation;
    std::array<std::array<FieldExpr, 4>, 4> e{};
    e[0][0] = exp(A);
    e[0][1] = exp(B) * sinh(eta);
    e[1][1] = cos(chi) * exp(B) * cosh(eta);
    e[1][2] = sin(chi) * exp(C);
    e[2][1] = FieldExpr(0.0) - sin(chi) * exp(B) * cosh(eta);
    e[2][2] = cos(chi) * exp(C);
    e[3][3] = exp(C) * sin(theta);
    return SpacetimeChart::from_tetrad({"t", "r", "theta", "phi"}, e, params,
                                       {"r > 0", "theta > 0", "theta < pi"});
  }

  void validate() const {
    if (samples.empty()) throw InvalidScenario("spherical scenario has no sample points");
    const auto ch = chart();
    for (const auto& x : samples)
      if (!ch.in_domain(x))
        throw InvalidScenario("spherical scenario sample point violates the domain guard");
  }
};

/// The four Killing fields of stationary spherical symmetry, in spherical
/// coordinates (t, r, theta, phi).
inline std::array<KillingField, 4> spherical_killing_fields() {
  auto P = [](const char* s) { return parse_field_expr(s); };
  const FieldExpr zero(0.0), one(1.0);
  return {KillingField{"xi0", {one, zero, zero, zero}},
          KillingField{"xi1", {zero, zero, -P("cos(phi)"), P("sin(phi)*cot(theta)")}},
          KillingField{"xi2", {zero, zero, P("sin(phi)"), P("cos(phi)*cot(theta)")}},
          KillingField{"xi3", {zero, zero, zero, one}}};
}

/// Closed-form lower coordinate components of the ansatz velocity and spin.
struct AnsatzComponents {
  FieldExpr u_t, u_r, s_t, s_r;
};

inline AnsatzComponents ansatz_components(const SphericalScenario& scn) {
  const FieldExpr w = scn.alpha + scn.eta;
  return AnsatzComponents{exp(scn.A) * cosh(w), FieldExpr(0.0) - exp(scn.B) * sinh(scn.alpha),
                          exp(scn.A) * sinh(w), FieldExpr(0.0) - exp(scn.B) * cosh(scn.alpha)};
}

/// The weakly-invariant polar field of the scenario: a radial boost with
/// rapidity alpha + eta composed with the constant rotation that carries the
/// third frame axis onto the radial one.
inline PolarField ansatz_field(const SphericalScenario& scn) {
  scn.validate();
  PolarField f;
  f.phi = scn.phi;
  f.beta = scn.beta;
  f.rapidities[0] = scn.alpha + scn.eta;
  f.angles[1] = FieldExpr(M_PI / 2);
  return f;
}

/// Pullback of a covector under the parity map theta -> pi - theta; axial
/// vectors pick up the sign of the Jacobian determinant.
inline RVec4 parity_transform_covector(const RVec4& v_low, bool axial) {
  RVec4 out = v_low;
  out[2] = -out[2];
  if (axial)
    for (auto& c : out) c = -c;
  return out;
}

/// One parity constraint: a quantity that must vanish for spherical symmetry
/// to survive the theta -> pi - theta reflection.
struct ParityConstraint {
  std::string quantity;
  std::string expression;
  bool satisfiable;
  std::string note;
};

struct ParityReport {
  std::vector<ParityConstraint> constraints;
  bool angular_components_zero = true;
};

/// Lists the parity-odd quantities of the ansatz that spherical symmetry
/// forces to vanish: s_t, s_r and beta. The spin-norm constraint makes the
/// s_r equation unsatisfiable.
inline ParityReport parity_constraints(const SphericalScenario& scn) {
  const auto ac = ansatz_components(scn);
  ParityReport rep;
  double beta_const = 0;
  const bool beta_zero = scn.beta.is_constant(&beta_const) && beta_const == 0;
  rep.constraints.push_back(
      {"s_t", ac.s_t.str() + " = 0", true, "solved pointwise by alpha = -eta"});
  rep.constraints.push_back({"s_r", ac.s_r.str() + " = 0", false,
                             "cosh(alpha) >= 1 and exp(B) > 0: no solution"});
  rep.constraints.push_back({"beta", scn.beta.str() + " = 0", true,
                             beta_zero ? "already satisfied" : "forces the chiral angle to vanish"});
  return rep;
}

/// Machine-checkable no-go certificate: parity forces s = 0, the polar norm
/// forces s.s = -1, and the two are one apart - uniformly in A, B, C, eta.
struct NogoCertificate {
  ParityReport parity;
  std::vector<std::string> deduction;
  double discrepancy = 0;   // | s.s under the constraints - (-1) |
  double grid_min = 0;      // min over alpha of max(|s_t|, |s_r|) at the witness point
  double grid_argmin = 0;
  double lower_bound = 0;   // exp(B(r0)) <= |s_r| for every alpha
  RVec4 witness_point{};
  bool established = false;
};

inline NogoCertificate nogo_certificate(const SphericalScenario& scn) {
  scn.validate();
  const auto ch = scn.chart();
  const auto killings = spherical_killing_fields();

  // The scenario must be genuinely spherical: Killing fields hold and the
  // ansatz satisfies the norm constraints at every sample.
  const auto ac = ansatz_components(scn);
  for (const auto& x : scn.samples) {
    for (const auto& k : killings)
      if (ch.killing_residual(k, x) > 1e-8)
        throw InvalidScenario("killing residual too large: scenario is not spherical");
    const Env env = ch.env_at(x);
    const Mat4 gi = inverse(ch.metric(x));
    const RVec4 ul{ac.u_t.eval(env), ac.u_r.eval(env), 0, 0};
    const RVec4 sl{ac.s_t.eval(env), ac.s_r.eval(env), 0, 0};
    auto dot = [&](const RVec4& a, const RVec4& b) {
      double r = 0;
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) r += gi(m, n) * a[m] * b[n];
      return r;
    };
    if (std::abs(dot(ul, ul) - 1) > 1e-10 || std::abs(dot(sl, sl) + 1) > 1e-10 ||
        std::abs(dot(ul, sl)) > 1e-10)
      throw InvalidScenario("ansatz norm constraints fail at a sample point");
  }

  NogoCertificate cert;
  cert.parity = parity_constraints(scn);
  cert.witness_point = scn.samples.front();

  // Grid witness at the first sample radius: no alpha brings both parity-odd
  // spin components to zero; |s_r| = exp(B) cosh(alpha) >= exp(B).
  const Env env0 = ch.env_at(cert.witness_point);
  const double Av = scn.A.eval(env0), Bv = scn.B.eval(env0), hv = scn.eta.eval(env0);
  cert.lower_bound = std::exp(Bv);
  cert.grid_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 2000; ++i) {
    const double a = -5.0 + 10.0 * i / 2000.0;
    const double st = std::exp(Av) * std::sinh(a + hv);
    const double sr = std::exp(Bv) * std::cosh(a);
    const double v = std::max(std::abs(st), std::abs(sr));
    if (v < cert.grid_min) {
      cert.grid_min = v;
      cert.grid_argmin = a;
    }
  }

  // The deduction chain and the scalar discrepancy.
  const double s_norm_constrained = 0.0;  // s_t = s_r = 0 and no angular parts
  const double s_norm_required = -1.0;
  cert.discrepancy = std::abs(s_norm_constrained - s_norm_required);
  cert.deduction = {
      "parity (theta -> pi - theta) flips s_t, s_r and beta; spherical symmetry "
      "requires them unchanged, so s_t = s_r = beta = 0",
      "angular spin components already vanish for the weakly invariant ansatz",
      "hence s_nu = 0 identically and s.s = 0",
      "the polar norm constraint demands s.s = -1",
      "|0 - (-1)| = 1: weak Lie-invariance is impossible",
  };
  cert.established = cert.discrepancy == 1.0 && !cert.parity.constraints[1].satisfiable &&
                     cert.grid_min >= cert.lower_bound - 1e-12;
  return cert;
}

}  // namespace diracpolar
