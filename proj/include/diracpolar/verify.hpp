#pragma once

#include <optional>

#include "diracpolar/polar_form.hpp"
#include "diracpolar/scenario.hpp"

namespace diracpolar {

namespace detail {

inline ojson point_json(const RVec4& x) {
  return ojson::array({x[0], x[1], x[2], x[3]});
}

}  // namespace detail

/// Runs the identity suites (Clifford algebra, Fierz interdependencies,
/// polar round-trip, transport, curvature) on a scenario and returns the
/// machine-readable report. `pass` is true iff every residual is below its
/// tolerance; a --tolerance override replaces every per-check tolerance.
inline ojson run_verify(const Scenario& s, std::optional<double> tol_override = {}) {
  ojson checks = ojson::array();
  bool all_pass = true;
  auto push = [&](const std::string& name, double residual, double tol) {
    const bool ok = residual < tol;
    all_pass = all_pass && ok;
    checks.push_back(
        ojson{{"name", name}, {"residual", residual}, {"tolerance", tol}, {"pass", ok}});
  };
  auto tol = [&](double dflt) { return tol_override ? *tol_override : dflt; };

  push("clifford-identities", check_algebra_identities(gamma_basis()).max(), tol(1e-14));

  std::mt19937_64 rng(s.seed);
  double fierz = 0, aux = 0, roundtrip = 0;
  int done = 0;
  while (done < s.random_spinors) {
    const Spinor psi = random_spinor(rng);
    const Bilinears b = bilinears(psi);
    fierz = std::max(fierz, fierz_residuals(b).max());
    aux = std::max(aux, aux_residual(psi));
    double n2 = 0;
    for (const auto& c : psi.c) n2 += std::norm(c);
    if (b.Theta * b.Theta + b.Phi * b.Phi > 1e-12 * n2 * n2) {
      const Spinor rec = polar_reconstruct(polar_decompose(psi));
      double diff = 0;
      for (int i = 0; i < 4; ++i) diff = std::max(diff, std::abs(rec.c[i] - psi.c[i]));
      roundtrip = std::max(roundtrip, diff);
    }
    ++done;
  }
  push("fierz-identities", fierz, tol(1e-10));
  push("aux-identity", aux, tol(1e-10));
  push("polar-roundtrip", roundtrip, tol(1e-10));

  bool flag_rejected = false;
  try {
    polar_decompose(Spinor{{cplx(1), cplx(0), cplx(0), cplx(0)}, {}});
  } catch (const SingularSpinor&) {
    flag_rejected = true;
  }
  push("flag-spinor-rejected", flag_rejected ? 0.0 : 1.0, 0.5);

  double transport = 0, riemann = 0, faraday = 0;
  for (const auto& x : s.samples) {
    transport = std::max(transport, transport_residuals(s.field, s.chart, x).max());
    const auto cr = curvature_residuals(s.field, s.chart, x);
    riemann = std::max(riemann, cr.riemann);
    faraday = std::max(faraday, cr.faraday);
  }
  push("transport-identities", transport, tol(s.tolerance));
  push("riemann-reconstruction", riemann, tol(std::max(s.tolerance, 1e-6)));
  push("faraday-identity", faraday, tol(1e-10));

  ojson rep;
  rep["schema_version"] = 1;
  rep["command"] = "verify";
  rep["chart"] = s.chart_name;
  rep["seed"] = s.seed;
  rep["random_spinors"] = s.random_spinors;
  if (tol_override) rep["tolerance_override"] = *tol_override;
  ojson pts = ojson::array();
  for (const auto& x : s.samples) pts.push_back(detail::point_json(x));
  rep["samples"] = pts;
  rep["checks"] = checks;
  rep["pass"] = all_pass;
  return rep;
}

/// Per-point Lie reports plus the equivalence summary along one Killing
/// field. `pass` gates the identities (the Lie-derivative decomposition and
/// the vanishing of the gamma Lie derivative along Killing flows).
inline ojson run_invariance(const Scenario& s, const KillingField& k) {
  ojson points = ojson::array();
  bool all_pass = true;
  for (const auto& x : s.samples) {
    const LieReport lr = lie_report(s.field, s.chart, k, x);
    const bool ok = lr.final_equation_residual < s.tolerance && lr.lie_gamma < 1e-10;
    all_pass = all_pass && ok;
    ojson pj;
    pj["point"] = detail::point_json(x);
    pj["strong_residual"] = lr.strong_residual;
    pj["weak_residuals"] = ojson{{"theta", lr.weak.theta},
                                 {"phi", lr.weak.phi},
                                 {"u", lr.weak.u},
                                 {"s", lr.weak.s},
                                 {"m", lr.weak.m}};
    pj["cond_residual"] = lr.cond_residual;
    pj["lie_gamma_residual"] = lr.lie_gamma;
    pj["lie_gamma_identity_residual"] = lr.lie_gamma_identity;
    pj["final_equation_residual"] = lr.final_equation_residual;
    pj["pass"] = ok;

    try {
      const auto eq = equivalence_check(s.field, s.chart, k, x, s.tolerance);
      pj["equivalence"] = ojson{{"bracket_norm", eq.bracket_norm},
                                {"cond", eq.cond},
                                {"ratio", eq.ratio},
                                {"proportionality_residual", eq.proportionality}};
    } catch (const NotWeaklyInvariant&) {
      pj["equivalence"] = "skipped: field not weakly invariant at this point";
    }
    points.push_back(pj);
  }
  ojson rep;
  rep["schema_version"] = 1;
  rep["command"] = "invariance";
  rep["chart"] = s.chart_name;
  rep["killing"] = k.name;
  rep["tolerance"] = s.tolerance;
  rep["points"] = points;
  rep["pass"] = all_pass;
  return rep;
}

/// The spherical no-go certificate as a report.
inline ojson run_nogo(const SphericalScenario& scn) {
  const NogoCertificate cert = nogo_certificate(scn);
  ojson constraints = ojson::array();
  for (const auto& c : cert.parity.constraints)
    constraints.push_back(ojson{{"quantity", c.quantity},
                                {"equation", c.expression},
                                {"satisfiable", c.satisfiable},
                                {"note", c.note}});
  ojson deduction = ojson::array();
  for (const auto& d : cert.deduction) deduction.push_back(d);
  ojson rep;
  rep["schema_version"] = 1;
  rep["command"] = "nogo";
  rep["constraints"] = constraints;
  rep["deduction"] = deduction;
  rep["discrepancy"] = cert.discrepancy;
  rep["grid_witness"] = ojson{{"alpha_min", cert.grid_argmin},
                              {"min_value", cert.grid_min},
                              {"lower_bound", cert.lower_bound},
                              {"point", detail::point_json(cert.witness_point)}};
  rep["established"] = cert.established;
  return rep;
}

}  // namespace diracpolar
