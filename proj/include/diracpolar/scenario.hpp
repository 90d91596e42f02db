#pragma once

#include <fstream>
#include <optional>
#include <string>

#include "diracpolar/dynamics.hpp"
#include "diracpolar/report.hpp"
#include "diracpolar/spherical.hpp"

namespace diracpolar {

/// A fully resolved verification scenario: chart, polar field, dynamics
/// context, Killing selection, sample points, tolerances and seed.
struct Scenario {
  int schema_version = 1;
  std::string chart_name = "flat-cartesian";
  SpacetimeChart chart;
  PolarField field;
  DynamicsContext dynamics;
  std::string killing_name;
  std::optional<KillingField> killing_custom;
  std::vector<RVec4> samples;
  double tolerance = 1e-8;
  std::uint64_t seed = 42;
  int random_spinors = 1000;
  std::optional<SphericalScenario> spherical;

  KillingField killing() const {
    if (killing_custom) return *killing_custom;
    if (killing_name.empty()) throw InvalidScenario("scenario selects no Killing field");
    return chart.named_killing(killing_name);
  }
};

namespace detail {

inline FieldExpr expr_of(const ojson& j, const std::string& what) {
  if (j.is_number()) return FieldExpr(j.get<double>());
  if (!j.is_string())
    throw InvalidScenario(what + " must be an expression string or a number");
  try {
    return parse_field_expr(j.get<std::string>());
  } catch (const ParseError& e) {
    throw InvalidScenario(what + ": " + e.what());
  }
}

inline std::vector<RVec4> points_of(const ojson& j, const std::string& what) {
  std::vector<RVec4> out;
  if (!j.is_array()) throw InvalidScenario(what + " must be an array of 4-point arrays");
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 4)
      throw InvalidScenario(what + " entries must have four coordinates");
    RVec4 x{};
    for (int i = 0; i < 4; ++i) x[i] = p[i].get<double>();
    out.push_back(x);
  }
  return out;
}

}  // namespace detail

/// Chart from a preset name or a {coords, tetrad, params, domain} object.
inline SpacetimeChart chart_from_json(const ojson& j) {
  if (j.is_string()) return SpacetimeChart::preset(j.get<std::string>());
  if (!j.is_object()) throw InvalidScenario("chart must be a preset name or an object");
  if (!j.contains("coords") || !j.contains("tetrad"))
    throw InvalidScenario("custom chart needs 'coords' and 'tetrad'");
  std::array<std::string, 4> coords;
  const auto& jc = j.at("coords");
  if (!jc.is_array() || jc.size() != 4)
    throw InvalidScenario("chart coords must be four names");
  for (int i = 0; i < 4; ++i) coords[i] = jc[i].get<std::string>();
  std::array<std::array<FieldExpr, 4>, 4> tetrad{};
  const auto& jt = j.at("tetrad");
  if (!jt.is_array() || jt.size() != 4)
    throw InvalidScenario("chart tetrad must be a 4x4 array of expressions");
  for (int a = 0; a < 4; ++a) {
    if (!jt[a].is_array() || jt[a].size() != 4)
      throw InvalidScenario("chart tetrad must be a 4x4 array of expressions");
    for (int mu = 0; mu < 4; ++mu)
      tetrad[a][mu] = detail::expr_of(jt[a][mu], "tetrad entry");
  }
  std::map<std::string, double> params;
  if (j.contains("params"))
    for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it)
      params[it.key()] = it.value().get<double>();
  std::vector<std::string> domain;
  if (j.contains("domain"))
    for (const auto& d : j.at("domain")) domain.push_back(d.get<std::string>());
  return SpacetimeChart::from_tetrad(coords, tetrad, std::move(params), std::move(domain));
}

/// Polar field from {phi, beta, zeta, L: {rapidities, angles}, A, q}.
inline PolarField field_from_json(const ojson& j) {
  PolarField f;
  if (j.contains("phi")) f.phi = detail::expr_of(j.at("phi"), "phi");
  if (j.contains("beta")) f.beta = detail::expr_of(j.at("beta"), "beta");
  if (j.contains("zeta")) f.zeta = detail::expr_of(j.at("zeta"), "zeta");
  if (j.contains("q")) f.q = j.at("q").get<double>();
  if (j.contains("L")) {
    const auto& L = j.at("L");
    if (L.contains("rapidities")) {
      const auto& r = L.at("rapidities");
      if (!r.is_array() || r.size() != 3)
        throw InvalidScenario("L.rapidities must be three expressions");
      for (int i = 0; i < 3; ++i) f.rapidities[i] = detail::expr_of(r[i], "rapidity");
    }
    if (L.contains("angles")) {
      const auto& a = L.at("angles");
      if (!a.is_array() || a.size() != 3)
        throw InvalidScenario("L.angles must be three expressions");
      for (int i = 0; i < 3; ++i) f.angles[i] = detail::expr_of(a[i], "angle");
    }
  }
  if (j.contains("A")) {
    const auto& a = j.at("A");
    if (!a.is_array() || a.size() != 4)
      throw InvalidScenario("A must be four expressions");
    for (int i = 0; i < 4; ++i) f.A[i] = detail::expr_of(a[i], "gauge potential");
  }
  return f;
}

/// Spherical no-go scenario from {A, B, C, eta, alpha, phi, beta, samples}.
inline SphericalScenario spherical_from_json(const ojson& j) {
  SphericalScenario scn;
  if (!j.contains("A") || !j.contains("B") || !j.contains("C") || !j.contains("samples"))
    throw InvalidScenario("spherical scenario needs A, B, C and samples");
  scn.A = detail::expr_of(j.at("A"), "A");
  scn.B = detail::expr_of(j.at("B"), "B");
  scn.C = detail::expr_of(j.at("C"), "C");
  scn.eta = j.contains("eta") ? detail::expr_of(j.at("eta"), "eta") : FieldExpr(0.0);
  scn.alpha = j.contains("alpha") ? detail::expr_of(j.at("alpha"), "alpha") : FieldExpr(0.0);
  scn.phi = j.contains("phi") ? detail::expr_of(j.at("phi"), "phi") : FieldExpr(1.0);
  scn.beta = j.contains("beta") ? detail::expr_of(j.at("beta"), "beta") : FieldExpr(0.0);
  if (j.contains("tetrad_rotation"))
    scn.tetrad_rotation = detail::expr_of(j.at("tetrad_rotation"), "tetrad_rotation");
  scn.samples = detail::points_of(j.at("samples"), "samples");
  return scn;
}

inline Scenario scenario_from_json(const ojson& j) {
  Scenario s;
  if (j.contains("schema_version")) s.schema_version = j.at("schema_version").get<int>();
  if (s.schema_version != 1) throw InvalidScenario("unsupported schema_version");

  // A file with the metric functions is a spherical no-go scenario.
  if (j.contains("A") && j.contains("B") && j.contains("C")) {
    s.spherical = spherical_from_json(j);
    s.chart_name = "stationary-spherical (scenario)";
    s.chart = s.spherical->chart();
    s.field = ansatz_field(*s.spherical);
    s.samples = s.spherical->samples;
    s.killing_name = "xi0";
    return s;
  }

  if (!j.contains("chart")) throw InvalidScenario("scenario needs a chart");
  s.chart = chart_from_json(j.at("chart"));
  s.chart_name = j.at("chart").is_string() ? j.at("chart").get<std::string>() : "custom";
  if (j.contains("field")) s.field = field_from_json(j.at("field"));
  if (j.contains("dynamics")) {
    const auto& d = j.at("dynamics");
    if (d.contains("mass")) s.dynamics.mass = d.at("mass").get<double>();
    if (d.contains("charge")) s.dynamics.charge = d.at("charge").get<double>();
  }
  if (j.contains("killing")) {
    const auto& k = j.at("killing");
    if (k.is_string()) {
      s.killing_name = k.get<std::string>();
    } else if (k.is_array() && k.size() == 4) {
      KillingField kf;
      kf.name = "custom";
      for (int i = 0; i < 4; ++i) kf.xi[i] = detail::expr_of(k[i], "killing component");
      s.killing_custom = kf;
    } else {
      throw InvalidScenario("killing must be a name or four expressions");
    }
  }
  if (j.contains("samples")) s.samples = detail::points_of(j.at("samples"), "samples");
  if (s.samples.empty()) throw InvalidScenario("scenario needs at least one sample point");
  if (j.contains("tolerance")) s.tolerance = j.at("tolerance").get<double>();
  if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("random_spinors")) s.random_spinors = j.at("random_spinors").get<int>();
  return s;
}

/// Built-in scenario presets usable wherever a scenario path is expected.
inline ojson scenario_preset_json(const std::string& name) {
  if (name == "flat-plane-wave") {
    return ojson{
        {"schema_version", 1},
        {"chart", "flat-cartesian"},
        {"field",
         ojson{{"phi", "1"},
               {"beta", "0"},
               {"zeta", "t"},
               {"q", 1.0},
               {"L", ojson{{"rapidities", {"0", "0", "0"}}, {"angles", {"0", "0", "0"}}}},
               {"A", {"0", "0", "0", "0"}}}},
        {"dynamics", ojson{{"mass", 1.0}, {"charge", 1.0}}},
        {"killing", "dt"},
        {"samples", {{0.0, 0.0, 0.0, 0.0}, {0.3, 0.5, -0.2, 0.8}, {1.0, -1.0, 0.4, 0.1}}},
        {"tolerance", 1e-8},
        {"seed", 42},
        {"random_spinors", 1000},
    };
  }
  if (name == "spherical-weak") {
    return ojson{
        {"schema_version", 1},
        {"chart", "stationary-spherical"},
        {"field",
         ojson{{"phi", "1 + 1/(2+r)"},
               {"beta", "0"},
               {"zeta", "0.3*t"},
               {"q", 1.0},
               {"L",
                ojson{{"rapidities", {"r/10 + 0.3*r/(1+r^2)", "0", "0"}},
                      {"angles", {"0", "pi/2", "0"}}}},
               {"A", {"0", "0", "0", "0"}}}},
        {"dynamics", ojson{{"mass", 0.3}, {"charge", 1.0}}},
        {"killing", "xi0"},
        {"samples", {{0.0, 2.0, 1.1, 0.4}, {0.0, 3.5, 0.8, 2.0}, {0.0, 5.0, 2.2, 5.5}}},
        {"tolerance", 1e-8},
        {"seed", 42},
        {"random_spinors", 1000},
    };
  }
  if (name == "schwarzschild-nogo") {
    return ojson{
        {"schema_version", 1},
        {"A", "log(1 - 2/r)/2"},
        {"B", "-log(1 - 2/r)/2"},
        {"C", "log(r)"},
        {"eta", "0"},
        {"alpha", "r/15"},
        {"phi", "1 + 1/(2+r)"},
        {"beta", "0"},
        {"samples", {{0.0, 3.0, 1.0, 0.5}, {0.0, 6.0, 2.0, 3.0}}},
    };
  }
  throw InvalidScenario("unknown scenario preset '" + name + "'");
}

/// Loads a scenario from a JSON file, or from a preset name when no such
/// file exists.
inline Scenario load_scenario(const std::string& path_or_preset) {
  std::ifstream in(path_or_preset);
  if (!in) return scenario_from_json(scenario_preset_json(path_or_preset));
  ojson j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InvalidScenario("cannot parse scenario file: " + std::string(e.what()));
  }
  return scenario_from_json(j);
}

}  // namespace diracpolar
