#include "diracpolar/verify.hpp"

#include "helpers.hpp"

using namespace diracpolar;

TEST_CASE("scenario presets load and resolve", "[scenario]") {
  const Scenario s = load_scenario("flat-plane-wave");
  CHECK(s.chart_name == "flat-cartesian");
  CHECK(s.samples.size() == 3);
  CHECK(s.killing().name == "dt");
  CHECK(s.dynamics.mass == 1.0);

  CHECK_THROWS_AS(load_scenario("no-such-preset"), InvalidScenario);
}

TEST_CASE("scenario json validation diagnoses broken inputs", "[scenario]") {
  CHECK_THROWS_AS(scenario_from_json(ojson{{"schema_version", 2}}), InvalidScenario);
  CHECK_THROWS_AS(scenario_from_json(ojson{{"schema_version", 1}}), InvalidScenario);

  ojson bad = scenario_preset_json("flat-plane-wave");
  bad["field"]["phi"] = "1/+";
  CHECK_THROWS_AS(scenario_from_json(bad), InvalidScenario);

  ojson nosamples = scenario_preset_json("flat-plane-wave");
  nosamples.erase("samples");
  CHECK_THROWS_AS(scenario_from_json(nosamples), InvalidScenario);

  ojson badkill = scenario_preset_json("flat-plane-wave");
  badkill["killing"] = ojson::array({"1", "0"});
  CHECK_THROWS_AS(scenario_from_json(badkill), InvalidScenario);
}

TEST_CASE("custom charts and custom Killing fields resolve", "[scenario]") {
  ojson j = scenario_preset_json("flat-plane-wave");
  j["chart"] = ojson{{"coords", {"t", "x", "y", "z"}},
                     {"tetrad",
                      {{"1", "0", "0", "0"},
                       {"0", "1", "0", "0"},
                       {"0", "0", "1", "0"},
                       {"0", "0", "0", "1"}}},
                     {"params", ojson::object()},
                     {"domain", ojson::array()}};
  j["killing"] = ojson::array({"1", "0", "0", "0"});
  const Scenario s = scenario_from_json(j);
  CHECK(s.chart_name == "custom");
  CHECK(s.killing().name == "custom");
  CHECK(s.chart.killing_residual(s.killing(), {0, 1, 2, 3}) < 1e-14);
}

TEST_CASE("verify suite passes on the plane-wave preset", "[scenario]") {
  Scenario s = load_scenario("flat-plane-wave");
  s.random_spinors = 200;  // keep the unit suite quick; acceptance runs 1000
  const ojson rep = run_verify(s);
  CHECK(rep.at("pass").get<bool>());
  for (const auto& c : rep.at("checks")) {
    INFO(c.at("name").get<std::string>());
    CHECK(c.at("pass").get<bool>());
  }
}

TEST_CASE("verify reports are byte-identical across runs", "[scenario]") {
  Scenario s = load_scenario("flat-plane-wave");
  s.random_spinors = 50;
  const std::string a = json_to_string(run_verify(s));
  const std::string b = json_to_string(run_verify(s));
  CHECK(a == b);
  CHECK(a.find("\"schema_version\": 1") != std::string::npos);
}

TEST_CASE("impossible tolerances fail with named residuals", "[scenario]") {
  Scenario s = load_scenario("flat-plane-wave");
  s.random_spinors = 50;
  const ojson rep = run_verify(s, 1e-16);
  CHECK(!rep.at("pass").get<bool>());
  bool some_failed = false;
  for (const auto& c : rep.at("checks"))
    if (!c.at("pass").get<bool>()) {
      some_failed = true;
      CHECK(!c.at("name").get<std::string>().empty());
    }
  CHECK(some_failed);
}

TEST_CASE("invariance run on the spherical preset", "[scenario]") {
  const Scenario s = load_scenario("spherical-weak");
  const ojson rep = run_invariance(s, s.killing());
  CHECK(rep.at("pass").get<bool>());
  for (const auto& p : rep.at("points")) {
    // Weakly invariant (all bilinear residuals tiny) but strongly broken by
    // the stationary phase.
    for (const auto& [key, val] : p.at("weak_residuals").items()) {
      INFO(key);
      CHECK(val.get<double>() < 1e-10);
    }
    CHECK(p.at("strong_residual").get<double>() > 1e-3);
    CHECK(p.at("final_equation_residual").get<double>() < 1e-8);
    CHECK(p.at("equivalence").is_object());
    CHECK(p.at("equivalence").at("ratio").get<double>() == Catch::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("invariance rejects non-Killing custom fields", "[scenario]") {
  ojson j = scenario_preset_json("flat-plane-wave");
  j["killing"] = ojson::array({"0", "x", "0", "0"});  // dilation: not Killing
  const Scenario s = scenario_from_json(j);
  CHECK_THROWS_AS(run_invariance(s, s.killing()), NotKilling);
}

TEST_CASE("nogo run emits the certificate", "[scenario]") {
  const Scenario s = load_scenario("schwarzschild-nogo");
  REQUIRE(s.spherical.has_value());
  const ojson rep = run_nogo(*s.spherical);
  CHECK(rep.at("established").get<bool>());
  CHECK(rep.at("discrepancy").get<double>() == 1.0);
  CHECK(rep.at("constraints").size() == 3);
  CHECK(rep.at("deduction").size() == 5);
}
