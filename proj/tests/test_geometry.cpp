#include "diracpolar/geometry.hpp"

#include <random>

#include "geometry_oracle.hpp"
#include "helpers.hpp"

using namespace diracpolar;

namespace {

double max4(const double (&a)[4][4][4][4]) {
  double m = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) m = std::max(m, std::abs(a[i][j][k][l]));
  return m;
}

double max3(const double (&a)[4][4][4]) {
  double m = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) m = std::max(m, std::abs(a[i][j][k]));
  return m;
}

// Residuals of the tetrad postulate and of metric compatibility at a frame.
double tetrad_postulate_residual(const ChartFrame& f) {
  double worst = 0;
  for (int a = 0; a < 4; ++a)
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        double r = f.de[mu][a][nu];
        for (int s = 0; s < 4; ++s) r -= f.Gamma[s][mu][nu] * f.e[a][s];
        for (int b = 0; b < 4; ++b) r += f.C[a][b][mu] * eta(b) * f.e[b][nu];
        worst = std::max(worst, std::abs(r));
      }
  return worst;
}

double metric_compat_residual(const ChartFrame& f) {
  double worst = 0;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      for (int r = 0; r < 4; ++r) {
        double v = f.dg[m][n][r];
        for (int s = 0; s < 4; ++s)
          v -= f.Gamma[s][m][n] * f.g[s][r] + f.Gamma[s][m][r] * f.g[n][s];
        worst = std::max(worst, std::abs(v));
      }
  return worst;
}

}  // namespace

TEST_CASE("flat cartesian chart is genuinely flat", "[geometry]") {
  const auto chart = SpacetimeChart::preset("flat-cartesian");
  const auto f = chart.frame({0.3, -1.2, 0.7, 2.0});
  CHECK(max3(f.C) == 0.0);
  CHECK(max4(f.R) == 0.0);
  CHECK(max3(f.Gamma) == 0.0);
  CHECK(chart.signature_ok({0, 0, 0, 0}));
}

TEST_CASE("flat spherical frame has connection but no curvature", "[geometry]") {
  const auto chart = SpacetimeChart::preset("flat-spherical");
  const RVec4 x{0, 2.0, M_PI / 2, 0.4};
  const auto f = chart.frame(x);
  CHECK(max3(f.C) > 0.1);
  CHECK(max4(f.R) < 1e-10);

  // The standalone accessors agree with the frame.
  const auto C = spin_connection(chart, x);
  const auto R = riemann(chart, x);
  double cmax = 0, rmax = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int m = 0; m < 4; ++m) {
        cmax = std::max(cmax, std::abs(C[a][b][m] - f.C[a][b][m]));
        for (int n = 0; n < 4; ++n) rmax = std::max(rmax, std::abs(R[a][b][m][n]));
      }
  CHECK(cmax == 0.0);
  CHECK(rmax < 1e-10);
  CHECK(tetrad_postulate_residual(f) < 1e-10);
  CHECK(metric_compat_residual(f) < 1e-10);
  CHECK(chart.signature_ok(x));

  // C^{ab}_mu antisymmetric in the frame pair.
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int mu = 0; mu < 4; ++mu)
        CHECK(std::abs(f.C[a][b][mu] + f.C[b][a][mu]) < 1e-12);
}

TEST_CASE("schwarzschild curvature matches the finite-difference oracle", "[geometry]") {
  const auto chart = SpacetimeChart::preset("schwarzschild");
  for (const RVec4 x : {RVec4{0, 6.0, 1.2, 0.5}, RVec4{1.0, 9.0, 2.0, 3.0}}) {
    const auto f = chart.frame(x);
    const auto ours = dptest::spin_to_coord(f);
    const auto fd = dptest::riemann_fd(chart, x, 1e-2);
    double scale = 0, diff = 0;
    for (int s = 0; s < 4; ++s)
      for (int r = 0; r < 4; ++r)
        for (int m = 0; m < 4; ++m)
          for (int n = 0; n < 4; ++n) {
            scale = std::max(scale, std::abs(fd.R[s][r][m][n]));
            diff = std::max(diff, std::abs(ours.R[s][r][m][n] - fd.R[s][r][m][n]));
          }
    CHECK(scale > 1e-4);
    CHECK(diff < 1e-6 * std::max(1.0, scale));
  }
}

TEST_CASE("schwarzschild orthonormal components follow the M/r^3 pattern", "[geometry]") {
  const auto chart = SpacetimeChart::preset("schwarzschild");
  const double M = 1.0;
  const RVec4 x{0, 7.0, 1.1, 2.2};
  const auto f = chart.frame(x);
  const double k = M / std::pow(x[1], 3);
  // R^{ab}_{cd} in the orthonormal frame.
  auto Rab = [&](int a, int b, int c, int d) {
    double acc = 0;
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) acc += f.R[a][b][m][n] * f.einv[c][m] * f.einv[d][n];
    return acc;
  };
  CHECK(Rab(0, 1, 0, 1) == Catch::Approx(-2 * k).epsilon(1e-9));
  CHECK(Rab(0, 2, 0, 2) == Catch::Approx(k).epsilon(1e-9));
  CHECK(Rab(0, 3, 0, 3) == Catch::Approx(k).epsilon(1e-9));
  CHECK(Rab(1, 2, 1, 2) == Catch::Approx(k).epsilon(1e-9));
  CHECK(Rab(1, 3, 1, 3) == Catch::Approx(k).epsilon(1e-9));
  CHECK(Rab(2, 3, 2, 3) == Catch::Approx(-2 * k).epsilon(1e-9));
}

TEST_CASE("first Bianchi identity on random sample points", "[geometry]") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> rr(4.0, 12.0), rt(0.4, M_PI - 0.4), rp(0, 2 * M_PI);
  for (const char* name : {"schwarzschild", "stationary-spherical"}) {
    const auto chart = SpacetimeChart::preset(name);
    for (int trial = 0; trial < 5; ++trial) {
      const RVec4 x{0, rr(rng), rt(rng), rp(rng)};
      const auto f = chart.frame(x);
      const auto rc = dptest::spin_to_coord(f);
      double worst = 0;
      for (int s = 0; s < 4; ++s)
        for (int r = 0; r < 4; ++r)
          for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n) {
              double cyc = 0;
              for (int l = 0; l < 4; ++l)
                cyc += f.g[s][l] * (rc.R[l][r][m][n] + rc.R[l][m][n][r] + rc.R[l][n][r][m]);
              worst = std::max(worst, std::abs(cyc));
            }
      CHECK(worst < 1e-8);
    }
  }
}

TEST_CASE("geometry identities hold on all built-in charts", "[geometry]") {
  const std::map<std::string, RVec4> sample = {
      {"flat-cartesian", {0.2, 1.0, -0.5, 0.8}},
      {"flat-spherical", {0.0, 3.0, 1.0, 0.3}},
      {"schwarzschild", {0.0, 5.0, 1.3, 1.0}},
      {"stationary-spherical", {0.0, 4.0, 1.9, 5.0}},
  };
  for (const auto& [name, x] : sample) {
    const auto chart = SpacetimeChart::preset(name);
    const auto f = chart.frame(x);
    INFO(name);
    CHECK(tetrad_postulate_residual(f) < 1e-10);
    CHECK(metric_compat_residual(f) < 1e-10);
    CHECK(chart.signature_ok(x));
  }
}

TEST_CASE("killing residuals", "[geometry]") {
  const auto flat = SpacetimeChart::preset("flat-cartesian");
  CHECK(flat.killing_residual(flat.named_killing("dt"), {0, 1, 2, 3}) < 1e-14);
  CHECK(flat.killing_residual(flat.named_killing("rot-z"), {0.5, 1, 2, 3}) < 1e-12);
  CHECK(flat.killing_residual(flat.named_killing("boost-x"), {0.5, 1, 2, 3}) < 1e-12);

  // Pure dilation is not Killing: nabla_x xi_x = -1 so the residual is 2.
  KillingField dil{"dilation",
                   {FieldExpr(0.0), FieldExpr::symbol("x"), FieldExpr(0.0), FieldExpr(0.0)}};
  CHECK(flat.killing_residual(dil, {0, 1.5, 0, 0}) == Catch::Approx(2.0));

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> rr(3.0, 10.0), rt(0.15, M_PI - 0.15), rp(0, 2 * M_PI);
  for (const char* name : {"flat-spherical", "schwarzschild", "stationary-spherical"}) {
    const auto chart = SpacetimeChart::preset(name);
    for (const auto& k : chart.killing_fields())
      for (int trial = 0; trial < 5; ++trial) {
        const RVec4 x{0, rr(rng), rt(rng), rp(rng)};
        INFO(name << " " << k.name);
        CHECK(chart.killing_residual(k, x) < 1e-10);
      }
  }
}

TEST_CASE("stationary-spherical metric reproduces the tetrad squares", "[geometry]") {
  const auto A = parse_field_expr("1/(10*(1+r))");
  const auto B = parse_field_expr("r/20");
  const auto C = parse_field_expr("log(r) + r/30");
  const auto h = parse_field_expr("r/15");
  const auto chart = stationary_spherical_chart(A, B, C, h);
  const RVec4 x{0, 2.5, 1.0, 0.7};
  Env env = chart.env_at(x);
  const Mat4 g = chart.metric(x);
  const double Av = A.eval(env), Bv = B.eval(env), Cv = C.eval(env), hv = h.eval(env);
  CHECK(g(0, 0) == Catch::Approx(std::exp(2 * Av)).epsilon(1e-12));
  CHECK(g(0, 1) == Catch::Approx(std::exp(Av + Bv) * std::sinh(hv)).epsilon(1e-12));
  CHECK(g(1, 1) == Catch::Approx(-std::exp(2 * Bv)).epsilon(1e-12));
  CHECK(g(2, 2) == Catch::Approx(-std::exp(2 * Cv)).epsilon(1e-12));
  CHECK(g(3, 3) ==
        Catch::Approx(-std::exp(2 * Cv) * std::sin(x[2]) * std::sin(x[2])).epsilon(1e-12));
}

TEST_CASE("fd_crosscheck compares symbolic against numeric derivatives", "[geometry]") {
  const auto chart = SpacetimeChart::preset("flat-spherical");
  CHECK(chart.fd_crosscheck(parse_field_expr("r^2"), {0, 2.0, 1.0, 0}) < 1e-10);
  CHECK(chart.fd_crosscheck(parse_field_expr("exp(r)"), {0, 1.0, 1.0, 0}) < 1e-9);
  const auto sch = SpacetimeChart::preset("schwarzschild");
  CHECK_THROWS_AS(sch.fd_crosscheck(parse_field_expr("r"), {0, 2.0001, 1.0, 0}), OutOfDomain);
}

TEST_CASE("domain guards and degenerate tetrads are reported", "[geometry]") {
  const auto sph = SpacetimeChart::preset("flat-spherical");
  CHECK_THROWS_AS(sph.frame({0, -1.0, 1.0, 0}), OutOfDomain);
  CHECK_THROWS_AS(sph.frame({0, 1.0, 0.0, 0}), OutOfDomain);
  CHECK(sph.in_domain({0, 1.0, 1.0, 0}));
  CHECK(!sph.in_domain({0, 1.0, 4.0, 0}));

  // A tetrad leg that collapses at x = 1 without a guard.
  std::array<std::array<FieldExpr, 4>, 4> e{};
  for (int a = 0; a < 4; ++a) e[a][a] = FieldExpr(1.0);
  e[1][1] = parse_field_expr("1 - x");
  const auto bad = SpacetimeChart::from_tetrad({"t", "x", "y", "z"}, e);
  CHECK_THROWS_AS(bad.frame({0, 1.0, 0, 0}), DegenerateTetrad);
  CHECK_NOTHROW(bad.frame({0, 0.0, 0, 0}));
}

TEST_CASE("symbolic and FD derivatives agree on built-in chart tetrads", "[geometry]") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> rr(3.0, 8.0), rt(0.5, M_PI - 0.5);
  for (const char* name : {"flat-spherical", "schwarzschild", "stationary-spherical"}) {
    const auto chart = SpacetimeChart::preset(name);
    const auto& e = chart.tetrad_exprs();
    for (int trial = 0; trial < 3; ++trial) {
      const RVec4 x{0, rr(rng), rt(rng), 1.0};
      for (int a = 0; a < 4; ++a)
        for (int mu = 0; mu < 4; ++mu) {
          INFO(name << " e^" << a << "_" << mu);
          CHECK(chart.fd_crosscheck(e[a][mu], x) < 1e-8);
        }
    }
  }
}
