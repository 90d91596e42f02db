#include "diracpolar/observables.hpp"

#include <random>

#include "helpers.hpp"

using namespace diracpolar;

TEST_CASE("rest spin-up spinor bilinears", "[observables]") {
  const auto b = bilinears(rest_spinor());
  CHECK(b.Phi == Catch::Approx(2.0));
  CHECK(b.Theta == Catch::Approx(0.0).margin(1e-15));
  CHECK(b.U[0] == Catch::Approx(2.0));
  CHECK(b.S[3] == Catch::Approx(2.0));
  for (int a = 1; a < 4; ++a) CHECK(std::abs(b.U[a]) < 1e-15);
  for (int a = 0; a < 3; ++a) CHECK(std::abs(b.S[a]) < 1e-15);
  CHECK(mdot(b.U, b.U) == Catch::Approx(4.0));  // = Theta^2 + Phi^2
}

TEST_CASE("zero spinor has vanishing bilinears", "[observables]") {
  Spinor z;
  const auto b = bilinears(z);
  CHECK(b.Phi == 0.0);
  CHECK(b.Theta == 0.0);
  CHECK(max_abs(b.U) == 0.0);
  CHECK(max_abs(b.S) == 0.0);
  CHECK(b.M.max_abs() == 0.0);
}

TEST_CASE("chiral rotation trades Phi for Theta", "[observables]") {
  const auto& g = gamma_basis();
  const double beta = M_PI / 2;
  Mat4c rot;
  for (int i = 0; i < 4; ++i) rot(i, i) = std::exp(cplx(0, -0.5 * beta) * g.pi(i, i));
  Spinor psi;
  psi.c = matvec(rot, rest_spinor().c);
  const auto b = bilinears(psi);
  CHECK(b.Phi == Catch::Approx(0.0).margin(1e-14));
  CHECK(b.Theta == Catch::Approx(2.0));
}

TEST_CASE("fierz identities hold on seeded random spinors", "[observables]") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const Spinor psi = random_spinor(rng);
    const auto rep = fierz_residuals(bilinears(psi));
    REQUIRE(rep.max() < 1e-10);
    REQUIRE(aux_residual(psi) < 1e-10);
  }
}

TEST_CASE("hand-built violation shows in the orthogonality residual", "[observables]") {
  Bilinears b = bilinears(rest_spinor());
  b.S = b.U;  // force U = S
  const auto rep = fierz_residuals(b);
  const double expected = std::abs(mdot(b.U, b.U)) / std::max(1.0, 4.0);
  CHECK(rep.orthogonal == Catch::Approx(expected));
  CHECK(rep.orthogonal > 0.5);
}

TEST_CASE("aux identity in raw and normalized form", "[observables]") {
  CHECK(aux_residual(rest_spinor()) < 1e-12);
  CHECK(aux_residual(rest_spinor(), AuxForm::normalized) < 1e-12);

  Spinor flag;
  flag.c = {cplx(1), cplx(0), cplx(0), cplx(0)};
  CHECK(aux_residual(flag) < 1e-12);  // raw form degenerates to 0 = 0
  CHECK_THROWS_AS(aux_residual(flag, AuxForm::normalized), SingularSpinor);
}

TEST_CASE("bilinears are equivariant under spin transformations", "[observables]") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const Spinor psi = random_spinor(rng);
    const auto e = exp_spin({dist(rng), dist(rng), dist(rng)},
                            {dist(rng), dist(rng), dist(rng)}, dist(rng), 1.0);
    Spinor rot;
    rot.c = matvec(e.S, psi.c);
    const auto b0 = bilinears(psi);
    const auto b1 = bilinears(rot);
    CHECK(std::abs(b1.Phi - b0.Phi) < 1e-10);
    CHECK(std::abs(b1.Theta - b0.Theta) < 1e-10);
    CHECK(dptest::vdiff(b1.U, matvec(e.Lambda, b0.U)) < 1e-10);
    CHECK(dptest::vdiff(b1.S, matvec(e.Lambda, b0.S)) < 1e-10);
    CHECK((b1.M - e.Lambda * b0.M * e.Lambda.transpose()).max_abs() < 1e-10);
    CHECK((b1.Sigma - e.Lambda * b0.Sigma * e.Lambda.transpose()).max_abs() < 1e-10);
  }
}

TEST_CASE("vector is time-like and axial-vector space-like", "[observables]") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Spinor psi = random_spinor(rng);
    const auto b = bilinears(psi);
    if (b.Theta * b.Theta + b.Phi * b.Phi < 1e-8) continue;
    CHECK(mdot(b.U, b.U) > 0);
    CHECK(mdot(b.S, b.S) < 0);
  }
}

TEST_CASE("broken gamma basis raises NonRealBilinear", "[observables]") {
  GammaBasis g = build_gamma_basis();
  g.gamma[2] *= cplx(0, 1);  // destroys the reality structure
  std::mt19937_64 rng(1);
  const Spinor psi = random_spinor(rng);
  CHECK_THROWS_AS(bilinears(psi, g), NonRealBilinear);
}
