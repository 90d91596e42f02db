#include "diracpolar/polar_form.hpp"

#include <random>

#include "helpers.hpp"

using namespace diracpolar;

TEST_CASE("rest spinor decomposes trivially", "[polar]") {
  const auto p = polar_decompose(rest_spinor());
  CHECK(p.phi == Catch::Approx(1.0));
  CHECK(p.beta == Catch::Approx(0.0).margin(1e-15));
  CHECK(dptest::vdiff(p.u, {1, 0, 0, 0}) < 1e-14);
  CHECK(dptest::vdiff(p.s, {0, 0, 0, 1}) < 1e-14);
  CHECK((p.L.S - Mat4c::identity()).max_abs() < 1e-12);
  CHECK(std::abs(p.gauge_phase) < 1e-12);
}

TEST_CASE("module scales linearly", "[polar]") {
  Spinor psi = rest_spinor();
  for (auto& c : psi.c) c *= 3.0;
  const auto p = polar_decompose(psi);
  CHECK(p.phi == Catch::Approx(3.0));
  CHECK(p.beta == Catch::Approx(0.0).margin(1e-15));
  CHECK(dptest::vdiff(p.u, {1, 0, 0, 0}) < 1e-14);
  CHECK(dptest::vdiff(p.s, {0, 0, 0, 1}) < 1e-14);
}

TEST_CASE("boosted rest spinor round-trips", "[polar]") {
  const double r = 0.7;
  const auto boost = exp_spin({0, 0, r}, {0, 0, 0});
  Spinor psi;
  psi.c = matvec(boost.S, rest_spinor().c);
  const auto p = polar_decompose(psi);
  CHECK(p.u[0] == Catch::Approx(std::cosh(r)));
  CHECK(std::abs(std::abs(p.u[3]) - std::sinh(r)) < 1e-12);
  const Spinor rec = polar_reconstruct(p);
  CHECK(dptest::cdiff(rec.c, psi.c) < 1e-10);
}

TEST_CASE("decompose-reconstruct round-trips on random spinors", "[polar]") {
  std::mt19937_64 rng(4242);
  int done = 0;
  while (done < 1000) {
    const Spinor psi = random_spinor(rng);
    const auto b = bilinears(psi);
    double n2 = 0;
    for (const auto& c : psi.c) n2 += std::norm(c);
    if (b.Theta * b.Theta + b.Phi * b.Phi <= 1e-12 * n2 * n2) continue;
    const auto p = polar_decompose(psi);
    const Spinor rec = polar_reconstruct(p);
    REQUIRE(dptest::cdiff(rec.c, psi.c) < 1e-10);
    ++done;
  }
}

TEST_CASE("reconstruct-decompose round-trips on the polar side", "[polar]") {
  // Starting from polar data, the recovered data may differ in L by the
  // gauge/third-axis redundancy, so compare the reconstructed spinors.
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto e = exp_spin({dist(rng), dist(rng), dist(rng)},
                            {dist(rng), dist(rng), dist(rng)});
    PolarData p;
    p.phi = 0.5 + std::abs(dist(rng)) * 2;
    p.beta = dist(rng) * 3;
    p.u = matvec(e.Lambda, RVec4{1, 0, 0, 0});
    p.s = matvec(e.Lambda, RVec4{0, 0, 0, 1});
    p.L = e;
    p.gauge_phase = dist(rng) * 3;
    const Spinor psi = polar_reconstruct(p);
    const auto p2 = polar_decompose(psi);
    CHECK(p2.phi == Catch::Approx(p.phi));
    CHECK(p2.beta == Catch::Approx(p.beta).margin(1e-10));
    CHECK(dptest::vdiff(p2.u, p.u) < 1e-10);
    CHECK(dptest::vdiff(p2.s, p.s) < 1e-10);
    const Spinor again = polar_reconstruct(p2);
    CHECK(dptest::cdiff(again.c, psi.c) < 1e-10);
  }
}

TEST_CASE("flag spinor has no polar form", "[polar]") {
  Spinor flag;
  flag.c = {cplx(1), cplx(0), cplx(0), cplx(0)};
  CHECK_THROWS_AS(polar_decompose(flag), SingularSpinor);
}

TEST_CASE("antiparallel spin direction takes the tie-break rotation", "[polar]") {
  // Spin along -z: the constructive rotation must fall back to a half turn
  // about the first axis and the round trip must still close.
  const auto flip = exp_spin({0, 0, 0}, {M_PI, 0, 0});
  Spinor psi;
  psi.c = matvec(flip.S, rest_spinor().c);
  const auto p = polar_decompose(psi);
  CHECK(dptest::vdiff(p.s, {0, 0, 0, -1}) < 1e-12);
  const Spinor rec = polar_reconstruct(p);
  CHECK(dptest::cdiff(rec.c, psi.c) < 1e-10);

  // Also boosted so the tie-break happens after boosting back.
  const auto boost = exp_spin({0.4, -0.2, 0.1}, {0, 0, 0});
  Spinor moved;
  moved.c = matvec((boost * flip).S, rest_spinor().c);
  const auto p2 = polar_decompose(moved);
  const Spinor rec2 = polar_reconstruct(p2);
  CHECK(dptest::cdiff(rec2.c, moved.c) < 1e-10);
}

TEST_CASE("reconstruction at beta = pi flips Phi", "[polar]") {
  PolarData p;
  p.beta = M_PI;
  const Spinor psi = polar_reconstruct(p);
  const auto b = bilinears(psi);
  CHECK(b.Phi == Catch::Approx(-2.0));
  CHECK(b.Theta == Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("gauge phase and third-axis rotation are redundant", "[polar]") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Spinor psi = random_spinor(rng);
    const auto b = bilinears(psi);
    double n2 = 0;
    for (const auto& c : psi.c) n2 += std::norm(c);
    if (b.Theta * b.Theta + b.Phi * b.Phi <= 1e-10 * n2 * n2) continue;
    auto p = polar_decompose(psi);
    const double theta = dist(rng) * 2;
    p.L = p.L * exp_spin({0, 0, 0}, {0, 0, theta});
    p.gauge_phase += 0.5 * theta;  // rotation about axis 3 acts as a phase
    const Spinor rec = polar_reconstruct(p);
    CHECK(dptest::cdiff(rec.c, psi.c) < 1e-10);
  }
}

TEST_CASE("polar data transforms covariantly", "[polar]") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> dist(-0.8, 0.8);
  for (int trial = 0; trial < 20; ++trial) {
    const Spinor psi = random_spinor(rng);
    const auto b = bilinears(psi);
    double n2 = 0;
    for (const auto& c : psi.c) n2 += std::norm(c);
    if (b.Theta * b.Theta + b.Phi * b.Phi <= 1e-10 * n2 * n2) continue;
    const auto e = exp_spin({dist(rng), dist(rng), dist(rng)},
                            {dist(rng), dist(rng), dist(rng)});
    Spinor moved;
    moved.c = matvec(e.S, psi.c);
    const auto p0 = polar_decompose(psi);
    const auto p1 = polar_decompose(moved);
    CHECK(p1.phi == Catch::Approx(p0.phi));
    CHECK(p1.beta == Catch::Approx(p0.beta).margin(1e-10));
    CHECK(dptest::vdiff(p1.u, matvec(e.Lambda, p0.u)) < 1e-10);
    CHECK(dptest::vdiff(p1.s, matvec(e.Lambda, p0.s)) < 1e-10);
  }
}

TEST_CASE("real_lorentz_of extracts the matched transformation", "[polar]") {
  CHECK((real_lorentz_of(Mat4c::identity()) - Mat4::identity()).max_abs() < 1e-14);

  // A pure gauge phase is invisible to the vector representation.
  const Mat4c phase = Mat4c::identity() * std::exp(cplx(0, 0.9));
  CHECK((real_lorentz_of(phase) - Mat4::identity()).max_abs() < 1e-12);

  const auto rot = exp_spin({0, 0, 0}, {0, 0, M_PI / 2});
  const Mat4 lam = real_lorentz_of(rot.S);
  CHECK((lam - rot.Lambda).max_abs() < 1e-12);
  // x -> y under a quarter turn about the third axis
  CHECK(lam(2, 1) == Catch::Approx(1.0));
  CHECK(lam(1, 2) == Catch::Approx(-1.0));

  Mat4c junk = Mat4c::identity();
  junk(0, 0) = 2.0;
  CHECK_THROWS_AS(real_lorentz_of(junk), NotSpinGroup);
}

TEST_CASE("invalid polar data is rejected", "[polar]") {
  PolarData p;
  p.u = {1, 0.5, 0, 0};  // not unit, frame mismatch
  CHECK_THROWS_AS(polar_reconstruct(p), InvalidPolarData);
}
