#include <catch_amalgamated.hpp>

#include <cmath>

#include "rotgpe/functionals.hpp"
#include "rotgpe/minimize.hpp"
#include "rotgpe/random_field.hpp"
#include "rotgpe/trials.hpp"

using namespace rotgpe;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

GroundStateResult static_ground_state() {
  static const GroundStateResult r = [] {
    Params p;
    p.gamma = 1.0;
    FlowConfig c;
    c.tol_residual = 1e-7;
    return ground_state(p, GridSpec::make(8.0, 64), c);
  }();
  return r;
}

}  // namespace

TEST_CASE("seed strings", "[minimize]") {
  CHECK(SeedKind::parse("gaussian:0.25").kind == SeedKind::Gaussian);
  CHECK(SeedKind::parse("gaussian:0.25").b == 0.25);
  CHECK(SeedKind::parse("vortex:3").m == 3);
  CHECK(SeedKind::parse("random:42").seed == 42);
  CHECK(SeedKind::parse(SeedKind::parse("random:42").str()).seed == 42);
  CHECK_THROWS(SeedKind::parse("gaussian"));
  CHECK_THROWS(SeedKind::parse("gaussian:-1"));
  CHECK_THROWS(SeedKind::parse("spiral:2"));
  CHECK_THROWS(SeedKind::parse("vortex:2x"));
}

TEST_CASE("regime contract of the minimisers", "[minimize]") {
  Params p;
  const GridSpec g = GridSpec::make(8.0, 32);
  p.omega_rot = 1.5;
  CHECK_THROWS_AS(ground_state(p, g, {}), NonexistenceRegime);
  p.omega_rot = p.gamma;
  CHECK_THROWS_AS(ground_state(p, g, {}), RegimeMismatch);
  p.omega_rot = 0.5;
  CHECK_THROWS_AS(ground_state_magnetic(p, g, {}), RegimeMismatch);
  p.omega_rot = p.gamma;
  p.v0 = 0.1;
  CHECK_THROWS_AS(ground_state_magnetic(p, g, {}), RegimeMismatch);
}

TEST_CASE("non-rotating ground state", "[minimize]") {
  const GroundStateResult r = static_ground_state();
  Params p;
  REQUIRE(r.converged);
  CHECK(r.residual < 1e-7);
  CHECK_THAT(mass(r.state), WithinRel(p.rho, 1e-10));
  CHECK_THAT(r.energy, WithinRel(energy(r.state, p), 1e-12));
  CHECK_THAT(r.omega, WithinRel(extract_omega(r.state, p), 1e-10));
  CHECK(check_nonexistence_window(r.omega, 1.0, p) == Verdict::Admissible);
  CHECK(pohozaev_residuals(r.state, p, r.omega).max() < 1e-6);
  CHECK(appendixB_phase_check(r.state).passed());
  // no Gaussian trial of the same mass does better
  for (double b : {0.3, 0.5, 0.8}) {
    const double lambda = std::sqrt(2 * b / std::numbers::pi);
    CHECK(r.energy <= energy(gaussian_field({lambda, b}, r.state.grid), p) + 1e-12);
  }
}

TEST_CASE("phase check accepts a constant phase and rejects a vortex", "[minimize]") {
  const GroundStateResult r = static_ground_state();
  const ComplexField rotated = std::polar(1.0, 0.7) * r.state;
  const auto c = appendixB_phase_check(rotated);
  CHECK(c.passed());
  CHECK_THAT(c.phase, WithinAbs(0.7, 1e-6));
  CHECK_FALSE(appendixB_phase_check(vortex_field({1, 1.0, 1.0}, GridSpec::make(8.0, 64))).passed());
}

TEST_CASE("orbit distance ignores a global phase", "[minimize]") {
  const ComplexField f = random_band_limited(GridSpec::make(10.0, 64), 51);
  const ComplexField g = std::polar(1.0, -2.1) * f;
  CHECK(orbit_distance(g, f, OrbitNorm::Sigma) < 1e-12);
  CHECK(orbit_distance(g, f, OrbitNorm::H1A, 0.5) < 1e-12);
  const ComplexField h = random_band_limited(GridSpec::make(10.0, 64), 52);
  CHECK(orbit_distance(h, f, OrbitNorm::Sigma) > 1e-3);
  CHECK_THROWS_AS(orbit_distance(h, random_band_limited(GridSpec::make(10.0, 32), 1), OrbitNorm::Sigma),
                  GridMismatch);
}

TEST_CASE("linear bottom of the harmonic trap", "[minimize]") {
  Params p;
  p.gamma = 0.7;
  const auto b = linear_bottom(p, GridSpec::make(10.0, 64));
  CHECK_THAT(b.omega_V0, WithinAbs(p.gamma, 1e-9));
  CHECK_THAT(mass(b.eigenfunction), WithinRel(1.0, 1e-12));
  p.v0 = 0.2;
  const double w = linear_bottom(p, GridSpec::make(10.0, 64)).omega_V0;
  CHECK(w > p.gamma);
  CHECK(w < p.gamma + p.gamma * p.v0 / (p.gamma + p.gamma0));
}

TEST_CASE("radial profile lifted onto the grid", "[minimize]") {
  RadialField r(12.0, 1200);
  for (int j = 0; j < r.m; ++j) r.values[j] = std::exp(-0.5 * r.r(j) * r.r(j));
  const ComplexField f = lift_radial(r, GridSpec::make(8.0, 64));
  CHECK_THAT(mass(f), WithinRel(std::numbers::pi, 1e-7));
}

TEST_CASE("flow configuration validation", "[minimize]") {
  FlowConfig c;
  c.tau = 0.0;
  CHECK_THROWS(c.validate());
  c = FlowConfig{};
  c.max_iter = 0;
  CHECK_THROWS(c.validate());
}
