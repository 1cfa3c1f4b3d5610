#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rotgpe/functionals.hpp"
#include "rotgpe/trials.hpp"

using namespace rotgpe;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using std::numbers::pi;

TEST_CASE("Gaussian closed forms agree with radial quadrature", "[trials]") {
  Params p;
  p.gamma = 0.4;
  p.gamma0 = 1.7;
  p.v0 = 0.3;
  for (double b : {0.05, 0.5, 2.0}) {
    for (double lambda : {0.5, 1.0, 1.8}) {
      const auto m = gaussian_moments({lambda, b}, p);
      const auto o = oracle::gaussian(lambda, b, p.gamma, p.gamma0, p.v0);
      INFO("b " << b << " lambda " << lambda);
      CHECK_THAT(m.mass, WithinRel(o.mass, 1e-12));
      CHECK_THAT(m.kinetic, WithinRel(o.kinetic, 1e-12));
      CHECK_THAT(m.xmoment, WithinRel(o.xmoment, 1e-12));
      CHECK_THAT(m.magnetic_kinetic, WithinRel(o.magnetic_kinetic, 1e-12));
      CHECK_THAT(m.l4, WithinRel(o.l4, 1e-12));
      CHECK_THAT(m.l6, WithinRel(o.l6, 1e-12));
      CHECK_THAT(m.log_moment, WithinRel(o.log_moment, 1e-11));
      CHECK_THAT(m.log_plain, WithinAbs(o.log_plain, 1e-11 * std::abs(o.l4)));
      CHECK_THAT(m.gauss_potential, WithinRel(o.potential, 1e-12));
    }
  }
}

TEST_CASE("Gaussian magnetic energy at the witness", "[trials]") {
  Params p;
  p.gamma = 0.2;
  p.omega_rot = p.gamma;
  // (1/2) pi (1 + gamma^2/4b^2) + (1/2)(-pi/4b) at b = 1/2
  CHECK_THAT(gaussian_energy_magnetic({1.0, 0.5}, p), WithinRel(0.27 * pi, 1e-14));
}

TEST_CASE("Nehari ratio at (e^{-1/2}, gamma/2)", "[trials]") {
  Params p;
  p.gamma = 0.3;
  p.gamma0 = 0.3;
  p.v0 = 0.2;
  const double w = -0.1;
  const double lambda = std::exp(-0.25);
  const double expected = 2.0 + 2.0 * w / p.gamma + p.v0 / p.gamma - 1.0 / (p.gamma * std::sqrt(std::numbers::e));
  CHECK_THAT(gaussian_nehari_ratio({lambda, p.gamma / 2}, p, w), WithinRel(expected, 1e-13));
  const ComplexField f = gaussian_field({lambda, p.gamma / 2}, GridSpec::make(24.0, 256));
  CHECK_THAT(nehari_K(f, p, w) / (lambda * lambda * pi), WithinRel(expected, 1e-9));
}

TEST_CASE("vortex integral I(gamma, m)", "[trials]") {
  for (int m : {0, 3, 10}) {
    for (double g : {0.5, 2.0}) {
      auto integrand = [=](double r) {
        if (r == 0.0) return m == 0 ? 1.0 : 0.0;
        return std::exp(2 * m * std::log(r) - g * r * r);
      };
      const double ref = oracle::radial_integral(integrand) / (2 * pi);
      CHECK_THAT(vortex_I(g, m), WithinRel(ref, 1e-12));
    }
  }
}

TEST_CASE("vortex moments agree with radial quadrature", "[trials]") {
  Params p;
  p.gamma0 = 0.7;
  p.v0 = 0.4;
  for (int m : {0, 1, 2, 5, 12, 20}) {
    for (double gamma : {0.5, 1.0}) {
      const double rho = 2.5;
      const auto v = vortex_moments({m, rho, gamma}, p);
      const auto o = oracle::vortex(m, rho, gamma, p.gamma0, p.v0);
      INFO("m " << m << " gamma " << gamma);
      CHECK_THAT(v.mass, WithinRel(o.mass, 1e-11));
      CHECK_THAT(v.kinetic, WithinRel(o.kinetic, 1e-11));
      CHECK_THAT(v.potential, WithinRel(o.potential, 1e-11));
      CHECK_THAT(v.ang_mom, WithinAbs(o.ang_mom, 1e-11 * rho * (m + 1)));
      CHECK_THAT(v.l6, WithinRel(o.l6, 1e-10));
      CHECK_THAT(v.log_moment, WithinRel(o.log_moment, 1e-9));
      CHECK_THAT(v.log_moment, WithinRel(oracle::vortex_log_moment_digamma(m, rho, gamma), 1e-10));
    }
  }
}

TEST_CASE("vortex L6 at m = 1 is 2/27 for rho = gamma = 1 up to pi^-2", "[trials]") {
  Params p;
  const auto v = vortex_moments({1, 1.0, 1.0}, p);
  CHECK_THAT(v.l6 * pi * pi, WithinRel(2.0 / 27.0, 1e-13));
}

TEST_CASE("sampled vortex matches its moments", "[trials]") {
  Params p;
  p.gamma0 = 1.0;
  p.v0 = 0.1;
  for (int m : {0, 4}) {
    const VortexTrial t{m, 1.0, 1.0};
    const ComplexField f = vortex_field(t, GridSpec::make(std::max(8.0, t.support_radius() + 2), 256));
    const auto v = vortex_moments(t, p);
    CHECK_THAT(mass(f), WithinRel(v.mass, 1e-9));
    CHECK_THAT(kinetic(f), WithinRel(v.kinetic, 1e-9));
    CHECK_THAT(angular_momentum(f), WithinAbs(v.ang_mom, 1e-9));
    CHECK_THAT(potential_energy(f, p), WithinRel(v.potential, 1e-9));
    CHECK_THAT(log_moment(f), WithinRel(v.log_moment, 1e-9));
  }
}

TEST_CASE("energy curve diverges linearly above the critical rotation", "[trials]") {
  Params p;
  p.gamma = 0.5;
  p.gamma0 = 0.5;
  p.omega_rot = 1.0;
  p.rho = 1.0;
  const auto c = vortex_energy_curve(p, 20);
  REQUIRE(c.size() == 21);
  for (int m = 6; m <= 20; ++m) CHECK(c[m].e_total < c[m - 1].e_total);
  CHECK_THAT(c[20].e_total - c[19].e_total, WithinRel(-p.rho * (p.omega_rot - p.gamma), 0.05));
  for (const auto& e : c)
    CHECK_THAT(e.e_total, WithinAbs(e.e_quadratic + e.e_log, 1e-12 * std::abs(e.e_total) + 1e-14));
}

TEST_CASE("threshold functions", "[trials]") {
  const double g = 0.1;
  const auto t = threshold_functions(g);
  CHECK_THAT(t.b0, WithinRel(oracle::threshold_argmin(), 1e-7));
  CHECK_THAT(t.H_at_b0, WithinRel(g * g - 1.0 / (4 * std::pow(std::numbers::e, 3)), 1e-13));
  CHECK_THAT(threshold_functions(t.gamma_critical).H_at_b0, WithinAbs(0.0, 1e-15));
  for (double b : {0.01, 0.2, 1.5}) CHECK_THAT(threshold_G(g, b, 2 * b), WithinRel(threshold_H(g, b), 1e-14));
}

TEST_CASE("cubic ground state against an independent shooting run", "[trials]") {
  const auto q = cubic_ground_state(1e-11);
  CHECK(q.residual < 1e-9);
  CHECK_THAT(q.l2_squared, WithinRel(oracle::kCubicMass, 1e-8));
  CHECK_THAT(q.peak, WithinRel(oracle::kCubicPeak, 1e-8));
  CHECK_THAT(q.kinetic, WithinRel(2 * q.l2_squared, 1e-7));
  CHECK_THAT(q.l4, WithinRel(2 * q.l2_squared, 1e-7));
  CHECK_THAT(c4_constant(), WithinRel(1.0 / oracle::kCubicMass, 1e-8));
}

TEST_CASE("magnetic translation counterexample", "[trials]") {
  for (double y : {2.0, 10.0}) {
    const double gamma = 1.0;
    const auto v = modulus_magnetic_counterexample(gamma, y);
    CHECK_THAT(v.lhs, WithinRel(pi * (1 + gamma * gamma / 4), 1e-8));
    CHECK_THAT(v.rhs, WithinRel(pi + gamma * gamma * (pi / 4 + y * y * pi / 2), 1e-8));
    CHECK(v.rhs > v.lhs);
  }
}
