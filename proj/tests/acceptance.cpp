// Acceptance suite: one PASS/FAIL line per criterion, details on the
// following indented lines. Exit status is the number of failures.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rotgpe/evolve.hpp"
#include "rotgpe/functionals.hpp"
#include "rotgpe/minimize.hpp"
#include "rotgpe/random_field.hpp"
#include "rotgpe/trials.hpp"

using namespace rotgpe;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { notes.push_back("     " + what); }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1: Gaussian moments by grid quadrature against the closed forms.
Outcome gaussian_golden() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  Params p;
  p.gamma = 1.0;
  p.gamma0 = p.gamma;
  p.v0 = 0.2;
  const GridSpec g = GridSpec::make(12.0, 256);
  double worst = 0.0;
  for (double b : {0.3, 0.5, 1.0}) {
    const ComplexField f = gaussian_field({1.0, b}, g);
    const double gm = p.gamma;
    const std::vector<std::pair<double, double>> pairs = {
        {mass(f), pi / (2 * b)},
        {kinetic(f), pi},
        {moment(f), pi / (4 * b * b)},
        {l4(f), pi / (4 * b)},
        {log_moment(f), -pi / (4 * b)},
        {magnetic_kinetic(f, gm), pi * (1 + gm * gm / (4 * b * b))},
        {potential_energy(f, p), gm * gm * pi / (8 * b * b) + pi * p.v0 / (gm + 2 * b)},
    };
    for (const auto& [got, want] : pairs) worst = std::max(worst, rel_err(got, want));
  }
  const double secs = seconds_since(t0);
  o.require(worst < 1e-8, fmt("max relative error %.2e over 7 quantities x 3 widths (tol 1e-8)", worst));
  o.require(secs < 5.0, fmt("runtime %.2f s (limit 5 s)", secs));
  return o;
}

// 2: vortex moments by grid quadrature against the closed forms.
Outcome vortex_golden() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0, ratio_printed = 0.0;
  std::string worst_case;
  for (double gamma : {0.5, 1.0}) {
    Params p;
    p.gamma = gamma;
    p.gamma0 = gamma;
    p.v0 = 0.2;
    for (double rho : {1.0, 2.5}) {
      for (int m = 0; m <= 20; ++m) {
        const VortexTrial t{m, rho, gamma};
        const double hw = std::max(6.0, std::ceil(t.support_radius() + 1.0));
        const int n = hw > 12.0 ? 512 : 256;
        const ComplexField f = vortex_field(t, GridSpec::make(hw, n));
        const double lfac = std::lgamma(3.0 * m + 1) - 3 * (m * std::log(3.0) + std::lgamma(m + 1.0));
        const double l6_exact = rho * rho * rho * gamma * gamma / (3 * pi * pi) * std::exp(lfac);
        const double l6_printed = rho * rho * rho * gamma * gamma / (pi * pi) * std::exp(lfac);
        const std::vector<std::pair<double, double>> pairs = {
            {mass(f), rho},
            {kinetic(f), rho * (m + 1) * gamma},
            {potential_energy(f, p), rho * (m + 1) * gamma / 2 + std::pow(gamma / (gamma + p.gamma0), m + 1) * p.v0 * rho},
            {angular_momentum(f), m == 0 ? 1.0 : m * rho},
            {l6(f), l6_exact},
        };
        for (std::size_t k = 0; k < pairs.size(); ++k) {
          const auto [got, want] = pairs[k];
          // L = 0 at m = 0: compare absolutely against rho
          const double e = (m == 0 && k == 3) ? std::abs(got) / rho : rel_err(got, want);
          if (e > worst) {
            worst = e;
            worst_case = fmt("m=%.0f gamma=%.1f rho=%.1f quantity %.0f", m, gamma, rho, double(k));
          }
        }
        ratio_printed = std::max(ratio_printed, l6_printed / l6(f));
      }
    }
  }
  const double secs = seconds_since(t0);
  o.require(worst < 1e-6, fmt("max relative error %.2e (tol 1e-6)", worst) + ", worst at " + worst_case);
  o.note(fmt("L6 follows rho^3 gamma^2/(3 pi^2) (3m)!/(3^m m!)^3; the form without the 3 is off by %.6f",
             ratio_printed));
  o.require(secs < 60.0, fmt("runtime %.1f s (limit 60 s)", secs));
  return o;
}

// 3: E_Omega(f_m) decreases for m >= 5 with slope -rho (Omega - gamma).
Outcome nonexistence_divergence() {
  Outcome o;
  for (double gamma : {0.5, 1.0}) {
    for (double rho : {1.0, 2.5}) {
      Params p;
      p.gamma = gamma;
      p.gamma0 = gamma;
      p.omega_rot = 2 * gamma;
      p.rho = rho;
      const auto c = vortex_energy_curve(p, 20);
      bool decreasing = true;
      for (int m = 6; m <= 20; ++m) decreasing = decreasing && c[m].e_total < c[m - 1].e_total;
      const double target = -rho * (p.omega_rot - gamma);
      double worst = 0.0;
      for (int m = 15; m <= 20; ++m) worst = std::max(worst, rel_err(c[m].e_total - c[m - 1].e_total, target));
      o.require(decreasing && worst < 0.05,
                fmt("gamma=%.1f rho=%.1f: decreasing from m=5, |dE/(-rho(Omega-gamma)) - 1| = %.2e for m >= 15", gamma,
                    rho, worst));
    }
  }
  // grid check of one step of the sequence
  Params p;
  p.gamma = 1.0;
  p.omega_rot = 2.0;
  const GridSpec g = GridSpec::make(12.0, 256);
  const double e15 = energy(vortex_field({15, 1.0, 1.0}, g), p);
  const double e16 = energy(vortex_field({16, 1.0, 1.0}, g), p);
  o.require(rel_err(e16 - e15, -1.0) < 0.05, fmt("grid quadrature E(16)-E(15) = %.6f", e16 - e15));
  return o;
}

ComplexField perturbed_gaussian(const GridSpec& g, double rho, std::uint64_t seed) {
  ComplexField f = gaussian_field({1.0, 0.5}, g);
  const ComplexField r = random_band_limited(g, seed);
  ComplexField s = std::sqrt(0.1 * mass(f) / mass(r)) * r;
  f += s;
  f *= std::sqrt(rho / mass(f));
  return f;
}

// 4: conservation with K3 = 0 and Strang self-convergence.
Outcome conservation() {
  Outcome o;
  Params p;
  p.gamma = 1.0;
  p.gamma0 = 1.0;
  p.v0 = 0.2;
  p.omega_rot = 0.5;
  const GridSpec g = GridSpec::make(10.0, 128);
  const ComplexField f0 = perturbed_gaussian(g, 1.0, 41);
  EvolveConfig c;
  c.dt = 1e-3;
  c.t_end = 5.0;
  c.log_every = 100;
  const auto tr = evolve(f0, p, c);
  const auto& r0 = tr.records.front();
  double dm = 0, dl = 0, de = 0;
  for (const auto& r : tr.records) {
    dm = std::max(dm, rel_err(r.mass, r0.mass));
    dl = std::max(dl, std::abs(r.ang_mom - r0.ang_mom) / std::max(std::abs(r0.ang_mom), r0.mass));
    de = std::max(de, rel_err(r.energy, r0.energy));
  }
  o.note(fmt("initial mass %.4f, L %.4f, energy %.6f", r0.mass, r0.ang_mom, r0.energy));
  o.require(dm < 1e-8, fmt("mass drift %.2e", dm));
  o.require(dl < 1e-8, fmt("angular momentum drift %.2e (relative to max(|L|, M))", dl));
  o.require(de < 1e-8, fmt("energy drift %.2e", de));

  // self-convergence at T = 1
  auto run = [&](double dt) {
    EvolveConfig e;
    e.dt = dt;
    e.t_end = 1.0;
    e.log_every = 1000000;
    return evolve(f0, p, e).final_state;
  };
  const ComplexField a = run(0.04), b = run(0.02), d = run(0.01);
  auto dist = [](const ComplexField& x, const ComplexField& y) { return std::sqrt(mass(x - y)); };
  const double order = std::log2(dist(a, b) / dist(b, d));
  o.require(order >= 1.9 && order <= 2.1, fmt("self-convergence order %.4f (dt 0.04/0.02/0.01)", order));
  return o;
}

// 5: mass loss law, monotonicity and the t^{-1/4} bound.
Outcome extinction() {
  Outcome o;
  Params p;
  p.gamma = 1.0;
  p.gamma0 = 1.0;
  p.v0 = 0.2;
  p.omega_rot = 0.3;
  p.k3 = 0.1;
  const GridSpec g = GridSpec::make(10.0, 128);
  EvolveConfig c;
  c.dt = 5e-3;
  c.t_end = 200.0;
  c.log_every = 20;
  const auto r = extinction_experiment(perturbed_gaussian(g, 2.0, 42), p, c);
  o.require(r.max_loss_residual < 1e-4, fmt("max loss-law residual %.2e (tol 1e-4)", r.max_loss_residual));
  o.require(r.strictly_decreasing, "mass strictly decreasing at every sample");
  double sup_late = 0.0, sup_all = 0.0;
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    if (r.times[k] < 1.0) continue;
    const double v = std::pow(r.times[k], 0.25) * r.masses[k];
    sup_all = std::max(sup_all, v);
    if (r.times[k] >= 20.0) sup_late = std::max(sup_late, v);
  }
  o.require(std::isfinite(sup_all) && sup_all > 0.0,
            fmt("sup t^(1/4) M = %.4f on [1, 200], %.4f on [20, 200]", sup_all, sup_late));
  o.note(fmt("M(t) below (M0^-4 + 4Ct)^(-1/4) with C = %.4g fixed at t = 1: ", r.fitted_c) +
         (r.dominated ? "yes" : "no"));
  o.require(r.tail_slope <= 0.0, fmt("tail slope of log M vs log t beyond t = 10: %.4f", r.tail_slope));
  return o;
}

// 6: sub-critical ground state.
Outcome subcritical() {
  Outcome o;
  Params p;
  p.gamma = 1.0;
  p.gamma0 = 1.0;
  p.v0 = 0.2;
  p.omega_rot = 0.5;
  p.rho = 1.0;
  const GridSpec g = GridSpec::make(8.0, 128);
  FlowConfig cfg;
  const auto r = ground_state(p, g, cfg);
  o.require(r.converged && r.residual < 1e-5,
            fmt("Omega=0.5: converged in %.0f iterations, residual %.2e", r.iterations, r.residual));
  const double w_v0 = linear_bottom(p, g).omega_V0;
  o.require(check_nonexistence_window(r.omega, w_v0, p) == Verdict::Admissible,
            fmt("omega = %.6f admissible (omega_V0 = %.6f)", r.omega, w_v0));
  Params q = p;
  q.omega_rot = 0.0;
  const auto r0 = ground_state(q, g, cfg);
  const auto ph = pohozaev_residuals(r0.state, q, r0.omega);
  o.require(r0.converged && ph.max() < 1e-5,
            fmt("Omega=0: residual %.2e, Pohozaev %.2e %.2e %.2e", r0.residual, ph.r1, ph.r2, ph.r3));
  return o;
}

// 7: critical magnetic ground state against the Gaussian witness.
Outcome critical_magnetic() {
  Outcome o;
  Params p;
  p.gamma = 0.1;
  p.gamma0 = 0.1;
  p.v0 = 0.0;
  p.omega_rot = p.gamma;
  p.rho = std::min(1.0, oracle::kCubicMass);
  const auto th = threshold_functions(p.gamma);
  const double b0 = th.b0;
  const double witness = pi * th.H_at_b0 / (4 * b0);
  const double witness_mass = 2 * b0 * pi / (2 * b0);
  o.note(fmt("witness (lambda^2, b) = (2b0, b0), b0 = %.6f: energy %.6f at mass %.6f", b0, witness, witness_mass));
  const double wq = gaussian_energy_magnetic({std::sqrt(2 * b0), b0}, p);
  o.note(fmt("witness energy from the Gaussian moments %.6f", wq));
  const GridSpec g = GridSpec::make(24.0, 128);
  FlowConfig cfg;
  cfg.seed = SeedKind{SeedKind::Gaussian, b0};
  const auto r = ground_state_magnetic(p, g, cfg);
  o.require(r.converged, fmt("rho = %.4f: converged in %.0f iterations, residual %.2e", p.rho, r.iterations, r.residual));
  o.require(r.energy < 0.0, fmt("attained I = %.6f < 0", r.energy));
  o.require(r.energy <= witness, fmt("attained I = %.6f <= witness %.6f", r.energy, witness));
  // the witness mass itself, for reference
  Params q = p;
  q.rho = witness_mass;
  const auto rw = ground_state_magnetic(q, g, cfg);
  o.note(fmt("at the witness mass %.4f the flow reaches %.6f (converged %.0f)", q.rho, rw.energy, rw.converged));
  return o;
}

// 8: radial critical solver, and agreement with the 2D solver for V0 = 0.
Outcome radial_critical() {
  Outcome o;
  Params p;
  p.gamma = 0.5;
  p.gamma0 = 0.5;
  p.omega_rot = p.gamma;
  p.rho = 1.0;
  FlowConfig cfg;
  double e_radial0 = 0.0;
  for (double v0 : {0.0, 0.2}) {
    p.v0 = v0;
    const auto r = ground_state_radial(p, cfg);
    o.require(r.converged, fmt("V0 = %.1f: converged in %.0f iterations, residual %.2e, energy %.8f", v0,
                               r.iterations, r.residual, r.energy));
    if (v0 == 0.0) e_radial0 = r.energy;
  }
  p.v0 = 0.0;
  FlowConfig c2;
  c2.seed = SeedKind{SeedKind::Gaussian, 0.5};
  const auto r2 = ground_state_magnetic(p, GridSpec::make(12.0, 128), c2);
  o.require(std::abs(r2.energy - e_radial0) < 1e-4,
            fmt("2D magnetic energy %.8f vs radial %.8f, difference %.2e", r2.energy, e_radial0,
                std::abs(r2.energy - e_radial0)));
  return o;
}

// 9: bottom of the linear spectrum.
Outcome linear_bottom_check() {
  Outcome o;
  Params p;
  p.gamma = 1.0;
  p.gamma0 = 1.0;
  const GridSpec g = GridSpec::make(10.0, 128);
  const auto b0 = linear_bottom(p, g);
  o.require(std::abs(b0.omega_V0 - p.gamma) < 1e-8, fmt("V0 = 0: omega_0 = %.12f", b0.omega_V0));
  const ComplexField gauss = gaussian_field({std::sqrt(p.gamma / pi), p.gamma / 2}, g);
  const double d = orbit_distance(b0.eigenfunction, gauss, OrbitNorm::Sigma);
  o.require(d < 1e-6, fmt("eigenfunction is the Gaussian up to phase, Sigma distance %.2e", d));
  p.v0 = 0.2;
  const double w = linear_bottom(p, g).omega_V0;
  const double hi = p.gamma + p.gamma * p.v0 / (p.gamma + p.gamma0);
  o.require(w >= p.gamma && w <= hi, fmt("V0 = 0.2: omega_V0 = %.10f in [%.4f, %.4f]", w, p.gamma, hi));
  return o;
}

// 10: orbital stability of the sub-regime ground state.
Outcome stability() {
  Outcome o;
  Params p;
  p.gamma = 1.0;
  p.gamma0 = 1.0;
  p.v0 = 0.2;
  p.omega_rot = 0.5;
  const GridSpec g = GridSpec::make(8.0, 128);
  FlowConfig cfg;
  cfg.tol_residual = 1e-9;
  const auto gs = ground_state(p, g, cfg);
  o.note(fmt("ground state residual %.2e after %.0f iterations", gs.residual, gs.iterations));
  const double delta = 1e-3;
  const auto r = stability_probe_from(gs, p, delta, 10.0, 1e-3, 100);
  o.require(r.sup_orbit_distance < 10 * delta,
            fmt("delta = 1e-3: sup Sigma orbit distance %.3e < %.1e, ", r.sup_orbit_distance, 10 * delta) +
                (r.rotating_frame ? "rotating" : "lab") + " frame");
  const auto r0 = stability_probe_from(gs, p, 0.0, 10.0, 1e-3, 100);
  // ground-state residual plus O(dt^2) splitting drift over t = 10
  const double floor = 1e-6;
  o.require(r0.sup_orbit_distance < floor,
            fmt("delta = 0: sup distance %.3e below the floor %.0e", r0.sup_orbit_distance, floor));
  return o;
}

// 11: inequality suite over random fields.
Outcome inequalities() {
  Outcome o;
  Params p;
  p.gamma = 0.5;
  p.gamma0 = 1.0;
  p.v0 = 0.2;
  p.omega_rot = 0.5;
  const GridSpec g = GridSpec::make(12.0, 128);
  int failures[6] = {0, 0, 0, 0, 0, 0};
  double min_gn_slack = 1e300;
  for (std::uint64_t seed = 1000; seed < 1100; ++seed) {
    const double scale = 0.5 + 0.01 * static_cast<double>(seed % 100);
    ComplexField f = random_band_limited(g, seed, scale);
    f *= std::sqrt((0.2 + 0.05 * static_cast<double>(seed % 40)) / mass(f));
    const auto r = inequality_suite(f, p);
    const InequalityCheck* all[6] = {&r.uncertainty, &r.diamagnetic, &r.magnetic_gn,
                                     &r.obs_chain,   &r.negative_log, &r.est_log};
    for (int k = 0; k < 6; ++k) failures[k] += all[k]->holds ? 0 : 1;
    min_gn_slack = std::min(min_gn_slack, r.magnetic_gn.slack());
  }
  o.require(failures[0] == 0, fmt("uncertainty principle: %.0f failures", failures[0]));
  o.require(failures[1] == 0, fmt("diamagnetic inequality: %.0f failures", failures[1]));
  o.require(failures[2] == 0 && min_gn_slack > 0.0,
            fmt("magnetic GN with C4 = 1/%.6f: %.0f failures, min slack %.3e", 1.0 / c4_constant(), failures[2],
                min_gn_slack));
  o.require(failures[4] == 0, fmt("negative-log bound (sqrt e/2) M: %.0f failures", failures[4]));
  o.note(fmt("observable chain failures %.0f, log estimate failures %.0f", failures[3], failures[5]));
  return o;
}

// 12: phase characterisation of Omega = 0 minimisers and the counterexample.
Outcome phase_characterisation() {
  Outcome o;
  const GridSpec g = GridSpec::make(8.0, 128);
  struct Case {
    double v0, rho;
    SeedKind seed;
  };
  const Case cases[] = {{0.0, 1.0, {SeedKind::Gaussian, 0.5}},
                        {0.2, 1.0, {SeedKind::Random, 0.5, 1, 3}},
                        {0.2, 2.5, {SeedKind::Gaussian, 0.3}},
                        {0.0, 0.5, {SeedKind::Random, 0.5, 1, 8}}};
  for (const auto& cs : cases) {
    Params p;
    p.v0 = cs.v0;
    p.rho = cs.rho;
    FlowConfig cfg;
    cfg.seed = cs.seed;
    const auto r = ground_state(p, g, cfg);
    const auto c = appendixB_phase_check(r.state);
    o.require(r.converged && c.passed(),
              fmt("V0=%.1f rho=%.1f: residual %.2e, min interior modulus %.2e", cs.v0, cs.rho, r.residual,
                  c.min_interior_modulus) +
                  fmt(", phase spread %.2e, seed ", c.phase_spread) + cs.seed.str());
  }
  const auto v = modulus_magnetic_counterexample(1.0, 10.0);
  o.require(v.rhs > v.lhs, fmt("|y| = 10, gamma = 1: rhs %.6f > lhs %.6f", v.rhs, v.lhs));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Gaussian golden values", gaussian_golden},
      {"vortex golden values", vortex_golden},
      {"divergence of E_Omega above critical rotation", nonexistence_divergence},
      {"conservation and Strang order (K3 = 0)", conservation},
      {"loss law and extinction (K3 > 0)", extinction},
      {"sub-critical ground state", subcritical},
      {"critical magnetic ground state vs Gaussian witness", critical_magnetic},
      {"radial critical solver", radial_critical},
      {"linear bottom eigenvalue", linear_bottom_check},
      {"orbital stability probe", stability},
      {"inequality suite on 100 random fields", inequalities},
      {"constant phase of minimisers and modulus counterexample", phase_characterisation},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::printf("%s %2zu %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), seconds_since(t0));
    for (const auto& n : o.notes) std::printf("        %s\n", n.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
