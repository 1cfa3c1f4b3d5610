#include "rotgpe/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <vector>

#include "rotgpe/evolve.hpp"
#include "rotgpe/functionals.hpp"
#include "rotgpe/minimize.hpp"
#include "rotgpe/random_field.hpp"
#include "rotgpe/trials.hpp"

namespace rotgpe {
namespace {

using std::numbers::pi;

struct Row {
  double expected, got, tol;
  bool relative;
};

struct Check {
  std::string name;
  std::function<Row()> run;
};

class Suite {
 public:
  explicit Suite(double scale) : scale_(scale) {}

  GridSpec grid(double hw, int n) const {
    GridSpec g = GridSpec::make(hw, n);
    g.quadrature_scale = scale_;
    return g;
  }

  void add(std::string name, std::function<Row()> fn) { checks_.push_back({std::move(name), std::move(fn)}); }

  int run(const std::string& filter, std::ostream& out) const {
    out << "check, expected, got, tol, pass\n";
    int failures = 0, ran = 0;
    std::string first;
    for (const auto& c : checks_) {
      if (!filter.empty() && c.name.find(filter) == std::string::npos) continue;
      ++ran;
      Row r{};
      bool pass = false;
      try {
        r = c.run();
        const double err = std::abs(r.got - r.expected);
        const double bound = r.relative ? r.tol * std::abs(r.expected) : r.tol;
        pass = std::isfinite(r.got) && err <= bound;
      } catch (const std::exception& e) {
        out << "# " << c.name << " threw: " << e.what() << "\n";
      }
      char buf[256];
      std::snprintf(buf, sizeof buf, "%s, %.12g, %.12g, %.1e%s, %s\n", c.name.c_str(), r.expected, r.got, r.tol,
                    r.relative ? " rel" : "", pass ? "PASS" : "FAIL");
      out << buf;
      if (!pass) {
        if (first.empty()) first = c.name;
        ++failures;
      }
    }
    out << ran - failures << "/" << ran << " checks passed\n";
    if (ran == 0) {
      out << "no check matches filter '" << filter << "'\n";
      return 1;
    }
    if (failures) {
      out << "first failing check: " << first << "\n";
      return 1;
    }
    return 0;
  }

 private:
  double scale_;
  std::vector<Check> checks_;
};

Row rel(double expected, double got, double tol) { return {expected, got, tol, true}; }
Row abs_(double expected, double got, double tol) { return {expected, got, tol, false}; }
Row flag(bool ok) { return {1.0, ok ? 1.0 : 0.0, 0.0, false}; }

void gaussian_checks(Suite& s) {
  Params p;
  p.gamma = 0.2;
  p.gamma0 = 1.0;
  p.v0 = 0.3;
  const GaussianTrial t{1.0, 0.5};
  auto field = [&s, t] { return gaussian_field(t, s.grid(12.0, 256)); };
  const auto m = gaussian_moments(t, p);
  s.add("gaussian.mass", [=] { return rel(m.mass, mass(field()), 1e-8); });
  s.add("gaussian.kinetic", [=] { return rel(m.kinetic, kinetic(field()), 1e-8); });
  s.add("gaussian.xmoment", [=] { return rel(m.xmoment, moment(field()), 1e-8); });
  s.add("gaussian.l4", [=] { return rel(m.l4, l4(field()), 1e-8); });
  s.add("gaussian.log_moment", [=] { return rel(m.log_moment, log_moment(field()), 1e-8); });
  s.add("gaussian.magnetic_kinetic", [=] { return rel(m.magnetic_kinetic, magnetic_kinetic(field(), p.gamma), 1e-8); });
  s.add("gaussian.potential", [=] { return rel(m.gauss_potential, potential_energy(field(), p), 1e-8); });
  s.add("gaussian.energy_magnetic", [=] {
    Params c;
    c.gamma = 0.2;
    c.omega_rot = c.gamma;
    return rel(0.27 * pi, energy_magnetic(field(), c), 1e-8);
  });
  s.add("gaussian.uncertainty_equality", [=] {
    const ComplexField f = field();
    return rel(mass(f), std::sqrt(kinetic(f) * moment(f)), 1e-10);
  });
}

void vortex_checks(Suite& s) {
  s.add("vortex.I(1,0)", [] { return rel(0.5, vortex_I(1.0, 0), 1e-15); });
  s.add("vortex.I(2,1)", [] { return rel(0.125, vortex_I(2.0, 1), 1e-15); });
  Params p;
  p.gamma = 1.0;
  p.gamma0 = 1.0;
  p.v0 = 0.2;
  for (int m : {0, 1, 3, 8}) {
    const VortexTrial t{m, 2.5, 1.0};
    auto field = [&s, t] {
      const double hw = std::max(8.0, t.support_radius() + 2.0);
      return vortex_field(t, s.grid(hw, 256));
    };
    const auto v = vortex_moments(t, p);
    const std::string pre = "vortex.m" + std::to_string(m) + ".";
    s.add(pre + "mass", [=] { return rel(v.mass, mass(field()), 1e-6); });
    s.add(pre + "kinetic", [=] { return rel(v.kinetic, kinetic(field()), 1e-6); });
    s.add(pre + "potential", [=] { return rel(v.potential, potential_energy(field(), p), 1e-6); });
    s.add(pre + "ang_mom", [=] { return abs_(v.ang_mom, angular_momentum(field()), 1e-6 * std::max(1.0, v.ang_mom)); });
    s.add(pre + "l6", [=] { return rel(v.l6, l6(field()), 1e-6); });
    s.add(pre + "log_moment", [=] { return rel(v.log_moment, log_moment(field()), 1e-6); });
  }
  s.add("vortex.lz_eigen_m3", [&s] {
    const ComplexField f = vortex_field({3, 1.0, 1.0}, s.grid(10.0, 256));
    const ComplexField lz = apply_Lz(f);
    double err = 0.0, peak = 0.0;
    for (std::size_t k = 0; k < f.values.size(); ++k) {
      err = std::max(err, std::abs(lz.values[k] - 3.0 * f.values[k]));
      peak = std::max(peak, std::abs(f.values[k]));
    }
    return abs_(0.0, err / peak, 1e-8);
  });
  s.add("vortex.divergence_slope", [] {
    Params q;
    q.gamma = 1.0;
    q.omega_rot = 2.0;
    const auto curve = vortex_energy_curve(q, 16);
    return rel(-1.0, curve[16].e_total - curve[15].e_total, 0.05);
  });
}

void identity_checks(Suite& s) {
  s.add("identity.grad_A_expansion", [&s] {
    const ComplexField f = random_band_limited(s.grid(12.0, 256), 11);
    const double g = 0.3;
    const double lhs = magnetic_kinetic(f, g);
    const double rhs = kinetic(f) + g * g * moment(f) - 2 * g * angular_momentum(f);
    return rel(lhs, rhs, 1e-10);
  });
  s.add("identity.energy_magnetic_form", [&s] {
    const ComplexField f = random_band_limited(s.grid(12.0, 256), 12);
    Params p;
    p.gamma = 0.4;
    p.omega_rot = p.gamma;
    p.v0 = 0.2;
    return rel(energy(f, p), energy_magnetic(f, p), 1e-9);
  });
  s.add("identity.S_minus_half_K", [&s] {
    const ComplexField f = random_band_limited(s.grid(12.0, 256), 13);
    Params p;
    const double w = 0.3;
    return rel(-0.5 * log_plain(f) - 0.25 * l4(f), action_S(f, p, w) - 0.5 * nehari_K(f, p, w), 1e-10);
  });
  s.add("identity.pohozaev_3_eq_1_minus_2x2", [&s] {
    const ComplexField f = random_band_limited(s.grid(12.0, 256), 14);
    Params p;
    p.v0 = 0.2;
    const auto r = pohozaev_residuals(f, p, 0.1);
    return abs_(0.0, std::abs(r.raw3 - (r.raw1 - 2 * r.raw2)) / (std::abs(r.raw1) + 2 * std::abs(r.raw2)), 1e-12);
  });
}

void threshold_checks(Suite& s) {
  s.add("threshold.H_b0", [] {
    const auto t = threshold_functions(0.1);
    return rel(t.H_at_b0, threshold_H(0.1, t.b0), 1e-12);
  });
  s.add("threshold.H_zero_at_gamma_critical", [] {
    const auto t = threshold_functions(0.1);
    return abs_(0.0, threshold_functions(t.gamma_critical).H_at_b0, 1e-15);
  });
  s.add("threshold.K_omega_witness", [&s] {
    Params p;
    p.gamma = 0.1;
    const double lambda = std::exp(-0.25);
    const ComplexField f = gaussian_field({lambda, 0.05}, s.grid(32.0, 256));
    const double expected = 2.0 - 1.0 / (0.1 * std::sqrt(std::numbers::e));
    return rel(expected, nehari_K(f, p, 0.0) / (lambda * lambda * pi), 1e-8);
  });
}

void cubic_checks(Suite& s) {
  s.add("cubicQ.residual", [] { return abs_(0.0, cubic_ground_state(1e-11).residual, 1e-10); });
  s.add("cubicQ.kinetic_eq_2mass", [] {
    const auto q = cubic_ground_state(1e-11);
    return rel(2.0 * q.l2_squared, q.kinetic, 1e-6);
  });
  s.add("cubicQ.l4_eq_2mass", [] {
    const auto q = cubic_ground_state(1e-11);
    return rel(2.0 * q.l2_squared, q.l4, 1e-6);
  });
  s.add("cubicQ.gn_ratio", [] {
    const auto q = cubic_ground_state(1e-11);
    return rel(q.l2_squared * c4_constant() * q.l2_squared, q.l4 * q.l2_squared / q.kinetic, 1e-6);
  });
}

void window_checks(Suite& s) {
  Params p;
  p.gamma = 0.1;
  s.add("window.trivial_omega_0.5", [=] { return flag(check_nonexistence_window(0.5, 0.1, p) == Verdict::MustBeTrivial); });
  s.add("window.admissible_near_minus_gamma",
        [=] { return flag(check_nonexistence_window(-0.09, 0.1, p) == Verdict::Admissible); });
  s.add("window.trivial_sum_above_inv_e",
        [=] { return flag(check_nonexistence_window(0.2, 0.2, p) == Verdict::MustBeTrivial); });
  s.add("dichotomy.half_split", [] { return rel(1.0 - std::log(2.0), dichotomy_constants(2.0, 1.0, 0.5).k1, 1e-14); });
  s.add("dichotomy.negative_when_c4rho_large", [] { return flag(dichotomy_constants(1.0, 0.5, 1.5).k1 < 0.0); });
}

void evolve_checks(Suite& s) {
  s.add("evolve.substep_decay", [] { return rel(0.5, nonlinear_substep(1.0, 3.0, 0.25, 0.0).y, 1e-15); });
  s.add("evolve.substep_small_k3", [] {
    const double a = nonlinear_substep(0.7, 1e-3, 1e-8, 0.2).theta;
    const double b = nonlinear_substep(0.7, 1e-3, 0.0, 0.2).theta;
    return abs_(b, a, 1e-10);
  });
  s.add("evolve.harmonic_phase", [&s] {
    Params p;
    p.gamma = 1.0;
    const ComplexField f0 = vortex_field({0, 1.0, 1.0}, s.grid(10.0, 128));
    EvolveConfig c;
    c.dt = 0.01;
    c.t_end = 1.0;
    c.log_every = 100;
    c.linear_mode = true;
    const auto tr = evolve(f0, p, c);
    const cplx ph = std::polar(1.0, -p.gamma * c.t_end);
    double err = 0.0;
    for (std::size_t k = 0; k < f0.values.size(); ++k)
      err = std::max(err, std::abs(tr.final_state.values[k] - ph * f0.values[k]));
    return abs_(0.0, err, 1e-8);
  });
  s.add("evolve.mass_step_k3_zero", [&s] {
    Params p;
    const ComplexField f = random_band_limited(s.grid(12.0, 128), 21);
    return rel(mass(f), mass(strang_step(f, p, 1e-2)), 1e-12);
  });
}

void linear_checks(Suite& s) {
  s.add("linear.omega0_equals_gamma", [&s] {
    Params p;
    p.gamma = 1.0;
    return abs_(1.0, linear_bottom(p, s.grid(10.0, 128)).omega_V0, 1e-8);
  });
}

void counterexample_checks(Suite& s) {
  s.add("counterexample.lhs_y10", [] { return rel(pi * 1.25, modulus_magnetic_counterexample(1.0, 10.0).lhs, 1e-8); });
  s.add("counterexample.rhs_exceeds_lhs", [] {
    const auto v = modulus_magnetic_counterexample(1.0, 10.0);
    return flag(v.rhs > v.lhs);
  });
}

}  // namespace

int verify_suite(const VerifyOptions& opt, std::ostream& out) {
  Suite s(opt.quadrature_scale);
  gaussian_checks(s);
  vortex_checks(s);
  identity_checks(s);
  threshold_checks(s);
  cubic_checks(s);
  window_checks(s);
  evolve_checks(s);
  linear_checks(s);
  counterexample_checks(s);
  return s.run(opt.filter, out);
}

}  // namespace rotgpe
