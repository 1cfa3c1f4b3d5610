#include "rotgpe/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

namespace rotgpe {

void EvolveConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error("evolve.dt must be > 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw Error("evolve.t_end must be >= 0");
  if (log_every < 1) throw Error("evolve.log_every must be >= 1");
}

SubstepResult nonlinear_substep(double y0, double tau, double k3, double v) {
  if (y0 <= 0.0) return {0.0, -v * tau};
  const double eps = 4.0 * k3 * y0 * y0 * tau;
  if (k3 == 0.0 || eps == 0.0) return {y0, -v * tau - tau * y0 * std::log(y0)};
  // u = 1 + 4 k3 y0^2 s; int u^{-1/2} ln u du = 2 sqrt(u) ln u - 4 sqrt(u)
  const double L = std::log1p(eps);
  const double s = std::expm1(0.5 * L);  // sqrt(1 + eps) - 1
  const double y = y0 / (1.0 + s);
  const double integral = (2.0 * s * std::log(y0) + 2.0 * s - (1.0 + s) * L) / (4.0 * k3 * y0);
  return {y, -v * tau - integral};
}

Stepper::Stepper(const GridSpec& g, const Params& p, double dt, bool linear_mode)
    : g_(g), p_(p), dt_(dt), linear_(linear_mode) {
  if (p.k3 > 0.0 && dt < 0.0) throw Error("negative time steps are not defined when k3 > 0");
  const double gm = p.gamma;
  double a, b;
  if (gm == 0.0) {
    a = dt / 4.0;
    b = dt / 2.0;
  } else {
    a = std::tan(gm * dt / 4.0) / gm;
    b = std::sin(gm * dt / 2.0) / gm;
  }
  drift_.resize(g.size());
  kick_.resize(g.size());
  kick2_.resize(g.size());
  bump_.assign(g.size(), 0.0);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      const auto q = ComplexField::idx(g, i, j);
      const double k1 = g.wavenumbers[i], k2 = g.wavenumbers[j];
      drift_[q] = std::polar(1.0, -0.5 * b * (k1 * k1 + k2 * k2));
      const double r2 = g.x(i) * g.x(i) + g.x(j) * g.x(j);
      const double u = 0.5 * gm * gm * r2;
      kick_[q] = std::polar(1.0, -a * u);
      kick2_[q] = std::polar(1.0, -2.0 * a * u);
      if (p.v0 != 0.0) bump_[q] = p.v0 * std::exp(-p.gamma0 * r2);
    }
}

void Stepper::step(ComplexField& f) const {
  const std::size_t N = g_.size();
  std::vector<cplx> hat(N);
  auto drift = [&] {
    detail::fft_forward(g_, f.values.data(), hat.data());
    for (std::size_t q = 0; q < N; ++q) hat[q] *= drift_[q];
    detail::fft_inverse(g_, hat.data(), f.values.data());
  };
  for (std::size_t q = 0; q < N; ++q) f.values[q] *= kick_[q];
  drift();
  const double k3 = linear_ ? 0.0 : p_.k3;
  for (std::size_t q = 0; q < N; ++q) {
    cplx v = f.values[q] * kick2_[q];
    const double y0 = std::norm(v);
    if (linear_) {
      v *= std::polar(1.0, -bump_[q] * dt_);
    } else if (y0 > 0.0) {
      const auto r = nonlinear_substep(y0, dt_, k3, bump_[q]);
      v *= std::polar(std::sqrt(r.y / y0), r.theta);
    }
    f.values[q] = v;
  }
  drift();
  for (std::size_t q = 0; q < N; ++q) f.values[q] *= kick_[q];
  f.frame_angle += p_.omega_rot * dt_;
}

ComplexField strang_step(const ComplexField& f, const Params& p, double dt, bool linear_mode) {
  ComplexField out = f;
  Stepper(f.grid, p, dt, linear_mode).step(out);
  return out;
}

namespace {

bool all_finite(const ComplexField& f) {
  for (const auto& v : f.values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

}  // namespace

Trajectory evolve(const ComplexField& f0, const Params& p, const EvolveConfig& cfg,
                  const StepCallback& on_step) {
  cfg.validate();
  if (!all_finite(f0)) throw NumericalAbort("non-finite initial state", 0);
  const Stepper stepper(f0.grid, p, cfg.dt, cfg.linear_mode);
  const long steps = std::lround(cfg.t_end / cfg.dt);
  Trajectory tr;
  tr.final_state = f0;
  ComplexField& f = tr.final_state;
  auto record = [&](long k) { tr.records.push_back(observe(f, p, k * cfg.dt)); };
  record(0);
  if (on_step) on_step(0, f);
  for (long k = 1; k <= steps; ++k) {
    stepper.step(f);
    if (!all_finite(f)) throw NumericalAbort("non-finite field after time step", k);
    if (!tr.boundary_warning && boundary_ratio(f) > 1e-10) {
      tr.boundary_warning = true;
      std::cerr << "warning: field reaches the domain boundary at step " << k << "\n";
    }
    if (k % cfg.log_every == 0 || k == steps) record(k);
    if (on_step) on_step(k, f);
  }
  return tr;
}

ExtinctionRecord extinction_experiment(const ComplexField& f0, const Params& p, const EvolveConfig& cfg) {
  // ||phi||_6^6 is integrated in time by the trapezoid rule over every step,
  // so the balance residual measures the scheme rather than the sampling.
  const long steps = std::lround(cfg.t_end / cfg.dt);
  ExtinctionRecord ex;
  double l6_prev = 0.0, l6_integral = 0.0, m_last = 0.0, t_last = 0.0;
  auto on_step = [&](long k, const ComplexField& s) {
    const double l6_now = l6(s);
    if (k == 0) {
      m_last = mass(s);
      l6_prev = l6_now;
      return;
    }
    l6_integral += 0.5 * cfg.dt * (l6_prev + l6_now);
    l6_prev = l6_now;
    if (k % cfg.log_every == 0 || k == steps) {
      const double t = k * cfg.dt, m = mass(s);
      const double residual = std::abs((m - m_last) + 2.0 * p.k3 * l6_integral) / (t - t_last);
      ex.max_loss_residual = std::max(ex.max_loss_residual, residual);
      m_last = m;
      t_last = t;
      l6_integral = 0.0;
    }
  };
  const Trajectory tr = evolve(f0, p, cfg, on_step);
  for (const auto& r : tr.records) {
    ex.times.push_back(r.t);
    ex.masses.push_back(r.mass);
  }
  const auto& rec = tr.records;
  ex.strictly_decreasing = true;
  for (std::size_t k = 1; k < rec.size(); ++k)
    if (!(rec[k].mass < rec[k - 1].mass)) ex.strictly_decreasing = false;

  // calibration sample: first record with t >= 1
  const double m0 = rec.front().mass;
  std::size_t k1 = 0;
  while (k1 < rec.size() && rec[k1].t < 1.0 - 1e-12) ++k1;
  if (k1 < rec.size() && m0 > 0.0) {
    const double t1 = rec[k1].t, m1 = rec[k1].mass;
    ex.fitted_c = (std::pow(m1, -4.0) - std::pow(m0, -4.0)) / (4.0 * t1);
    ex.dominated = true;
    for (std::size_t k = 0; k < rec.size(); ++k) {
      const double bound = std::pow(std::pow(m0, -4.0) + 4.0 * ex.fitted_c * rec[k].t, -0.25);
      ex.fitted_bound.push_back(bound);
      if (rec[k].t >= t1) {
        ex.sup_t14_mass = std::max(ex.sup_t14_mass, std::pow(rec[k].t, 0.25) * rec[k].mass);
        if (rec[k].mass > bound * (1.0 + 1e-12)) ex.dominated = false;
      }
    }
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (const auto& r : rec)
    if (r.t >= 10.0 && r.mass > 0.0) {
      const double x = std::log(r.t), y = std::log(r.mass);
      sx += x, sy += y, sxx += x * x, sxy += x * y;
      ++count;
    }
  if (count >= 2) ex.tail_slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  return ex;
}

}  // namespace rotgpe
