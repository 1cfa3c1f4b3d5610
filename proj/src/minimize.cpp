#include "rotgpe/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>

#include "rotgpe/evolve.hpp"
#include "rotgpe/functionals.hpp"
#include "rotgpe/random_field.hpp"
#include "rotgpe/trials.hpp"

namespace rotgpe {

SeedKind SeedKind::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error("seed must look like kind:value, got '" + text + "'");
  const std::string kind = text.substr(0, colon), value = text.substr(colon + 1);
  SeedKind s;
  try {
    std::size_t used = 0;
    if (kind == "gaussian") {
      s.kind = Gaussian;
      s.b = std::stod(value, &used);
      if (!(s.b > 0.0)) throw Error("gaussian seed needs b > 0");
    } else if (kind == "vortex") {
      s.kind = Vortex;
      s.m = std::stoi(value, &used);
      if (s.m < 0) throw Error("vortex seed needs m >= 0");
    } else if (kind == "random") {
      s.kind = Random;
      s.seed = std::stoull(value, &used);
    } else {
      throw Error("unknown seed kind '" + kind + "'");
    }
    if (used != value.size()) throw Error("trailing characters in seed '" + text + "'");
  } catch (const std::logic_error&) {
    throw Error("bad seed value in '" + text + "'");
  }
  return s;
}

std::string SeedKind::str() const {
  switch (kind) {
    case Gaussian: return "gaussian:" + std::to_string(b);
    case Vortex: return "vortex:" + std::to_string(m);
    case Random: return "random:" + std::to_string(seed);
  }
  return "?";
}

void FlowConfig::validate() const {
  if (!(tau > 0.0)) throw Error("flow.tau must be > 0");
  if (!(tol_energy > 0.0 && tol_energy < 1e-2)) throw Error("flow.tol_energy must lie in (0, 1e-2)");
  if (!(tol_residual > 0.0 && tol_residual < 1e-2)) throw Error("flow.tol_residual must lie in (0, 1e-2)");
  if (max_iter < 1) throw Error("flow.max_iter must be >= 1");
}

ComplexField seed_field(const SeedKind& s, const Params& p, const GridSpec& g) {
  switch (s.kind) {
    case SeedKind::Gaussian: return gaussian_field({1.0, s.b}, g);
    case SeedKind::Vortex: return vortex_field({s.m, p.rho, p.gamma > 0 ? p.gamma : 1.0}, g);
    case SeedKind::Random: {
      // a positive bump keeps the random seed away from the zero field
      ComplexField f = random_band_limited(g, s.seed);
      const ComplexField base = gaussian_field({1.0, 0.5}, g);
      const double scale = std::sqrt(mass(base) / std::max(mass(f), 1e-300));
      for (std::size_t k = 0; k < g.size(); ++k) f.values[k] = base.values[k] + 0.5 * scale * f.values[k];
      return f;
    }
  }
  throw Error("unreachable seed kind");
}

namespace {

double dot_re(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
  return s;
}

// Discrete energy and gradient on the periodic grid.
class Operator2D {
 public:
  Operator2D(const Params& p, const GridSpec& g, bool linear) : p_(p), g_(g), linear_(linear) {
    V_.resize(g.size());
    D_.resize(g.size());
    alpha_ = std::max(p.gamma, 0.05);
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) {
        const auto q = ComplexField::idx(g, i, j);
        V_[q] = p.potential(g.x(i) * g.x(i) + g.x(j) * g.x(j));
        D_[q] = std::sqrt(alpha_ / (alpha_ + V_[q]));
      }
  }

  struct Eval {
    ComplexField Hf;
    double energy = 0, mass = 0, mu = 0;
  };

  Eval eval(const ComplexField& f) const {
    const double nyq = g_.wavenumbers[g_.n / 2];
    auto kd = [nyq](double k) { return k == nyq ? 0.0 : k; };
    Eval e;
    e.Hf = fourier_multiply(f, [&](double k1, double k2) { return 0.5 * (kd(k1) * kd(k1) + kd(k2) * kd(k2)); });
    const double dA = g_.cell_area();
    double kin = dot_re(f.values, e.Hf.values), pot = 0.0, nl = 0.0, m = 0.0;
    for (std::size_t q = 0; q < g_.size(); ++q) {
      const cplx v = f.values[q];
      const double y = std::norm(v);
      m += y;
      pot += V_[q] * y;
      double w = V_[q];
      if (!linear_ && y > 0.0) {
        const double ly = std::log(y);
        nl += y * y * (ly - 0.5);
        w += y * ly;
      }
      e.Hf.values[q] += w * v;
    }
    double rot = 0.0;
    if (p_.omega_rot != 0.0) {
      const ComplexField lz = apply_Lz(f);
      rot = dot_re(f.values, lz.values);
      for (std::size_t q = 0; q < g_.size(); ++q) e.Hf.values[q] -= p_.omega_rot * lz.values[q];
    }
    e.mass = m * dA;
    e.energy = (kin + pot + 0.5 * nl - p_.omega_rot * rot) * dA;
    e.mu = dot_re(f.values, e.Hf.values) * dA / e.mass;
    return e;
  }

  ComplexField precondition(const ComplexField& x) const {
    ComplexField y = x;
    for (std::size_t q = 0; q < g_.size(); ++q) y.values[q] *= D_[q];
    y = fourier_multiply(y, [&](double k1, double k2) { return 1.0 / (alpha_ + 0.5 * (k1 * k1 + k2 * k2)); });
    for (std::size_t q = 0; q < g_.size(); ++q) y.values[q] *= D_[q];
    return y;
  }

  double inner(const ComplexField& a, const ComplexField& b) const {
    return dot_re(a.values, b.values) * g_.cell_area();
  }

 private:
  Params p_;
  GridSpec g_;
  bool linear_;
  double alpha_;
  std::vector<double> V_, D_;
};

void rescale(ComplexField& f, double target_mass) {
  const double m = mass(f);
  if (!(m > 0.0)) throw Error("cannot normalise the zero field");
  f *= std::sqrt(target_mass / m);
}

GroundStateResult run_flow(const Params& p, const GridSpec& g, const FlowConfig& cfg, ComplexField f,
                           double target_mass, bool linear) {
  cfg.validate();
  const Operator2D op(p, g, linear);
  rescale(f, target_mass);
  auto ev = op.eval(f);
  double tau = cfg.tau, last_drop = std::numeric_limits<double>::infinity();
  GroundStateResult res;
  for (int it = 0;; ++it) {
    ComplexField r = ev.Hf;
    for (std::size_t q = 0; q < g.size(); ++q) r.values[q] -= ev.mu * f.values[q];
    res.residual = std::sqrt(op.inner(r, r) / ev.mass);
    res.iterations = it;
    if (res.residual < cfg.tol_residual && last_drop < cfg.tol_energy) {
      res.converged = true;
      break;
    }
    if (it >= cfg.max_iter) break;

    ComplexField d = op.precondition(r);
    const ComplexField pf = op.precondition(f);
    const double c = op.inner(f, d) / op.inner(f, pf);
    for (std::size_t q = 0; q < g.size(); ++q) d.values[q] -= c * pf.values[q];

    const double allowed = 1e-12 * std::max(std::abs(ev.energy), 1e-300);
    bool first_try = true;
    for (;;) {
      ComplexField fn = f;
      for (std::size_t q = 0; q < g.size(); ++q) fn.values[q] -= tau * d.values[q];
      rescale(fn, target_mass);
      auto en = op.eval(fn);
      if (en.energy <= ev.energy + allowed) {
        last_drop = std::abs(ev.energy - en.energy) / std::max(std::abs(en.energy), 1e-300);
        f = std::move(fn);
        ev = std::move(en);
        break;
      }
      first_try = false;
      tau *= 0.5;
      if (tau < 1e-14) throw NumericalAbort("gradient flow: energy increases for every step size", it);
    }
    if (first_try) tau = std::min(cfg.tau, tau * 1.25);
  }
  res.state = std::move(f);
  res.energy = ev.energy;
  res.omega = -ev.mu;
  res.negative_energy = res.energy < 0.0;
  return res;
}

}  // namespace

GroundStateResult ground_state(const Params& p, const GridSpec& g, const FlowConfig& cfg) {
  p.validate();
  switch (p.regime()) {
    case Regime::Super:
      throw NonexistenceRegime("no minimiser exists for Omega > gamma: the energy is unbounded below");
    case Regime::Critical:
      throw RegimeMismatch("ground_state handles Omega < gamma; use ground_state_magnetic");
    case Regime::Sub: break;
  }
  return run_flow(p, g, cfg, seed_field(cfg.seed, p, g), p.rho, false);
}

GroundStateResult ground_state_magnetic(const Params& p, const GridSpec& g, const FlowConfig& cfg) {
  p.validate();
  if (p.regime() != Regime::Critical) throw RegimeMismatch("ground_state_magnetic requires Omega == gamma");
  if (p.v0 != 0.0) throw RegimeMismatch("ground_state_magnetic requires V0 == 0");
  const double qmass = 1.0 / c4_constant();
  if (p.rho > qmass)
    std::cerr << "warning: rho = " << p.rho << " exceeds ||Q||^2 = " << qmass << "\n";
  return run_flow(p, g, cfg, seed_field(cfg.seed, p, g), p.rho, false);
}

LinearBottom linear_bottom(const Params& p, const GridSpec& g, double tol) {
  Params q = p;
  q.omega_rot = 0.0;
  FlowConfig cfg;
  cfg.tol_residual = tol;
  cfg.tol_energy = 1e-15;
  cfg.max_iter = 50000;
  cfg.seed.kind = SeedKind::Gaussian;
  cfg.seed.b = std::max(p.gamma, 0.05) / 2.0;
  auto r = run_flow(q, g, cfg, seed_field(cfg.seed, q, g), 1.0, true);
  LinearBottom out;
  out.omega_V0 = r.energy;
  out.eigenfunction = std::move(r.state);
  out.residual = r.residual;
  out.iterations = r.iterations;
  return out;
}

double extract_omega(const ComplexField& phi, const Params& p) {
  const double m = mass(phi);
  if (!(m > 0.0)) throw Error("extract_omega: zero mass");
  double num = -0.5 * kinetic(phi) - potential_energy(phi, p) - log_plain(phi);
  if (p.omega_rot != 0.0) num += p.omega_rot * angular_momentum(phi);
  return num / m;
}

// ---------------------------------------------------------------- radial

namespace {

struct Radial {
  int m;
  double h;
  std::vector<double> r, w, a, V;
  bool linear = false;

  Radial(const Params& p, double r_max, int m_) : m(m_), h(r_max / m_) {
    r.resize(m);
    w.resize(m);
    a.resize(m);
    V.resize(m);
    for (int j = 0; j < m; ++j) {
      r[j] = (j + 0.5) * h;
      w[j] = 2.0 * std::numbers::pi * r[j] * h;
      a[j] = 2.0 * std::numbers::pi * (j + 1);  // 2 pi r_{j+1/2} / h
      V[j] = p.potential(r[j] * r[j]);
    }
  }

  double dot(const std::vector<double>& x, const std::vector<double>& y) const {
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += w[j] * x[j] * y[j];
    return s;
  }

  // kinetic part of H, f_m = 0 beyond the last cell
  double kin_apply(const std::vector<double>& f, int j) const {
    const double left = j > 0 ? a[j - 1] * (f[j] - f[j - 1]) : 0.0;
    const double right = a[j] * ((j + 1 < m ? f[j + 1] : 0.0) - f[j]);
    return (left - right) / (2.0 * w[j]);
  }

  struct Eval {
    std::vector<double> Hf;
    double energy = 0, mass = 0, mu = 0, kinetic = 0, potential = 0;
  };

  Eval eval(const std::vector<double>& f) const {
    Eval e;
    e.Hf.resize(m);
    double kin = 0.0, pot = 0.0, nl = 0.0, ms = 0.0;
    for (int j = 0; j < m; ++j) {
      const double df = (j + 1 < m ? f[j + 1] : 0.0) - f[j];
      kin += 0.5 * a[j] * df * df;
      const double y = f[j] * f[j];
      ms += w[j] * y;
      pot += w[j] * V[j] * y;
      double hv = kin_apply(f, j) + V[j] * f[j];
      if (!linear && y > 0.0) {
        nl += 0.5 * w[j] * y * y * (std::log(y) - 0.5);
        hv += y * std::log(y) * f[j];
      }
      e.Hf[j] = hv;
    }
    e.kinetic = kin;
    e.potential = pot;
    e.mass = ms;
    e.energy = kin + pot + nl;
    e.mu = dot(f, e.Hf) / ms;
    return e;
  }

  // (alpha + kinetic + V)^{-1} by the Thomas algorithm
  std::vector<double> precondition(const std::vector<double>& rhs, double alpha) const {
    std::vector<double> lo(m), di(m), up(m), x(rhs);
    for (int j = 0; j < m; ++j) {
      lo[j] = j > 0 ? -a[j - 1] / (2.0 * w[j]) : 0.0;
      up[j] = j + 1 < m ? -a[j] / (2.0 * w[j]) : 0.0;
      di[j] = ((j > 0 ? a[j - 1] : 0.0) + a[j]) / (2.0 * w[j]) + V[j] + alpha;
    }
    for (int j = 1; j < m; ++j) {
      const double f = lo[j] / di[j - 1];
      di[j] -= f * up[j - 1];
      x[j] -= f * x[j - 1];
    }
    x[m - 1] /= di[m - 1];
    for (int j = m - 2; j >= 0; --j) x[j] = (x[j] - up[j] * x[j + 1]) / di[j];
    return x;
  }
};

}  // namespace

RadialGroundStateResult ground_state_radial(const Params& p, const FlowConfig& cfg, double r_max, int m) {
  p.validate();
  cfg.validate();
  if (m < 16) throw Error("ground_state_radial: need at least 16 cells");
  Params q = p;
  q.omega_rot = 0.0;  // |grad_A f|^2 = |f'|^2 + gamma^2 r^2 |f|^2 for radial f
  const Radial R(q, r_max, m);
  const double b = cfg.seed.kind == SeedKind::Gaussian ? cfg.seed.b : std::max(p.gamma, 0.05) / 2.0;
  std::vector<double> f(m);
  for (int j = 0; j < m; ++j) f[j] = std::exp(-b * R.r[j] * R.r[j]);
  auto normalise = [&](std::vector<double>& x) {
    const double s = std::sqrt(p.rho / R.dot(x, x));
    for (double& v : x) v *= s;
  };
  normalise(f);
  const double alpha = std::max(p.gamma, 0.05);
  auto ev = R.eval(f);
  double tau = cfg.tau, last_drop = std::numeric_limits<double>::infinity();
  RadialGroundStateResult res;
  for (int it = 0;; ++it) {
    std::vector<double> r(m);
    for (int j = 0; j < m; ++j) r[j] = ev.Hf[j] - ev.mu * f[j];
    res.residual = std::sqrt(R.dot(r, r) / ev.mass);
    res.iterations = it;
    if (res.residual < cfg.tol_residual && last_drop < cfg.tol_energy) {
      res.converged = true;
      break;
    }
    if (it >= cfg.max_iter) break;
    std::vector<double> d = R.precondition(r, alpha);
    const std::vector<double> pf = R.precondition(f, alpha);
    const double c = R.dot(f, d) / R.dot(f, pf);
    for (int j = 0; j < m; ++j) d[j] -= c * pf[j];
    const double allowed = 1e-12 * std::max(std::abs(ev.energy), 1e-300);
    bool first_try = true;
    for (;;) {
      std::vector<double> fn(m);
      for (int j = 0; j < m; ++j) fn[j] = f[j] - tau * d[j];
      normalise(fn);
      auto en = R.eval(fn);
      if (en.energy <= ev.energy + allowed) {
        last_drop = std::abs(ev.energy - en.energy) / std::max(std::abs(en.energy), 1e-300);
        f = std::move(fn);
        ev = std::move(en);
        break;
      }
      first_try = false;
      tau *= 0.5;
      if (tau < 1e-14) throw NumericalAbort("radial flow: energy increases for every step size", it);
    }
    if (first_try) tau = std::min(cfg.tau, tau * 1.25);
  }
  res.state = RadialField(r_max, m);
  res.state.values = f;
  res.energy = ev.energy;
  res.omega = -ev.mu;
  res.mass = ev.mass;
  res.magnetic_kinetic = 2.0 * ev.kinetic + p.gamma * p.gamma * [&] {
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += R.w[j] * R.r[j] * R.r[j] * f[j] * f[j];
    return s;
  }();
  res.negative_energy = res.energy < 0.0;
  return res;
}

ComplexField lift_radial(const RadialField& f, const GridSpec& g) {
  const int m = f.m;
  const double h = f.h();
  auto val = [&](int k) {
    if (k < 0) k = -1 - k;
    return k < m ? f.values[k] : 0.0;
  };
  return ComplexField::sample(g, [&](double x1, double x2) {
    const double s = std::sqrt(x1 * x1 + x2 * x2) / h - 0.5;
    const int j = static_cast<int>(std::floor(s));
    if (j >= m) return cplx(0.0, 0.0);
    const double t = s - j;
    // cubic Lagrange through j-1 .. j+2
    const double c0 = -t * (t - 1) * (t - 2) / 6, c1 = (t + 1) * (t - 1) * (t - 2) / 2;
    const double c2 = -(t + 1) * t * (t - 2) / 2, c3 = (t + 1) * t * (t - 1) / 6;
    return cplx(c0 * val(j - 1) + c1 * val(j) + c2 * val(j + 1) + c3 * val(j + 2), 0.0);
  });
}

// ---------------------------------------------------------------- orbits

namespace {

struct NormParts {
  ComplexField f, d1, d2;
};

NormParts parts(const ComplexField& f, OrbitNorm norm, double gamma) {
  auto [a, b] = norm == OrbitNorm::Sigma ? gradient(f) : apply_grad_A(f, gamma);
  return {f, std::move(a), std::move(b)};
}

cplx inner_c(const ComplexField& a, const ComplexField& b) {
  cplx s = 0.0;
  for (std::size_t k = 0; k < a.values.size(); ++k) s += std::conj(a.values[k]) * b.values[k];
  return s * a.grid.cell_area();
}

cplx norm_inner(const NormParts& a, const NormParts& b, OrbitNorm norm) {
  cplx s = inner_c(a.f, b.f) + inner_c(a.d1, b.d1) + inner_c(a.d2, b.d2);
  if (norm == OrbitNorm::Sigma) {
    const GridSpec& g = a.f.grid;
    cplx x = 0.0;
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) {
        const auto q = ComplexField::idx(g, i, j);
        x += (g.x(i) * g.x(i) + g.x(j) * g.x(j)) * std::conj(a.f.values[q]) * b.f.values[q];
      }
    s += x * g.cell_area();
  }
  return s;
}

}  // namespace

double orbit_distance(const ComplexField& u, const ComplexField& phi, OrbitNorm norm, double gamma) {
  if (!u.grid.same_as(phi.grid)) throw GridMismatch("orbit_distance: fields live on different grids");
  const NormParts pu = parts(u, norm, gamma), pp = parts(phi, norm, gamma);
  const cplx z = norm_inner(pp, pu, norm);
  const cplx phase = std::abs(z) > 0.0 ? z / std::abs(z) : cplx(1.0, 0.0);
  const ComplexField diff = u - phase * phi;
  const NormParts pd = parts(diff, norm, gamma);
  return std::sqrt(std::max(0.0, norm_inner(pd, pd, norm).real()));
}

StabilityReport stability_probe_from(const GroundStateResult& gs, const Params& p, double delta, double t_end,
                                     double dt, int sample_every, std::uint64_t perturbation_seed) {
  if (p.k3 != 0.0) throw Error("stability_probe requires k3 == 0");
  if (p.regime() == Regime::Super) throw NonexistenceRegime("stability_probe: no ground state for Omega > gamma");
  StabilityReport rep;
  rep.ground = gs;
  const ComplexField& phi = gs.state;
  ComplexField u0 = phi;
  if (delta != 0.0) {
    ComplexField pert = random_band_limited(phi.grid, perturbation_seed);
    const double sn = std::sqrt(mass(pert) + kinetic(pert) + moment(pert));
    for (std::size_t k = 0; k < u0.values.size(); ++k) u0.values[k] += (delta / sn) * pert.values[k];
  }
  const double lz = std::sqrt(mass(apply_Lz(phi)));
  rep.rotating_frame = lz < 1e-8 * std::sqrt(mass(phi));
  EvolveConfig ec;
  ec.dt = dt;
  ec.t_end = t_end;
  ec.log_every = sample_every;
  evolve(u0, p, ec, [&](long step, const ComplexField& s) {
    if (step % sample_every != 0) return;
    const double t = step * dt;
    const double d = rep.rotating_frame
                         ? orbit_distance(s, phi, OrbitNorm::Sigma)
                         : orbit_distance(rotate_frame(s, -p.omega_rot * t), phi, OrbitNorm::Sigma);
    rep.trace.emplace_back(t, d);
    rep.sup_orbit_distance = std::max(rep.sup_orbit_distance, d);
  });
  return rep;
}

StabilityReport stability_probe(const Params& p, const GridSpec& g, const FlowConfig& cfg, double delta,
                                double t_end, double dt, int sample_every, std::uint64_t perturbation_seed) {
  GroundStateResult gs = p.regime() == Regime::Critical ? ground_state_magnetic(p, g, cfg) : ground_state(p, g, cfg);
  return stability_probe_from(gs, p, delta, t_end, dt, sample_every, perturbation_seed);
}

PhaseCheck appendixB_phase_check(const ComplexField& phi) {
  const GridSpec& g = phi.grid;
  PhaseCheck pc;
  double peak = 0.0;
  std::size_t arg_peak = 0;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (std::abs(phi.values[k]) > peak) peak = std::abs(phi.values[k]), arg_peak = k;
  if (peak == 0.0) return pc;
  pc.phase = std::arg(phi.values[arg_peak]);
  const cplx unwind = std::polar(1.0, -pc.phase);
  pc.min_interior_modulus = peak;
  pc.positive_modulus = true;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      const cplx v = phi.at(i, j);
      const double a = std::abs(v);
      if (std::abs(g.x(i)) <= 0.5 * g.half_width && std::abs(g.x(j)) <= 0.5 * g.half_width) {
        pc.min_interior_modulus = std::min(pc.min_interior_modulus, a);
        if (!(a > 0.0)) pc.positive_modulus = false;
      }
      // far tails carry a phase the flow leaves undetermined, about residual / |phi|
      if (a > 1e-3 * peak) pc.phase_spread = std::max(pc.phase_spread, std::abs(std::arg(v * unwind)));
    }
  pc.constant_phase = pc.phase_spread <= 1e-4;
  return pc;
}

}  // namespace rotgpe
