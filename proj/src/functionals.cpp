#include "rotgpe/functionals.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cstdio>
#include <numbers>

#include "rotgpe/trials.hpp"

namespace rotgpe {
namespace {

const double kSqrtE = std::sqrt(std::numbers::e);

// y^2 ln(y / sqrt e) with 0 ln 0 = 0, y = |f|^2
double log_density(double y) { return y > 0.0 ? y * y * (std::log(y) - 0.5) : 0.0; }

double norm2(const ComplexField& f) {
  return integrate(f, [](double, double, cplx v) { return std::norm(v); });
}

}  // namespace

double mass(const ComplexField& f) { return norm2(f); }

double angular_momentum(const ComplexField& f) {
  const ComplexField lz = apply_Lz(f);
  const GridSpec& g = f.grid;
  cplx s = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) s += std::conj(f.values[k]) * lz.values[k];
  s *= g.cell_area();
  const double m = mass(f);
  if (std::abs(s.imag()) > 1e-9 * std::max(m, 1e-300) && std::abs(s.imag()) > 1e-300)
    throw Error("angular_momentum: imaginary part " + std::to_string(s.imag()) +
                " exceeds 1e-9 of the mass; field is corrupted");
  return s.real();
}

double kinetic(const ComplexField& f) {
  const GridSpec& g = f.grid;
  std::vector<cplx> hat(g.size());
  detail::fft_forward(g, f.values.data(), hat.data());
  auto kd = [&](int j) { return j == g.n / 2 ? 0.0 : g.wavenumbers[j]; };
  double s = 0.0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      s += (kd(i) * kd(i) + kd(j) * kd(j)) * std::norm(hat[ComplexField::idx(g, i, j)]);
  return s * g.cell_area() / static_cast<double>(g.size());
}

double magnetic_kinetic(const ComplexField& f, double gamma) {
  auto [a1, a2] = apply_grad_A(f, gamma);
  return norm2(a1) + norm2(a2);
}

double moment(const ComplexField& f) {
  return integrate(f, [](double x1, double x2, cplx v) { return (x1 * x1 + x2 * x2) * std::norm(v); });
}

double potential_energy(const ComplexField& f, const Params& p) {
  return integrate(f, [&](double x1, double x2, cplx v) {
    return p.potential(x1 * x1 + x2 * x2) * std::norm(v);
  });
}

double bump_energy(const ComplexField& f, const Params& p) {
  if (p.v0 == 0.0) return 0.0;
  return integrate(f, [&](double x1, double x2, cplx v) {
    return p.v0 * std::exp(-p.gamma0 * (x1 * x1 + x2 * x2)) * std::norm(v);
  });
}

double l4(const ComplexField& f) {
  return integrate(f, [](double, double, cplx v) { return std::pow(std::norm(v), 2); });
}

double l6(const ComplexField& f) {
  return integrate(f, [](double, double, cplx v) { return std::pow(std::norm(v), 3); });
}

double log_moment(const ComplexField& f) {
  return integrate(f, [](double, double, cplx v) { return log_density(std::norm(v)); });
}

double log_plain(const ComplexField& f) {
  return integrate(f, [](double, double, cplx v) {
    const double y = std::norm(v);
    return y > 0.0 ? y * y * std::log(y) : 0.0;
  });
}

double energy0(const ComplexField& f, const Params& p) {
  return 0.5 * kinetic(f) + potential_energy(f, p) + 0.5 * log_moment(f);
}

double energy(const ComplexField& f, const Params& p) {
  const double e = energy0(f, p);
  return p.omega_rot == 0.0 ? e : e - p.omega_rot * angular_momentum(f);
}

double energy_magnetic(const ComplexField& f, const Params& p) {
  if (p.regime() != Regime::Critical)
    throw RegimeMismatch("energy_magnetic requires omega == gamma");
  return 0.5 * magnetic_kinetic(f, p.gamma) + bump_energy(f, p) + 0.5 * log_moment(f);
}

double quadratic_form_B(const ComplexField& f, const Params& p) {
  double b = kinetic(f) + 2.0 * potential_energy(f, p);
  if (p.omega_rot != 0.0) b -= 2.0 * p.omega_rot * angular_momentum(f);
  return b;
}

double action_S(const ComplexField& f, const Params& p, double omega) {
  return 0.5 * kinetic(f) + omega * mass(f) + potential_energy(f, p) + 0.5 * log_moment(f);
}

double nehari_K(const ComplexField& f, const Params& p, double omega) {
  return kinetic(f) + 2.0 * omega * mass(f) + 2.0 * potential_energy(f, p) + 2.0 * log_plain(f);
}

double pseudo_energy(const ComplexField& f, const Params& p, double k) {
  if (k < 0.0) throw Error("pseudo_energy: k must be >= 0");
  return energy0(f, p) + k * l6(f);
}

double PohozaevReport::max() const { return std::max({r1, r2, r3}); }

PohozaevReport pohozaev_residuals(const ComplexField& phi, const Params& p, double omega) {
  const double K = kinetic(phi), M = mass(phi), P = potential_energy(phi, p);
  const double Nln = log_plain(phi), L4 = l4(phi);
  const double X = integrate(phi, [&](double x1, double x2, cplx v) {
    return p.x_grad_potential(x1 * x1 + x2 * x2) * std::norm(v);
  });
  const double Ne = Nln - 0.5 * L4;

  auto normalized = [](double raw, std::initializer_list<double> terms) {
    double s = 0.0;
    for (double t : terms) s += std::abs(t);
    return s > 0.0 ? std::abs(raw) / s : 0.0;
  };
  PohozaevReport r;
  r.raw1 = 0.5 * K + omega * M + P + Nln;
  r.raw2 = omega * M + P + 0.5 * X + 0.5 * Ne;
  r.raw3 = 0.5 * K + 0.5 * L4 - omega * M - P - X;
  r.r1 = normalized(r.raw1, {0.5 * K, omega * M, P, Nln});
  r.r2 = normalized(r.raw2, {omega * M, P, 0.5 * X, 0.5 * Ne});
  r.r3 = normalized(r.raw3, {0.5 * K, 0.5 * L4, omega * M, P, X});
  return r;
}

Verdict check_nonexistence_window(double omega, double omega_V0, const Params& p) {
  const double e = std::numbers::e;
  if (omega >= 1.0 / (2.0 * kSqrtE) + p.v0 / (e * e)) return Verdict::MustBeTrivial;
  if (omega + omega_V0 > 1.0 / e) return Verdict::MustBeTrivial;
  return Verdict::Admissible;
}

DichotomyConstants dichotomy_constants(double rho, double a, double c4) {
  if (!(a > 0.0 && a < rho)) throw Error("dichotomy_constants: need 0 < a < rho");
  if (!(c4 > 0.0)) throw Error("dichotomy_constants: need c4 > 0");
  auto k = [&](double part) { return (rho / part - 1.0) / (c4 * rho) - std::log(rho / part); };
  return {k(a), k(rho - a)};
}

double est_log_constant() {
  static const double value = [] {
    auto g = [](double t) {
      const double y = std::exp(t);
      return y * y * std::abs(std::log(y) - 0.5) / (std::pow(y, 1.5) + std::pow(y, 2.5));
    };
    double best_t = 0.0, best = -1.0;
    for (int i = 0; i <= 60000; ++i) {
      const double t = -30.0 + i * 1e-3;
      if (g(t) > best) best = g(t), best_t = t;
    }
    auto neg = [&](double t) { return -g(t); };
    auto r = boost::math::tools::brent_find_minima(neg, best_t - 2e-3, best_t + 2e-3, 52);
    return -r.second;
  }();
  return value;
}

double modulus_gradient_fd(const ComplexField& f, int step) {
  const GridSpec& g = f.grid;
  const int n = g.n;
  std::vector<double> a(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) a[k] = std::abs(f.values[k]);
  auto at = [&](int i, int j) { return a[ComplexField::idx(g, (i + n) % n, (j + n) % n)]; };
  const double inv = 1.0 / (2.0 * step * g.dx);
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double d1 = (at(i + step, j) - at(i - step, j)) * inv;
      const double d2 = (at(i, j + step) - at(i, j - step)) * inv;
      s += d1 * d1 + d2 * d2;
    }
  return s * g.cell_area();
}

bool InequalityReport::all() const {
  return uncertainty.holds && diamagnetic.holds && magnetic_gn.holds && obs_chain.holds &&
         negative_log.holds && est_log.holds;
}

InequalityReport inequality_suite(const ComplexField& f, const Params& p) {
  InequalityReport r;
  const double M = mass(f), K = kinetic(f), X = moment(f);
  const double KA = magnetic_kinetic(f, p.gamma);
  const double rel = 1e-12 * std::max(1.0, M);

  r.uncertainty = {"uncertainty", M, std::sqrt(K * X), false};
  r.uncertainty.holds = r.uncertainty.lhs <= r.uncertainty.rhs + rel;

  const double nh = modulus_gradient_fd(f, 1), n2h = modulus_gradient_fd(f, 2);
  r.diamagnetic = {"diamagnetic", std::sqrt(nh), std::sqrt(KA), false};
  r.diamagnetic.holds = r.diamagnetic.lhs <= r.diamagnetic.rhs + std::abs(std::sqrt(nh) - std::sqrt(n2h));

  r.magnetic_gn = {"magnetic_gn", l4(f), c4_constant() * KA * M, false};
  r.magnetic_gn.holds = r.magnetic_gn.lhs < r.magnetic_gn.rhs;

  if (p.gamma > 0.0) {
    r.obs_chain = {"obs_chain", M, (0.5 * K + potential_energy(f, p)) / p.gamma, false};
    r.obs_chain.holds = r.obs_chain.lhs <= r.obs_chain.rhs + rel;
  } else {
    r.obs_chain = {"obs_chain", 0.0, 0.0, true};
  }

  const double neg = 0.5 * integrate(f, [](double, double, cplx v) {
    const double y = std::norm(v);
    return (y > 0.0 && y < kSqrtE) ? y * y * (0.5 - std::log(y)) : 0.0;
  });
  r.negative_log = {"negative_log", neg, 0.5 * kSqrtE * M, false};
  r.negative_log.holds = neg <= r.negative_log.rhs + rel;

  const double l3 = integrate(f, [](double, double, cplx v) { return std::pow(std::abs(v), 3); });
  const double l5 = integrate(f, [](double, double, cplx v) { return std::pow(std::abs(v), 5); });
  r.est_log = {"est_log", std::abs(log_moment(f)), est_log_constant() * (l3 + l5), false};
  r.est_log.holds = r.est_log.lhs <= r.est_log.rhs + rel;
  return r;
}

ObservableRecord observe(const ComplexField& f, const Params& p, double t) {
  ObservableRecord r;
  r.t = t;
  r.mass = mass(f);
  r.ang_mom = angular_momentum(f);
  r.kinetic = kinetic(f);
  r.moment = moment(f);
  r.l4 = l4(f);
  r.l6 = l6(f);
  r.energy = 0.5 * r.kinetic + potential_energy(f, p) + 0.5 * log_moment(f) - p.omega_rot * r.ang_mom;
  return r;
}

const char* observables_csv_header() { return "t,mass,ang_mom,energy,l4,l6,moment,kinetic"; }

void write_csv_row(std::ostream& os, const ObservableRecord& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.mass,
                r.ang_mom, r.energy, r.l4, r.l6, r.moment, r.kinetic);
  os << buf;
}

}  // namespace rotgpe
