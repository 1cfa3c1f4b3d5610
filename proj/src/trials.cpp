#include "rotgpe/trials.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <numbers>

#include "rotgpe/functionals.hpp"

namespace rotgpe {

using std::numbers::pi;

GaussianMoments gaussian_moments(const GaussianTrial& t, const Params& p) {
  const double l2 = t.lambda * t.lambda, l4v = l2 * l2, b = t.b, g2 = p.gamma * p.gamma;
  GaussianMoments m{};
  m.mass = l2 * pi / (2 * b);
  m.xmoment = l2 * pi / (4 * b * b);
  m.kinetic = l2 * pi;
  m.magnetic_kinetic = l2 * pi * (1 + g2 / (4 * b * b));
  m.l4 = l4v * pi / (4 * b);
  m.log_moment = l4v * (std::log(l2) - 1.0) * pi / (4 * b);
  m.gauss_potential = l2 * (g2 * pi / (8 * b * b) + pi * p.v0 / (p.gamma0 + 2 * b));
  m.l6 = l4v * l2 * pi / (6 * b);
  m.log_plain = l4v * (std::log(l2) * pi / (4 * b) - pi / (8 * b));
  return m;
}

ComplexField gaussian_field(const GaussianTrial& t, const GridSpec& g) {
  return ComplexField::sample(g, [&](double x1, double x2) {
    return cplx(t.lambda * std::exp(-t.b * (x1 * x1 + x2 * x2)), 0.0);
  });
}

double gaussian_energy_magnetic(const GaussianTrial& t, const Params& p) {
  const auto m = gaussian_moments(t, p);
  const double bump = t.lambda * t.lambda * pi * p.v0 / (p.gamma0 + 2 * t.b);
  return 0.5 * m.magnetic_kinetic + bump + 0.5 * m.log_moment;
}

double gaussian_nehari_ratio(const GaussianTrial& t, const Params& p, double omega) {
  const double b = t.b, l2 = t.lambda * t.lambda;
  return 1 + omega / b + p.gamma * p.gamma / (4 * b * b) + 2 * p.v0 / (p.gamma0 + 2 * b) +
         l2 / (2 * b) * (std::log(l2) - 0.5);
}

double VortexTrial::c2() const {
  return std::exp(std::log(rho) + (m + 1) * std::log(gamma) - std::log(pi) - std::lgamma(m + 1.0));
}

double VortexTrial::support_radius() const {
  // log of r^{2m} exp(-gamma r^2) relative to its peak at r^2 = m / gamma
  auto rel = [&](double r) {
    const double r2 = r * r, p2 = m / gamma;
    const double peak = m > 0 ? m * std::log(p2) - gamma * p2 : 0.0;
    return (m > 0 ? m * std::log(r2) : 0.0) - gamma * r2 - peak;
  };
  double r = std::sqrt(m / gamma) + 1.0;
  while (rel(r) > -46.0) r += 0.05;
  return r;
}

double vortex_I(double gamma, int m) {
  return std::exp(std::lgamma(m + 1.0) - std::log(2.0) - (m + 1) * std::log(gamma));
}

ComplexField vortex_field(const VortexTrial& t, const GridSpec& g) {
  const double lc = 0.5 * std::log(t.c2());
  return ComplexField::sample(g, [&](double x1, double x2) {
    const double r2 = x1 * x1 + x2 * x2;
    if (t.m == 0) return cplx(std::exp(lc - 0.5 * t.gamma * r2), 0.0);
    if (r2 == 0.0) return cplx(0.0, 0.0);
    const double amp = std::exp(lc + 0.5 * t.m * std::log(r2) - 0.5 * t.gamma * r2);
    return std::polar(amp, t.m * std::atan2(x2, x1));
  });
}

namespace {

// int_0^inf (kappa u^m e^{-u})^2 (ln kappa + m ln u - u - 1/2) du
double vortex_log_integral(int m, double kappa) {
  const double lk = std::log(kappa);
  auto f = [&](double u) {
    if (u <= 0.0) return m == 0 ? kappa * kappa * (lk - 0.5) : 0.0;
    const double lu = std::log(u);
    return std::exp(2 * lk + 2 * m * lu - 2 * u) * (lk + m * lu - u - 0.5);
  };
  const double width = std::max(1.0, std::sqrt(m + 1.0));
  const double upper = m + 40.0 + 10.0 * std::sqrt(m + 1.0);
  double s = 0.0;
  for (double a = 0.0; a < upper; a += width)
    s += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, a + width, 8, 1e-14);
  return s;
}

}  // namespace

VortexMoments vortex_moments(const VortexTrial& t, const Params& p) {
  const int m = t.m;
  const double rho = t.rho, g = t.gamma;
  VortexMoments v{};
  v.mass = rho;
  v.kinetic = rho * (m + 1) * g;
  v.potential = 0.5 * rho * (m + 1) * g + std::pow(g / (g + p.gamma0), m + 1) * p.v0 * rho;
  v.ang_mom = m * rho;
  // 2 pi C^6 I(3 gamma, 3m)
  const double lc2 = std::log(t.c2());
  v.l6 = std::exp(std::log(2 * pi) + 3 * lc2 + std::log(vortex_I(3 * g, 3 * m)));
  const double kappa = rho * g / (pi * std::exp(std::lgamma(m + 1.0)));
  v.log_moment = pi / g * vortex_log_integral(m, kappa);
  return v;
}

std::vector<VortexEnergy> vortex_energy_curve(const Params& p, int m_max) {
  std::vector<VortexEnergy> out;
  for (int m = 0; m <= m_max; ++m) {
    const auto v = vortex_moments({m, p.rho, p.gamma}, p);
    VortexEnergy e{};
    e.m = m;
    e.e_quadratic = 0.5 * v.kinetic + v.potential - p.omega_rot * v.ang_mom;
    e.e_log = 0.5 * v.log_moment;
    e.e_total = e.e_quadratic + e.e_log;
    e.ang_mom = v.ang_mom;
    e.l6 = v.l6;
    out.push_back(e);
  }
  return out;
}

double threshold_H(double gamma, double b) {
  return 2 * b * b + gamma * gamma + 2 * b * b * std::log(2 * b);
}

double threshold_G(double gamma, double b, double theta) {
  return 4 * b * b + gamma * gamma - b * theta + b * theta * std::log(theta);
}

ThresholdValues threshold_functions(double gamma) {
  if (!(gamma > 0.0)) throw Error("threshold_functions: gamma must be > 0");
  const double e3 = std::exp(3.0);
  return {std::exp(-1.5) / 2.0, gamma * gamma - 1.0 / (4.0 * e3), 1.0 / (2.0 * std::exp(1.5))};
}

namespace {

// Q'' = -Q'/r + 2 (Q - Q^3)
struct ShotResult {
  int verdict;  // +1: crossed zero (overshoot), -1: turned upward (undershoot)
  std::vector<double> r, q;
};

ShotResult shoot(double q0, double h, double r_end) {
  ShotResult s{0, {}, {}};
  double r = h;
  double q = q0 + 0.5 * (q0 - q0 * q0 * q0) * h * h;
  double dq = (q0 - q0 * q0 * q0) * h;
  auto rhs = [](double r, double q, double dq) {
    return std::array<double, 2>{dq, -dq / r + 2.0 * (q - q * q * q)};
  };
  while (r < r_end) {
    s.r.push_back(r);
    s.q.push_back(q);
    auto k1 = rhs(r, q, dq);
    auto k2 = rhs(r + h / 2, q + h / 2 * k1[0], dq + h / 2 * k1[1]);
    auto k3 = rhs(r + h / 2, q + h / 2 * k2[0], dq + h / 2 * k2[1]);
    auto k4 = rhs(r + h, q + h * k3[0], dq + h * k3[1]);
    q += h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
    dq += h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
    r += h;
    if (q < 0.0) {
      s.verdict = +1;
      return s;
    }
    if (dq > 0.0) {
      s.verdict = -1;
      return s;
    }
  }
  return s;
}

// 8th-order central weights for first and second derivatives, offsets -4..4
constexpr std::array<double, 9> kD1 = {1.0 / 280, -4.0 / 105, 1.0 / 5, -4.0 / 5, 0.0,
                                       4.0 / 5,   -1.0 / 5,   4.0 / 105, -1.0 / 280};
constexpr std::array<double, 9> kD2 = {-1.0 / 560, 8.0 / 315, -1.0 / 5, 8.0 / 5, -205.0 / 72,
                                       8.0 / 5,    -1.0 / 5,  8.0 / 315, -1.0 / 560};

// Cell-centred index with even reflection at r = 0; -1 beyond the outer edge.
int reflect(int k, int m) {
  if (k < 0) k = -1 - k;
  return k < m ? k : -1;
}

// 8-point Lagrange interpolation of an even profile; returns value and derivative.
std::pair<double, double> interp8(const std::vector<double>& v, double h, double r) {
  const int m = static_cast<int>(v.size());
  const double s = r / h - 0.5;
  const int base = static_cast<int>(std::floor(s)) - 3;
  double val = 0.0, der = 0.0;
  for (int a = 0; a < 8; ++a) {
    const int ka = reflect(base + a, m);
    const double fa = ka < 0 ? 0.0 : v[ka];
    if (fa == 0.0) continue;
    const double xa = base + a;
    double w = 1.0, dw = 0.0;
    for (int b = 0; b < 8; ++b) {
      if (b == a) continue;
      const double xb = base + b;
      const double term = (s - xb) / (xa - xb);
      dw = dw * term + w / (xa - xb);
      w *= term;
    }
    val += fa * w;
    der += fa * dw / h;
  }
  return {val, der};
}

}  // namespace

CubicGroundState cubic_ground_state(double tol, double r_max, int m) {
  if (!(tol > 1e-14 && tol < 1e-6)) throw Error("cubic_ground_state: tol must lie in (1e-14, 1e-6)");
  double lo = 1.5, hi = 3.0;
  const double hs = 1e-3;
  if (shoot(lo, hs, r_max).verdict != -1 || shoot(hi, hs, r_max).verdict != +1)
    throw Error("cubic_ground_state: shooting bracket [1.5, 3] does not enclose Q(0)");
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (shoot(mid, hs, r_max).verdict == +1 ? hi : lo) = mid;
  }
  const ShotResult shot = shoot(lo, hs, r_max);

  // Initial profile: the shot up to its last point, then an exponential tail.
  const double h = r_max / m;
  std::vector<double> q(m);
  const double r_last = shot.r.back(), q_last = shot.q.back();
  for (int j = 0; j < m; ++j) {
    const double r = (j + 0.5) * h;
    if (r < r_last) {
      const auto k = static_cast<std::size_t>(std::min<double>(r / hs, shot.r.size() - 1.0));
      q[j] = shot.q[k];
    } else {
      q[j] = q_last * std::exp(-std::sqrt(2.0) * (r - r_last)) * std::sqrt(r_last / r);
    }
  }

  auto residual = [&](const std::vector<double>& u, std::vector<double>& F) {
    for (int j = 0; j < m; ++j) {
      const double r = (j + 0.5) * h;
      double d1 = 0.0, d2 = 0.0;
      for (int o = -4; o <= 4; ++o) {
        const int k = reflect(j + o, m);
        if (k < 0) continue;
        d1 += kD1[o + 4] * u[k];
        d2 += kD2[o + 4] * u[k];
      }
      d1 /= h;
      d2 /= h * h;
      F[j] = -0.5 * (d2 + d1 / r) + u[j] - u[j] * u[j] * u[j];
    }
  };

  std::vector<double> F(m);
  double res = 0.0;
  for (int it = 0; it < 50; ++it) {
    residual(q, F);
    res = 0.0;
    for (double f : F) res = std::max(res, std::abs(f));
    if (res < tol) break;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(m) * 9);
    for (int j = 0; j < m; ++j) {
      const double r = (j + 0.5) * h;
      for (int o = -4; o <= 4; ++o) {
        const int k = reflect(j + o, m);
        if (k < 0) continue;
        trip.emplace_back(j, k, -0.5 * (kD2[o + 4] / (h * h) + kD1[o + 4] / (h * r)));
      }
      trip.emplace_back(j, j, 1.0 - 3.0 * q[j] * q[j]);
    }
    Eigen::SparseMatrix<double> J(m, m);
    J.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(J);
    if (lu.info() != Eigen::Success) throw Error("cubic_ground_state: Jacobian factorisation failed");
    Eigen::VectorXd rhs = Eigen::Map<Eigen::VectorXd>(F.data(), m);
    Eigen::VectorXd dq = lu.solve(rhs);
    for (int j = 0; j < m; ++j) q[j] -= dq[j];
  }
  if (res >= tol) throw Error("cubic_ground_state: Newton polish did not reach tolerance");

  CubicGroundState out;
  out.profile = RadialField(r_max, m);
  out.profile.values = q;
  out.residual = res;
  out.peak = interp8(q, h, 0.0).first;

  using GL = boost::math::quadrature::gauss<double, 10>;
  double mass = 0.0, kin = 0.0, quart = 0.0;
  for (int j = 0; j < m; ++j) {
    const double a = j * h, b = a + h;
    mass += GL::integrate([&](double r) { auto [v, d] = interp8(q, h, r); return 2 * pi * r * v * v; }, a, b);
    kin += GL::integrate([&](double r) { auto [v, d] = interp8(q, h, r); return 2 * pi * r * d * d; }, a, b);
    quart += GL::integrate([&](double r) { auto [v, d] = interp8(q, h, r); return 2 * pi * r * v * v * v * v; }, a, b);
  }
  out.l2_squared = mass;
  out.kinetic = kin;
  out.l4 = quart;
  return out;
}

double c4_constant() {
  static const double c4 = 1.0 / cubic_ground_state(1e-11).l2_squared;
  return c4;
}

CounterexampleValues modulus_magnetic_counterexample(double gamma, double y_shift) {
  if (!(gamma > 0.0)) throw Error("modulus_magnetic_counterexample: gamma must be > 0");
  const double y = std::abs(y_shift);
  const double hw = y + 8.0;
  const double dx_max = std::min(0.1, pi / (gamma * y + 12.0));
  int n = 8;
  while (2.0 * hw / n > dx_max) n *= 2;
  const GridSpec g = GridSpec::make(hw, n);
  // A(y) . x with A(y) = gamma (-y2, y1), y = (y_shift, 0)
  ComplexField z = ComplexField::sample(g, [&](double x1, double x2) {
    const double s1 = x1 + y_shift;
    return std::polar(std::exp(-(s1 * s1 + x2 * x2)), -gamma * y_shift * x2);
  });
  ComplexField modulus(g);
  for (std::size_t k = 0; k < g.size(); ++k) modulus.values[k] = std::abs(z.values[k]);
  CounterexampleValues v{};
  v.lhs = magnetic_kinetic(z, gamma);
  v.rhs = kinetic(modulus) + gamma * gamma * moment(z);
  v.plain_kinetic = kinetic(z);
  return v;
}

}  // namespace rotgpe
