#include "oracles.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/numeric/odeint.hpp>
#include <array>
#include <cmath>
#include <numbers>

namespace oracle {

using std::numbers::pi;

double radial_integral(const std::function<double(double)>& g) {
  boost::math::quadrature::exp_sinh<double> q(12);
  return 2.0 * pi * q.integrate(
                        [&](double r) {
                          const double v = g(r) * r;
                          return std::isfinite(v) ? v : 0.0;
                        },
                        1e-14);
}

Moments gaussian(double lambda, double b, double gamma, double gamma0, double v0) {
  const double e = std::numbers::e;
  auto f = [=](double r) { return lambda * std::exp(-b * r * r); };
  auto df = [=](double r) { return -2.0 * b * r * f(r); };
  Moments m{};
  m.mass = radial_integral([&](double r) { return f(r) * f(r); });
  m.kinetic = radial_integral([&](double r) { return df(r) * df(r); });
  m.xmoment = radial_integral([&](double r) { return r * r * f(r) * f(r); });
  m.l4 = radial_integral([&](double r) { return std::pow(f(r), 4); });
  m.l6 = radial_integral([&](double r) { return std::pow(f(r), 6); });
  auto y4lny = [&](double r, double shift) {
    const double y = f(r) * f(r);
    return y > 0.0 ? y * y * (std::log(y) - shift) : 0.0;
  };
  m.log_moment = radial_integral([&](double r) { return y4lny(r, 0.5 * std::log(e)); });
  m.log_plain = radial_integral([&](double r) { return y4lny(r, 0.0); });
  m.potential = radial_integral(
      [&](double r) { return (0.5 * gamma * gamma * r * r + v0 * std::exp(-gamma0 * r * r)) * f(r) * f(r); });
  // real radial f: |grad_A f|^2 = f'^2 + gamma^2 r^2 f^2
  m.magnetic_kinetic = radial_integral([&](double r) { return df(r) * df(r) + gamma * gamma * r * r * f(r) * f(r); });
  m.ang_mom = 0.0;
  return m;
}

Moments vortex(int m, double rho, double gamma, double gamma0, double v0) {
  const double c = std::sqrt(rho * std::pow(gamma, m + 1) / (pi * std::tgamma(m + 1.0)));
  // log form keeps r^m exp(-gamma r^2/2) finite for large r
  auto g = [=](double r) {
    if (r == 0.0) return m == 0 ? c : 0.0;
    return std::exp(std::log(c) + m * std::log(r) - 0.5 * gamma * r * r);
  };
  auto dg = [=](double r) {
    if (r == 0.0) return m == 1 ? c : 0.0;
    return (m / r - gamma * r) * g(r);
  };
  Moments o{};
  o.mass = radial_integral([&](double r) { return g(r) * g(r); });
  o.kinetic = radial_integral([&](double r) {
    const double ang = m == 0 ? 0.0 : m * m * g(r) * g(r) / (r * r);
    return dg(r) * dg(r) + ang;
  });
  o.xmoment = radial_integral([&](double r) { return r * r * g(r) * g(r); });
  o.l4 = radial_integral([&](double r) { return std::pow(g(r), 4); });
  o.l6 = radial_integral([&](double r) { return std::pow(g(r), 6); });
  o.log_moment = radial_integral([&](double r) {
    const double y = g(r) * g(r);
    return y > 0.0 ? y * y * (std::log(y) - 0.5) : 0.0;
  });
  o.log_plain = radial_integral([&](double r) {
    const double y = g(r) * g(r);
    return y > 0.0 ? y * y * std::log(y) : 0.0;
  });
  o.potential = radial_integral(
      [&](double r) { return (0.5 * gamma * gamma * r * r + v0 * std::exp(-gamma0 * r * r)) * g(r) * g(r); });
  o.ang_mom = m * o.mass;
  o.magnetic_kinetic = o.kinetic + gamma * gamma * o.xmoment - 2.0 * gamma * o.ang_mom;
  return o;
}

double vortex_log_moment_digamma(int m, double rho, double gamma) {
  // u = gamma r^2, |f|^2 = kappa u^m e^{-u}
  const double log_kappa = std::log(rho * gamma / pi) - std::lgamma(m + 1.0);
  const double base = std::exp(2.0 * log_kappa + std::lgamma(2.0 * m + 1.0) - (2.0 * m + 1.0) * std::log(2.0));
  const double bracket = log_kappa - 0.5 + m * (boost::math::digamma(2.0 * m + 1.0) - std::log(2.0)) -
                         (2.0 * m + 1.0) / 2.0;
  return pi / gamma * base * bracket;
}

Substep substep_ode(double y0, double tau, double k3, double v) {
  using State = std::array<double, 2>;
  State s{y0, 0.0};
  auto rhs = [=](const State& x, State& dx, double) {
    dx[0] = -2.0 * k3 * x[0] * x[0] * x[0];
    dx[1] = -v - (x[0] > 0.0 ? x[0] * std::log(x[0]) : 0.0);
  };
  namespace ode = boost::numeric::odeint;
  ode::integrate_adaptive(ode::make_controlled<ode::runge_kutta_dopri5<State>>(1e-14, 1e-14), rhs, s, 0.0, tau,
                          tau / 100.0);
  return {s[0], s[1]};
}

double threshold_argmin() {
  auto h = [](double b) { return 2.0 * b * b + 2.0 * b * b * std::log(2.0 * b); };
  return boost::math::tools::brent_find_minima(h, 1e-3, 1.0, 60).first;
}

}  // namespace oracle
