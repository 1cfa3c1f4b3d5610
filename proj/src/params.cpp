#include "rotgpe/params.hpp"

#include <cmath>

#include "rotgpe/error.hpp"

namespace rotgpe {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::Sub: return "sub";
    case Regime::Critical: return "critical";
    case Regime::Super: return "super";
  }
  return "?";
}

void Params::validate() const {
  auto need = [](bool ok, const char* name, const char* msg) {
    if (!ok) throw Error(std::string("params.") + name + ": " + msg);
  };
  need(std::isfinite(gamma), "gamma", "must be finite");
  need(std::isfinite(gamma0), "gamma0", "must be finite");
  need(std::isfinite(v0), "v0", "must be finite");
  need(std::isfinite(omega_rot), "omega", "must be finite");
  need(std::isfinite(k3), "k3", "must be finite");
  need(std::isfinite(rho), "rho", "must be finite");
  need(test_mode ? gamma >= 0.0 : gamma > 0.0, "gamma", "must be > 0");
  need(gamma0 > 0.0, "gamma0", "must be > 0");
  need(v0 >= 0.0, "v0", "must be >= 0");
  need(omega_rot >= 0.0, "omega", "must be >= 0");
  need(k3 >= 0.0, "k3", "must be >= 0");
  need(rho > 0.0, "rho", "must be > 0");
}

Regime Params::regime() const {
  if (omega_rot == gamma) return Regime::Critical;
  return omega_rot < gamma ? Regime::Sub : Regime::Super;
}

double Params::potential(double r2) const {
  return 0.5 * gamma * gamma * r2 + v0 * std::exp(-gamma0 * r2);
}

double Params::x_grad_potential(double r2) const {
  return gamma * gamma * r2 - 2.0 * v0 * gamma0 * r2 * std::exp(-gamma0 * r2);
}

}  // namespace rotgpe
