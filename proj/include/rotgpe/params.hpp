#pragma once

#include <string>

namespace rotgpe {

enum class Regime { Sub, Critical, Super };

std::string to_string(Regime r);

struct Params {
  double gamma = 1.0;
  double gamma0 = 1.0;
  double v0 = 0.0;
  double omega_rot = 0.0;
  double k3 = 0.0;
  double rho = 1.0;
  bool test_mode = false;  // admits gamma == 0

  /// Throws rotgpe::Error naming the offending field.
  void validate() const;
  Regime regime() const;

  /// V(|x|^2) = gamma^2 |x|^2 / 2 + V0 exp(-gamma0 |x|^2)
  double potential(double r2) const;
  /// x . grad V
  double x_grad_potential(double r2) const;
};

}  // namespace rotgpe
