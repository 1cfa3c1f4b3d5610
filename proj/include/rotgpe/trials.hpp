#pragma once

#include <vector>

#include "rotgpe/field.hpp"
#include "rotgpe/params.hpp"

namespace rotgpe {

/// lambda * exp(-b |x|^2)
struct GaussianTrial {
  double lambda = 1.0;
  double b = 0.5;
};

struct GaussianMoments {
  double mass, xmoment, kinetic, magnetic_kinetic, l4, log_moment, gauss_potential;
  double l6;        // ||f||_6^6
  double log_plain; // int |f|^4 ln |f|^2
};

GaussianMoments gaussian_moments(const GaussianTrial& t, const Params& p);
ComplexField gaussian_field(const GaussianTrial& t, const GridSpec& g);
/// Magnetic energy of the trial: (1/2)||grad_A f||^2 + V0-bump + (1/2) log_moment.
double gaussian_energy_magnetic(const GaussianTrial& t, const Params& p);
/// K_omega(lambda f_b) / (lambda^2 pi) in closed form.
double gaussian_nehari_ratio(const GaussianTrial& t, const Params& p, double omega);

/// C (x1 + i x2)^m exp(-gamma |x|^2 / 2) with C^2 = rho gamma^{m+1} / (pi m!)
struct VortexTrial {
  int m = 0;
  double rho = 1.0;
  double gamma = 1.0;
  double c2() const;
  /// radius beyond which |f_m|^2 / max |f_m|^2 < 1e-20
  double support_radius() const;
};

struct VortexMoments {
  double mass, kinetic, potential, ang_mom, l6;
  double log_moment;  // int |f|^4 ln(|f|^2 / sqrt e), by 1D quadrature
};

/// m! / (2 gamma^{m+1}) = int_0^inf r^{2m+1} exp(-gamma r^2) dr
double vortex_I(double gamma, int m);
ComplexField vortex_field(const VortexTrial& t, const GridSpec& g);
/// Uses p.gamma0 and p.v0; the trap rate comes from the trial.
VortexMoments vortex_moments(const VortexTrial& t, const Params& p);

struct VortexEnergy {
  int m;
  double e_quadratic, e_log, e_total, ang_mom, l6;
};

/// E_Omega(f_m) for m = 0..m_max at mass p.rho and trap rate p.gamma.
std::vector<VortexEnergy> vortex_energy_curve(const Params& p, int m_max);

struct ThresholdValues {
  double b0, H_at_b0, gamma_critical;
};
ThresholdValues threshold_functions(double gamma);
/// H(b) = 2 b^2 + gamma^2 + 2 b^2 ln(2b)
double threshold_H(double gamma, double b);
/// G_b(theta) = 4 b^2 + gamma^2 - b theta + b theta ln(theta); G_b(2b) = H(b)
double threshold_G(double gamma, double b, double theta);

struct CubicGroundState {
  RadialField profile;
  double l2_squared = 0;
  double peak = 0;
  double residual = 0;  // discrete sup-norm residual of -Q''/2 - Q'/(2r) + Q - Q^3
  double kinetic = 0;   // ||grad Q||^2
  double l4 = 0;        // ||Q||_4^4
};

/// Shooting for an initial profile, then Newton on a high-order discretisation.
CubicGroundState cubic_ground_state(double tol, double r_max = 20.0, int m = 2000);
/// 1 / ||Q||^2, computed once and cached.
double c4_constant();

struct CounterexampleValues {
  double lhs;  // ||grad_A z||^2
  double rhs;  // ||grad |z|||^2 + gamma^2 ||x z||^2
  double plain_kinetic;  // ||grad z||^2
};

/// z(x) = exp(-i A(y).x) phi(x + y), phi = exp(-|x|^2), y = (y_shift, 0).
CounterexampleValues modulus_magnetic_counterexample(double gamma, double y_shift);

}  // namespace rotgpe
