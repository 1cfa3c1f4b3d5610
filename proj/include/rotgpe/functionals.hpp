#pragma once

#include <ostream>
#include <string>

#include "rotgpe/field.hpp"
#include "rotgpe/params.hpp"

namespace rotgpe {

// Quadrature building blocks. Every integral uses the grid rectangle rule.
double mass(const ComplexField& f);
double angular_momentum(const ComplexField& f);
double kinetic(const ComplexField& f);                       // ||grad f||^2
double magnetic_kinetic(const ComplexField& f, double gamma);  // ||grad_A f||^2
double moment(const ComplexField& f);                         // ||x f||^2
double potential_energy(const ComplexField& f, const Params& p);  // int V |f|^2
double bump_energy(const ComplexField& f, const Params& p);  // V0 int exp(-gamma0 |x|^2) |f|^2
double l4(const ComplexField& f);
double l6(const ComplexField& f);
double log_moment(const ComplexField& f);  // int |f|^4 ln(|f|^2 / sqrt(e))
double log_plain(const ComplexField& f);   // int |f|^4 ln |f|^2

/// E_Omega with Omega = p.omega_rot.
double energy(const ComplexField& f, const Params& p);
/// Energy without the rotation term.
double energy0(const ComplexField& f, const Params& p);
/// Magnetic form; requires the critical regime.
double energy_magnetic(const ComplexField& f, const Params& p);
double quadratic_form_B(const ComplexField& f, const Params& p);
double action_S(const ComplexField& f, const Params& p, double omega);
double nehari_K(const ComplexField& f, const Params& p, double omega);
double pseudo_energy(const ComplexField& f, const Params& p, double k);

struct PohozaevReport {
  double r1 = 0, r2 = 0, r3 = 0;
  // signed, unnormalized values of the three identities
  double raw1 = 0, raw2 = 0, raw3 = 0;
  double max() const;
};

PohozaevReport pohozaev_residuals(const ComplexField& phi, const Params& p, double omega);

enum class Verdict { MustBeTrivial, Admissible };
Verdict check_nonexistence_window(double omega, double omega_V0, const Params& p);

struct DichotomyConstants {
  double k1, k2;
};
DichotomyConstants dichotomy_constants(double rho, double a, double c4);

/// max over y > 0 of y^2 |ln(y / sqrt(e))| / (y^{3/2} + y^{5/2}).
double est_log_constant();

struct InequalityCheck {
  std::string name;
  double lhs = 0, rhs = 0;
  bool holds = false;
  double slack() const { return rhs - lhs; }
};

struct InequalityReport {
  InequalityCheck uncertainty;   // ||f||^2 <= ||grad f|| ||x f||
  InequalityCheck diamagnetic;   // ||grad |f||| <= ||grad_A f|| + refinement slack
  InequalityCheck magnetic_gn;   // ||f||_4^4 <= C4 ||grad_A f||^2 ||f||^2
  InequalityCheck obs_chain;     // ||f||^2 <= (1/gamma)(||grad f||^2/2 + int V|f|^2)
  InequalityCheck negative_log;  // (1/2) int_{|f|^2 < sqrt e} |f|^4 ln(sqrt e/|f|^2) <= (sqrt e / 2) M
  InequalityCheck est_log;       // |int |f|^4 ln(|f|^2/sqrt e)| <= C (||f||_3^3 + ||f||_5^5)
  bool all() const;
};

/// ||grad |f|||^2 by centered differences with spacing step * dx.
double modulus_gradient_fd(const ComplexField& f, int step);

InequalityReport inequality_suite(const ComplexField& f, const Params& p);

struct ObservableRecord {
  double t = 0, mass = 0, ang_mom = 0, energy = 0, l4 = 0, l6 = 0, moment = 0, kinetic = 0;
};

/// energy uses E0(phi) - Omega L(phi); all other entries are frame independent.
ObservableRecord observe(const ComplexField& f, const Params& p, double t);
const char* observables_csv_header();
void write_csv_row(std::ostream& os, const ObservableRecord& r);

}  // namespace rotgpe
