#pragma once

#include <functional>
#include <vector>

#include "rotgpe/field.hpp"
#include "rotgpe/functionals.hpp"
#include "rotgpe/params.hpp"

namespace rotgpe {

struct EvolveConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  int log_every = 1;
  bool linear_mode = false;  // drops the log nonlinearity and the loss

  void validate() const;
};

struct Trajectory {
  std::vector<ObservableRecord> records;
  ComplexField final_state;
  bool boundary_warning = false;
};

struct SubstepResult {
  double y;      // intensity after the substep
  double theta;  // phase increment
};

/// Exact solution over tau of y' = -2 k3 y^3, theta' = -v - y ln y.
SubstepResult nonlinear_substep(double y0, double tau, double k3, double v);

/// One symmetric step of the rotating-frame flow. The harmonic trap is
/// split exactly: kick(a) drift(b) [kick(2a) + pointwise(tau)] drift(b) kick(a).
class Stepper {
 public:
  Stepper(const GridSpec& g, const Params& p, double dt, bool linear_mode = false);
  void step(ComplexField& f) const;
  double dt() const { return dt_; }

 private:
  GridSpec g_;
  Params p_;
  double dt_;
  bool linear_;
  std::vector<cplx> drift_, kick_, kick2_;
  std::vector<double> bump_;
};

ComplexField strang_step(const ComplexField& f, const Params& p, double dt, bool linear_mode = false);

using StepCallback = std::function<void(long step, const ComplexField& state)>;

/// Evolves phi in the rotating frame; records E_Omega(psi) = E0(phi) - Omega L(phi).
Trajectory evolve(const ComplexField& f0, const Params& p, const EvolveConfig& cfg,
                  const StepCallback& on_step = {});

struct ExtinctionRecord {
  std::vector<double> times, masses;
  /// (M0^-4 + 4 C t)^(-1/4) with C fixed by the sample at t = 1
  std::vector<double> fitted_bound;
  double fitted_c = 0;
  double sup_t14_mass = 0;       // sup over t >= 1 of t^{1/4} M(t)
  bool strictly_decreasing = false;
  bool dominated = false;        // M(t) <= fitted bound for every t >= 1
  double tail_slope = 0;         // least-squares slope of log M vs log t for t >= 10
  double max_loss_residual = 0;  // max over sample intervals of |dM/dt + 2 k3 <||phi||_6^6>|
};

ExtinctionRecord extinction_experiment(const ComplexField& f0, const Params& p, const EvolveConfig& cfg);

}  // namespace rotgpe
