#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rotgpe/field.hpp"
#include "rotgpe/params.hpp"

namespace rotgpe {

struct SeedKind {
  enum Kind { Gaussian, Vortex, Random } kind = Gaussian;
  double b = 0.5;          // Gaussian decay rate
  int m = 1;               // vortex winding
  std::uint64_t seed = 1;  // random seed

  /// "gaussian:<b>", "vortex:<m>" or "random:<seed>"
  static SeedKind parse(const std::string& text);
  std::string str() const;
};

struct FlowConfig {
  double tau = 1.0;
  double tol_energy = 1e-13;
  double tol_residual = 1e-8;
  int max_iter = 20000;
  SeedKind seed;

  void validate() const;
};

struct GroundStateResult {
  ComplexField state;
  double energy = 0;
  double omega = 0;     // Lagrange multiplier, H phi + omega phi = 0
  double residual = 0;  // ||H phi + omega phi|| / ||phi||
  int iterations = 0;
  bool converged = false;
  bool negative_energy = false;
};

struct RadialGroundStateResult {
  RadialField state;
  double energy = 0;
  double omega = 0;
  double residual = 0;
  int iterations = 0;
  bool converged = false;
  bool negative_energy = false;
  double magnetic_kinetic = 0;  // ||grad_A f||^2 = ||f'||^2 + gamma^2 ||x f||^2
  double mass = 0;
};

ComplexField seed_field(const SeedKind& s, const Params& p, const GridSpec& g);

/// Sub-rotating regime (Omega < gamma). Throws NonexistenceRegime for Omega > gamma.
GroundStateResult ground_state(const Params& p, const GridSpec& g, const FlowConfig& cfg);
/// Critical regime with V0 = 0, minimised in the magnetic form.
GroundStateResult ground_state_magnetic(const Params& p, const GridSpec& g, const FlowConfig& cfg);
/// Radial critical-regime minimiser on a cell-centred radial grid.
RadialGroundStateResult ground_state_radial(const Params& p, const FlowConfig& cfg, double r_max = 40.0,
                                            int m = 4000);

/// Even radial profile sampled onto a 2D grid by cubic interpolation.
ComplexField lift_radial(const RadialField& f, const GridSpec& g);

struct LinearBottom {
  double omega_V0 = 0;
  ComplexField eigenfunction;
  double residual = 0;
  int iterations = 0;
};

/// Bottom of the spectrum of -Delta/2 + V with unit-mass eigenfunction.
LinearBottom linear_bottom(const Params& p, const GridSpec& g, double tol = 1e-11);

/// omega = [-||grad phi||^2/2 - int V|phi|^2 - int |phi|^4 ln|phi|^2 + Omega L(phi)] / ||phi||^2
double extract_omega(const ComplexField& phi, const Params& p);

enum class OrbitNorm { Sigma, H1A };

/// min over sigma of ||u - e^{i sigma} phi|| in the chosen norm.
double orbit_distance(const ComplexField& u, const ComplexField& phi, OrbitNorm norm, double gamma = 0.0);

struct StabilityReport {
  double sup_orbit_distance = 0;
  std::vector<std::pair<double, double>> trace;  // (t, distance)
  GroundStateResult ground;
  bool rotating_frame = false;  // distance measured on the rotating-frame state
};

/// Perturbs the ground state by delta (Sigma norm) and tracks its orbit distance.
StabilityReport stability_probe(const Params& p, const GridSpec& g, const FlowConfig& cfg, double delta,
                                double t_end, double dt = 1e-3, int sample_every = 100,
                                std::uint64_t perturbation_seed = 7);

/// Same probe starting from an already computed ground state.
StabilityReport stability_probe_from(const GroundStateResult& gs, const Params& p, double delta, double t_end,
                                     double dt = 1e-3, int sample_every = 100,
                                     std::uint64_t perturbation_seed = 7);

struct PhaseCheck {
  bool positive_modulus = false;
  bool constant_phase = false;
  double min_interior_modulus = 0;
  double phase = 0;
  double phase_spread = 0;
  bool passed() const { return positive_modulus && constant_phase; }
};

/// Modulus positive on the central half of the box; phase constant to 1e-4
/// wherever |phi| exceeds 1e-3 of its peak.
PhaseCheck appendixB_phase_check(const ComplexField& phi);

}  // namespace rotgpe
