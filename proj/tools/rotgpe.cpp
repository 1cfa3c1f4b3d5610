// Command-line driver: evolve, minimize, trial-sweep, stability, decay, verify.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "rotgpe/config.hpp"
#include "rotgpe/error.hpp"
#include "rotgpe/evolve.hpp"
#include "rotgpe/functionals.hpp"
#include "rotgpe/minimize.hpp"
#include "rotgpe/trials.hpp"
#include "rotgpe/verify.hpp"

namespace fs = std::filesystem;
using namespace rotgpe;

namespace {

constexpr int kOk = 0, kCheckFailure = 1, kConfigError = 2, kNumericalAbort = 3;

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path.string());
  return os;
}

void write_manifest(const fs::path& dir, const RunConfig& c, const std::string& command) {
  auto os = open_out(dir / "manifest.txt");
  os << "# command: " << command << "\n" << to_ini(c);
}

// Argument validation failures surface as configuration errors.
template <class F>
void as_config_error(F&& fn) {
  try {
    fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("", 0, e.what());
  }
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct EvolveArgs {
  std::string config, out, dump_dir;
  long dump_every = 0;
};

int run_evolve(const EvolveArgs& a) {
  RunConfig c = load_config(a.config);
  if (!c.evolve) throw ConfigError("evolve", 0, "section [evolve] is required");
  if (c.evolve->linear_mode) throw ConfigError("evolve.linear_mode", 0, "linear_mode is reserved for verify");
  const fs::path csv = a.out.empty() ? fs::path(c.out_dir) / "observables.csv" : fs::path(a.out);
  const fs::path out_dir = csv.has_parent_path() ? csv.parent_path() : fs::path(".");
  write_manifest(out_dir, c, "evolve");

  StepCallback dump;
  if (a.dump_every > 0) {
    const fs::path dir = a.dump_dir.empty() ? out_dir / "dumps" : fs::path(a.dump_dir);
    fs::create_directories(dir);
    dump = [dir, every = a.dump_every](long step, const ComplexField& s) {
      if (step % every != 0) return;
      char name[32];
      std::snprintf(name, sizeof name, "step_%08ld.bin", step);
      write_dump((dir / name).string(), s);
    };
  }
  const Trajectory tr = evolve(initial_field(c), c.params, *c.evolve, dump);
  auto os = open_out(csv);
  os << observables_csv_header() << "\n";
  for (const auto& r : tr.records) write_csv_row(os, r);
  return kOk;
}

struct MinimizeArgs {
  std::string config, regime = "sub", seed, out = ".";
  double rho = 0.0;
};

int run_minimize(const MinimizeArgs& a) {
  RunConfig c;
  if (!a.config.empty()) {
    c = load_config(a.config);
  } else {
    c.params.omega_rot = 0.5 * c.params.gamma;
  }
  if (a.rho > 0.0) c.params.rho = a.rho;
  FlowConfig flow = c.flow.value_or(FlowConfig{});
  if (a.regime == "critical" || a.regime == "critical-radial") {
    c.params.omega_rot = c.params.gamma;
  } else if (c.params.regime() != Regime::Sub) {
    throw ConfigError("params.omega", 0, "regime 'sub' needs omega < gamma");
  }
  as_config_error([&] {
    if (!a.seed.empty()) flow.seed = SeedKind::parse(a.seed);
    c.params.validate();
    flow.validate();
  });
  c.flow = flow;
  fs::create_directories(a.out);
  write_manifest(a.out, c, "minimize --regime " + a.regime);

  auto os = open_out(fs::path(a.out) / "result.csv");
  os << "regime,energy,omega,residual,iterations,converged,negative_energy,mass\n";
  auto row = [&](double e, double w, double res, int it, bool conv, bool neg, double m) {
    os << a.regime << "," << g17(e) << "," << g17(w) << "," << g17(res) << "," << it << "," << conv << "," << neg
       << "," << g17(m) << "\n";
    return conv ? kOk : kCheckFailure;
  };
  if (a.regime == "critical-radial") {
    const auto r = ground_state_radial(c.params, flow);
    write_dump((fs::path(a.out) / "state.bin").string(), lift_radial(r.state, c.grid));
    return row(r.energy, r.omega, r.residual, r.iterations, r.converged, r.negative_energy, r.mass);
  }
  const GroundStateResult r = a.regime == "critical" ? ground_state_magnetic(c.params, c.grid, flow)
                                                     : ground_state(c.params, c.grid, flow);
  write_dump((fs::path(a.out) / "state.bin").string(), r.state);
  return row(r.energy, r.omega, r.residual, r.iterations, r.converged, r.negative_energy, mass(r.state));
}

struct SweepArgs {
  double gamma = 1.0, omega = 2.0, rho = 1.0, v0 = 0.0, gamma0 = -1.0;
  int m_max = 20;
  std::string out = "trial_sweep.csv";
};

int run_sweep(const SweepArgs& a) {
  RunConfig c;
  c.params.gamma = a.gamma;
  c.params.gamma0 = a.gamma0 > 0.0 ? a.gamma0 : a.gamma;
  c.params.v0 = a.v0;
  c.params.omega_rot = a.omega;
  c.params.rho = a.rho;
  as_config_error([&] { c.params.validate(); });
  const fs::path csv(a.out);
  write_manifest(csv.has_parent_path() ? csv.parent_path() : fs::path("."), c,
                 "trial-sweep --m-max " + std::to_string(a.m_max));
  auto os = open_out(csv);
  os << "m,E_quadratic,E_log,E_total,L,l6\n";
  for (const auto& e : vortex_energy_curve(c.params, a.m_max))
    os << e.m << "," << g17(e.e_quadratic) << "," << g17(e.e_log) << "," << g17(e.e_total) << "," << g17(e.ang_mom)
       << "," << g17(e.l6) << "\n";
  return kOk;
}

int run_stability(const std::string& config, const std::string& out) {
  RunConfig c = load_config(config);
  FlowConfig flow = c.flow.value_or(FlowConfig{});
  c.flow = flow;
  fs::create_directories(out);
  write_manifest(out, c, "stability");
  const auto& s = c.stability;
  const StabilityReport r = stability_probe(c.params, c.grid, flow, s.delta, s.t_end, s.dt, s.sample_every, c.seed);
  auto os = open_out(fs::path(out) / "stability.csv");
  os << "t,orbit_distance\n";
  for (const auto& [t, d] : r.trace) os << g17(t) << "," << g17(d) << "\n";
  std::cout << "sup orbit distance " << g17(r.sup_orbit_distance) << " (delta " << g17(s.delta) << ", "
            << (r.rotating_frame ? "rotating" : "lab") << " frame)\n";
  return r.ground.converged ? kOk : kCheckFailure;
}

int run_decay(const std::string& config, const std::string& out) {
  RunConfig c = load_config(config);
  if (!c.evolve) throw ConfigError("evolve", 0, "section [evolve] is required");
  if (c.evolve->linear_mode) throw ConfigError("evolve.linear_mode", 0, "linear_mode is reserved for verify");
  fs::create_directories(out);
  write_manifest(out, c, "decay");
  const ExtinctionRecord r = extinction_experiment(initial_field(c), c.params, *c.evolve);
  auto os = open_out(fs::path(out) / "decay.csv");
  os << "t,mass,bound\n";
  for (std::size_t k = 0; k < r.times.size(); ++k)
    os << g17(r.times[k]) << "," << g17(r.masses[k]) << "," << g17(r.fitted_bound[k]) << "\n";
  std::cout << "C " << g17(r.fitted_c) << ", sup t^(1/4) M " << g17(r.sup_t14_mass) << ", tail slope "
            << g17(r.tail_slope) << ", loss residual " << g17(r.max_loss_residual) << "\n";
  const bool ok = r.strictly_decreasing && r.dominated && r.tail_slope <= 0.0;
  return ok ? kOk : kCheckFailure;
}

int run_verify(const VerifyOptions& o, const std::string& out) {
  RunConfig c;
  c.out_dir = out;
  fs::create_directories(out);
  char scale[64];
  std::snprintf(scale, sizeof scale, "%.17g", o.quadrature_scale);
  write_manifest(out, c, "verify --filter '" + o.filter + "' --corrupt-quadrature " + scale);
  return verify_suite(o, std::cout) == 0 ? kOk : kCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotating trapped condensate with logarithmic nonlinearity and three-body loss"};
  app.require_subcommand(1);

  EvolveArgs ev;
  auto* evolve_cmd = app.add_subcommand("evolve", "Time evolution, observables as CSV");
  evolve_cmd->add_option("--config", ev.config, "INI configuration")->required();
  evolve_cmd->add_option("--out", ev.out, "observables CSV");
  evolve_cmd->add_option("--dump-every", ev.dump_every, "steps between field dumps (0: none)");
  evolve_cmd->add_option("--dump-dir", ev.dump_dir, "directory for field dumps");

  MinimizeArgs mn;
  auto* min_cmd = app.add_subcommand("minimize", "Ground state by normalized gradient flow");
  min_cmd->add_option("--regime", mn.regime)->check(CLI::IsMember({"sub", "critical", "critical-radial"}));
  min_cmd->add_option("--rho", mn.rho, "mass constraint");
  min_cmd->add_option("--seed", mn.seed, "gaussian:b | vortex:m | random:seed");
  min_cmd->add_option("--out", mn.out, "output directory");
  min_cmd->add_option("--config", mn.config, "INI configuration");

  SweepArgs sw;
  auto* sweep_cmd = app.add_subcommand("trial-sweep", "Energies of the vortex trial family");
  sweep_cmd->add_option("--gamma", sw.gamma);
  sweep_cmd->add_option("--gamma0", sw.gamma0, "bump width (default: gamma)");
  sweep_cmd->add_option("--v0", sw.v0);
  sweep_cmd->add_option("--omega", sw.omega);
  sweep_cmd->add_option("--rho", sw.rho);
  sweep_cmd->add_option("--m-max", sw.m_max);
  sweep_cmd->add_option("--out", sw.out);

  std::string st_config, st_out = "stability";
  auto* stab_cmd = app.add_subcommand("stability", "Orbit distance after perturbing a ground state");
  stab_cmd->add_option("--config", st_config)->required();
  stab_cmd->add_option("--out", st_out);

  std::string dc_config, dc_out = "decay";
  auto* decay_cmd = app.add_subcommand("decay", "Mass decay under three-body loss");
  decay_cmd->add_option("--config", dc_config)->required();
  decay_cmd->add_option("--out", dc_out);

  VerifyOptions vo;
  std::string vo_out = ".";
  auto* verify_cmd = app.add_subcommand("verify", "Golden values and identities");
  verify_cmd->add_option("--filter", vo.filter, "substring of check names");
  verify_cmd->add_option("--corrupt-quadrature", vo.quadrature_scale, "scale every quadrature weight");
  verify_cmd->add_option("--out", vo_out, "directory for manifest.txt");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (*evolve_cmd) return run_evolve(ev);
    if (*min_cmd) return run_minimize(mn);
    if (*sweep_cmd) return run_sweep(sw);
    if (*stab_cmd) return run_stability(st_config, st_out);
    if (*decay_cmd) return run_decay(dc_config, dc_out);
    if (*verify_cmd) return run_verify(vo, vo_out);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kConfigError;
  } catch (const NumericalAbort& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return kNumericalAbort;
  } catch (const NonFiniteValue& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return kNumericalAbort;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailure;
  }
  return kOk;
}
