#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rotgpe/evolve.hpp"
#include "rotgpe/field.hpp"
#include "rotgpe/minimize.hpp"
#include "rotgpe/params.hpp"

namespace rotgpe {

struct InitialState {
  SeedKind shape;               // gaussian:<b> | vortex:<m> | random:<seed>
  double perturbation = 0.0;    // amplitude of an added random field, relative to the mass
};

struct StabilitySettings {
  double delta = 1e-3;
  double t_end = 10.0;
  double dt = 1e-3;
  int sample_every = 100;
};

struct RunConfig {
  Params params;
  GridSpec grid = GridSpec::make(12.0, 256);
  std::optional<EvolveConfig> evolve;
  InitialState initial;
  std::optional<FlowConfig> flow;
  StabilitySettings stability;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
};

/// INI-style text: [params] [grid] [evolve] [flow] [stability] [run].
/// Throws ConfigError naming the key and line.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Resolved configuration in the same INI syntax, every value written out.
std::string to_ini(const RunConfig& c);

ComplexField initial_field(const RunConfig& c);

}  // namespace rotgpe
