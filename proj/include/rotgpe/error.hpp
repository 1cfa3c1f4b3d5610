#pragma once

#include <stdexcept>
#include <string>

namespace rotgpe {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a minimizer is requested in the rotation regime Omega > gamma.
struct NonexistenceRegime : Error {
  using Error::Error;
};

struct RegimeMismatch : Error {
  using Error::Error;
};

struct GridMismatch : Error {
  using Error::Error;
};

struct NonFiniteValue : Error {
  NonFiniteValue(const std::string& what, long index)
      : Error(what + " at grid index " + std::to_string(index)), index(index) {}
  long index;
};

struct NumericalAbort : Error {
  NumericalAbort(const std::string& what, long step)
      : Error(what + " (step " + std::to_string(step) + ")"), step(step) {}
  long step;
};

struct ConfigError : Error {
  ConfigError(const std::string& key, int line, const std::string& msg)
      : Error("config: " + (key.empty() ? std::string("<file>") : key) + " (line " +
              std::to_string(line) + "): " + msg),
        key(key), line(line) {}
  std::string key;
  int line;
};

}  // namespace rotgpe
