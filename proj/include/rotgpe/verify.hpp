#pragma once

#include <ostream>
#include <string>

namespace rotgpe {

struct VerifyOptions {
  std::string filter;             // substring of the check name; empty runs all
  double quadrature_scale = 1.0;  // fault injection: scales every quadrature weight
};

/// Prints `check, expected, got, tol, pass` rows; returns 0 if every selected check passes, 1 otherwise.
int verify_suite(const VerifyOptions& opt, std::ostream& out);

}  // namespace rotgpe
