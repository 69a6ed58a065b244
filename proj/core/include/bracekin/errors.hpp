#pragma once

#include <stdexcept>
#include <string>

namespace bracekin {

struct InvalidRotationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidProjectorError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown when a square Jacobian is too ill-conditioned to invert.
struct SingularityError : std::runtime_error {
  SingularityError(const std::string& what, double rcond)
      : std::runtime_error(what), reciprocal_condition(rcond) {}
  double reciprocal_condition;
};

// Brace point at or beyond the allowable bracing-region radius.
struct BoundaryError : std::runtime_error {
  BoundaryError(const std::string& what, double r, double r_max)
      : std::runtime_error(what), r(r), r_max(r_max) {}
  double r;
  double r_max;
};

// A finite-difference stencil point could not be evaluated.
struct StencilError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bracekin
