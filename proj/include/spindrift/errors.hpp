#pragma once

#include <stdexcept>
#include <string>

namespace spindrift {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Domain/mask/boundary-layout construction failures.
struct GeometryError : Error {
  using Error::Error;
};

// Field dimensions inconsistent with the grid or with each other.
struct ShapeError : Error {
  using Error::Error;
};

// Non-finite or otherwise inadmissible field data.
struct DataError : Error {
  using Error::Error;
};

// An iterative solve (linear or Picard) failed to reach its tolerance.
struct ConvergenceError : Error {
  ConvergenceError(const std::string& msg, double residual)
      : Error(msg + " (last residual " + std::to_string(residual) + ")"),
        last_residual(residual) {}
  double last_residual;
};

// A time-step restriction was violated, or a step left the stable regime.
struct StabilityError : Error {
  using Error::Error;
};

// Config document is syntactically malformed.
struct ParseError : Error {
  ParseError(const std::string& msg, int line_, int col_)
      : Error(msg + " at line " + std::to_string(line_) + ", column " +
              std::to_string(col_)),
        line(line_), col(col_) {}
  int line;
  int col;
};

// Config document is well-formed but names an unknown field or holds an
// inadmissible value; `field` is the dotted path of the offending entry.
struct ConfigError : Error {
  ConfigError(const std::string& field_, const std::string& msg)
      : Error("config field '" + field_ + "': " + msg), field(field_) {}
  std::string field;
};

// Filesystem failures while emitting or reading artifacts.
struct IoError : Error {
  using Error::Error;
};

// A convergence-order study fell below its required observed order.
struct AccuracyError : Error {
  using Error::Error;
};

}  // namespace spindrift
