#pragma once

#include <stdexcept>
#include <string>

namespace declab {

// Bad user input: malformed config, invalid parameters, degenerate geometry.
// The CLI maps this family to exit code 1.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Failure while computing: blow-up, non-contractive iteration, exhausted budgets.
// The CLI maps this family (and IoError) to exit code 2.
class SimulationError : public std::runtime_error {
public:
  explicit SimulationError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public SimulationError {
public:
  explicit IoError(const std::string& what) : SimulationError(what) {}
};

}  // namespace declab
