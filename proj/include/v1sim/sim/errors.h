#pragma once

#include <stdexcept>
#include <string>

namespace v1sim {

// Invalid user-supplied parameters.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Broken simulator invariant (programming error). Aborts the run.
class SimulationFault : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace v1sim
