#pragma once

#include <stdexcept>
#include <string>

namespace cqec {

/// A code definition or graph construction violated a structural requirement
/// (non-commuting generators, ill-defined lumping, ...).
struct ConstructionError : std::runtime_error {
  explicit ConstructionError(const std::string& what)
      : std::runtime_error(what) {}
};

/// A numerical propagation step collapsed (all-zero filter vector, SME trace
/// underflow). Carries the simulation time at which the step failed.
struct NumericalFailure : std::runtime_error {
  NumericalFailure(const std::string& what, double t)
      : std::runtime_error(what + " (t=" + std::to_string(t) + ")"), time(t) {}
  double time;
};

}  // namespace cqec
