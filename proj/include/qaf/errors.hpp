#pragma once

#include <stdexcept>
#include <string>

namespace qaf {

/// Violation of an operation's preconditions (bad index, length mismatch, ...).
struct ContractError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An enumeration-based routine was asked to exceed its state-space bound.
struct BoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Structurally invalid circuit (double driver, cycle, undriven net, ...).
struct CircuitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed model or netlist file.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A heuristic solver failed to reach the certified ground energy.
struct NonConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact search proved that no acceptable solution exists.
struct UnsatisfiableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qaf
