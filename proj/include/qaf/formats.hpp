#pragma once

#include <iosfwd>
#include <string>

#include "qaf/netlist.hpp"

namespace qaf {

/// Line-oriented Ising model text:
///   n <count>
///   h <i> <value>
///   J <i> <j> <value>      (i < j)
///   c <i> <+1|-1>          (optional clamps)
/// `#` starts a comment; indices are 0-based. Canonical form is sorted,
/// zero-free, and uses the shortest decimal that round-trips.
struct IsingFile {
  IsingModel model;
  ClampSet clamps;
};

IsingFile parse_ising(std::istream& in);
IsingFile parse_ising_string(const std::string& text);
std::string emit_ising(const IsingModel& model, const ClampSet& clamps = ClampSet{});

/// Shortest decimal rendering that strtod parses back to exactly x.
std::string format_double(double x);

/// Circuit JSON:
///   {"inputs": [net...], "outputs": [net...],
///    "gates": [{"type": "NOR", "a": net, "b": net, "out": net}...],
///    "wires": [{"x": net, "y": net, "polarity": "plain"|"invert"}...]}
/// Nets are referenced by name; the loaded circuit is validated.
Circuit parse_netlist_json(const std::string& text);
std::string emit_netlist_json(const Circuit& c);

}  // namespace qaf
