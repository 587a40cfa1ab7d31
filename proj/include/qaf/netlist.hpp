#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "qaf/gadgets.hpp"

namespace qaf {

/// Handle to a net inside one Circuit (index into its net table).
using NetId = std::size_t;

struct NorGate {
  NetId a;
  NetId b;
  NetId out;
};

struct Wire {
  NetId x;
  NetId y;
  WirePolarity polarity;
};

/// A Boolean circuit in the NOR-plus-wires dialect: the only gate is a
/// two-input NOR, and wires carry a polarity (Plain copies, Inverting
/// negates). Inversion therefore never needs a gate of its own.
///
/// Structural discipline kept by all generators: every non-input net is
/// driven exactly once (by a gate output or by one wire from an
/// already-driven net), which makes eval a simple forward propagation.
class Circuit {
 public:
  /// Registers a net. Names must be unique within the circuit.
  NetId add_net(const std::string& name);
  void add_gate(NetId a, NetId b, NetId out);
  void add_wire(NetId x, NetId y, WirePolarity polarity);

  void set_inputs(std::vector<NetId> nets);
  void set_outputs(std::vector<NetId> nets);

  std::size_t net_count() const noexcept { return net_names_.size(); }
  const std::string& net_name(NetId id) const;
  /// Looks a net up by name; throws ContractError when absent.
  NetId net(const std::string& name) const;
  bool has_net(const std::string& name) const { return name_index_.count(name) != 0; }

  const std::vector<std::string>& net_names() const noexcept { return net_names_; }
  const std::vector<NorGate>& gates() const noexcept { return gates_; }
  const std::vector<Wire>& wires() const noexcept { return wires_; }
  const std::vector<NetId>& inputs() const noexcept { return inputs_; }
  const std::vector<NetId>& outputs() const noexcept { return outputs_; }

  /// Structural well-formedness: every net determined exactly once by
  /// forward propagation from the inputs, no double drivers, no redundant
  /// or cyclic constraints. Throws CircuitError on violation.
  void validate() const;

  /// Classical reference evaluation: propagates input bits through wires
  /// and gates to a fixed point and reads the output bits. This is the
  /// ground-truth oracle the solver tests compare against.
  std::vector<int> eval(const std::vector<int>& input_bits) const;

 private:
  std::vector<std::string> net_names_;
  std::unordered_map<std::string, NetId> name_index_;
  std::vector<NorGate> gates_;
  std::vector<Wire> wires_;
  std::vector<NetId> inputs_;
  std::vector<NetId> outputs_;
};

/// Half adder over nets q1..q9 (inputs A=q1, B=q2; SUM=q9, CARRY=q6):
/// NOR(q1,q2→q3), NOR(q4,q5→q6), NOR(q7,q8→q9), Inverting wires q1~q4 and
/// q2~q5, Plain wires q3~q8 and q6~q7.
Circuit half_adder();

/// Full adder (inputs a, b, cin; outputs SUM, COUT) built from two half
/// adders plus a carry-merge OR (NOR followed by an Inverting wire).
/// Fixed size for this construction: 23 nets, 7 gates, 13 wires.
Circuit full_adder();

/// Array multiplier with little-endian operand registers M (p bits) and
/// N (q bits) and product register P (p+q bits). Partial products are
/// NOR-based ANDs fed through Inverting wires from the operand nets;
/// columns are reduced with half/full adder instances connected by Plain
/// wires. Product columns that receive neither partial products nor
/// carries are tied to a constant-zero net (NOR of a signal and its own
/// negation).
Circuit multiplier(std::size_t p, std::size_t q);

}  // namespace qaf
