#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qaf/ising.hpp"

namespace qaf {

/// Polarity of a two-qubit connection. Plain enforces equality (J = -1),
/// Inverting enforces negation (J = +1) and doubles as a NOT gate.
enum class WirePolarity { Plain, Inverting };

double wire_coupling(WirePolarity p);

/// A small penalty model whose ground states encode one gate's truth table.
/// Qubits are indexed locally from 0; the compiler is responsible for
/// placing them into a global model.
struct GateGadget {
  std::string name;
  std::vector<std::size_t> input_qubits;
  std::vector<std::size_t> output_qubits;
  std::vector<std::size_t> ancilla_qubits;
  IsingModel local;
  // input bits (little-endian over input_qubits) -> output bits
  std::map<std::vector<int>, std::vector<int>> truth_table;
};

/// The two-input NOR gate as a three-qubit penalty model:
/// h = (0.5, 0.5, 1), J = {(0,1): 0.5, (0,2): 1, (1,2): 1},
/// with inputs on qubits 0 and 1 and the output on qubit 2.
GateGadget nor_gadget();

/// Outcome of exhaustively checking a gadget's ground manifold against its
/// truth table (ancilla qubits projected out).
struct VerificationReport {
  bool passed = false;
  double ground_energy = 0.0;
  double gap = 0.0;  // first excited level minus ground; 0 if none exists
  std::vector<SpinVector> ground_states;
  // Human-readable descriptions of rows missing from the ground manifold or
  // ground states contradicting the table. Empty iff passed.
  std::vector<std::string> mismatches;
};

/// Enumerates all 2^n local states (n <= 20, else BoundError). A gadget
/// passes when every truth-table row is realized by at least one ground
/// state and no ground state disagrees with the table on role qubits.
VerificationReport verify_gadget(const GateGadget& g);

}  // namespace qaf
