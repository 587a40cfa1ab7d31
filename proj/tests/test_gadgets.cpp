#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <vector>

#include "doctest.h"
#include "qaf/gadgets.hpp"

using namespace qaf;

TEST_CASE("wire couplings: plain is -1, inverting is +1") {
  CHECK(wire_coupling(WirePolarity::Plain) == -1.0);
  CHECK(wire_coupling(WirePolarity::Inverting) == 1.0);
}

TEST_CASE("nor gadget carries the published parameters") {
  const GateGadget g = nor_gadget();
  CHECK(g.name == "NOR");
  CHECK(g.local.size() == 3);
  CHECK(g.local.bias(0) == 0.5);
  CHECK(g.local.bias(1) == 0.5);
  CHECK(g.local.bias(2) == 1.0);
  CHECK(g.local.coupling(0, 1) == 0.5);
  CHECK(g.local.coupling(0, 2) == 1.0);
  CHECK(g.local.coupling(1, 2) == 1.0);
  CHECK(g.input_qubits == std::vector<std::size_t>{0, 1});
  CHECK(g.output_qubits == std::vector<std::size_t>{2});
  CHECK(g.ancilla_qubits.empty());
  CHECK(g.truth_table.size() == 4);
  CHECK(g.truth_table.at({0, 0}) == std::vector<int>{1});
  CHECK(g.truth_table.at({0, 1}) == std::vector<int>{0});
  CHECK(g.truth_table.at({1, 0}) == std::vector<int>{0});
  CHECK(g.truth_table.at({1, 1}) == std::vector<int>{0});
}

TEST_CASE("nor gadget spectrum: ground -1.5 x4, then +0.5 x3, then +4.5") {
  const GateGadget g = nor_gadget();

  std::vector<double> energies;
  for (int code = 0; code < 8; ++code) {
    SpinVector s;
    for (int b = 0; b < 3; ++b) s.push_back(code >> b & 1 ? spin_up : spin_down);
    energies.push_back(g.local.energy(s));
  }
  std::sort(energies.begin(), energies.end());
  CHECK(energies == std::vector<double>{-1.5, -1.5, -1.5, -1.5, 0.5, 0.5, 0.5, 4.5});

  const VerificationReport rep = verify_gadget(g);
  CHECK(rep.passed);
  CHECK(rep.ground_energy == -1.5);
  CHECK(rep.gap == 2.0);
  CHECK(rep.ground_states.size() == 4);
  CHECK(rep.mismatches.empty());
}

TEST_CASE("each ground state is one NOR truth-table row") {
  const GateGadget g = nor_gadget();
  const VerificationReport rep = verify_gadget(g);
  std::vector<std::vector<int>> rows;
  for (const SpinVector& s : rep.ground_states)
    rows.push_back({spin_to_bit(s[0]), spin_to_bit(s[1]), spin_to_bit(s[2])});
  std::sort(rows.begin(), rows.end());
  CHECK(rows == std::vector<std::vector<int>>{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 1, 0}});
}

TEST_CASE("verification fails when the gadget drops table rows") {
  GateGadget g = nor_gadget();
  // Biasing the output qubit downward leaves (0,0)->1 as the unique ground
  // state; the three other rows are no longer realized.
  g.local.set_bias(2, -1.0);
  const VerificationReport rep = verify_gadget(g);
  CHECK_FALSE(rep.passed);
  CHECK(rep.ground_energy == -3.5);
  REQUIRE(rep.ground_states.size() == 1);
  CHECK(rep.ground_states[0] == SpinVector{spin_down, spin_down, spin_up});
  CHECK(rep.mismatches.size() == 3);  // rows (0,1), (1,0), (1,1) all missing
}

TEST_CASE("a zero Hamiltonian is fully degenerate and fails verification") {
  GateGadget g;
  g.name = "blank";
  g.local = IsingModel(2);
  g.input_qubits = {0};
  g.output_qubits = {1};
  g.truth_table[{0}] = {0};
  g.truth_table[{1}] = {1};
  const VerificationReport rep = verify_gadget(g);
  CHECK_FALSE(rep.passed);
  CHECK(rep.ground_energy == 0.0);
  CHECK(rep.gap == 0.0);
  CHECK(rep.ground_states.size() == 4);
  CHECK_FALSE(rep.mismatches.empty());
}

TEST_CASE("wire couplings ground exactly the aligned or anti-aligned pairs") {
  auto fragment = [](WirePolarity p, std::vector<int> table0, std::vector<int> table1) {
    GateGadget g;
    g.name = "wire";
    g.local = IsingModel(2);
    g.local.add_coupling(0, 1, wire_coupling(p));
    g.input_qubits = {0};
    g.output_qubits = {1};
    g.truth_table[{0}] = table0;
    g.truth_table[{1}] = table1;
    return verify_gadget(g);
  };

  const VerificationReport plain = fragment(WirePolarity::Plain, {0}, {1});
  CHECK(plain.passed);
  CHECK(plain.ground_energy == -1.0);
  CHECK(plain.gap == 2.0);
  std::vector<SpinVector> states = plain.ground_states;
  std::sort(states.begin(), states.end());
  CHECK(states == std::vector<SpinVector>{{spin_down, spin_down}, {spin_up, spin_up}});

  const VerificationReport invert = fragment(WirePolarity::Inverting, {1}, {0});
  CHECK(invert.passed);
  CHECK(invert.ground_energy == -1.0);
  CHECK(invert.gap == 2.0);
  states = invert.ground_states;
  std::sort(states.begin(), states.end());
  CHECK(states == std::vector<SpinVector>{{spin_down, spin_up}, {spin_up, spin_down}});
}

TEST_CASE("verification fails when a ground state contradicts the table") {
  GateGadget g = nor_gadget();
  g.truth_table[{0, 0}] = {0};  // wrong claim: the gadget grounds (0,0)->1
  const VerificationReport rep = verify_gadget(g);
  CHECK_FALSE(rep.passed);
  CHECK_FALSE(rep.mismatches.empty());
}

TEST_CASE("verification refuses gadgets too large to enumerate") {
  GateGadget g = nor_gadget();
  g.local = IsingModel(21);
  g.input_qubits = {0, 1};
  g.output_qubits = {2};
  CHECK_THROWS_AS(verify_gadget(g), BoundError);
}
