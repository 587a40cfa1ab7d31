#include "qaf/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace qaf {

double wire_coupling(WirePolarity p) {
  return p == WirePolarity::Plain ? -1.0 : +1.0;
}

GateGadget nor_gadget() {
  GateGadget g;
  g.name = "NOR";
  g.input_qubits = {0, 1};
  g.output_qubits = {2};
  g.local = IsingModel(3);
  g.local.set_bias(0, 0.5);
  g.local.set_bias(1, 0.5);
  g.local.set_bias(2, 1.0);
  g.local.add_coupling(0, 1, 0.5);
  g.local.add_coupling(0, 2, 1.0);
  g.local.add_coupling(1, 2, 1.0);
  for (int a = 0; a <= 1; ++a)
    for (int b = 0; b <= 1; ++b) g.truth_table[{a, b}] = {a == 0 && b == 0 ? 1 : 0};
  return g;
}

namespace {

std::string describe_row(const std::vector<int>& in, const std::vector<int>& out) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < in.size(); ++i) os << (i ? "," : "") << in[i];
  os << ") -> (";
  for (std::size_t i = 0; i < out.size(); ++i) os << (i ? "," : "") << out[i];
  os << ")";
  return os.str();
}

std::vector<int> project_bits(const SpinVector& state, const std::vector<std::size_t>& qubits) {
  std::vector<int> bits;
  bits.reserve(qubits.size());
  for (std::size_t q : qubits) bits.push_back(spin_to_bit(state[q]));
  return bits;
}

}  // namespace

VerificationReport verify_gadget(const GateGadget& g) {
  const std::size_t n = g.local.size();
  if (n > 20)
    throw BoundError("verify_gadget: gadget has " + std::to_string(n) +
                     " qubits, enumeration bound is 20");
  for (std::size_t q : g.input_qubits)
    if (q >= n) throw ContractError("verify_gadget: input role index out of range");
  for (std::size_t q : g.output_qubits)
    if (q >= n) throw ContractError("verify_gadget: output role index out of range");

  VerificationReport report;

  // Exhaustive spectrum: track the ground manifold and the first excited level.
  double ground = std::numeric_limits<double>::infinity();
  double excited = std::numeric_limits<double>::infinity();
  const double eps = 1e-9;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    SpinVector state;
    state.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      state.push_back(bit_to_spin(static_cast<int>((code >> i) & 1)));
    const double e = g.local.energy(state);
    if (e < ground - eps) {
      excited = ground;
      ground = e;
      report.ground_states.clear();
      report.ground_states.push_back(std::move(state));
    } else if (e <= ground + eps) {
      report.ground_states.push_back(std::move(state));
    } else if (e < excited) {
      excited = e;
    }
  }
  report.ground_energy = ground;
  report.gap = std::isinf(excited) ? 0.0 : excited - ground;

  // Every table row must appear among the ground states...
  std::set<std::vector<int>> realized;  // input bits seen in the ground manifold
  for (const auto& state : report.ground_states)
    realized.insert(project_bits(state, g.input_qubits));
  for (const auto& [in, out] : g.truth_table) {
    if (!realized.count(in))
      report.mismatches.push_back("row " + describe_row(in, out) + " missing from ground manifold");
  }

  // ...and no ground state may contradict the table on role qubits.
  for (const auto& state : report.ground_states) {
    const auto in = project_bits(state, g.input_qubits);
    const auto out = project_bits(state, g.output_qubits);
    auto it = g.truth_table.find(in);
    if (it == g.truth_table.end()) {
      report.mismatches.push_back("ground state with inputs " + describe_row(in, out) +
                                  " has no table row");
    } else if (it->second != out) {
      report.mismatches.push_back("ground state decodes " + describe_row(in, out) +
                                  " but table says " + describe_row(in, it->second));
    }
  }

  report.passed = report.mismatches.empty();
  return report;
}

}  // namespace qaf
