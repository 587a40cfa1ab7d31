#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "qaf/netlist.hpp"

namespace qaf {

/// Degree value meaning "never insert fan-out copies".
inline constexpr std::size_t kUnlimitedDegree = std::numeric_limits<std::size_t>::max();

struct CompileOptions {
  /// Maximum couplings per qubit; nets whose wire fan-out exceeds it get a
  /// balanced binary tree of copy qubits joined by Plain wires.
  std::size_t max_degree = 8;
  /// Merge Plain-wired net groups into single qubits, folding the satisfied
  /// wire couplings into energy_offset. Preserves ground-state decodings but
  /// not the hardware h/J discreteness; disables fan-out insertion.
  bool fuse_plain_wires = false;
};

struct QubitMap {
  std::vector<std::size_t> net_to_qubit;  // indexed by NetId
  std::vector<std::size_t> input_qubits;  // circuit input register, in order
  std::vector<std::size_t> output_qubits;
  std::vector<std::pair<std::size_t, std::size_t>> copy_qubits;  // (copy, parent it mirrors)
};

struct CompileStats {
  std::size_t qubit_count = 0;
  std::size_t coupling_count = 0;
  std::size_t max_degree = 0;
};

struct CompiledModel {
  IsingModel model;
  QubitMap map;
  CompileStats stats;
  std::size_t gate_count = 0;
  /// Wire couplings present in the final model, fan-out links included and
  /// fused-away wires excluded.
  std::size_t wire_count = 0;
  /// Constant folded out by fusion: full-circuit energy = model energy +
  /// energy_offset on states where fused partners agree. Zero without fusion.
  double energy_offset = 0.0;

  /// Model energy every consistent circuit assignment attains, and (for
  /// circuits built from the generators) the exact ground energy: every
  /// gadget at -1.5 plus every wire coupling satisfied at -1.
  double certified_ground_energy() const {
    return -1.5 * static_cast<double>(gate_count) - 1.0 * static_cast<double>(wire_count);
  }
};

/// Lowers a circuit: one qubit per net (per fused group when fusing), the
/// NOR gadget parameters on each gate's qubits, wire_coupling(polarity) per
/// wire, then fan-out trees wherever a qubit's degree would exceed
/// options.max_degree. Numbering is first-mention order over inputs,
/// outputs, gates, wires, so identical circuits compile identically.
CompiledModel compile(const Circuit& c, const CompileOptions& options = {});

/// The annealer's per-qubit capabilities: discrete bias/coupling values and
/// a connection-port budget of eight. h=0 is allowed for pure interconnect
/// (copy) qubits that carry no gadget bias.
struct HardwareProfile {
  std::vector<double> allowed_h{0.0, 0.5, 1.0};
  std::vector<double> allowed_j_magnitudes{0.5, 1.0};
  std::size_t max_degree = 8;
};

struct HardwareReport {
  std::vector<std::pair<std::size_t, double>> bad_biases;                     // (qubit, h)
  std::vector<std::tuple<std::size_t, std::size_t, double>> bad_couplings;    // (i, j, J)
  std::vector<std::pair<std::size_t, std::size_t>> bad_degrees;               // (qubit, degree)
  bool compliant() const {
    return bad_biases.empty() && bad_couplings.empty() && bad_degrees.empty();
  }
};

HardwareReport hardware_check(const CompiledModel& m, const HardwareProfile& profile = {});

/// Qubit budget for factoring a p-bit number, from the published scaling
/// (25 p^2 qubits, 6400 um^2 per qubit, 20-mm-square chips) next to this
/// artifact's own compiled multiplier size at the factoring widths.
struct ResourceEstimate {
  std::size_t bit_width = 0;
  std::uint64_t paper_estimate = 0;   // 25 p^2
  std::uint64_t qubits_per_chip = 0;  // (20 mm)^2 / 6400 um^2 = 62,500
  std::uint64_t chips = 0;            // ceil(paper_estimate / qubits_per_chip)
  std::size_t width_m = 0;            // multiplier operand widths for p-bit factoring
  std::size_t width_n = 0;
  std::optional<std::size_t> artifact_qubits;  // compiled multiplier(width_m, width_n) size
};

/// compile_artifact additionally builds and compiles the multiplier at the
/// factoring widths to fill artifact_qubits; that requires p >= 2 and gets
/// expensive for cryptographic widths, so it can be skipped.
ResourceEstimate estimate_resources(std::size_t p, bool compile_artifact = true);

}  // namespace qaf
