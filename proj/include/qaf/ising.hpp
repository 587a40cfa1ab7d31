#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qaf/errors.hpp"

namespace qaf {

/// A single Ising spin, restricted to the values -1 and +1.
class Spin {
 public:
  constexpr explicit Spin(int v) : v_(static_cast<std::int8_t>(v)) {
    if (v != -1 && v != +1) throw ContractError("Spin: value must be -1 or +1");
  }
  constexpr int value() const noexcept { return v_; }
  constexpr Spin flipped() const noexcept {
    Spin s = *this;
    s.v_ = static_cast<std::int8_t>(-v_);
    return s;
  }
  friend constexpr bool operator==(Spin a, Spin b) noexcept = default;
  friend constexpr bool operator<(Spin a, Spin b) noexcept { return a.v_ < b.v_; }

 private:
  std::int8_t v_;
};

inline constexpr Spin spin_up{+1};
inline constexpr Spin spin_down{-1};

using SpinVector = std::vector<Spin>;

/// Logical bit <-> spin convention: 1 maps to +1, 0 maps to -1.
/// This is the only convention under which the NOR gadget's ground
/// manifold reproduces the NOR truth table.
constexpr Spin bit_to_spin(int b) {
  if (b != 0 && b != 1) throw ContractError("bit_to_spin: bit must be 0 or 1");
  return b == 1 ? spin_up : spin_down;
}

constexpr int spin_to_bit(Spin s) noexcept { return s.value() > 0 ? 1 : 0; }

/// An Ising energy model
///
///   E(s) = sum_i h_i s_i + sum_{i<j} J_ij s_i s_j
///
/// with real biases h and sparse pairwise couplings J. Couplings are keyed
/// by the canonical ordered pair (i, j) with i < j and each pair may be
/// inserted at most once; callers composing several contributions on the
/// same pair must sum them explicitly before insertion.
class IsingModel {
 public:
  using Key = std::pair<std::size_t, std::size_t>;
  using CouplingMap = std::map<Key, double>;

  IsingModel() = default;
  explicit IsingModel(std::size_t n) : h_(n, 0.0) {}

  std::size_t size() const noexcept { return h_.size(); }

  double bias(std::size_t i) const;
  void set_bias(std::size_t i, double value);
  const std::vector<double>& biases() const noexcept { return h_; }

  /// Adds a coupling on the unordered pair {i, j}. Throws ContractError on
  /// self-coupling, out-of-range index, non-finite value, or duplicate pair.
  void add_coupling(std::size_t i, std::size_t j, double value);
  double coupling(std::size_t i, std::size_t j) const;  // 0 when absent
  const CouplingMap& couplings() const noexcept { return J_; }

  /// Hamiltonian value of a full spin assignment. The state length must
  /// equal size().
  double energy(const SpinVector& state) const;

  friend bool operator==(const IsingModel& a, const IsingModel& b) = default;

 private:
  std::vector<double> h_;
  CouplingMap J_;
};

/// A partial assignment of qubits to fixed spins.
class ClampSet {
 public:
  ClampSet() = default;

  void set(std::size_t index, Spin value);
  std::optional<Spin> get(std::size_t index) const;
  bool contains(std::size_t index) const { return assignments_.count(index) != 0; }
  std::size_t size() const noexcept { return assignments_.size(); }
  bool empty() const noexcept { return assignments_.empty(); }
  const std::map<std::size_t, Spin>& assignments() const noexcept { return assignments_; }

 private:
  std::map<std::size_t, Spin> assignments_;
};

/// Result of eliminating clamped spins from a model. For every assignment f
/// of the free qubits,
///
///   energy(original, lift(f)) == model.energy(f) + offset.
struct ReducedModel {
  IsingModel model;                    // over the free qubits only
  double offset = 0.0;                 // constant term folded out of the clamps
  std::vector<std::size_t> index_map;  // free index -> original index
  std::size_t original_size = 0;
  ClampSet clamps;

  /// Reassembles a full state from a free-qubit assignment plus the clamps.
  SpinVector lift(const SpinVector& free_state) const;
};

/// Folds the clamped spins of `clamps` into biases and a constant offset.
ReducedModel reduce(const IsingModel& model, const ClampSet& clamps);

/// Little-endian register readout: bit k of the result is the logical value
/// of state[indices[k]].
std::uint64_t decode_register(const SpinVector& state, const std::vector<std::size_t>& indices);

/// Clamps the qubits of a little-endian register to the bits of `value`.
/// The value must fit in the register width.
void encode_register(ClampSet& clamps, std::uint64_t value, const std::vector<std::size_t>& indices);

}  // namespace qaf
