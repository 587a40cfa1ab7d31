#include "qaf/ising.hpp"

#include <cmath>
#include <string>

namespace qaf {

double IsingModel::bias(std::size_t i) const {
  if (i >= h_.size()) throw ContractError("bias: index " + std::to_string(i) + " out of range");
  return h_[i];
}

void IsingModel::set_bias(std::size_t i, double value) {
  if (i >= h_.size()) throw ContractError("set_bias: index " + std::to_string(i) + " out of range");
  if (!std::isfinite(value)) throw ContractError("set_bias: value must be finite");
  h_[i] = value;
}

void IsingModel::add_coupling(std::size_t i, std::size_t j, double value) {
  if (i == j) throw ContractError("add_coupling: self-coupling on qubit " + std::to_string(i));
  if (i >= h_.size() || j >= h_.size())
    throw ContractError("add_coupling: pair (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") out of range");
  if (!std::isfinite(value)) throw ContractError("add_coupling: value must be finite");
  Key key = i < j ? Key{i, j} : Key{j, i};
  auto [it, inserted] = J_.emplace(key, value);
  (void)it;
  if (!inserted)
    throw ContractError("add_coupling: pair (" + std::to_string(key.first) + ", " +
                        std::to_string(key.second) + ") already present");
}

double IsingModel::coupling(std::size_t i, std::size_t j) const {
  if (i == j) throw ContractError("coupling: self-coupling on qubit " + std::to_string(i));
  if (i >= h_.size() || j >= h_.size())
    throw ContractError("coupling: pair (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") out of range");
  Key key = i < j ? Key{i, j} : Key{j, i};
  auto it = J_.find(key);
  return it == J_.end() ? 0.0 : it->second;
}

double IsingModel::energy(const SpinVector& state) const {
  if (state.size() != h_.size())
    throw ContractError("energy: state has " + std::to_string(state.size()) + " spins, model has " +
                        std::to_string(h_.size()));
  double e = 0.0;
  for (std::size_t i = 0; i < h_.size(); ++i) e += h_[i] * state[i].value();
  for (const auto& [key, j] : J_) e += j * state[key.first].value() * state[key.second].value();
  return e;
}

void ClampSet::set(std::size_t index, Spin value) {
  auto [it, inserted] = assignments_.emplace(index, value);
  if (!inserted) it->second = value;
}

std::optional<Spin> ClampSet::get(std::size_t index) const {
  auto it = assignments_.find(index);
  if (it == assignments_.end()) return std::nullopt;
  return it->second;
}

SpinVector ReducedModel::lift(const SpinVector& free_state) const {
  if (free_state.size() != index_map.size())
    throw ContractError("lift: expected " + std::to_string(index_map.size()) + " free spins, got " +
                        std::to_string(free_state.size()));
  SpinVector full(original_size, spin_down);
  for (const auto& [index, value] : clamps.assignments()) full[index] = value;
  for (std::size_t f = 0; f < free_state.size(); ++f) full[index_map[f]] = free_state[f];
  return full;
}

ReducedModel reduce(const IsingModel& model, const ClampSet& clamps) {
  const std::size_t n = model.size();
  for (const auto& [index, value] : clamps.assignments()) {
    (void)value;
    if (index >= n)
      throw ContractError("reduce: clamp index " + std::to_string(index) + " out of range");
  }

  ReducedModel out;
  out.original_size = n;
  out.clamps = clamps;

  // old index -> new index over the free qubits, in ascending order
  std::vector<std::size_t> new_index(n, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < n; ++i) {
    if (!clamps.contains(i)) {
      new_index[i] = out.index_map.size();
      out.index_map.push_back(i);
    }
  }

  out.model = IsingModel(out.index_map.size());
  for (std::size_t f = 0; f < out.index_map.size(); ++f)
    out.model.set_bias(f, model.bias(out.index_map[f]));

  // h_i s_i with s_i fixed becomes a constant
  for (const auto& [index, value] : clamps.assignments())
    out.offset += model.bias(index) * value.value();

  // J_ij s_i s_j: both fixed -> constant; one fixed -> bias on the other
  for (const auto& [key, j] : model.couplings()) {
    auto [a, b] = key;
    auto sa = clamps.get(a);
    auto sb = clamps.get(b);
    if (sa && sb) {
      out.offset += j * sa->value() * sb->value();
    } else if (sa) {
      out.model.set_bias(new_index[b], out.model.bias(new_index[b]) + j * sa->value());
    } else if (sb) {
      out.model.set_bias(new_index[a], out.model.bias(new_index[a]) + j * sb->value());
    } else {
      out.model.add_coupling(new_index[a], new_index[b], j);
    }
  }
  return out;
}

std::uint64_t decode_register(const SpinVector& state, const std::vector<std::size_t>& indices) {
  if (indices.size() > 64) throw ContractError("decode_register: register wider than 64 bits");
  std::uint64_t value = 0;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= state.size())
      throw ContractError("decode_register: index " + std::to_string(indices[k]) + " out of range");
    if (spin_to_bit(state[indices[k]]) == 1) value |= std::uint64_t{1} << k;
  }
  return value;
}

void encode_register(ClampSet& clamps, std::uint64_t value, const std::vector<std::size_t>& indices) {
  if (indices.size() > 64) throw ContractError("encode_register: register wider than 64 bits");
  if (indices.size() < 64 && (value >> indices.size()) != 0)
    throw ContractError("encode_register: value does not fit in " +
                        std::to_string(indices.size()) + " bits");
  for (std::size_t k = 0; k < indices.size(); ++k)
    clamps.set(indices[k], bit_to_spin(static_cast<int>((value >> k) & 1)));
}

}  // namespace qaf
