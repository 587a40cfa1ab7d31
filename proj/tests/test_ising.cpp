#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "qaf/ising.hpp"

using namespace qaf;

TEST_CASE("spins are restricted to +1 and -1") {
  CHECK(Spin(+1).value() == 1);
  CHECK(Spin(-1).value() == -1);
  CHECK_THROWS_AS(Spin(0), ContractError);
  CHECK_THROWS_AS(Spin(2), ContractError);
  CHECK(spin_up.flipped() == spin_down);
  CHECK(spin_down.flipped() == spin_up);
  CHECK(bit_to_spin(1) == spin_up);
  CHECK(bit_to_spin(0) == spin_down);
  CHECK_THROWS_AS(bit_to_spin(2), ContractError);
  CHECK(spin_to_bit(spin_up) == 1);
  CHECK(spin_to_bit(spin_down) == 0);
}

namespace {

// The NOR penalty parameters double as a handy 3-qubit fixture.
IsingModel nor_fixture() {
  IsingModel m(3);
  m.set_bias(0, 0.5);
  m.set_bias(1, 0.5);
  m.set_bias(2, 1.0);
  m.add_coupling(0, 1, 0.5);
  m.add_coupling(0, 2, 1.0);
  m.add_coupling(1, 2, 1.0);
  return m;
}

}  // namespace

TEST_CASE("energy of a known state") {
  const IsingModel m = nor_fixture();
  // h.s = -0.5 - 0.5 + 1, J terms = +0.5 - 1 - 1
  CHECK(m.energy({spin_down, spin_down, spin_up}) == -1.5);
  CHECK(m.energy({spin_up, spin_up, spin_up}) == 4.5);
  CHECK_THROWS_AS(m.energy({spin_up, spin_up}), ContractError);
}

TEST_CASE("coupling bookkeeping rejects bad input") {
  IsingModel m(4);
  m.add_coupling(2, 0, 1.0);  // stored under the ordered key
  CHECK(m.coupling(0, 2) == 1.0);
  CHECK(m.coupling(2, 0) == 1.0);
  CHECK(m.coupling(1, 3) == 0.0);
  CHECK_THROWS_AS(m.add_coupling(0, 2, 0.5), ContractError);  // duplicate pair
  CHECK_THROWS_AS(m.add_coupling(1, 1, 1.0), ContractError);  // self-coupling
  CHECK_THROWS_AS(m.add_coupling(0, 4, 1.0), ContractError);  // out of range
  CHECK_THROWS_AS(m.add_coupling(0, 1, std::nan("")), ContractError);
  CHECK_THROWS_AS(m.set_bias(4, 1.0), ContractError);
}

TEST_CASE("clamp set stores partial assignments") {
  ClampSet c;
  CHECK(c.empty());
  c.set(3, spin_up);
  c.set(1, spin_down);
  c.set(3, spin_down);  // overwrite
  CHECK(c.size() == 2);
  CHECK(c.contains(3));
  CHECK_FALSE(c.contains(0));
  CHECK(*c.get(3) == spin_down);
  CHECK(!c.get(0).has_value());
}

TEST_CASE("reduce folds a clamp into biases and offset") {
  const IsingModel m = nor_fixture();
  ClampSet clamps;
  clamps.set(2, spin_up);
  const ReducedModel red = reduce(m, clamps);

  CHECK(red.model.size() == 2);
  CHECK(red.offset == 1.0);             // h_2 * (+1)
  CHECK(red.model.bias(0) == 1.5);      // 0.5 + J_02
  CHECK(red.model.bias(1) == 1.5);      // 0.5 + J_12
  CHECK(red.model.coupling(0, 1) == 0.5);
  CHECK(red.index_map == std::vector<std::size_t>{0, 1});
  CHECK(red.original_size == 3);

  const SpinVector free_state{spin_down, spin_down};
  const SpinVector full = red.lift(free_state);
  CHECK(full == SpinVector{spin_down, spin_down, spin_up});
  CHECK(m.energy(full) == red.model.energy(free_state) + red.offset);
}

TEST_CASE("reduce preserves energies on random models") {
  std::mt19937_64 rng(20170915);
  const double values[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 11;  // 2..12 qubits
    IsingModel m(n);
    for (std::size_t i = 0; i < n; ++i) m.set_bias(i, values[rng() % 5]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rng() % 2 == 0) m.add_coupling(i, j, values[rng() % 5]);

    ClampSet clamps;
    for (std::size_t i = 0; i < n; ++i)
      if (rng() % 3 == 0) clamps.set(i, rng() % 2 ? spin_up : spin_down);

    const ReducedModel red = reduce(m, clamps);
    CHECK(red.model.size() == n - clamps.size());

    for (int probe = 0; probe < 20; ++probe) {
      SpinVector f;
      for (std::size_t k = 0; k < red.model.size(); ++k)
        f.push_back(rng() % 2 ? spin_up : spin_down);
      CHECK(m.energy(red.lift(f)) ==
            doctest::Approx(red.model.energy(f) + red.offset).epsilon(1e-12));
    }
  }
}

TEST_CASE("reduce rejects out-of-range clamps") {
  IsingModel m(3);
  ClampSet clamps;
  clamps.set(3, spin_up);
  CHECK_THROWS_AS(reduce(m, clamps), ContractError);
}

TEST_CASE("register decode and encode are little-endian") {
  const SpinVector state{spin_up, spin_down, spin_up};
  CHECK(decode_register(state, {0, 1, 2}) == 5);
  CHECK(decode_register(state, {2, 1, 0}) == 5);  // palindrome state
  CHECK(decode_register(state, {1}) == 0);
  CHECK(decode_register(state, {}) == 0);
  CHECK_THROWS_AS(decode_register(state, {3}), ContractError);

  ClampSet clamps;
  encode_register(clamps, 5, {4, 5, 6});
  CHECK(*clamps.get(4) == spin_up);
  CHECK(*clamps.get(5) == spin_down);
  CHECK(*clamps.get(6) == spin_up);
  ClampSet overflow;
  CHECK_THROWS_AS(encode_register(overflow, 4, {0, 1}), ContractError);
}
