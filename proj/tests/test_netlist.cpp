#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "qaf/netlist.hpp"

using namespace qaf;

namespace {

std::vector<int> to_bits(std::uint64_t value, std::size_t width) {
  std::vector<int> bits(width);
  for (std::size_t k = 0; k < width; ++k) bits[k] = value >> k & 1;
  return bits;
}

std::uint64_t from_bits(const std::vector<int>& bits) {
  std::uint64_t v = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) v |= std::uint64_t(bits[k]) << k;
  return v;
}

}  // namespace

TEST_CASE("circuit construction rejects malformed gates and wires") {
  Circuit c;
  const NetId a = c.add_net("a");
  const NetId b = c.add_net("b");
  const NetId o = c.add_net("o");
  CHECK_THROWS_AS(c.add_net("a"), CircuitError);       // duplicate name
  CHECK_THROWS_AS(c.add_gate(a, a, o), CircuitError);  // tied inputs
  CHECK_THROWS_AS(c.add_gate(a, b, a), CircuitError);  // output is an input
  CHECK_THROWS_AS(c.add_wire(a, a, WirePolarity::Plain), CircuitError);
  CHECK_THROWS_AS(c.add_wire(a, 9, WirePolarity::Plain), ContractError);
  c.add_gate(a, b, o);
  CHECK(c.net("o") == o);
  CHECK(c.has_net("b"));
  CHECK_FALSE(c.has_net("zz"));
  CHECK_THROWS_AS(c.net("zz"), ContractError);
}

TEST_CASE("validate catches double drivers, undriven nets and cycles") {
  {
    Circuit c;  // gate output also fed by a wire
    const NetId a = c.add_net("a"), b = c.add_net("b"), o = c.add_net("o");
    c.add_gate(a, b, o);
    c.add_wire(a, o, WirePolarity::Plain);
    c.set_inputs({a, b});
    CHECK_THROWS_AS(c.validate(), CircuitError);
  }
  {
    Circuit c;  // floating net
    const NetId a = c.add_net("a");
    c.add_net("island");
    c.set_inputs({a});
    CHECK_THROWS_AS(c.validate(), CircuitError);
  }
  {
    Circuit c;  // wire cycle disconnected from the inputs
    const NetId a = c.add_net("a"), x = c.add_net("x"), y = c.add_net("y");
    c.add_wire(x, y, WirePolarity::Plain);
    c.add_wire(y, x, WirePolarity::Inverting);
    c.set_inputs({a});
    CHECK_THROWS_AS(c.validate(), CircuitError);
  }
  {
    Circuit c;  // gate drives an input net
    const NetId a = c.add_net("a"), b = c.add_net("b"), o = c.add_net("o");
    c.add_gate(a, b, o);
    c.set_inputs({a, b, o});
    CHECK_THROWS_AS(c.validate(), CircuitError);
  }
}

TEST_CASE("eval propagates through wires and gates") {
  Circuit c;
  const NetId a = c.add_net("a"), b = c.add_net("b"), o = c.add_net("o");
  const NetId no = c.add_net("no");
  c.add_gate(a, b, o);
  c.add_wire(o, no, WirePolarity::Inverting);  // NOT(NOR) = OR
  c.set_inputs({a, b});
  c.set_outputs({o, no});
  CHECK(c.eval({0, 0}) == std::vector<int>{1, 0});
  CHECK(c.eval({0, 1}) == std::vector<int>{0, 1});
  CHECK(c.eval({1, 0}) == std::vector<int>{0, 1});
  CHECK(c.eval({1, 1}) == std::vector<int>{0, 1});
  CHECK_THROWS_AS(c.eval({0}), ContractError);
  CHECK_THROWS_AS(c.eval({0, 2}), ContractError);
}

TEST_CASE("a gateless plain wire is the identity") {
  Circuit c;
  const NetId in = c.add_net("in"), out = c.add_net("out");
  c.add_wire(in, out, WirePolarity::Plain);
  c.set_inputs({in});
  c.set_outputs({out});
  c.validate();
  CHECK(c.eval({1}) == std::vector<int>{1});
  CHECK(c.eval({0}) == std::vector<int>{0});
}

TEST_CASE("half adder has the published shape") {
  const Circuit ha = half_adder();
  CHECK(ha.net_count() == 9);
  CHECK(ha.gates().size() == 3);
  CHECK(ha.wires().size() == 4);
  CHECK(ha.inputs().size() == 2);
  CHECK(ha.outputs().size() == 2);
  ha.validate();
}

TEST_CASE("half adder computes sum and carry") {
  const Circuit ha = half_adder();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const auto out = ha.eval({a, b});  // {SUM, CARRY}
      CHECK(out[0] == (a ^ b));
      CHECK(out[1] == (a & b));
    }
  }
}

TEST_CASE("full adder has the expected shape and arithmetic") {
  const Circuit fa = full_adder();
  CHECK(fa.net_count() == 23);
  CHECK(fa.gates().size() == 7);
  CHECK(fa.wires().size() == 13);
  CHECK(fa.inputs().size() == 3);
  CHECK(fa.outputs().size() == 2);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int cin = 0; cin < 2; ++cin) {
        const auto out = fa.eval({a, b, cin});  // {SUM, COUT}
        const int total = a + b + cin;
        CHECK(out[0] == total % 2);
        CHECK(out[1] == total / 2);
      }
    }
  }
}

TEST_CASE("multiplier(2,2) matches the pinned resource counts") {
  const Circuit m = multiplier(2, 2);
  CHECK(m.net_count() == 34);
  CHECK(m.gates().size() == 10);
  CHECK(m.wires().size() == 20);
  CHECK(m.inputs().size() == 4);
  CHECK(m.outputs().size() == 4);
  m.validate();
}

TEST_CASE("multipliers compute every product exhaustively") {
  for (std::size_t p = 1; p <= 4; ++p) {
    for (std::size_t q = 1; q <= 4; ++q) {
      const Circuit c = multiplier(p, q);
      c.validate();
      REQUIRE(c.inputs().size() == p + q);
      REQUIRE(c.outputs().size() == p + q);
      for (std::uint64_t m = 0; m < (1ull << p); ++m) {
        for (std::uint64_t n = 0; n < (1ull << q); ++n) {
          auto in = to_bits(m, p);
          const auto nb = to_bits(n, q);
          in.insert(in.end(), nb.begin(), nb.end());
          CAPTURE(p);
          CAPTURE(q);
          CAPTURE(m);
          CAPTURE(n);
          CHECK(from_bits(c.eval(in)) == m * n);
        }
      }
    }
  }
}

TEST_CASE("multiplier rejects zero widths") {
  CHECK_THROWS_AS(multiplier(0, 2), ContractError);
  CHECK_THROWS_AS(multiplier(2, 0), ContractError);
}
