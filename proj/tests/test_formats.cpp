#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>

#include "doctest.h"
#include "qaf/compiler.hpp"
#include "qaf/formats.hpp"
#include "qaf/gadgets.hpp"

using namespace qaf;

TEST_CASE("format_double picks the shortest faithful rendering") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-1.0) == "-1");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-8.5) == "-8.5");
  CHECK(format_double(6553600.0) == "6553600");
  CHECK(format_double(0.1) == "0.1");
  // Round-trip fidelity for an awkward value.
  const double third = 1.0 / 3.0;
  CHECK(std::stod(format_double(third)) == third);
}

TEST_CASE("emit_ising produces the canonical sorted zero-free form") {
  const GateGadget nor = nor_gadget();
  const std::string text = emit_ising(nor.local);
  CHECK(text ==
        "n 3\n"
        "h 0 0.5\n"
        "h 1 0.5\n"
        "h 2 1\n"
        "J 0 1 0.5\n"
        "J 0 2 1\n"
        "J 1 2 1\n");

  ClampSet clamps;
  clamps.set(2, spin_down);
  clamps.set(0, spin_up);
  const std::string with_clamps = emit_ising(nor.local, clamps);
  CHECK(with_clamps.find("c 0 +1\nc 2 -1\n") != std::string::npos);

  IsingModel sparse(4);
  sparse.set_bias(1, 0.5);
  sparse.add_coupling(0, 3, 0.0);  // zero entries vanish on emit
  CHECK(emit_ising(sparse) == "n 4\nh 1 0.5\n");
}

TEST_CASE("parse_ising reads back what emit writes") {
  const CompiledModel ha = compile(half_adder());
  ClampSet clamps;
  clamps.set(0, spin_up);
  clamps.set(1, spin_down);
  const std::string text = emit_ising(ha.model, clamps);
  const IsingFile file = parse_ising_string(text);
  CHECK(file.model == ha.model);
  CHECK(file.clamps.assignments() == clamps.assignments());
  CHECK(emit_ising(file.model, file.clamps) == text);  // emit-parse-emit fixed point
}

TEST_CASE("parse_ising accepts comments, blank lines and flexible spacing") {
  const IsingFile file = parse_ising_string(
      "# model header\n"
      "n 3\n"
      "\n"
      "h 0 0.5   # trailing comment\n"
      "J   0  2   -1\n"
      "c 1 1\n");
  CHECK(file.model.size() == 3);
  CHECK(file.model.bias(0) == 0.5);
  CHECK(file.model.coupling(0, 2) == -1.0);
  CHECK(*file.clamps.get(1) == spin_up);
}

TEST_CASE("parse_ising rejects malformed input with line positions") {
  auto fails = [](const std::string& text, const std::string& needle) {
    try {
      parse_ising_string(text);
      FAIL_CHECK("expected ParseError for: " << text);
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  fails("h 0 1\n", "before the 'n' line");
  fails("", "missing 'n'");
  fails("n 2\nn 3\n", "duplicate 'n'");
  fails("n two\n", "index");
  fails("n 3\nh 0\n", "'h' takes");
  fails("n 3\nh 3 1\n", "out of range");
  fails("n 3\nh 0 1\nh 0 2\n", "duplicate bias");
  fails("n 3\nJ 2 1 1\n", "i < j");
  fails("n 3\nJ 1 1 1\n", "i < j");
  fails("n 3\nJ 0 3 1\n", "out of range");
  fails("n 3\nJ 0 1 1\nJ 0 1 1\n", "duplicate coupling");
  fails("n 3\nJ 0 1 inf\n", "finite");
  fails("n 3\nc 0 2\n", "+1 or -1");
  fails("n 3\nc 0 +1\nc 0 -1\n", "duplicate clamp");
  fails("n 3\nq 0 1\n", "unknown directive");
  fails("n 3\nh 0 1 9\n", "'h' takes");
  fails("n -3\n", "index");
}

TEST_CASE("netlist json round-trips through parse and emit") {
  for (const Circuit& c : {half_adder(), full_adder(), multiplier(2, 3)}) {
    const std::string text = emit_netlist_json(c);
    const Circuit back = parse_netlist_json(text);
    CHECK(back.net_count() == c.net_count());
    CHECK(back.gates().size() == c.gates().size());
    CHECK(back.wires().size() == c.wires().size());
    CHECK(emit_netlist_json(back) == text);
    // Identical compilation is the property the sidecar workflow rests on.
    CHECK(compile(back).model == compile(c).model);
  }
}

TEST_CASE("parse_netlist_json builds nets in file order") {
  const Circuit c = parse_netlist_json(R"({
    "inputs": ["a", "b"],
    "outputs": ["o"],
    "gates": [{"type": "NOR", "a": "a", "b": "b", "out": "o"}],
    "wires": []
  })");
  CHECK(c.net("a") == 0);
  CHECK(c.net("b") == 1);
  CHECK(c.net("o") == 2);
  CHECK(c.inputs().size() == 2);
  CHECK(c.gates().size() == 1);
}

TEST_CASE("parse_netlist_json rejects malformed documents") {
  CHECK_THROWS_AS(parse_netlist_json("not json"), ParseError);
  CHECK_THROWS_AS(parse_netlist_json("[1,2]"), ParseError);
  CHECK_THROWS_AS(parse_netlist_json(R"({"inputs": [], "outputs": []})"), ParseError);
  CHECK_THROWS_AS(parse_netlist_json(R"({"inputs": 3, "outputs": [], "gates": [], "wires": []})"),
                  ParseError);
  CHECK_THROWS_AS(parse_netlist_json(R"({"inputs": [7], "outputs": [], "gates": [], "wires": []})"),
                  ParseError);
  CHECK_THROWS_AS(
      parse_netlist_json(
          R"({"inputs": ["a","b"], "outputs": [], "gates": [{"type": "AND", "a": "a", "b": "b", "out": "o"}], "wires": []})"),
      ParseError);
  CHECK_THROWS_AS(
      parse_netlist_json(
          R"({"inputs": ["a","b"], "outputs": [], "gates": [{"type": "NOR", "a": "a", "b": "b"}], "wires": []})"),
      ParseError);
  CHECK_THROWS_AS(
      parse_netlist_json(
          R"({"inputs": ["a"], "outputs": [], "gates": [], "wires": [{"x": "a", "y": "w", "polarity": "sideways"}]})"),
      ParseError);
  // Structure errors surface as CircuitError from validation on load.
  CHECK_THROWS_AS(
      parse_netlist_json(
          R"({"inputs": ["a"], "outputs": ["a"], "gates": [], "wires": [{"x": "a", "y": "w", "polarity": "plain"}, {"x": "a", "y": "w", "polarity": "plain"}]})"),
      CircuitError);
}
