#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "cliffq/circuit.hpp"
#include "cliffq/oracle.hpp"

using namespace cliffq;

namespace {

// returns {line, column} of the parse failure, {0, 0} if none
std::pair<std::size_t, std::size_t> where(std::string_view text) {
  try {
    parse_circuit(text);
  } catch (const ParseError& e) {
    return {e.line(), e.column()};
  }
  return {0, 0};
}

std::string message(std::string_view text) {
  try {
    parse_circuit(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("registry") {
  CHECK(gate_registry().size() == 12);
  const auto* u2 = find_gate("u2");
  REQUIRE(u2 != nullptr);
  CHECK(u2->arity == 1);
  CHECK(u2->params == 8);
  CHECK(find_gate("ccnot")->arity == 3);
  CHECK(find_gate("phase")->params == 1);
  CHECK(find_gate("CNOT") == nullptr);
  CHECK(find_gate("toffoli") == nullptr);
  for (const auto& g : gate_registry()) CHECK(g.usage.substr(0, g.name.size()) == g.name);
}

TEST_CASE("parse Bell circuit") {
  const auto c = parse_circuit("qubits 2\nh 1\ncnot 1 2\n");
  CHECK(c.qubits == 2);
  REQUIRE(c.ops.size() == 2);
  CHECK(c.ops[0] == GateOp{"h", {1}, {}});
  CHECK(c.ops[1] == GateOp{"cnot", {1, 2}, {}});
}

TEST_CASE("parameters, comments and blank lines") {
  const auto c = parse_circuit("# header comment\n\n  qubits 1   # one wire\n\n\tphase 1 1.5707963\n#x 1\n");
  CHECK(c.qubits == 1);
  REQUIRE(c.ops.size() == 1);
  CHECK(c.ops[0].name == "phase");
  CHECK(c.ops[0].params == std::vector<double>{1.5707963});

  const auto u = parse_circuit("qubits 1\nu2 1 0 0 1 0 1 0 0 0");
  CHECK(u.ops[0].params == std::vector<double>{0, 0, 1, 0, 1, 0, 0, 0});
  CHECK(parse_circuit("qubits 3").ops.empty());
  CHECK(parse_circuit("qubits 1\nphase 1 -2.5e-3").ops[0].params[0] == -2.5e-3);
}

TEST_CASE("parse errors carry line and column") {
  CHECK(where("qubits 2\ncnot 1 3") == std::pair<std::size_t, std::size_t>{2, 8});
  CHECK(message("qubits 2\ncnot 1 3") == "line 2, column 8: wire out of range: 3 not in 1..2");
  CHECK(where("qubits 2\n\n  foo 1") == std::pair<std::size_t, std::size_t>{3, 3});
  CHECK(message("qubits 2\nfoo 1").find("unknown gate 'foo'") != std::string::npos);
  // too many tokens points at the first extra one
  CHECK(where("qubits 2\nx 1 2") == std::pair<std::size_t, std::size_t>{2, 5});
  // too few points at the gate
  CHECK(where("qubits 2\n cnot 1") == std::pair<std::size_t, std::size_t>{2, 2});
  CHECK(message("qubits 2\ncnot 1").find("cnot <control> <target>") != std::string::npos);
  CHECK(where("qubits 1\nphase 1 abc") == std::pair<std::size_t, std::size_t>{2, 9});
  CHECK(where("qubits 1\nphase 1 inf") == std::pair<std::size_t, std::size_t>{2, 9});
  CHECK(where("qubits 1\nphase 1 nan") == std::pair<std::size_t, std::size_t>{2, 9});
  CHECK(where("qubits 3\nccnot 1 2 1") == std::pair<std::size_t, std::size_t>{2, 11});
  CHECK(message("qubits 3\nccnot 1 2 1").find("repeated wire 1") != std::string::npos);
  CHECK(where("qubits 2\nx one") == std::pair<std::size_t, std::size_t>{2, 3});
  CHECK(where("qubits 2\nx 0") == std::pair<std::size_t, std::size_t>{2, 3});
  CHECK(where("qubits 2\nx 1.0") == std::pair<std::size_t, std::size_t>{2, 3});
}

TEST_CASE("header errors") {
  CHECK(where("h 1\nqubits 1") == std::pair<std::size_t, std::size_t>{1, 1});
  CHECK(where("qubits") == std::pair<std::size_t, std::size_t>{1, 1});
  CHECK(where("qubits 1 2") == std::pair<std::size_t, std::size_t>{1, 1});
  CHECK(where("qubits 0") == std::pair<std::size_t, std::size_t>{1, 8});
  CHECK(where("qubits -1") == std::pair<std::size_t, std::size_t>{1, 8});
  CHECK(where("qubits 33") == std::pair<std::size_t, std::size_t>{1, 8});
  CHECK(where("qubits 32") == std::pair<std::size_t, std::size_t>{0, 0});
  CHECK(where("") == std::pair<std::size_t, std::size_t>{1, 1});
  CHECK(message("# nothing\n\n").find("missing header") != std::string::npos);
  // a second header is just an unknown gate
  CHECK(message("qubits 1\nqubits 1").find("unknown gate 'qubits'") != std::string::npos);
}

TEST_CASE("render round-trips") {
  const Circuit c{3, {{"phase", {2}, {0.1}}, {"cswap", {3, 1, 2}, {}}}};
  CHECK(render_circuit(c) == "qubits 3\nphase 2 0.10000000000000001\ncswap 3 1 2\n");

  std::mt19937_64 rng(77);
  for (int k = 0; k < 200; ++k) {
    const auto circ = oracle::random_circuit(rng, {5, 25});
    REQUIRE(parse_circuit(render_circuit(circ)) == circ);
  }
}

TEST_CASE("validate_op") {
  CHECK_NOTHROW(validate_op({"cnot", {2, 1}, {}}, 2));
  CHECK_THROWS_AS(validate_op({"nope", {1}, {}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(validate_op({"cnot", {1}, {}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(validate_op({"x", {1}, {0.5}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(validate_op({"x", {3}, {}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(validate_op({"x", {0}, {}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(validate_op({"swap", {2, 2}, {}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(validate_op({"phase", {1}, {std::nan("")}}, 1), std::invalid_argument);
}
