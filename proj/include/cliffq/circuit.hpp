#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cliffq {

// One gate application. Wires are 1-based.
struct GateOp {
  std::string name;
  std::vector<int> wires;
  std::vector<double> params;

  friend bool operator==(const GateOp&, const GateOp&) = default;
};

struct Circuit {
  int qubits = 0;
  std::vector<GateOp> ops;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

struct GateSpec {
  std::string_view name;
  int arity;   // wires
  int params;  // real parameters
  std::string_view usage;
};

// x y z h s phase u2 cnot cz swap ccnot cswap
std::span<const GateSpec> gate_registry();
const GateSpec* find_gate(std::string_view name);

// Throws std::invalid_argument on unknown gate, arity/parameter mismatch,
// wires out of range or repeated.
void validate_op(const GateOp& op, int qubits);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Circuit text format:
///   qubits N
///   <gate> <wire>... [param]...
/// '#' starts a comment; blank lines are ignored.
Circuit parse_circuit(std::string_view text);

// Inverse of parse_circuit; parameters are written with round-trip precision.
std::string render_circuit(const Circuit& circuit);

}  // namespace cliffq
