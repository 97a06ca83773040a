#include "cliffq/circuit.hpp"

#include "cliffq/witt.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

namespace cliffq {

namespace {

constexpr std::array<GateSpec, 12> kRegistry{{
    {"x", 1, 0, "x <wire>"},
    {"y", 1, 0, "y <wire>"},
    {"z", 1, 0, "z <wire>"},
    {"h", 1, 0, "h <wire>"},
    {"s", 1, 0, "s <wire>"},
    {"phase", 1, 1, "phase <wire> <radians>"},
    {"u2", 1, 8, "u2 <wire> <a_re> <a_im> <b_re> <b_im> <c_re> <c_im> <d_re> <d_im>"},
    {"cnot", 2, 0, "cnot <control> <target>"},
    {"cz", 2, 0, "cz <control> <target>"},
    {"swap", 2, 0, "swap <wire> <wire>"},
    {"ccnot", 3, 0, "ccnot <control> <control> <target>"},
    {"cswap", 3, 0, "cswap <control> <wire> <wire>"},
}};

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

std::span<const GateSpec> gate_registry() { return kRegistry; }

const GateSpec* find_gate(std::string_view name) {
  auto it = std::find_if(kRegistry.begin(), kRegistry.end(),
                         [name](const GateSpec& g) { return g.name == name; });
  return it == kRegistry.end() ? nullptr : &*it;
}

void validate_op(const GateOp& op, int qubits) {
  const GateSpec* spec = find_gate(op.name);
  if (spec == nullptr) throw std::invalid_argument("unknown gate '" + op.name + "'");
  if (static_cast<int>(op.wires.size()) != spec->arity)
    throw std::invalid_argument("gate '" + op.name + "' takes " + std::to_string(spec->arity) +
                                " wire(s), got " + std::to_string(op.wires.size()));
  if (static_cast<int>(op.params.size()) != spec->params)
    throw std::invalid_argument("gate '" + op.name + "' takes " + std::to_string(spec->params) +
                                " parameter(s), got " + std::to_string(op.params.size()));
  for (std::size_t i = 0; i < op.wires.size(); ++i) {
    if (op.wires[i] < 1 || op.wires[i] > qubits)
      throw std::invalid_argument("wire " + std::to_string(op.wires[i]) + " out of range 1.." +
                                  std::to_string(qubits));
    for (std::size_t j = 0; j < i; ++j)
      if (op.wires[i] == op.wires[j])
        throw std::invalid_argument("gate '" + op.name + "' repeats wire " +
                                    std::to_string(op.wires[i]));
  }
  for (double p : op.params)
    if (!std::isfinite(p)) throw std::invalid_argument("gate parameter is not finite");
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

Circuit parse_circuit(std::string_view text) {
  Circuit circuit;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;

    if (!have_header) {
      if (tokens[0].text != "qubits")
        throw ParseError(line_no, tokens[0].column, "expected header 'qubits N'");
      if (tokens.size() != 2)
        throw ParseError(line_no, tokens[0].column, "header must be 'qubits N'");
      int n = 0;
      if (!parse_number(tokens[1].text, n) || n < 1 || n > kMaxQubits)
        throw ParseError(line_no, tokens[1].column,
                         "qubit count must be an integer in 1.." + std::to_string(kMaxQubits));
      circuit.qubits = n;
      have_header = true;
      continue;
    }

    const GateSpec* spec = find_gate(tokens[0].text);
    if (spec == nullptr)
      throw ParseError(line_no, tokens[0].column,
                       "unknown gate '" + std::string(tokens[0].text) + "'");
    const std::size_t expected = 1 + spec->arity + spec->params;
    if (tokens.size() != expected) {
      const std::size_t col = tokens.size() > expected ? tokens[expected].column : tokens[0].column;
      throw ParseError(line_no, col,
                       "gate '" + std::string(spec->name) + "' expects " +
                           std::to_string(spec->arity) + " wire(s) and " +
                           std::to_string(spec->params) + " parameter(s): " +
                           std::string(spec->usage));
    }
    GateOp op{std::string(spec->name), {}, {}};
    for (int i = 0; i < spec->arity; ++i) {
      const Token& tok = tokens[1 + i];
      int wire = 0;
      if (!parse_number(tok.text, wire))
        throw ParseError(line_no, tok.column, "bad wire '" + std::string(tok.text) + "'");
      if (wire < 1 || wire > circuit.qubits)
        throw ParseError(line_no, tok.column,
                         "wire out of range: " + std::to_string(wire) + " not in 1.." +
                             std::to_string(circuit.qubits));
      if (std::find(op.wires.begin(), op.wires.end(), wire) != op.wires.end())
        throw ParseError(line_no, tok.column, "repeated wire " + std::to_string(wire));
      op.wires.push_back(wire);
    }
    for (int i = 0; i < spec->params; ++i) {
      const Token& tok = tokens[1 + spec->arity + i];
      double value = 0.0;
      if (!parse_number(tok.text, value) || !std::isfinite(value))
        throw ParseError(line_no, tok.column, "bad parameter '" + std::string(tok.text) + "'");
      op.params.push_back(value);
    }
    circuit.ops.push_back(std::move(op));
  }
  if (!have_header) throw ParseError(line_no, 1, "missing header 'qubits N'");
  return circuit;
}

std::string render_circuit(const Circuit& circuit) {
  std::ostringstream os;
  os.precision(17);
  os << "qubits " << circuit.qubits << '\n';
  for (const auto& op : circuit.ops) {
    os << op.name;
    for (int w : op.wires) os << ' ' << w;
    for (double p : op.params) os << ' ' << p;
    os << '\n';
  }
  return os.str();
}

}  // namespace cliffq
