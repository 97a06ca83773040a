#include "cliffq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "cliffq/gates.hpp"
#include "cliffq/witt.hpp"

namespace cliffq::oracle {

namespace {

constexpr Complex kI{0.0, 1.0};

GateMatrix make(std::vector<int> wires, std::vector<Complex> entries) {
  GateMatrix g;
  g.size = std::size_t{1} << wires.size();
  g.wires = std::move(wires);
  g.entries = std::move(entries);
  return g;
}

GateMatrix permutation(std::vector<int> wires, const std::vector<std::size_t>& image) {
  const std::size_t size = image.size();
  std::vector<Complex> e(size * size);
  for (std::size_t c = 0; c < size; ++c) e[image[c] * size + c] = 1.0;
  return make(std::move(wires), std::move(e));
}

GateMatrix diagonal(std::vector<int> wires, const std::vector<Complex>& d) {
  const std::size_t size = d.size();
  std::vector<Complex> e(size * size);
  for (std::size_t i = 0; i < size; ++i) e[i * size + i] = d[i];
  return make(std::move(wires), std::move(e));
}

// Bit of the full index that holds the given wire.
std::size_t wire_bit(int wire, int n) { return static_cast<std::size_t>(n - wire); }

std::size_t scatter(std::size_t sub, std::span<const int> wires, int n) {
  std::size_t full = 0;
  const std::size_t k = wires.size();
  for (std::size_t j = 0; j < k; ++j)
    if (sub >> (k - 1 - j) & 1) full |= std::size_t{1} << wire_bit(wires[j], n);
  return full;
}

void check_wires(const GateMatrix& g, int n) {
  if (g.size != std::size_t{1} << g.wires.size())
    throw std::invalid_argument("gate matrix size does not match its wire count");
  for (std::size_t i = 0; i < g.wires.size(); ++i) {
    if (g.wires[i] < 1 || g.wires[i] > n) throw std::invalid_argument("gate wire out of range");
    for (std::size_t j = 0; j < i; ++j)
      if (g.wires[i] == g.wires[j]) throw std::invalid_argument("gate wires collide");
  }
}

Matrix2 random_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  auto draw = [&] { return Complex(gauss(rng), gauss(rng)); };
  Complex a = draw(), c = draw(), b = draw(), d = draw();
  const double n1 = std::sqrt(std::norm(a) + std::norm(c));
  a /= n1;
  c /= n1;
  const Complex proj = std::conj(a) * b + std::conj(c) * d;
  b -= proj * a;
  d -= proj * c;
  const double n2 = std::sqrt(std::norm(b) + std::norm(d));
  b /= n2;
  d /= n2;
  return {{{a, b}, {c, d}}};
}

}  // namespace

double MatrixState::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

bool GateMatrix::is_unitary(double tol) const {
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t c = 0; c < size; ++c) {
      Complex s{};
      for (std::size_t k = 0; k < size; ++k) s += std::conj((*this)(k, r)) * (*this)(k, c);
      if (std::abs(s - (r == c ? 1.0 : 0.0)) > tol) return false;
    }
  return true;
}

GateMatrix gate_matrix(const GateOp& op) {
  const GateSpec* spec = find_gate(op.name);
  if (spec == nullptr) throw std::invalid_argument("unknown gate '" + op.name + "'");
  if (static_cast<int>(op.wires.size()) != spec->arity ||
      static_cast<int>(op.params.size()) != spec->params)
    throw std::invalid_argument("gate '" + op.name + "' has the wrong number of wires/params");
  const double r = 1.0 / std::numbers::sqrt2;
  const auto& w = op.wires;
  const auto& p = op.params;
  if (op.name == "x") return make(w, {0, 1, 1, 0});
  if (op.name == "y") return make(w, {0, -kI, kI, 0});
  if (op.name == "z") return diagonal(w, {1, -1});
  if (op.name == "h") return make(w, {r, r, r, -r});
  if (op.name == "s") return diagonal(w, {1, kI});
  if (op.name == "phase") return diagonal(w, {1, std::polar(1.0, p[0])});
  if (op.name == "u2")
    return make(w, {Complex(p[0], p[1]), Complex(p[2], p[3]), Complex(p[4], p[5]),
                    Complex(p[6], p[7])});
  if (op.name == "cnot") return permutation(w, {0, 1, 3, 2});
  if (op.name == "cz") return diagonal(w, {1, 1, 1, -1});
  if (op.name == "swap") return permutation(w, {0, 2, 1, 3});
  if (op.name == "ccnot") return permutation(w, {0, 1, 2, 3, 4, 5, 7, 6});
  if (op.name == "cswap") return permutation(w, {0, 1, 2, 3, 4, 6, 5, 7});
  throw std::invalid_argument("unknown gate '" + op.name + "'");
}

GateMatrix kron_embed(const GateMatrix& g, int n) {
  if (n < 1 || n > kMaxDenseQubits) throw std::out_of_range("kron_embed supports 1..12 qubits");
  check_wires(g, n);
  const std::size_t dim = std::size_t{1} << n;
  std::size_t mask = 0;
  for (int w : g.wires) mask |= std::size_t{1} << wire_bit(w, n);
  std::vector<int> all(n);
  for (int k = 0; k < n; ++k) all[k] = k + 1;
  GateMatrix out;
  out.wires = all;
  out.size = dim;
  out.entries.assign(dim * dim, Complex{});
  for (std::size_t rest = 0; rest < dim; ++rest) {
    if (rest & mask) continue;
    for (std::size_t r = 0; r < g.size; ++r)
      for (std::size_t c = 0; c < g.size; ++c)
        out.entries[(rest | scatter(r, g.wires, n)) * dim + (rest | scatter(c, g.wires, n))] =
            g(r, c);
  }
  return out;
}

MatrixState basis_state(int n, std::span<const int> bits) {
  if (n < 1 || n > kMaxDenseQubits) throw std::out_of_range("matrix backend supports 1..12 qubits");
  if (!bits.empty() && static_cast<int>(bits.size()) != n)
    throw std::invalid_argument("initial bitstring length must equal the qubit count");
  MatrixState s{n, std::vector<Complex>(std::size_t{1} << n)};
  std::size_t index = 0;
  for (int b : bits) index = index << 1 | static_cast<std::size_t>(b != 0);
  s.amplitudes[index] = 1.0;
  return s;
}

void apply_gate(const GateMatrix& g, MatrixState& state) {
  const int n = state.qubits;
  check_wires(g, n);
  const std::size_t dim = state.amplitudes.size();
  std::size_t mask = 0;
  for (int w : g.wires) mask |= std::size_t{1} << wire_bit(w, n);
  std::vector<std::size_t> offsets(g.size);
  for (std::size_t s = 0; s < g.size; ++s) offsets[s] = scatter(s, g.wires, n);
  std::vector<Complex> in(g.size), out(g.size);
  for (std::size_t rest = 0; rest < dim; ++rest) {
    if (rest & mask) continue;
    for (std::size_t s = 0; s < g.size; ++s) in[s] = state.amplitudes[rest | offsets[s]];
    for (std::size_t r = 0; r < g.size; ++r) {
      Complex acc{};
      for (std::size_t c = 0; c < g.size; ++c) acc += g(r, c) * in[c];
      out[r] = acc;
    }
    for (std::size_t s = 0; s < g.size; ++s) state.amplitudes[rest | offsets[s]] = out[s];
  }
}

MatrixState run_matrix(const Circuit& circuit, std::span<const int> initial_bits) {
  MatrixState state = basis_state(circuit.qubits, initial_bits);
  for (const auto& op : circuit.ops) {
    validate_op(op, circuit.qubits);
    apply_gate(gate_matrix(op), state);
  }
  return state;
}

Comparison compare_backends(const Circuit& circuit, std::span<const int> initial_bits,
                            double tol) {
  Comparison cmp;
  cmp.matrix = run_matrix(circuit, initial_bits).amplitudes;
  const auto ctx = build_context(circuit.qubits);
  cmp.clifford = state_to_amplitudes(ctx, run_clifford(circuit, initial_bits));
  for (std::size_t k = 0; k < cmp.matrix.size(); ++k)
    cmp.max_deviation = std::max(cmp.max_deviation, std::abs(cmp.matrix[k] - cmp.clifford[k]));
  cmp.pass = cmp.max_deviation < tol;
  return cmp;
}

Circuit random_circuit(std::mt19937_64& rng, const RandomCircuitOptions& options) {
  if (options.max_qubits < 1 || options.max_qubits > kMaxDenseQubits)
    throw std::invalid_argument("max_qubits must be in 1..12");
  if (options.max_depth < 0) throw std::invalid_argument("max_depth must be non-negative");
  Circuit c;
  c.qubits = std::uniform_int_distribution<int>(1, options.max_qubits)(rng);
  const int depth = std::uniform_int_distribution<int>(0, options.max_depth)(rng);
  std::vector<const GateSpec*> usable;
  for (const auto& g : gate_registry())
    if (g.arity <= c.qubits) usable.push_back(&g);
  std::uniform_int_distribution<std::size_t> pick(0, usable.size() - 1);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<int> wires(c.qubits);
  for (int i = 0; i < depth; ++i) {
    const GateSpec& spec = *usable[pick(rng)];
    for (int k = 0; k < c.qubits; ++k) wires[k] = k + 1;
    std::shuffle(wires.begin(), wires.end(), rng);
    GateOp op{std::string(spec.name), {wires.begin(), wires.begin() + spec.arity}, {}};
    if (spec.name == "phase") op.params = {angle(rng)};
    if (spec.name == "u2") {
      const auto m = random_unitary(rng);
      for (const auto& row : m)
        for (const auto& z : row) {
          op.params.push_back(z.real());
          op.params.push_back(z.imag());
        }
    }
    c.ops.push_back(std::move(op));
  }
  return c;
}

bool FuzzReport::all_pass() const {
  return std::all_of(cases.begin(), cases.end(), [](const FuzzCase& c) { return c.pass; });
}

double FuzzReport::worst_deviation() const {
  double worst = 0.0;
  for (const auto& c : cases) worst = std::max(worst, c.max_deviation);
  return worst;
}

std::string FuzzReport::text() const {
  std::ostringstream os;
  os.precision(3);
  std::size_t passed = 0;
  for (const auto& c : cases) {
    os << "seed " << c.seed << "  qubits " << c.qubits << "  gates " << c.gates << "  max_dev "
       << std::scientific << c.max_deviation << std::defaultfloat << "  "
       << (c.pass ? "PASS" : "FAIL") << '\n';
    passed += c.pass;
  }
  os << "summary: seed " << seed << ", " << passed << '/' << cases.size()
     << " circuits within tol " << tol << ", worst deviation " << std::scientific
     << worst_deviation() << std::defaultfloat << "  " << (all_pass() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

std::string FuzzReport::json() const {
  nlohmann::json j;
  j["seed"] = seed;
  j["tol"] = tol;
  j["circuits"] = cases.size();
  j["passed"] = std::count_if(cases.begin(), cases.end(), [](const FuzzCase& c) { return c.pass; });
  j["worst_deviation"] = worst_deviation();
  j["pass"] = all_pass();
  auto& arr = j["cases"] = nlohmann::json::array();
  for (const auto& c : cases)
    arr.push_back({{"seed", c.seed},
                   {"qubits", c.qubits},
                   {"gates", c.gates},
                   {"max_deviation", c.max_deviation},
                   {"pass", c.pass}});
  return j.dump(2);
}

FuzzReport fuzz(std::uint64_t seed, int circuits, const RandomCircuitOptions& options,
                double tol) {
  FuzzReport report{seed, tol, {}};
  for (int i = 0; i < circuits; ++i) {
    const std::uint64_t case_seed = seed + static_cast<std::uint64_t>(i);
    std::mt19937_64 rng(case_seed);
    const Circuit c = random_circuit(rng, options);
    const auto cmp = compare_backends(c, {}, tol);
    report.cases.push_back({case_seed, c.qubits, c.ops.size(), cmp.max_deviation, cmp.pass});
  }
  return report;
}

}  // namespace cliffq::oracle
