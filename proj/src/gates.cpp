#include "cliffq/gates.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

namespace cliffq {

namespace detail {
struct UnitaryCache {
  std::once_flag once;
  bool unitary = false;
};
}  // namespace detail

namespace {

constexpr Complex kI{0.0, 1.0};

void check_distinct(std::initializer_list<int> wires) {
  for (auto i = wires.begin(); i != wires.end(); ++i)
    for (auto j = wires.begin(); j != i; ++j)
      if (*i == *j) throw std::invalid_argument("gate wires must be distinct");
}

BladeMask wire_support(const WittContext& ctx, int wire) {
  return (BladeMask{1} << (wire - 1)) | (BladeMask{1} << (wire - 1 + ctx.qubits()));
}

bool matrix_is_unitary(const Matrix2& m, double tol) {
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      Complex s = std::conj(m[0][r]) * m[0][c] + std::conj(m[1][r]) * m[1][c];
      if (std::abs(s - (r == c ? 1.0 : 0.0)) > tol) return false;
    }
  return true;
}

GateElement controlled(const WittContext& ctx, std::span<const int> controls,
                       std::span<const WireFactor> target) {
  // sum over control patterns other than all-ones of the projector, identity on targets
  Multivector acc(ctx.signature());
  const std::size_t patterns = std::size_t{1} << controls.size();
  for (std::size_t p = 0; p + 1 < patterns; ++p) {
    std::vector<WireFactor> factors;
    for (std::size_t i = 0; i < controls.size(); ++i) {
      const bool occupied = (p >> (controls.size() - 1 - i)) & 1;
      factors.push_back({controls[i], occupied ? ctx.K(controls[i]) : ctx.I(controls[i])});
    }
    acc += embed(ctx, factors).value();
  }
  std::vector<WireFactor> factors;
  for (int c : controls) factors.push_back({c, ctx.K(c)});
  factors.insert(factors.end(), target.begin(), target.end());
  acc += embed(ctx, factors).value();
  return GateElement(ctx.qubits(), std::move(acc));
}

// SWAP as I_a I_b + K_a K_b + f_a^dagger (x) f_b + f_a (x) f_b^dagger.
Multivector swap_value(const WittContext& ctx, int a, int b) {
  const WireFactor words[4][2] = {
      {{a, ctx.I(a)}, {b, ctx.I(b)}},
      {{a, ctx.K(a)}, {b, ctx.K(b)}},
      {{a, ctx.fdag(a)}, {b, ctx.f(b)}},
      {{a, ctx.f(a)}, {b, ctx.fdag(b)}},
  };
  Multivector acc(ctx.signature());
  for (const auto& w : words) acc += embed(ctx, w).value();
  return acc;
}

}  // namespace

GateElement::GateElement(int n, Multivector value)
    : n_(n), value_(std::move(value)), cache_(std::make_shared<detail::UnitaryCache>()) {
  if (value_.dim() != 2 * n)
    throw std::invalid_argument("gate element must live in C_{2n} with n = " +
                                std::to_string(n));
}

bool GateElement::is_unitary() const {
  std::call_once(cache_->once, [this] { cache_->unitary = cliffq::is_unitary(value_); });
  return cache_->unitary;
}

GateElement operator*(const GateElement& a, const GateElement& b) {
  if (a.qubits() != b.qubits()) throw std::invalid_argument("gate qubit counts differ");
  return GateElement(a.qubits(), a.value() * b.value());
}

bool is_unitary(const Multivector& lambda, double tol) {
  const auto one = Multivector::scalar(lambda.signature(), 1.0);
  const auto dag = hermitian_conjugation(lambda);
  return max_abs_difference(dag * lambda, one) <= tol &&
         max_abs_difference(lambda * dag, one) <= tol;
}

bool is_unitary(const GateElement& g) { return g.is_unitary(); }

Multivector wire_element(const WittContext& ctx, int wire, const Matrix2& m) {
  return m[0][0] * ctx.I(wire) + m[0][1] * ctx.f(wire) + m[1][0] * ctx.fdag(wire) +
         m[1][1] * ctx.K(wire);
}

WireCoords wire_coords(const WittContext& ctx, int wire, const Multivector& x) {
  ctx.check_wire(wire);
  if (x.signature() != ctx.signature())
    throw std::invalid_argument("wire factor does not live in C_{2n} for this register");
  const BladeMask support = wire_support(ctx, wire);
  for (const auto& t : x.terms())
    if ((t.blade & ~support) != 0)
      throw std::invalid_argument("factor for wire " + std::to_string(wire) +
                                  " is supported outside that wire");
  // The four wire-local basis elements are orthogonal with squared norm 1/2.
  return {2.0 * hermitian_inner_raw(ctx.I(wire), x), 2.0 * hermitian_inner_raw(ctx.f(wire), x),
          2.0 * hermitian_inner_raw(ctx.fdag(wire), x), 2.0 * hermitian_inner_raw(ctx.K(wire), x)};
}

Matrix2 wire_matrix(const WittContext& ctx, int wire, const Multivector& x) {
  const auto c = wire_coords(ctx, wire, x);
  return {{{c.empty, c.annihilate}, {c.create, c.occupied}}};
}

GateElement super_tensor(const WittContext& ctx, std::span<const Multivector> factors) {
  const int n = ctx.qubits();
  if (static_cast<int>(factors.size()) != n)
    throw std::invalid_argument("super_tensor needs one factor per wire");
  // partial[p]: sum of signed prefixes whose count of {f, f^dagger f} factors has parity p
  Multivector zero(ctx.signature());
  std::array<Multivector, 2> partial{ctx.one(), zero};
  for (int k = 1; k <= n; ++k) {
    const auto c = wire_coords(ctx, k, factors[k - 1]);
    struct Choice {
      Complex coef;
      const Multivector& elem;
      bool odd;
      bool counts;
    };
    const Choice choices[] = {
        {c.empty, ctx.I(k), false, false},
        {c.occupied, ctx.K(k), false, true},
        {c.annihilate, ctx.f(k), true, true},
        {c.create, ctx.fdag(k), true, false},
    };
    std::array<Multivector, 2> next{zero, zero};
    for (const auto& ch : choices) {
      if (ch.coef == Complex{}) continue;
      for (int parity = 0; parity < 2; ++parity) {
        if (partial[parity].is_zero()) continue;
        const double sign = (ch.odd && parity == 1) ? -1.0 : 1.0;
        next[parity ^ static_cast<int>(ch.counts)] += (sign * ch.coef) * (partial[parity] * ch.elem);
      }
    }
    partial = std::move(next);
  }
  return GateElement(n, partial[0] + partial[1]);
}

GateElement embed(const WittContext& ctx, std::span<const WireFactor> factors) {
  std::vector<Multivector> slots(ctx.qubits(), ctx.one());
  std::vector<bool> used(ctx.qubits(), false);
  for (const auto& wf : factors) {
    ctx.check_wire(wf.wire);
    if (used[wf.wire - 1]) throw std::invalid_argument("wire listed twice in tensor product");
    used[wf.wire - 1] = true;
    slots[wf.wire - 1] = wf.element;
  }
  // The identity on a wire is I_k + K_k.
  for (int k = 1; k <= ctx.qubits(); ++k)
    if (!used[k - 1]) slots[k - 1] = ctx.I(k) + ctx.K(k);
  return super_tensor(ctx, slots);
}

namespace {
GateElement single(const WittContext& ctx, int wire, Multivector local) {
  ctx.check_wire(wire);
  const WireFactor wf{wire, std::move(local)};
  return embed(ctx, std::span(&wf, 1));
}
}  // namespace

GateElement gate_X(const WittContext& ctx, int wire) {
  ctx.check_wire(wire);
  return single(ctx, wire, ctx.fdag(wire) + ctx.f(wire));
}

GateElement gate_Y(const WittContext& ctx, int wire) {
  ctx.check_wire(wire);
  return single(ctx, wire, kI * ctx.fdag(wire) - kI * ctx.f(wire));
}

GateElement gate_Z(const WittContext& ctx, int wire) {
  ctx.check_wire(wire);
  return single(ctx, wire, ctx.I(wire) - ctx.K(wire));
}

GateElement gate_H(const WittContext& ctx, int wire) {
  ctx.check_wire(wire);
  const double r = 1.0 / std::numbers::sqrt2;
  return single(ctx, wire, r * (ctx.I(wire) - ctx.K(wire) + ctx.f(wire) + ctx.fdag(wire)));
}

GateElement gate_phase(const WittContext& ctx, int wire, double phi) {
  ctx.check_wire(wire);
  return single(ctx, wire, ctx.I(wire) + std::polar(1.0, phi) * ctx.K(wire));
}

GateElement gate_S(const WittContext& ctx, int wire) {
  ctx.check_wire(wire);
  return single(ctx, wire, ctx.I(wire) + kI * ctx.K(wire));
}

GateElement gate_from_u2(const WittContext& ctx, int wire, const Matrix2& m) {
  ctx.check_wire(wire);
  if (!matrix_is_unitary(m, kUnitaryTol)) throw std::invalid_argument("u2 matrix is not unitary");
  return single(ctx, wire, wire_element(ctx, wire, m));
}

GateElement gate_CNOT(const WittContext& ctx, int control, int target) {
  ctx.check_wire(control);
  ctx.check_wire(target);
  check_distinct({control, target});
  const int controls[] = {control};
  const WireFactor x{target, ctx.fdag(target) + ctx.f(target)};
  return controlled(ctx, controls, std::span(&x, 1));
}

GateElement gate_CZ(const WittContext& ctx, int control, int target) {
  ctx.check_wire(control);
  ctx.check_wire(target);
  check_distinct({control, target});
  const int controls[] = {control};
  const WireFactor z{target, ctx.I(target) - ctx.K(target)};
  return controlled(ctx, controls, std::span(&z, 1));
}

GateElement gate_SWAP(const WittContext& ctx, int a, int b) {
  ctx.check_wire(a);
  ctx.check_wire(b);
  check_distinct({a, b});
  return GateElement(ctx.qubits(), swap_value(ctx, a, b));
}

GateElement gate_CCNOT(const WittContext& ctx, int control1, int control2, int target) {
  for (int w : {control1, control2, target}) ctx.check_wire(w);
  check_distinct({control1, control2, target});
  const int controls[] = {control1, control2};
  const WireFactor x{target, ctx.fdag(target) + ctx.f(target)};
  return controlled(ctx, controls, std::span(&x, 1));
}

GateElement gate_CSWAP(const WittContext& ctx, int control, int a, int b) {
  for (int w : {control, a, b}) ctx.check_wire(w);
  check_distinct({control, a, b});
  const WireFactor idle{control, ctx.I(control)};
  Multivector acc = embed(ctx, std::span(&idle, 1)).value();
  // K_c (x) SWAP_ab, one word of the swap at a time
  const WireFactor words[4][3] = {
      {{control, ctx.K(control)}, {a, ctx.I(a)}, {b, ctx.I(b)}},
      {{control, ctx.K(control)}, {a, ctx.K(a)}, {b, ctx.K(b)}},
      {{control, ctx.K(control)}, {a, ctx.fdag(a)}, {b, ctx.f(b)}},
      {{control, ctx.K(control)}, {a, ctx.f(a)}, {b, ctx.fdag(b)}},
  };
  for (const auto& w : words) acc += embed(ctx, w).value();
  return GateElement(ctx.qubits(), std::move(acc));
}

Multivector ketbra(const WittContext& ctx, std::span<const int> bits_out,
                   std::span<const int> bits_in) {
  if (bits_out.size() != bits_in.size())
    throw std::invalid_argument("ket and bra have different bit lengths");
  return basis_state(ctx, bits_out).value() *
         hermitian_conjugation(basis_state(ctx, bits_in).value());
}

Multivector exp_element(const Multivector& x, double tol, int max_terms) {
  const auto sig = x.signature();
  const auto one = Multivector::scalar(sig, 1.0);
  if (x.is_zero()) return one;
  if (!std::isfinite(x.norm())) throw std::invalid_argument("exp_element: non-finite input");

  const Multivector square = x * x;
  const bool scalar_square =
      square.is_zero() || (square.size() == 1 && square.terms()[0].blade == 0);
  if (scalar_square) {
    const Complex c = square.scalar_part();
    if (c == Complex{}) return one + x;
    const Complex s = std::sqrt(c);
    return Multivector::scalar(sig, std::cosh(s)) + (std::sinh(s) / s) * x;
  }

  Multivector sum = one;
  Multivector term = one;
  for (int k = 1; k <= max_terms; ++k) {
    term = (term * x) * Complex(1.0 / k);
    sum += term;
    if (term.norm() < tol * std::max(1.0, sum.norm())) return sum;
  }
  throw ConvergenceError("exp_element: series did not converge within " +
                         std::to_string(max_terms) + " terms");
}

SpinorState apply(const GateElement& g, const SpinorState& x, bool strict) {
  if (g.qubits() != x.qubits())
    throw std::invalid_argument("gate acts on " + std::to_string(g.qubits()) +
                                " qubits, state has " + std::to_string(x.qubits()));
  Multivector out = g.value() * x.value();
  if (strict) {
    const auto ctx = build_context(x.qubits());
    return SpinorState::from_multivector(ctx, std::move(out));
  }
  return SpinorState::unchecked(x.qubits(), std::move(out));
}

std::vector<double> measure_probabilities(const WittContext& ctx, const SpinorState& x) {
  const auto amps = state_to_amplitudes(ctx, x);
  std::vector<double> probs(amps.size());
  for (std::size_t k = 0; k < amps.size(); ++k) probs[k] = std::norm(amps[k]);
  return probs;
}

GateElement build_gate(const WittContext& ctx, const GateOp& op) {
  validate_op(op, ctx.qubits());
  const auto& w = op.wires;
  const auto& p = op.params;
  if (op.name == "x") return gate_X(ctx, w[0]);
  if (op.name == "y") return gate_Y(ctx, w[0]);
  if (op.name == "z") return gate_Z(ctx, w[0]);
  if (op.name == "h") return gate_H(ctx, w[0]);
  if (op.name == "s") return gate_S(ctx, w[0]);
  if (op.name == "phase") return gate_phase(ctx, w[0], p[0]);
  if (op.name == "u2") {
    const Matrix2 m{{{Complex(p[0], p[1]), Complex(p[2], p[3])},
                     {Complex(p[4], p[5]), Complex(p[6], p[7])}}};
    return gate_from_u2(ctx, w[0], m);
  }
  if (op.name == "cnot") return gate_CNOT(ctx, w[0], w[1]);
  if (op.name == "cz") return gate_CZ(ctx, w[0], w[1]);
  if (op.name == "swap") return gate_SWAP(ctx, w[0], w[1]);
  if (op.name == "ccnot") return gate_CCNOT(ctx, w[0], w[1], w[2]);
  if (op.name == "cswap") return gate_CSWAP(ctx, w[0], w[1], w[2]);
  throw std::invalid_argument("unknown gate '" + op.name + "'");
}

SpinorState run_clifford(const Circuit& circuit, std::span<const int> initial_bits, bool strict) {
  const auto ctx = build_context(circuit.qubits);
  std::vector<int> zeros(circuit.qubits, 0);
  SpinorState state = basis_state(ctx, initial_bits.empty() ? std::span<const int>(zeros)
                                                             : initial_bits);
  for (const auto& op : circuit.ops) state = apply(build_gate(ctx, op), state, strict);
  return state;
}

}  // namespace cliffq
