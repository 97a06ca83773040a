#pragma once

#include <array>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "cliffq/algebra.hpp"
#include "cliffq/circuit.hpp"
#include "cliffq/witt.hpp"

namespace cliffq {

inline constexpr double kUnitaryTol = 1e-10;

namespace detail {
struct UnitaryCache;
}

/// A quantum gate: an element of C_{2n} acting on S_n by left multiplication.
/// The unitarity verdict (at kUnitaryTol) is computed once and shared by copies.
class GateElement {
 public:
  GateElement(int n, Multivector value);

  int qubits() const { return n_; }
  const Multivector& value() const { return value_; }
  bool is_unitary() const;

  // Serial composition: (a * b) applies b first.
  friend GateElement operator*(const GateElement& a, const GateElement& b);

 private:
  int n_;
  Multivector value_;
  std::shared_ptr<detail::UnitaryCache> cache_;
};

// lambda^dagger lambda = 1 and lambda lambda^dagger = 1 within tol.
bool is_unitary(const Multivector& lambda, double tol = kUnitaryTol);
bool is_unitary(const GateElement& g);

// Row-major [[a, b], [c, d]].
using Matrix2 = std::array<std::array<Complex, 2>, 2>;

struct WireCoords {
  Complex empty;       // f f^dagger  (|0><0|)
  Complex annihilate;  // f           (|0><1|)
  Complex create;      // f^dagger    (|1><0|)
  Complex occupied;    // f^dagger f  (|1><1|)
};

// a f_k f_k^dagger + b f_k + c f_k^dagger + d f_k^dagger f_k for [[a,b],[c,d]]
Multivector wire_element(const WittContext& ctx, int wire, const Matrix2& m);

// Inverse of wire_element. Throws if x has support outside generators e_k, e_{k+n}.
WireCoords wire_coords(const WittContext& ctx, int wire, const Multivector& x);
Matrix2 wire_matrix(const WittContext& ctx, int wire, const Multivector& x);

/// Represents lambda_1 (x) ... (x) lambda_n: each factor is expanded over
/// {f f^dagger, f^dagger f, f, f^dagger} on its wire and every word carries the
/// sign (-1)^s, where odd factors f_i, f_i^dagger collect one sign for every
/// earlier wire holding f or f^dagger f.
GateElement super_tensor(const WittContext& ctx, std::span<const Multivector> factors);

struct WireFactor {
  int wire;
  Multivector element;
};

// super_tensor with the identity on every wire not listed.
GateElement embed(const WittContext& ctx, std::span<const WireFactor> factors);

GateElement gate_X(const WittContext& ctx, int wire);
GateElement gate_Y(const WittContext& ctx, int wire);
GateElement gate_Z(const WittContext& ctx, int wire);
GateElement gate_H(const WittContext& ctx, int wire);
// f f^dagger + e^{i phi} f^dagger f
GateElement gate_phase(const WittContext& ctx, int wire, double phi);
GateElement gate_S(const WittContext& ctx, int wire);
// Throws std::invalid_argument unless m is unitary within kUnitaryTol.
GateElement gate_from_u2(const WittContext& ctx, int wire, const Matrix2& m);

// Controlled gates use I_c (x) 1 + K_c (x) U.
GateElement gate_CNOT(const WittContext& ctx, int control, int target);
GateElement gate_CZ(const WittContext& ctx, int control, int target);
GateElement gate_SWAP(const WittContext& ctx, int a, int b);
GateElement gate_CCNOT(const WittContext& ctx, int control1, int control2, int target);
GateElement gate_CSWAP(const WittContext& ctx, int control, int a, int b);

// |out><in| = basis_state(out) basis_state(in)^dagger
Multivector ketbra(const WittContext& ctx, std::span<const int> bits_out,
                   std::span<const int> bits_in);

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// exp(x). When x^2 is a scalar c this is cosh(s) + sinh(s)/s x with s^2 = c;
/// otherwise the power series is summed until the term norm drops below
/// tol relative to the partial sum. Throws ConvergenceError after max_terms.
Multivector exp_element(const Multivector& x, double tol = 1e-13, int max_terms = 64);

// Left multiplication. With strict, the result is checked against the ideal.
SpinorState apply(const GateElement& g, const SpinorState& x, bool strict = false);

// Born probabilities |<k|x>|^2 in MSB-first order.
std::vector<double> measure_probabilities(const WittContext& ctx, const SpinorState& x);

// Builds a registry gate. The op is validated against ctx.qubits().
GateElement build_gate(const WittContext& ctx, const GateOp& op);

// Left-fold of apply over the circuit starting from the given basis state.
SpinorState run_clifford(const Circuit& circuit, std::span<const int> initial_bits,
                         bool strict = false);

}  // namespace cliffq
