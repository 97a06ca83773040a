#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cliffq/algebra.hpp"

namespace cliffq {

inline constexpr int kMaxQubits = 32;
// Largest register for which dense amplitude vectors are produced.
inline constexpr int kMaxDenseQubits = 12;

namespace detail {
struct PrimitiveCache;
}

/// Witt basis of C_{2n} built on the pairing (e_j, e_{j+n}):
///   f_j = (e_j - i e_{j+n}) / 2,   f_j^dagger = (e_j + i e_{j+n}) / 2,
/// with the idempotents I_j = f_j f_j^dagger, K_j = f_j^dagger f_j and the
/// primitive idempotent I = I_1 ... I_n spanning the qubit register S_n = C_{2n} I.
/// Immutable once built; copies share the lazily computed primitive idempotent.
class WittContext {
 public:
  int qubits() const { return n_; }
  AlgebraSignature signature() const { return AlgebraSignature::euclidean(2 * n_); }

  // Wire indices are 1-based.
  const Multivector& f(int j) const;
  const Multivector& fdag(int j) const;
  const Multivector& I(int j) const;
  const Multivector& K(int j) const;
  const Multivector& primitive() const;

  Multivector one() const { return scalar(1.0); }
  Multivector scalar(Complex z) const { return Multivector::scalar(signature(), z); }
  Multivector e(int j) const { return Multivector::generator(signature(), j); }

  void check_wire(int j) const;

 private:
  friend WittContext build_context(int n);
  WittContext() = default;

  int n_ = 0;
  std::vector<Multivector> f_, fdag_, I_, K_;
  std::shared_ptr<detail::PrimitiveCache> primitive_;
};

WittContext build_context(int n);

/// Element of the left ideal C_{2n} I, tagged with its qubit count.
class SpinorState {
 public:
  // Throws std::invalid_argument when value * I != value.
  static SpinorState from_multivector(const WittContext& ctx, Multivector value);
  static SpinorState unchecked(int n, Multivector value);

  int qubits() const { return n_; }
  const Multivector& value() const { return value_; }

 private:
  SpinorState(int n, Multivector value) : n_(n), value_(std::move(value)) {}

  int n_ = 0;
  Multivector value_;
};

// MSB-first: bit of wire 1 is the most significant bit of the index.
std::vector<int> index_to_bits(std::uint64_t index, int n);
std::uint64_t bits_to_index(std::span<const int> bits);
// "0110" -> {0,1,1,0}
std::vector<int> parse_bitstring(const std::string& text);

// (f_1^dagger)^{b_1} ... (f_n^dagger)^{b_n} I
SpinorState basis_state(const WittContext& ctx, std::span<const int> bits);
SpinorState basis_state(const WittContext& ctx, std::uint64_t index);

// 2^n [x^dagger y]_0
Complex spinor_inner(const WittContext& ctx, const SpinorState& x, const SpinorState& y);

bool is_spinor(const WittContext& ctx, const Multivector& x, double tol = kCompareTol);

std::vector<Complex> state_to_amplitudes(const WittContext& ctx, const SpinorState& x);
SpinorState amplitudes_to_state(const WittContext& ctx, std::span<const Complex> amplitudes);

// Per-wire factor of a Witt word. Occupied is f^dagger f, Empty is f f^dagger.
enum class WittSymbol : std::uint8_t { One, Empty, Occupied, Annihilate, Create };

struct WittTerm {
  Complex coef;
  std::vector<WittSymbol> word;  // one symbol per wire, product taken in wire order
};

/// Coordinates of x in the basis of words prod_k w_k with w_k drawn from
/// {f_k f_k^dagger, f_k^dagger f_k, f_k, f_k^dagger}. Requires n <= 8.
std::vector<WittTerm> witt_decompose(const WittContext& ctx, const Multivector& x,
                                     double tol = 1e-12);

Multivector witt_word(const WittContext& ctx, std::span<const WittSymbol> word);

/// Renders x as a factored sum of Witt words using 1, f_k, f_k^dagger and
/// f_k^dagger f_k per wire, e.g. "1 + f1† f1 f2† f2 (f3 + f3† − 1)".
std::string to_witt_string(const WittContext& ctx, const Multivector& x);

}  // namespace cliffq
