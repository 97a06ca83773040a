#pragma once

#include <array>
#include <map>
#include <vector>

#include "cliffq/algebra.hpp"

namespace cliffq::g3 {

// Real geometric algebra of R^3 with sigma_1, sigma_2, sigma_3 squaring to +1.
// Elements are Multivectors of signature (3,0) whose coefficients are real.

AlgebraSignature signature();

Multivector scalar(double v);
// sigma_k, k = 1..3
Multivector sigma(int k);
// sigma_j sigma_k as a geometric product, so sigma(3,1) = -sigma(1,3)
Multivector sigma(int j, int k);
Multivector pseudoscalar();  // sigma_1 sigma_2 sigma_3

// True for signature (3,0) with every imaginary part below tol.
bool is_g3_element(const Multivector& x, double tol = kCompareTol);

// ---------------------------------------------------------------------------
// Quaternionic qubit: even elements a0 + a1 s2s3 + a2 s3s1 + a3 s1s2 standing
// for the column (a0 + a3 i, -a2 + a1 i).

class QuatQubit {
 public:
  // Throws std::invalid_argument for non-real or odd-graded input.
  explicit QuatQubit(Multivector value);
  const Multivector& value() const { return value_; }

 private:
  Multivector value_;
};

QuatQubit quat_encode(Complex alpha, Complex beta);
std::array<Complex, 2> quat_decode(const QuatQubit& psi);

// [~phi psi]_0 - [~phi psi s1s2]_0 i
Complex quat_inner(const QuatQubit& phi, const QuatQubit& psi);

// Pauli matrix k acting as psi -> sigma_k psi sigma_3.
QuatQubit quat_pauli(int k, const QuatQubit& psi);

// Multiplication by the complex unit: psi -> psi s1s2.
QuatQubit quat_complex_structure(const QuatQubit& psi);

// ---------------------------------------------------------------------------
// Formal tensor products of G3 elements; factors in different slots commute.

class TensorG3 {
 public:
  using Key = std::vector<BladeMask>;

  explicit TensorG3(int slots);
  static TensorG3 identity(int slots);
  // g placed in `slot` (1-based), identity elsewhere.
  static TensorG3 in_slot(int slots, int slot, const Multivector& g);

  int slots() const { return slots_; }
  const std::map<Key, double>& terms() const { return terms_; }

  TensorG3& operator+=(const TensorG3& rhs);
  TensorG3& operator*=(double s);
  friend TensorG3 operator+(TensorG3 a, const TensorG3& b) { return a += b; }
  friend TensorG3 operator-(TensorG3 a, const TensorG3& b) { return a += b * -1.0; }
  friend TensorG3 operator*(TensorG3 a, double s) { return a *= s; }
  friend TensorG3 operator*(double s, TensorG3 a) { return a *= s; }
  // Slot-wise geometric product.
  friend TensorG3 operator*(const TensorG3& a, const TensorG3& b);

  friend double max_abs_difference(const TensorG3& a, const TensorG3& b);

 private:
  int slots_;
  std::map<Key, double> terms_;
};

// E_n = prod_{k=2}^n (1 - J_1 J_k) / 2 with J_k = s1s2 in slot k, 2 <= n <= 3.
TensorG3 correlator(int n);
// J_k = i sigma_3 = s1s2 in slot k.
TensorG3 complex_unit(int slots, int k);

// ---------------------------------------------------------------------------
// Real algebra isomorphism C_2 -> G3 fixed on the Witt basis by
//   1 -> 1, i -> s1s2s3, f -> (s1 - s1s3)/2, f^dagger -> (s1 + s1s3)/2,
//   f f^dagger -> (1 + s3)/2, and the i-multiples accordingly.

Multivector c2_to_g3(const Multivector& x);
Multivector g3_to_c2(const Multivector& x);

// The 8 real e-basis elements of C_2 (1, e1, e2, e12 and their i-multiples)
// followed by the 8 Witt elements 1, f, f^dagger, f f^dagger and i times each.
std::vector<Multivector> c2_real_basis();

struct IsoCheck {
  std::size_t pairs = 0;         // basis pairs tested for multiplicativity
  double product_error = 0.0;    // max |map(xy) - map(x)map(y)|
  double inverse_error = 0.0;    // max |g3_to_c2(c2_to_g3(x)) - x| and the reverse trip
  double reverse_error = 0.0;    // max |map(x^dagger) - reverse(map(x))|
  double table_error = 0.0;      // deviation of the Witt images from their listed values

  double worst() const;
  bool pass(double tol = kCompareTol) const { return worst() <= tol; }
};

IsoCheck iso_check();

// I_R = (1 + s3)/2
Multivector real_idempotent();

class RealComplexQubit {
 public:
  // Throws unless value is real and value I_R = value.
  explicit RealComplexQubit(Multivector value);
  const Multivector& value() const { return value_; }

 private:
  Multivector value_;
};

// (a0 + a1 s1 + a2 s2 + a3 s1s2) I_R for alpha = a0 + a3 i, beta = a1 + a2 i
RealComplexQubit rc_encode(Complex alpha, Complex beta);
std::array<Complex, 2> rc_decode(const RealComplexQubit& psi);

// 2([~phi psi]_0 - [~phi psi s1s2s3]_0 i): the C_2 spinor product carried over
// by the isomorphism, including the factor 2 that makes |0>, |1> orthonormal.
Complex rc_inner(const RealComplexQubit& phi, const RealComplexQubit& psi);

// psi -> sigma_k psi
RealComplexQubit rc_pauli(int k, const RealComplexQubit& psi);

// ---------------------------------------------------------------------------
// Bloch sphere

struct BlochAngles {
  double theta;  // [0, pi]
  double phi;    // [0, 2pi), 0 at the poles
};

// Requires |alpha|^2 + |beta|^2 = 1 within 1e-10; the global phase is chosen so
// that alpha is real and non-negative.
BlochAngles bloch_angles(Complex alpha, Complex beta);

// Quaternion units of the even subalgebra as duals of the vectors:
// i = s2s3, j = s3s1, k = s1s2 (so ij = -k). With these, |0> = 1 and |1> = -j.
Multivector quaternion_i();
Multivector quaternion_j();
Multivector quaternion_k();

/// Rotates the north pole k by q = exp(-phi k / 2) exp(-theta j / 2) as q k q~
/// and returns the coordinates of the result on (i, j, k). q is the quaternionic
/// encoding of cos(theta/2)|0> + e^{i phi} sin(theta/2)|1> up to global phase.
std::array<double, 3> bloch_verify(double theta, double phi);

// psi k psi~ on (i, j, k) for a quaternionic qubit.
std::array<double, 3> bloch_vector(const QuatQubit& psi);

}  // namespace cliffq::g3
