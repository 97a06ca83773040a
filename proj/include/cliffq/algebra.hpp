#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cliffq {

using Complex = std::complex<double>;

// Bit j-1 set iff generator e_j occurs in the blade. 0 is the scalar blade.
using BladeMask = std::uint64_t;

inline constexpr int kMaxGenerators = 64;

// Terms below this magnitude are dropped after products and sums.
inline constexpr double kDefaultPrune = 1e-14;

// Tolerance used by Multivector::operator==.
inline constexpr double kCompareTol = 1e-12;

int grade(BladeMask blade);

// Generators e_1..e_p square to +1, e_{p+1}..e_{p+q} square to -1.
struct AlgebraSignature {
  int p = 0;
  int q = 0;

  constexpr int dim() const { return p + q; }
  static AlgebraSignature euclidean(int m);

  friend bool operator==(const AlgebraSignature&, const AlgebraSignature&) = default;
};

struct BladeProduct {
  int sign;  // +1 or -1; 0 never occurs for non-degenerate signatures
  BladeMask blade;
};

// Canonical blade and sign of e_A e_B.
BladeProduct blade_product(BladeMask a, BladeMask b, AlgebraSignature sig);

// Sparse element of the Clifford algebra over an orthonormal basis with complex
// coefficients. Terms are kept sorted by blade mask; values are immutable.
class Multivector {
 public:
  struct Term {
    BladeMask blade;
    Complex coef;
  };

  Multivector() = default;
  explicit Multivector(AlgebraSignature sig);

  static Multivector scalar(AlgebraSignature sig, Complex value);
  static Multivector blade(AlgebraSignature sig, BladeMask blade, Complex coef = 1.0);
  // 1-based generator index.
  static Multivector generator(AlgebraSignature sig, int j, Complex coef = 1.0);
  // Duplicate blades are summed.
  static Multivector from_terms(AlgebraSignature sig, std::vector<Term> terms,
                                double prune = kDefaultPrune);

  const AlgebraSignature& signature() const { return sig_; }
  int dim() const { return sig_.dim(); }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Complex coefficient(BladeMask blade) const;
  Complex scalar_part() const { return coefficient(0); }
  // sqrt(sum |coef|^2)
  double norm() const;
  double max_abs_coefficient() const;
  bool is_real(double tol = kCompareTol) const;

  Multivector operator-() const;
  Multivector& operator+=(const Multivector& rhs);
  Multivector& operator-=(const Multivector& rhs);
  Multivector& operator*=(Complex s);

  friend Multivector operator+(Multivector lhs, const Multivector& rhs) { return lhs += rhs; }
  friend Multivector operator-(Multivector lhs, const Multivector& rhs) { return lhs -= rhs; }
  friend Multivector operator*(Multivector lhs, Complex s) { return lhs *= s; }
  friend Multivector operator*(Complex s, Multivector rhs) { return rhs *= s; }
  friend Multivector operator*(const Multivector& x, const Multivector& y);

  // Equal within kCompareTol on every coefficient.
  friend bool operator==(const Multivector& x, const Multivector& y);

 private:
  AlgebraSignature sig_{};
  std::vector<Term> terms_;
};

Multivector geometric_product(const Multivector& x, const Multivector& y,
                              double prune = kDefaultPrune);
Multivector outer_product(const Multivector& x, const Multivector& y);
Multivector left_contraction(const Multivector& x, const Multivector& y);

Multivector grade_projection(const Multivector& x, int r);
Multivector grade_involution(const Multivector& x);
Multivector reverse(const Multivector& x);
Multivector clifford_conjugation(const Multivector& x);

/// Hermitian conjugation: reverse of every blade together with complex
/// conjugation of the coefficients. On scalars this is complex conjugation,
/// f_j = (e_j - i e_{j+n})/2 maps to f_j^dagger, and [x^dagger x]_0 is the
/// squared coefficient norm.
Multivector hermitian_conjugation(const Multivector& x);

// [x y]_0 without forming the full product.
Complex scalar_product(const Multivector& x, const Multivector& y);

// [x^dagger y]_0
Complex hermitian_inner_raw(const Multivector& x, const Multivector& y);

double max_abs_difference(const Multivector& x, const Multivector& y);
bool approx_equal(const Multivector& x, const Multivector& y, double tol = kCompareTol);
// Same blades, bit-identical coefficients.
bool exactly_equal(const Multivector& x, const Multivector& y);

std::string format_complex(Complex z);

// Terms sorted by (grade, mask), each rendered as "(re+im i) e1e2".
std::string to_string(const Multivector& x);

}  // namespace cliffq
