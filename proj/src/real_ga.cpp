#include "cliffq/real_ga.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cliffq/gates.hpp"

namespace cliffq::g3 {

namespace {

constexpr BladeMask kS1 = 1, kS2 = 2, kS3 = 4;
constexpr BladeMask kS12 = kS1 | kS2, kS13 = kS1 | kS3, kS23 = kS2 | kS3;
constexpr BladeMask kS123 = 7;

Multivector blade(BladeMask m, double c = 1.0) {
  return Multivector::blade(signature(), m, c);
}

void require_g3(const Multivector& x, const char* what) {
  if (!is_g3_element(x)) throw std::invalid_argument(std::string(what) + ": not a real G3 element");
}

void check_k(int k) {
  if (k < 1 || k > 3) throw std::out_of_range("sigma index must be 1..3, got " + std::to_string(k));
}

// Drops imaginary rounding noise so results stay real G3 elements.
Multivector real_part(const Multivector& x) {
  std::vector<Multivector::Term> out;
  for (const auto& t : x.terms()) out.push_back({t.blade, t.coef.real()});
  return Multivector::from_terms(x.signature(), std::move(out));
}

std::array<double, 3> ijk_coords(const Multivector& v) {
  // j = s3s1 = -s1s3
  return {v.coefficient(kS23).real(), -v.coefficient(kS13).real(), v.coefficient(kS12).real()};
}

}  // namespace

AlgebraSignature signature() { return AlgebraSignature::euclidean(3); }

Multivector scalar(double v) { return Multivector::scalar(signature(), v); }

Multivector sigma(int k) {
  check_k(k);
  return Multivector::generator(signature(), k);
}

Multivector sigma(int j, int k) { return sigma(j) * sigma(k); }

Multivector pseudoscalar() { return blade(kS123); }

bool is_g3_element(const Multivector& x, double tol) {
  if (x.signature() != signature()) return false;
  return x.is_real(tol);
}

// ---------------------------------------------------------------------------

QuatQubit::QuatQubit(Multivector value) : value_(std::move(value)) {
  require_g3(value_, "QuatQubit");
  for (const auto& t : value_.terms())
    if (grade(t.blade) % 2 != 0) throw std::invalid_argument("QuatQubit: odd-graded component");
}

QuatQubit quat_encode(Complex alpha, Complex beta) {
  const double a0 = alpha.real(), a3 = alpha.imag();
  const double a2 = -beta.real(), a1 = beta.imag();
  return QuatQubit(scalar(a0) + blade(kS23, a1) - blade(kS13, a2) + blade(kS12, a3));
}

std::array<Complex, 2> quat_decode(const QuatQubit& psi) {
  const auto& v = psi.value();
  const double a0 = v.scalar_part().real();
  const double a1 = v.coefficient(kS23).real();
  const double a2 = -v.coefficient(kS13).real();
  const double a3 = v.coefficient(kS12).real();
  return {Complex(a0, a3), Complex(-a2, a1)};
}

Complex quat_inner(const QuatQubit& phi, const QuatQubit& psi) {
  const Multivector p = reverse(phi.value()) * psi.value();
  const double re = p.scalar_part().real();
  const double im = -scalar_product(p, blade(kS12)).real();
  return {re, im};
}

QuatQubit quat_pauli(int k, const QuatQubit& psi) {
  return QuatQubit(real_part(sigma(k) * psi.value() * sigma(3)));
}

QuatQubit quat_complex_structure(const QuatQubit& psi) {
  return QuatQubit(psi.value() * blade(kS12));
}

// ---------------------------------------------------------------------------

TensorG3::TensorG3(int slots) : slots_(slots) {
  if (slots < 1 || slots > 3) throw std::out_of_range("TensorG3 supports 1..3 slots");
}

TensorG3 TensorG3::identity(int slots) {
  TensorG3 t(slots);
  t.terms_[Key(slots, 0)] = 1.0;
  return t;
}

TensorG3 TensorG3::in_slot(int slots, int slot, const Multivector& g) {
  TensorG3 t(slots);
  if (slot < 1 || slot > slots) throw std::out_of_range("slot out of range");
  require_g3(g, "TensorG3::in_slot");
  for (const auto& term : g.terms()) {
    Key k(slots, 0);
    k[slot - 1] = term.blade;
    t.terms_[k] += term.coef.real();
  }
  return t;
}

TensorG3& TensorG3::operator+=(const TensorG3& rhs) {
  if (rhs.slots_ != slots_) throw std::invalid_argument("TensorG3 slot count mismatch");
  for (const auto& [k, c] : rhs.terms_) {
    double& v = terms_[k];
    v += c;
    if (std::abs(v) < kDefaultPrune) terms_.erase(k);
  }
  return *this;
}

TensorG3& TensorG3::operator*=(double s) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    if (std::abs(it->second) < kDefaultPrune)
      it = terms_.erase(it);
    else
      ++it;
  }
  return *this;
}

TensorG3 operator*(const TensorG3& a, const TensorG3& b) {
  if (a.slots_ != b.slots_) throw std::invalid_argument("TensorG3 slot count mismatch");
  TensorG3 out(a.slots_);
  const auto sig = signature();
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      TensorG3::Key k(a.slots_);
      int sign = 1;
      for (int s = 0; s < a.slots_; ++s) {
        const auto bp = blade_product(ka[s], kb[s], sig);
        sign *= bp.sign;
        k[s] = bp.blade;
      }
      out.terms_[k] += sign * ca * cb;
    }
  }
  for (auto it = out.terms_.begin(); it != out.terms_.end();) {
    if (std::abs(it->second) < kDefaultPrune)
      it = out.terms_.erase(it);
    else
      ++it;
  }
  return out;
}

double max_abs_difference(const TensorG3& a, const TensorG3& b) {
  double worst = 0.0;
  for (const auto& [k, c] : a.terms_) {
    auto it = b.terms_.find(k);
    worst = std::max(worst, std::abs(c - (it == b.terms_.end() ? 0.0 : it->second)));
  }
  for (const auto& [k, c] : b.terms_)
    if (!a.terms_.count(k)) worst = std::max(worst, std::abs(c));
  return worst;
}

TensorG3 complex_unit(int slots, int k) { return TensorG3::in_slot(slots, k, blade(kS12)); }

TensorG3 correlator(int n) {
  if (n < 2 || n > 3) throw std::out_of_range("correlator needs 2 <= n <= 3");
  TensorG3 e = TensorG3::identity(n);
  const TensorG3 one = TensorG3::identity(n);
  const TensorG3 j1 = complex_unit(n, 1);
  for (int k = 2; k <= n; ++k) e = e * ((one - j1 * complex_unit(n, k)) * 0.5);
  return e;
}

// ---------------------------------------------------------------------------

namespace {

// Image of a complex coefficient c on the Witt element whose image is t and
// whose i-multiple has image ti.
Multivector lift(Complex c, const Multivector& t, const Multivector& ti) {
  return t * c.real() + ti * c.imag();
}

}  // namespace

Multivector c2_to_g3(const Multivector& x) {
  if (x.dim() != 2) throw std::invalid_argument("c2_to_g3 expects an element of C_2");
  static const Multivector t1 = scalar(1.0), ti1 = pseudoscalar();
  static const Multivector tf = (blade(kS1) - blade(kS13)) * 0.5;
  static const Multivector tif = (blade(kS23) - blade(kS2)) * 0.5;
  static const Multivector tfd = (blade(kS1) + blade(kS13)) * 0.5;
  static const Multivector tifd = (blade(kS23) + blade(kS2)) * 0.5;
  static const Multivector tI = (scalar(1.0) + blade(kS3)) * 0.5;
  static const Multivector tiI = (blade(kS12) + blade(kS123)) * 0.5;

  // x0 + x1 e1 + x2 e2 + x12 e12 in the basis 1, f, f^dagger, f f^dagger
  const Complex i(0.0, 1.0);
  const Complex x0 = x.coefficient(0), x1 = x.coefficient(1), x2 = x.coefficient(2),
                x12 = x.coefficient(3);
  const Complex c_one = x0 + i * x12;
  const Complex c_f = x1 + i * x2;
  const Complex c_fd = x1 - i * x2;
  const Complex c_I = -2.0 * i * x12;
  return real_part(lift(c_one, t1, ti1) + lift(c_f, tf, tif) + lift(c_fd, tfd, tifd) +
                   lift(c_I, tI, tiI));
}

Multivector g3_to_c2(const Multivector& x) {
  require_g3(x, "g3_to_c2");
  const auto c2 = AlgebraSignature::euclidean(2);
  const Complex i(0.0, 1.0);
  auto e = [&](BladeMask m, Complex c) { return Multivector::blade(c2, m, c); };
  Multivector out(c2);
  for (const auto& t : x.terms()) {
    const double c = t.coef.real();
    switch (t.blade) {
      case 0: out += e(0, c); break;
      case kS1: out += e(1, c); break;
      case kS2: out += e(2, -c); break;
      case kS3: out += e(3, i * c); break;
      case kS12: out += e(3, -c); break;
      case kS13: out += e(2, i * c); break;
      case kS23: out += e(1, i * c); break;
      case kS123: out += e(0, i * c); break;
      default: break;
    }
  }
  return out;
}

std::vector<Multivector> c2_real_basis() {
  const auto c2 = AlgebraSignature::euclidean(2);
  const Complex i(0.0, 1.0);
  std::vector<Multivector> out;
  for (Complex c : {Complex(1.0), i})
    for (BladeMask m = 0; m < 4; ++m) out.push_back(Multivector::blade(c2, m, c));
  const Multivector one = Multivector::scalar(c2, 1.0);
  const Multivector e1 = Multivector::generator(c2, 1), e2 = Multivector::generator(c2, 2);
  const Multivector f = (e1 - i * e2) * 0.5, fd = (e1 + i * e2) * 0.5;
  for (Complex c : {Complex(1.0), i})
    for (const Multivector& w : {one, f, fd, f * fd}) out.push_back(c * w);
  return out;
}

double IsoCheck::worst() const {
  return std::max({product_error, inverse_error, reverse_error, table_error});
}

IsoCheck iso_check() {
  IsoCheck r;
  const auto basis = c2_real_basis();
  std::vector<Multivector> images;
  for (const auto& x : basis) images.push_back(c2_to_g3(x));
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Multivector lhs = c2_to_g3(basis[a] * basis[b]);
      r.product_error = std::max(r.product_error, max_abs_difference(lhs, images[a] * images[b]));
      ++r.pairs;
    }
    r.inverse_error = std::max(r.inverse_error, max_abs_difference(g3_to_c2(images[a]), basis[a]));
    r.reverse_error = std::max(
        r.reverse_error,
        max_abs_difference(c2_to_g3(hermitian_conjugation(basis[a])), reverse(images[a])));
  }
  for (BladeMask m = 0; m < 8; ++m) {
    const Multivector s = blade(m);
    r.inverse_error = std::max(r.inverse_error, max_abs_difference(c2_to_g3(g3_to_c2(s)), s));
  }
  // Witt images as listed, in the order of c2_real_basis() entries 8..15.
  const std::array<Multivector, 8> table{
      scalar(1.0),
      (blade(kS1) - blade(kS13)) * 0.5,
      (blade(kS1) + blade(kS13)) * 0.5,
      (scalar(1.0) + blade(kS3)) * 0.5,
      pseudoscalar(),
      (blade(kS23) - blade(kS2)) * 0.5,
      (blade(kS23) + blade(kS2)) * 0.5,
      (blade(kS12) + blade(kS123)) * 0.5};
  for (std::size_t k = 0; k < table.size(); ++k)
    r.table_error = std::max(r.table_error, max_abs_difference(images[8 + k], table[k]));
  return r;
}

Multivector real_idempotent() { return (scalar(1.0) + blade(kS3)) * 0.5; }

RealComplexQubit::RealComplexQubit(Multivector value) : value_(std::move(value)) {
  require_g3(value_, "RealComplexQubit");
  if (!approx_equal(value_ * real_idempotent(), value_))
    throw std::invalid_argument("RealComplexQubit: not in the left ideal of I_R");
}

RealComplexQubit rc_encode(Complex alpha, Complex beta) {
  const Multivector a = scalar(alpha.real()) + blade(kS1, beta.real()) + blade(kS2, beta.imag()) +
                        blade(kS12, alpha.imag());
  return RealComplexQubit(a * real_idempotent());
}

std::array<Complex, 2> rc_decode(const RealComplexQubit& psi) {
  const auto& v = psi.value();
  const double a0 = 2.0 * v.scalar_part().real();
  const double a1 = 2.0 * v.coefficient(kS1).real();
  const double a2 = 2.0 * v.coefficient(kS2).real();
  const double a3 = 2.0 * v.coefficient(kS12).real();
  return {Complex(a0, a3), Complex(a1, a2)};
}

Complex rc_inner(const RealComplexQubit& phi, const RealComplexQubit& psi) {
  const Multivector p = reverse(phi.value()) * psi.value();
  const double re = p.scalar_part().real();
  const double im = -scalar_product(p, pseudoscalar()).real();
  return {2.0 * re, 2.0 * im};
}

RealComplexQubit rc_pauli(int k, const RealComplexQubit& psi) {
  return RealComplexQubit(sigma(k) * psi.value());
}

// ---------------------------------------------------------------------------

BlochAngles bloch_angles(Complex alpha, Complex beta) {
  const double nrm = std::norm(alpha) + std::norm(beta);
  if (std::abs(nrm - 1.0) > 1e-10)
    throw std::invalid_argument("bloch_angles: state is not normalized");
  const double ra = std::abs(alpha);
  if (ra > 0.0) beta *= std::conj(alpha) / ra;
  const double rb = std::abs(beta);
  const double theta = 2.0 * std::atan2(rb, ra);
  double phi = 0.0;
  if (ra > 1e-15 && rb > 1e-15) {
    phi = std::arg(beta);
    if (phi < 0.0) phi += 2.0 * std::numbers::pi;
    if (phi >= 2.0 * std::numbers::pi) phi = 0.0;
  }
  return {theta, phi};
}

Multivector quaternion_i() { return blade(kS23); }
Multivector quaternion_j() { return -blade(kS13); }
Multivector quaternion_k() { return blade(kS12); }

std::array<double, 3> bloch_verify(double theta, double phi) {
  const Multivector q =
      exp_element(quaternion_k() * (-0.5 * phi)) * exp_element(quaternion_j() * (-0.5 * theta));
  return ijk_coords(q * quaternion_k() * reverse(q));
}

std::array<double, 3> bloch_vector(const QuatQubit& psi) {
  const auto& v = psi.value();
  return ijk_coords(v * quaternion_k() * reverse(v));
}

}  // namespace cliffq::g3
