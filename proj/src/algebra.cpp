#include "cliffq/algebra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace cliffq {

namespace {

BladeMask full_mask(int m) {
  return m >= 64 ? ~BladeMask{0} : (BladeMask{1} << m) - 1;
}

void check_signature(AlgebraSignature sig) {
  if (sig.p < 0 || sig.q < 0 || sig.dim() > kMaxGenerators)
    throw std::invalid_argument("algebra signature must have 0 <= p + q <= 64");
}

void check_same_algebra(const Multivector& x, const Multivector& y) {
  if (x.signature() != y.signature())
    throw std::invalid_argument("multivector dimension/signature mismatch (" +
                                std::to_string(x.dim()) + " vs " + std::to_string(y.dim()) +
                                ")");
}

// Number of transpositions needed to bring e_A e_B into canonical order.
int reorder_parity(BladeMask a, BladeMask b) {
  int swaps = 0;
  a >>= 1;
  while (a != 0) {
    swaps += std::popcount(a & b);
    a >>= 1;
  }
  return swaps & 1;
}

int reverse_sign(int r) { return ((r * (r - 1) / 2) & 1) ? -1 : 1; }
int involution_sign(int r) { return (r & 1) ? -1 : 1; }
int conjugation_sign(int r) { return ((r * (r + 1) / 2) & 1) ? -1 : 1; }

// Accumulates blade -> coefficient and produces a pruned, sorted term list.
class Accumulator {
 public:
  explicit Accumulator(int dim, std::size_t expected) : dense_(dim <= 16) {
    if (dense_) {
      buffer_.assign(std::size_t{1} << dim, Complex{});
      touched_.reserve(expected);
    } else {
      map_.reserve(expected);
    }
  }

  void add(BladeMask blade, Complex c) {
    if (dense_) {
      Complex& slot = buffer_[blade];
      // A slot that returned to exactly zero may be pushed twice; finish() dedups.
      if (slot == Complex{}) touched_.push_back(blade);
      slot += c;
    } else {
      map_[blade] += c;
    }
  }

  std::vector<Multivector::Term> finish(double prune) {
    std::vector<Multivector::Term> out;
    if (dense_) {
      std::sort(touched_.begin(), touched_.end());
      touched_.erase(std::unique(touched_.begin(), touched_.end()), touched_.end());
      for (BladeMask b : touched_)
        if (std::abs(buffer_[b]) >= prune && buffer_[b] != Complex{}) out.push_back({b, buffer_[b]});
    } else {
      out.reserve(map_.size());
      for (const auto& [b, c] : map_)
        if (std::abs(c) >= prune && c != Complex{}) out.push_back({b, c});
      std::sort(out.begin(), out.end(),
                [](const auto& l, const auto& r) { return l.blade < r.blade; });
    }
    return out;
  }

 private:
  bool dense_;
  std::vector<Complex> buffer_;
  std::vector<BladeMask> touched_;
  std::unordered_map<BladeMask, Complex> map_;
};

template <typename SignFn>
Multivector map_blades(const Multivector& x, SignFn sign_of_grade, bool conjugate) {
  std::vector<Multivector::Term> out(x.terms().begin(), x.terms().end());
  for (auto& t : out) {
    if (conjugate) t.coef = std::conj(t.coef);
    t.coef *= static_cast<double>(sign_of_grade(grade(t.blade)));
  }
  return Multivector::from_terms(x.signature(), std::move(out), 0.0);
}

}  // namespace

int grade(BladeMask blade) { return std::popcount(blade); }

AlgebraSignature AlgebraSignature::euclidean(int m) {
  AlgebraSignature sig{m, 0};
  check_signature(sig);
  return sig;
}

BladeProduct blade_product(BladeMask a, BladeMask b, AlgebraSignature sig) {
  int sign = reorder_parity(a, b) ? -1 : 1;
  // Generators with index >= p square to -1.
  const BladeMask negative = full_mask(sig.dim()) & ~full_mask(sig.p);
  if (std::popcount(a & b & negative) & 1) sign = -sign;
  return {sign, a ^ b};
}

Multivector::Multivector(AlgebraSignature sig) : sig_(sig) { check_signature(sig); }

Multivector Multivector::scalar(AlgebraSignature sig, Complex value) {
  return blade(sig, 0, value);
}

Multivector Multivector::blade(AlgebraSignature sig, BladeMask blade, Complex coef) {
  return from_terms(sig, {{blade, coef}}, 0.0);
}

Multivector Multivector::generator(AlgebraSignature sig, int j, Complex coef) {
  if (j < 1 || j > sig.dim())
    throw std::out_of_range("generator index " + std::to_string(j) + " outside 1.." +
                            std::to_string(sig.dim()));
  return blade(sig, BladeMask{1} << (j - 1), coef);
}

Multivector Multivector::from_terms(AlgebraSignature sig, std::vector<Term> terms,
                                    double prune) {
  Multivector out(sig);
  const BladeMask allowed = full_mask(sig.dim());
  for (const auto& t : terms)
    if ((t.blade & ~allowed) != 0)
      throw std::invalid_argument("blade outside the algebra's generators");
  std::sort(terms.begin(), terms.end(),
            [](const Term& l, const Term& r) { return l.blade < r.blade; });
  for (const auto& t : terms) {
    if (!out.terms_.empty() && out.terms_.back().blade == t.blade)
      out.terms_.back().coef += t.coef;
    else
      out.terms_.push_back(t);
  }
  std::erase_if(out.terms_, [prune](const Term& t) {
    return t.coef == Complex{} || std::abs(t.coef) < prune;
  });
  return out;
}

Complex Multivector::coefficient(BladeMask blade) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), blade,
                             [](const Term& t, BladeMask b) { return t.blade < b; });
  return (it != terms_.end() && it->blade == blade) ? it->coef : Complex{};
}

double Multivector::norm() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::norm(t.coef);
  return std::sqrt(s);
}

double Multivector::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.coef));
  return m;
}

bool Multivector::is_real(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [tol](const Term& t) { return std::abs(t.coef.imag()) < tol; });
}

Multivector Multivector::operator-() const {
  Multivector out = *this;
  for (auto& t : out.terms_) t.coef = -t.coef;
  return out;
}

Multivector& Multivector::operator+=(const Multivector& rhs) {
  check_same_algebra(*this, rhs);
  std::vector<Term> merged;
  merged.reserve(terms_.size() + rhs.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < rhs.terms_.size()) {
    if (j == rhs.terms_.size() || (i < terms_.size() && terms_[i].blade < rhs.terms_[j].blade)) {
      merged.push_back(terms_[i++]);
    } else if (i == terms_.size() || rhs.terms_[j].blade < terms_[i].blade) {
      merged.push_back(rhs.terms_[j++]);
    } else {
      Complex c = terms_[i].coef + rhs.terms_[j].coef;
      if (c != Complex{} && std::abs(c) >= kDefaultPrune) merged.push_back({terms_[i].blade, c});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& rhs) { return *this += -rhs; }

Multivector& Multivector::operator*=(Complex s) {
  for (auto& t : terms_) t.coef *= s;
  std::erase_if(terms_, [](const Term& t) { return t.coef == Complex{}; });
  return *this;
}

Multivector operator*(const Multivector& x, const Multivector& y) {
  return geometric_product(x, y);
}

bool operator==(const Multivector& x, const Multivector& y) { return approx_equal(x, y); }

Multivector geometric_product(const Multivector& x, const Multivector& y, double prune) {
  check_same_algebra(x, y);
  const auto sig = x.signature();
  Accumulator acc(sig.dim(), x.size() * y.size());
  for (const auto& a : x.terms())
    for (const auto& b : y.terms()) {
      auto [sign, blade] = blade_product(a.blade, b.blade, sig);
      acc.add(blade, static_cast<double>(sign) * a.coef * b.coef);
    }
  return Multivector::from_terms(sig, acc.finish(prune), 0.0);
}

Multivector outer_product(const Multivector& x, const Multivector& y) {
  check_same_algebra(x, y);
  const auto sig = x.signature();
  Accumulator acc(sig.dim(), x.size() * y.size());
  for (const auto& a : x.terms())
    for (const auto& b : y.terms()) {
      if ((a.blade & b.blade) != 0) continue;
      const double sign = reorder_parity(a.blade, b.blade) ? -1.0 : 1.0;
      acc.add(a.blade | b.blade, sign * a.coef * b.coef);
    }
  return Multivector::from_terms(sig, acc.finish(kDefaultPrune), 0.0);
}

// e_A . e_B is the grade |B|-|A| part of e_A e_B, nonzero only when A is a
// subset of B. For a vector this gives e_j . e_A = sum_k (-1)^(k-1) B(j,i_k) e_{A\i_k},
// so that e_j e_A = e_j . e_A + e_j ^ e_A holds.
Multivector left_contraction(const Multivector& x, const Multivector& y) {
  check_same_algebra(x, y);
  const auto sig = x.signature();
  Accumulator acc(sig.dim(), x.size() * y.size());
  for (const auto& a : x.terms())
    for (const auto& b : y.terms()) {
      if ((a.blade & ~b.blade) != 0) continue;
      auto [sign, blade] = blade_product(a.blade, b.blade, sig);
      acc.add(blade, static_cast<double>(sign) * a.coef * b.coef);
    }
  return Multivector::from_terms(sig, acc.finish(kDefaultPrune), 0.0);
}

Multivector grade_projection(const Multivector& x, int r) {
  if (r < 0 || r > x.dim()) throw std::out_of_range("grade outside 0..m");
  std::vector<Multivector::Term> out;
  for (const auto& t : x.terms())
    if (grade(t.blade) == r) out.push_back(t);
  return Multivector::from_terms(x.signature(), std::move(out), 0.0);
}

Multivector grade_involution(const Multivector& x) { return map_blades(x, involution_sign, false); }
Multivector reverse(const Multivector& x) { return map_blades(x, reverse_sign, false); }
Multivector clifford_conjugation(const Multivector& x) {
  return map_blades(x, conjugation_sign, false);
}
Multivector hermitian_conjugation(const Multivector& x) { return map_blades(x, reverse_sign, true); }

Complex scalar_product(const Multivector& x, const Multivector& y) {
  check_same_algebra(x, y);
  Complex sum{};
  const auto sig = x.signature();
  for (const auto& a : x.terms()) {
    const Complex b = y.coefficient(a.blade);
    if (b == Complex{}) continue;
    sum += static_cast<double>(blade_product(a.blade, a.blade, sig).sign) * a.coef * b;
  }
  return sum;
}

Complex hermitian_inner_raw(const Multivector& x, const Multivector& y) {
  return scalar_product(hermitian_conjugation(x), y);
}

double max_abs_difference(const Multivector& x, const Multivector& y) {
  check_same_algebra(x, y);
  double worst = 0.0;
  auto xs = x.terms();
  auto ys = y.terms();
  std::size_t i = 0, j = 0;
  while (i < xs.size() || j < ys.size()) {
    if (j == ys.size() || (i < xs.size() && xs[i].blade < ys[j].blade)) {
      worst = std::max(worst, std::abs(xs[i++].coef));
    } else if (i == xs.size() || ys[j].blade < xs[i].blade) {
      worst = std::max(worst, std::abs(ys[j++].coef));
    } else {
      worst = std::max(worst, std::abs(xs[i++].coef - ys[j++].coef));
    }
  }
  return worst;
}

bool approx_equal(const Multivector& x, const Multivector& y, double tol) {
  return x.signature() == y.signature() && max_abs_difference(x, y) <= tol;
}

bool exactly_equal(const Multivector& x, const Multivector& y) {
  if (x.signature() != y.signature() || x.size() != y.size()) return false;
  return std::equal(x.terms().begin(), x.terms().end(), y.terms().begin(),
                    [](const auto& a, const auto& b) {
                      return a.blade == b.blade && a.coef == b.coef;
                    });
}

std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(10);
  const double re = z.real() + 0.0, im = z.imag() + 0.0;  // no -0
  os << '(' << re << (im < 0 ? '-' : '+') << std::abs(im) << "i)";
  return os.str();
}

std::string to_string(const Multivector& x) {
  if (x.is_zero()) return "0";
  std::vector<Multivector::Term> terms(x.terms().begin(), x.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& l, const auto& r) {
    return grade(l.blade) != grade(r.blade) ? grade(l.blade) < grade(r.blade) : l.blade < r.blade;
  });
  std::string out;
  for (const auto& t : terms) {
    if (!out.empty()) out += " + ";
    out += format_complex(t.coef);
    if (t.blade != 0) {
      out += ' ';
      for (int j = 0; j < x.dim(); ++j)
        if (t.blade >> j & 1) out += "e" + std::to_string(j + 1);
    }
  }
  return out;
}

}  // namespace cliffq
