#include <catch_amalgamated.hpp>

#include <random>

#include "cliffq/algebra.hpp"

using namespace cliffq;

namespace {

const Complex I1{0.0, 1.0};

Multivector e(AlgebraSignature sig, int j) { return Multivector::generator(sig, j); }

Multivector random_mv(std::mt19937_64& rng, AlgebraSignature sig, int terms = 6) {
  std::normal_distribution<double> g;
  std::uniform_int_distribution<BladeMask> blade(0, (BladeMask{1} << sig.dim()) - 1);
  std::vector<Multivector::Term> t;
  for (int k = 0; k < terms; ++k) t.push_back({blade(rng), Complex(g(rng), g(rng))});
  return Multivector::from_terms(sig, t);
}

// Naive product: expand the generator words one by one with the anticommutation rule.
Multivector slow_product(const Multivector& x, const Multivector& y) {
  const auto sig = x.signature();
  Multivector out(sig);
  for (const auto& a : x.terms()) {
    for (const auto& b : y.terms()) {
      std::vector<int> word;
      for (int j = 0; j < sig.dim(); ++j)
        if (a.blade >> j & 1) word.push_back(j);
      for (int j = 0; j < sig.dim(); ++j)
        if (b.blade >> j & 1) word.push_back(j);
      // bubble sort, collapsing equal neighbours
      Complex c = a.coef * b.coef;
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t k = 0; k + 1 < word.size(); ++k) {
          if (word[k] > word[k + 1]) {
            std::swap(word[k], word[k + 1]);
            c = -c;
            changed = true;
          } else if (word[k] == word[k + 1]) {
            if (word[k] >= sig.p) c = -c;
            word.erase(word.begin() + static_cast<long>(k), word.begin() + static_cast<long>(k) + 2);
            changed = true;
            break;
          }
        }
      }
      BladeMask m = 0;
      for (int j : word) m |= BladeMask{1} << j;
      out += Multivector::blade(sig, m, c);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("blade products on small cases") {
  const auto E3 = AlgebraSignature::euclidean(3);
  auto r = blade_product(1, 1, E3);
  CHECK(r.sign == 1);
  CHECK(r.blade == 0);
  r = blade_product(2, 1, E3);
  CHECK(r.sign == -1);
  CHECK(r.blade == 3);
  r = blade_product(0b011, 0b110, E3);
  CHECK(r.sign == 1);
  CHECK(r.blade == 0b101);

  const AlgebraSignature sig{1, 2};
  CHECK(blade_product(2, 2, sig).sign == -1);
  CHECK(blade_product(1, 1, sig).sign == 1);
  CHECK(blade_product(6, 6, sig).sign == -1);  // (e2e3)^2 = -e2e2e3e3 = -1
}

TEST_CASE("blade_product agrees with word reduction") {
  for (AlgebraSignature sig : {AlgebraSignature{4, 0}, AlgebraSignature{2, 2}, AlgebraSignature{1, 3}}) {
    for (BladeMask a = 0; a < 16; ++a) {
      for (BladeMask b = 0; b < 16; ++b) {
        const auto fast = Multivector::blade(sig, a) * Multivector::blade(sig, b);
        const auto slow = slow_product(Multivector::blade(sig, a), Multivector::blade(sig, b));
        REQUIRE(exactly_equal(fast, slow));
      }
    }
  }
}

TEST_CASE("geometric product examples") {
  const auto E2 = AlgebraSignature::euclidean(2);
  const auto one = Multivector::scalar(E2, 1.0);
  CHECK((one + e(E2, 1)) * (one - e(E2, 1)) == Multivector(E2));
  CHECK(exactly_equal(e(E2, 1) * e(E2, 2), Multivector::blade(E2, 3)));

  const auto f = (e(E2, 1) - I1 * e(E2, 2)) * 0.5;
  const auto fd = (e(E2, 1) + I1 * e(E2, 2)) * 0.5;
  const auto ffd = f * fd;
  CHECK(ffd.scalar_part() == Complex(0.5));
  CHECK(exactly_equal(ffd, Multivector::scalar(E2, 0.5) + outer_product(f, fd)));
  CHECK(grade_projection(ffd, 0).scalar_part() == Complex(0.5));
}

TEST_CASE("dimension mismatch throws") {
  const auto a = Multivector::generator(AlgebraSignature::euclidean(2), 1);
  const auto b = Multivector::generator(AlgebraSignature::euclidean(3), 1);
  CHECK_THROWS_AS(a * b, std::invalid_argument);
  CHECK_THROWS_AS(outer_product(a, b), std::invalid_argument);
  CHECK_THROWS_AS(left_contraction(a, b), std::invalid_argument);
  CHECK_THROWS_AS(hermitian_inner_raw(a, b), std::invalid_argument);
}

TEST_CASE("outer product") {
  const auto E2 = AlgebraSignature::euclidean(2);
  CHECK(outer_product(e(E2, 1), e(E2, 1)).is_zero());
  CHECK(exactly_equal(outer_product(e(E2, 1), e(E2, 2)), Multivector::blade(E2, 3)));
  CHECK(exactly_equal(outer_product(e(E2, 1) + e(E2, 2), e(E2, 1) - e(E2, 2)),
                      Multivector::blade(E2, 3, -2.0)));
}

TEST_CASE("left contraction") {
  const auto E3 = AlgebraSignature::euclidean(3);
  CHECK(exactly_equal(left_contraction(e(E3, 1), e(E3, 1)), Multivector::scalar(E3, 1.0)));
  CHECK(left_contraction(e(E3, 1), e(E3, 2)).is_zero());
  CHECK(exactly_equal(left_contraction(e(E3, 1), Multivector::blade(E3, 3)), e(E3, 2)));
  CHECK(exactly_equal(left_contraction(e(E3, 2), Multivector::blade(E3, 3)), -e(E3, 1)));
  CHECK(exactly_equal(left_contraction(e(E3, 2), Multivector::blade(E3, 7)),
                      -Multivector::blade(E3, 5)));
}

TEST_CASE("vector product splits into contraction plus wedge") {
  std::mt19937_64 rng(11);
  for (AlgebraSignature sig : {AlgebraSignature{4, 0}, AlgebraSignature{2, 3}}) {
    for (int j = 1; j <= sig.dim(); ++j) {
      for (BladeMask a = 0; a < (BladeMask{1} << sig.dim()); ++a) {
        const auto v = e(sig, j);
        const auto x = Multivector::blade(sig, a);
        REQUIRE(exactly_equal(v * x, left_contraction(v, x) + outer_product(v, x)));
      }
    }
    for (int trial = 0; trial < 20; ++trial) {
      std::normal_distribution<double> g;
      Multivector v(sig);
      for (int j = 1; j <= sig.dim(); ++j) v += Complex(g(rng), g(rng)) * e(sig, j);
      const auto x = random_mv(rng, sig);
      REQUIRE(approx_equal(v * x, left_contraction(v, x) + outer_product(v, x)));
    }
  }
}

TEST_CASE("grade operations") {
  const auto E3 = AlgebraSignature::euclidean(3);
  const auto one = Multivector::scalar(E3, 1.0);
  const auto e12 = Multivector::blade(E3, 3);
  CHECK(grade_projection(e(E3, 1), 0).is_zero());
  CHECK(exactly_equal(grade_projection(one * 3.0 + e12, 2), e12));

  CHECK(exactly_equal(grade_involution(e(E3, 1)), -e(E3, 1)));
  CHECK(exactly_equal(grade_involution(e12), e12));
  CHECK(exactly_equal(grade_involution(one + e(E3, 1) + e12), one - e(E3, 1) + e12));

  CHECK(exactly_equal(reverse(e12), -e12));
  CHECK(exactly_equal(reverse(e(E3, 1)), e(E3, 1)));
  CHECK(exactly_equal(reverse(Multivector::blade(E3, 7)), -Multivector::blade(E3, 7)));

  CHECK(exactly_equal(clifford_conjugation(e(E3, 1)), -e(E3, 1)));
  CHECK(exactly_equal(clifford_conjugation(e12), -e12));
  const auto z = Multivector::scalar(E3, Complex(2.0, -3.0));
  CHECK(exactly_equal(clifford_conjugation(z), z));
}

TEST_CASE("hermitian conjugation") {
  const auto E2 = AlgebraSignature::euclidean(2);
  CHECK(exactly_equal(hermitian_conjugation(Multivector::scalar(E2, I1)),
                      Multivector::scalar(E2, -I1)));
  const auto f = (e(E2, 1) - I1 * e(E2, 2)) * 0.5;
  const auto fd = (e(E2, 1) + I1 * e(E2, 2)) * 0.5;
  CHECK(exactly_equal(hermitian_conjugation(f), fd));
  CHECK(exactly_equal(hermitian_conjugation(fd), f));

  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  const auto C4 = AlgebraSignature::euclidean(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_mv(rng, C4);
    const Complex w(g(rng), g(rng));
    CHECK(approx_equal(hermitian_conjugation(w * x), std::conj(w) * hermitian_conjugation(x)));
    // independent expansion: conjugate each coefficient and apply the reverse sign by grade
    Multivector expect(C4);
    for (const auto& t : x.terms()) {
      const int r = grade(t.blade);
      const double s = (r * (r - 1) / 2) % 2 ? -1.0 : 1.0;
      expect += Multivector::blade(C4, t.blade, s * std::conj(t.coef));
    }
    CHECK(exactly_equal(hermitian_conjugation(x), expect));
  }
}

TEST_CASE("involutions and antiautomorphisms") {
  std::mt19937_64 rng(17);
  const auto C4 = AlgebraSignature::euclidean(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_mv(rng, C4);
    const auto y = random_mv(rng, C4);
    CHECK(exactly_equal(grade_involution(grade_involution(x)), x));
    CHECK(exactly_equal(reverse(reverse(x)), x));
    CHECK(exactly_equal(clifford_conjugation(clifford_conjugation(x)), x));
    CHECK(exactly_equal(hermitian_conjugation(hermitian_conjugation(x)), x));
    CHECK(approx_equal(reverse(x * y), reverse(y) * reverse(x)));
    CHECK(approx_equal(hermitian_conjugation(x * y),
                       hermitian_conjugation(y) * hermitian_conjugation(x)));
    CHECK(approx_equal(grade_involution(x * y), grade_involution(x) * grade_involution(y)));
  }
}

TEST_CASE("associativity and distributivity") {
  std::mt19937_64 rng(3);
  for (AlgebraSignature sig : {AlgebraSignature{5, 0}, AlgebraSignature{3, 2}, AlgebraSignature{10, 0}}) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto x = random_mv(rng, sig), y = random_mv(rng, sig), z = random_mv(rng, sig);
      REQUIRE(max_abs_difference((x * y) * z, x * (y * z)) < 1e-12);
      REQUIRE(max_abs_difference(x * (y + z), x * y + x * z) < 1e-12);
      REQUIRE(max_abs_difference(x * y, slow_product(x, y)) < 1e-12);
    }
  }
}

TEST_CASE("generator anticommutation") {
  for (int m : {1, 4, 8}) {
    const auto sig = AlgebraSignature::euclidean(m);
    for (int i = 1; i <= m; ++i)
      for (int j = 1; j <= m; ++j)
        REQUIRE(exactly_equal(e(sig, i) * e(sig, j) + e(sig, j) * e(sig, i),
                              Multivector::scalar(sig, i == j ? 2.0 : 0.0)));
  }
}

TEST_CASE("hermitian inner product") {
  const auto E2 = AlgebraSignature::euclidean(2);
  CHECK(hermitian_inner_raw(e(E2, 1), e(E2, 1)) == Complex(1.0));
  const auto f = (e(E2, 1) - I1 * e(E2, 2)) * 0.5;
  const auto ffd = f * hermitian_conjugation(f);
  CHECK(hermitian_inner_raw(ffd, ffd) == Complex(0.5));

  std::mt19937_64 rng(23);
  std::normal_distribution<double> g;
  const auto C6 = AlgebraSignature::euclidean(6);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_mv(rng, C6, 10);
    const auto y = random_mv(rng, C6, 10);
    double sum = 0.0;
    for (const auto& t : x.terms()) sum += std::norm(t.coef);
    const Complex xx = hermitian_inner_raw(x, x);
    CHECK(std::abs(xx.imag()) < 1e-12);
    CHECK(xx.real() >= 0.0);
    CHECK(std::abs(xx.real() - sum) < 1e-12);
    // matches the full product
    CHECK(std::abs(hermitian_inner_raw(x, y) - (hermitian_conjugation(x) * y).scalar_part()) <
          1e-12);
    const Complex w(g(rng), g(rng));
    CHECK(std::abs(hermitian_inner_raw(w * x, y) - std::conj(w) * hermitian_inner_raw(x, y)) <
          1e-10);
    CHECK(std::abs(hermitian_inner_raw(x, w * y) - w * hermitian_inner_raw(x, y)) < 1e-10);
  }
}

TEST_CASE("pruning and comparison") {
  const auto E2 = AlgebraSignature::euclidean(2);
  const auto tiny = Multivector::from_terms(E2, {{1, 1e-15}, {2, 1.0}});
  CHECK(tiny.size() == 1);
  const auto merged = Multivector::from_terms(E2, {{1, 1.0}, {1, -1.0}});
  CHECK(merged.is_zero());
  CHECK(Multivector::blade(E2, 1, 1.0) == Multivector::blade(E2, 1, 1.0 + 1e-13));
  CHECK_FALSE(exactly_equal(Multivector::blade(E2, 1, 1.0), Multivector::blade(E2, 1, 1.0 + 1e-13)));
  CHECK_FALSE(Multivector::blade(E2, 1, 1.0) == Multivector::blade(E2, 1, 1.0 + 1e-9));
}

TEST_CASE("degenerate algebra with no generators") {
  const AlgebraSignature c{0, 0};
  const auto a = Multivector::scalar(c, Complex(2.0, 1.0));
  const auto b = Multivector::scalar(c, Complex(0.0, 3.0));
  CHECK((a * b).scalar_part() == Complex(2.0, 1.0) * Complex(0.0, 3.0));
  CHECK(hermitian_conjugation(a).scalar_part() == Complex(2.0, -1.0));
}

TEST_CASE("large signature uses sparse accumulation") {
  const auto sig = AlgebraSignature::euclidean(64);
  const auto a = e(sig, 64) * e(sig, 1);
  CHECK(exactly_equal(a * a, Multivector::scalar(sig, -1.0)));
  CHECK(a.coefficient((BladeMask{1} << 63) | 1) == Complex(-1.0));
}

TEST_CASE("rendering") {
  const auto E3 = AlgebraSignature::euclidean(3);
  const auto x = Multivector::blade(E3, 3, Complex(0.0, 1.0)) + Multivector::scalar(E3, 0.5) -
                 e(E3, 2);
  CHECK(to_string(x) == "(0.5+0i) + (-1+0i) e2 + (0+1i) e1e2");
  CHECK(to_string(Multivector(E3)) == "0");
}
