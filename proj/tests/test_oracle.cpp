#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numbers>
#include <random>

#include <nlohmann/json.hpp>

#include "cliffq/gates.hpp"
#include "cliffq/oracle.hpp"
#include "cliffq/witt.hpp"

using namespace cliffq;
using namespace cliffq::oracle;

TEST_CASE("gate matrices") {
  const auto cnot = gate_matrix({"cnot", {1, 2}, {}});
  CHECK(cnot.size == 4);
  CHECK(cnot(3, 2) == Complex(1.0));
  CHECK(cnot(2, 3) == Complex(1.0));
  CHECK(cnot(2, 2) == Complex(0.0));
  CHECK(cnot(0, 0) == Complex(1.0));
  for (const auto& spec : gate_registry()) {
    std::vector<int> wires;
    for (int k = 1; k <= spec.arity; ++k) wires.push_back(k);
    std::vector<double> params(spec.params, 1.1);
    if (spec.name == "u2") params = {0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0};
    CHECK(gate_matrix({std::string(spec.name), wires, params}).is_unitary());
  }
  CHECK_THROWS_AS(gate_matrix({"foo", {1}, {}}), std::invalid_argument);
  CHECK_THROWS_AS(gate_matrix({"x", {1, 2}, {}}), std::invalid_argument);
}

TEST_CASE("embedding on non-adjacent wires") {
  // CNOT with control 3 and target 1 on three wires: |001> -> |101>
  const auto full = kron_embed(gate_matrix({"cnot", {3, 1}, {}}), 3);
  CHECK(full.size == 8);
  CHECK(full(0b101, 0b001) == Complex(1.0));
  CHECK(full(0b000, 0b000) == Complex(1.0));
  CHECK(full(0b100, 0b100) == Complex(1.0));
  CHECK(full.is_unitary());
  CHECK_THROWS_AS(kron_embed(gate_matrix({"x", {4}, {}}), 3), std::invalid_argument);
  CHECK_THROWS_AS(kron_embed(gate_matrix({"x", {1}, {}}), 13), std::out_of_range);

  // local application agrees with the embedded matrix
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  MatrixState s{3, std::vector<Complex>(8)};
  for (auto& a : s.amplitudes) a = Complex(g(rng), g(rng));
  const auto op = gate_matrix({"ccnot", {3, 1, 2}, {}});
  auto local = s;
  apply_gate(op, local);
  const auto big = kron_embed(op, 3);
  for (std::size_t r = 0; r < 8; ++r) {
    Complex acc{};
    for (std::size_t c = 0; c < 8; ++c) acc += big(r, c) * s.amplitudes[c];
    CHECK(std::abs(acc - local.amplitudes[r]) < 1e-14);
  }
}

TEST_CASE("matrix basis states") {
  const auto s = basis_state(3, std::vector<int>{1, 0, 1});
  CHECK(s.amplitudes[5] == Complex(1.0));
  CHECK(s.norm() == 1.0);
  CHECK(basis_state(2, {}).amplitudes[0] == Complex(1.0));
  CHECK_THROWS_AS(basis_state(2, std::vector<int>{1}), std::invalid_argument);
  CHECK_THROWS_AS(basis_state(13, {}), std::out_of_range);
}

TEST_CASE("Bell circuit on the matrix backend") {
  const Circuit bell{2, {{"h", {1}, {}}, {"cnot", {1, 2}, {}}}};
  const auto s = run_matrix(bell, {});
  const double r = 1.0 / std::numbers::sqrt2;
  CHECK(std::abs(s.amplitudes[0] - r) < 1e-15);
  CHECK(std::abs(s.amplitudes[3] - r) < 1e-15);
  CHECK(std::abs(s.amplitudes[1]) == 0.0);
  CHECK(std::abs(s.amplitudes[2]) == 0.0);
}

TEST_CASE("backends agree on every gate and wire placement") {
  std::mt19937_64 rng(8);
  for (int n = 1; n <= 3; ++n) {
    for (const auto& spec : gate_registry()) {
      if (spec.arity > n) continue;
      for (int trial = 0; trial < 6; ++trial) {
        std::vector<int> wires(n);
        for (int k = 0; k < n; ++k) wires[k] = k + 1;
        std::shuffle(wires.begin(), wires.end(), rng);
        wires.resize(spec.arity);
        std::vector<double> params(spec.params, 0.4 + trial);
        if (spec.name == "u2") {
          const double c = std::cos(0.3 * trial), s = std::sin(0.3 * trial);
          params = {c, 0.0, 0.0, -s, 0.0, -s, c, 0.0};
        }
        // put a superposition in first so diagonal gates are tested too
        Circuit circ{n, {}};
        for (int k = 1; k <= n; ++k) circ.ops.push_back({"h", {k}, {}});
        for (int k = 1; k <= n; ++k) circ.ops.push_back({"phase", {k}, {0.3 * k}});
        circ.ops.push_back({std::string(spec.name), wires, params});
        for (std::uint64_t init = 0; init < (1u << n); ++init) {
          const auto bits = index_to_bits(init, n);
          const auto cmp = compare_backends(circ, bits);
          REQUIRE(cmp.max_deviation < 1e-12);
          REQUIRE(cmp.pass);
        }
      }
    }
  }
}

TEST_CASE("random circuits are reproducible") {
  std::mt19937_64 a(123), b(123);
  const RandomCircuitOptions opts{4, 20};
  for (int k = 0; k < 20; ++k) {
    const auto ca = random_circuit(a, opts);
    const auto cb = random_circuit(b, opts);
    REQUIRE(ca == cb);
    REQUIRE(ca.qubits >= 1);
    REQUIRE(ca.qubits <= 4);
    REQUIRE(ca.ops.size() <= 20);
    for (const auto& op : ca.ops) REQUIRE_NOTHROW(validate_op(op, ca.qubits));
  }
  std::mt19937_64 c(1);
  CHECK_THROWS_AS(random_circuit(c, {0, 5}), std::invalid_argument);
  CHECK_THROWS_AS(random_circuit(c, {2, -1}), std::invalid_argument);
}

TEST_CASE("differential fuzz") {
  const auto report = fuzz(2024, 200, {4, 20}, 1e-9);
  CHECK(report.cases.size() == 200);
  CHECK(report.all_pass());
  CHECK(report.worst_deviation() < 1e-9);
  CHECK(report.cases[5].seed == 2029);

  // each case replays on its own
  std::mt19937_64 rng(2029);
  const auto circ = random_circuit(rng, {4, 20});
  CHECK(circ.ops.size() == report.cases[5].gates);
  CHECK(circ.qubits == report.cases[5].qubits);

  const auto text = report.text();
  CHECK(std::count(text.begin(), text.end(), '\n') == 201);
  CHECK(text.find("summary: seed 2024, 200/200") != std::string::npos);

  const auto j = nlohmann::json::parse(report.json());
  CHECK(j["seed"] == 2024);
  CHECK(j["circuits"] == 200);
  CHECK(j["pass"] == true);
  CHECK(j["cases"].size() == 200);
}

TEST_CASE("failing tolerance is reported") {
  const auto report = fuzz(5, 5, {2, 5}, 0.0);
  // zero tolerance with strict comparison cannot pass
  CHECK_FALSE(report.all_pass());
  CHECK(report.text().find("FAIL") != std::string::npos);
}

TEST_CASE("empty and single u2 circuits") {
  const Circuit empty{3, {}};
  for (std::uint64_t init = 0; init < 8; ++init)
    CHECK(compare_backends(empty, index_to_bits(init, 3)).max_deviation == 0.0);

  std::mt19937_64 rng(15);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    // columns from Gram-Schmidt on a Gaussian pair
    Complex a(g(rng), g(rng)), c(g(rng), g(rng));
    const double na = std::sqrt(std::norm(a) + std::norm(c));
    a /= na;
    c /= na;
    const Complex ph = std::polar(1.0, g(rng));
    const Complex b = -std::conj(c) * ph, d = std::conj(a) * ph;
    const Circuit one{1, {{"u2", {1}, {a.real(), a.imag(), b.real(), b.imag(), c.real(), c.imag(),
                                       d.real(), d.imag()}}}};
    CHECK(compare_backends(one, std::vector<int>{0}).max_deviation < 1e-10);
    CHECK(compare_backends(one, std::vector<int>{1}).max_deviation < 1e-10);
  }
}

TEST_CASE("single-gate agreement on basis inputs, n <= 4") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  for (int n = 1; n <= 4; ++n) {
    for (const auto& spec : gate_registry()) {
      if (spec.arity > n) continue;
      std::vector<int> wires(n);
      for (int k = 0; k < n; ++k) wires[k] = k + 1;
      std::shuffle(wires.begin(), wires.end(), rng);
      wires.resize(spec.arity);
      std::vector<double> params{angle(rng)};
      if (spec.params == 0) params.clear();
      if (spec.name == "u2") params = {0.0, 0.0, 0.0, -1.0, 0.0, 1.0, 0.0, 0.0};
      const Circuit circ{n, {{std::string(spec.name), wires, params}}};
      for (std::uint64_t init = 0; init < (1u << n); ++init)
        REQUIRE(compare_backends(circ, index_to_bits(init, n)).max_deviation < 1e-10);
    }
  }
}

TEST_CASE("matrix backend preserves the norm gate by gate") {
  std::mt19937_64 rng(33);
  for (int k = 0; k < 30; ++k) {
    const auto circ = random_circuit(rng, {4, 20});
    auto s = basis_state(circ.qubits, {});
    for (const auto& op : circ.ops) {
      apply_gate(gate_matrix(op), s);
      REQUIRE(std::abs(s.norm() - 1.0) < 1e-10);
    }
  }
}
