#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "cliffq/algebra.hpp"
#include "cliffq/circuit.hpp"

namespace cliffq::oracle {

// Dense statevector simulator used as the reference for the Clifford backend.
// Amplitude index k labels the basis state whose wire-1 bit is the MSB.

struct MatrixState {
  int qubits = 0;
  std::vector<Complex> amplitudes;

  double norm() const;
};

// Square matrix of size 2^k acting on the ordered wires (1-based). The first
// listed wire is the most significant bit of the row/column index.
struct GateMatrix {
  std::vector<int> wires;
  std::size_t size = 0;
  std::vector<Complex> entries;  // row-major

  Complex operator()(std::size_t r, std::size_t c) const { return entries[r * size + c]; }
  bool is_unitary(double tol = 1e-10) const;
};

GateMatrix gate_matrix(const GateOp& op);

// Full 2^n x 2^n matrix with identities on untouched wires.
GateMatrix kron_embed(const GateMatrix& g, int n);

MatrixState basis_state(int n, std::span<const int> bits);
void apply_gate(const GateMatrix& g, MatrixState& state);
MatrixState run_matrix(const Circuit& circuit, std::span<const int> initial_bits);

struct Comparison {
  std::vector<Complex> clifford;
  std::vector<Complex> matrix;
  double max_deviation = 0.0;
  bool pass = false;
};

// Runs both backends and reports the L-infinity amplitude deviation.
Comparison compare_backends(const Circuit& circuit, std::span<const int> initial_bits,
                            double tol = 1e-9);

struct RandomCircuitOptions {
  int max_qubits = 4;
  int max_depth = 20;
};

// Gates drawn uniformly from the registry entries that fit the register, on
// random distinct wires; phases uniform in [0, 2pi), u2 by Gram-Schmidt on
// Gaussian columns.
Circuit random_circuit(std::mt19937_64& rng, const RandomCircuitOptions& options);

struct FuzzCase {
  std::uint64_t seed;
  int qubits;
  std::size_t gates;
  double max_deviation;
  bool pass;
};

struct FuzzReport {
  std::uint64_t seed;
  double tol;
  std::vector<FuzzCase> cases;

  bool all_pass() const;
  double worst_deviation() const;
  std::string text() const;  // one line per circuit plus a summary line
  std::string json() const;
};

// Circuit i is generated from seed + i, so every case can be replayed alone.
FuzzReport fuzz(std::uint64_t seed, int circuits, const RandomCircuitOptions& options,
                double tol = 1e-9);

}  // namespace cliffq::oracle
