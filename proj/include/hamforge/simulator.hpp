// Copyright 2026 The hamforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hamforge/circuit.hpp"

namespace hamforge {

using StateVector = std::vector<cplx>;
using SparseState = std::unordered_map<std::uint64_t, cplx>;
using DenseMatrix = Eigen::MatrixXcd;

// Flat simulation over every qubit of c; qubit 0 is the most significant bit.
StateVector apply_circuit(const Circuit& c, StateVector psi, bool parallel = false);
// Full unitary of a small circuit, column by column.
DenseMatrix circuit_unitary(const Circuit& c);

struct SimOptions {
  // Sub-circuits with at most this many open qubits are precomputed as sparse
  // operators on those qubits.
  int macro_open_limit = 12;
  std::int64_t macro_min_gates = 64;
  bool parallel = true;
};

SimOptions default_sim_options();
void set_default_sim_options(const SimOptions& o);
void clear_sim_cache();
// Largest strict-pure residual seen while precomputing sub-circuit operators.
double macro_leak_max();

// Simulates a circuit on the qubits it actually touches. Strict pure qubits
// that are only used inside precomputed sub-circuits are dropped from the state.
class Simulator {
 public:
  explicit Simulator(CircuitPtr c, SimOptions opt = default_sim_options());

  const Circuit& circuit() const { return *circuit_; }
  int num_bits() const { return static_cast<int>(tracked_.size()); }
  // Top-level qubit for each tracked position, most significant first.
  const std::vector<int>& tracked_qubits() const { return tracked_; }
  // Bit position of a top-level qubit, or -1 when it is not tracked.
  int position(int qubit) const { return pos_[qubit]; }

  // Basis index with the listed top-level qubits set to 1.
  std::uint64_t basis_index(const std::vector<int>& ones) const;
  void run(StateVector& psi) const;
  // Sparse execution; returns false once the support exceeds limit (s is then unusable).
  bool run_sparse(SparseState& s, std::size_t limit = std::numeric_limits<std::size_t>::max()) const;

 private:
  CircuitPtr circuit_;
  SimOptions opt_;
  std::vector<int> tracked_;
  std::vector<int> pos_;
};

struct BlockResult {
  DenseMatrix block;
  double strict_leak = 0.0;
  double conditional_leak = 0.0;
};

// B[i,j] = <0, i|U|0, j> over the data register, with every other qubit in |0>.
// Throws AncillaLeak when a pure qubit ends away from |0> by more than 1e-10.
BlockResult extract_block(const CircuitPtr& c, const BlockEncodingDescriptor& d,
                          SimOptions opt = default_sim_options());

double spectral_norm(const DenseMatrix& m);

struct BlockCheck {
  double spectral = 0.0;
  double max_entry = 0.0;
  double strict_leak = 0.0;
  double conditional_leak = 0.0;
  bool pass = false;
  DenseMatrix block;
};

// Compares target against scale * block.
BlockCheck assert_block_equals(const CircuitPtr& c, const BlockEncodingDescriptor& d,
                               const DenseMatrix& target, double tol,
                               SimOptions opt = default_sim_options());

struct PurityReport {
  std::int64_t inputs = 0;
  bool exhaustive = false;
  double strict_leak = 0.0;
  double conditional_leak = 0.0;
};

// Strict pure qubits: every basis input of the open qubits. Conditional pure
// qubits: inputs with flags and pure qubits in |0>, read where flags are |0>.
// Beyond max_inputs the inputs are a fixed stride through the basis.
PurityReport check_purity(const CircuitPtr& c, std::int64_t max_inputs = std::int64_t{1} << 12,
                          SimOptions opt = default_sim_options());

}  // namespace hamforge
