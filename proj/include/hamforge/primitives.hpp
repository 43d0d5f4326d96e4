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

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "hamforge/circuit.hpp"
#include "hamforge/reference.hpp"

namespace hamforge {

// Emission helpers. Qubit lists are parent indices; pol[i] is the value that
// control i must hold. Pool qubits are borrowed from the builder and released.
void emit_mcx(CircuitBuilder& b, const std::vector<int>& controls, const std::vector<bool>& pol,
              int target);
void emit_mc_ry(CircuitBuilder& b, const std::vector<int>& controls, const std::vector<bool>& pol,
                int target, double theta);

// Applies inner when the controls hold pattern. Registers: "ctrl" then the open
// registers of inner. X and single ry inners use dedicated ladders.
CircuitPtr build_multicontrol(const std::vector<bool>& pattern, const CircuitPtr& inner);
// Registers "ctrl" and "t".
CircuitPtr build_multicontrol_x(const std::vector<bool>& pattern);
CircuitPtr x_gate_circuit();
CircuitPtr ry_gate_circuit(double theta);

// |i>_a |j>_b -> |i + j mod 2^n>_a |j>_b with n-1 carry qubits on the pool.
CircuitPtr build_modular_adder(int n);

// |0^{n-l} s>_first |i>_second -> |r_s + i>_first |i>_second, addition per dimension.
CircuitPtr build_banded_sparse_access(const SparsityPattern& pattern);
// Target of every sparse slot s < 2^l under the index map; padding slots included.
std::vector<std::uint64_t> sparse_slot_targets(const SparsityPattern& pattern);

struct AngleTable {
  int n = 0;
  int chi = 0;
  // Keyed by (level k, pattern over bits 0..k-1).
  std::map<std::pair<int, std::uint64_t>, double> theta;
  std::map<std::pair<int, std::uint64_t>, double> omega;
  // The prepared state carries an overall sign of -1.
  bool negative = false;
};

// beta is real, normalized and supported on binary norms <= chi.
AngleTable solve_binary_norm_angles(const std::vector<double>& beta, int chi,
                                    bool allow_zero_leading = false);
// State prepared by the rotation tree of the table.
std::vector<double> amplitudes_from_angles(const AngleTable& t);
// Register "q" (n qubits); with zero_controls > 0 a leading register "ctl" gates the
// whole preparation on all of its qubits being |0>.
CircuitPtr build_binary_norm_prep(const AngleTable& t, int zero_controls = 0);
// Sum over i of binom-weighted A(i), B(i) for the preparation.
Counts binary_norm_bound(int n, int chi);

struct MomentumOracle {
  CircuitPtr circuit;
  // Squared-norm normalizer: max_s |value_s|^2.
  double norm = 0.0;
};

// Registers "flag" (1) and "sparse" (l): <0,s|O|0,s> = value_s / sqrt(norm).
// Without the phase the block is i^m value_s / sqrt(norm).
MomentumOracle build_momentum_oracle(int l, const std::vector<cplx>& values, int m,
                                     bool with_phase = true);

// Gray-code multiplexed ry on target with controls (most significant first);
// angles[x] is the rotation for control value x.
void emit_multiplexed_ry(CircuitBuilder& b, const std::vector<int>& controls, int target,
                         const std::vector<double>& angles);
void emit_multiplexed_rz(CircuitBuilder& b, const std::vector<int>& controls, int target,
                         const std::vector<double>& angles);

}  // namespace hamforge
