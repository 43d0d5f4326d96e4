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

#include <string>
#include <vector>

#include "hamforge/assembly.hpp"
#include "hamforge/circuit.hpp"

namespace hamforge {

enum class BoundPolicy { strict, advisory };

// Formula inputs; each entry of the catalog reads the fields it needs.
struct BoundInputs {
  int n = 0;
  int l = 0;
  int gamma = 0;
  int q = 0;
  int m = 0;
  // Truncation parameter of the evolution.
  int omega = 0;
  // Flag count of the encoding fed to the simulation overhead formula.
  int a = 0;
  // Value standing for 2^{l_max}.
  double lmax_pow = 0.0;
};

struct BoundValue {
  double one_qubit = 0.0;
  double cnot = 0.0;
  double ancillas = 0.0;
};

// Catalog names: multicontrol, adder, banded_sparse_access, banded_sparse_access_summands,
// coordinate_superposition, amplitude_oracle_x, diag_amplitude, coordinate_polynomial_oracle,
// momentum_oracle, one_term_aux, A_H, U_H, qsvt_overhead, evolution.
BoundValue evaluate_bound(const std::string& name, const BoundInputs& in);
BoundPolicy bound_policy(const std::string& name);
const std::vector<std::string>& bound_catalog();

struct ResourceEntry {
  std::string name;
  std::string instance;
  BoundInputs inputs;
  Counts actual;
  BoundValue bound;
  BoundPolicy policy = BoundPolicy::advisory;
  // (bound - actual) / bound per axis; negative when the bound is exceeded.
  double margin_one_qubit = 0.0;
  double margin_cnot = 0.0;
  double margin_ancillas = 0.0;
  bool within = true;
};

ResourceEntry check_bounds(const Circuit& c, const std::string& name, const BoundInputs& in,
                           const std::string& instance = "");

struct ResourceReport {
  std::vector<ResourceEntry> entries;
  // True when a strict entry exceeds its bound.
  bool failed() const;
  std::string to_json() const;
};

// Audits every primitive of a Hamiltonian encoding, plus its totals for one-mode specs.
ResourceReport audit_hamiltonian(const HamiltonianSpec& spec, const HamiltonianEncoding& he);

}  // namespace hamforge
