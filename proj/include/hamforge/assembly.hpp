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

#include "hamforge/qsvt.hpp"
#include "hamforge/reference.hpp"
#include "hamforge/spec.hpp"

namespace hamforge {

struct FactorLedger {
  int l = 0;
  // Squared-norm normalizer of the momentum band values.
  double n_p = 0.0;
  double c_x = 1.0;
  double c_p = 1.0;
};

struct TermLedger {
  cplx alpha;
  std::vector<FactorLedger> factors;
  // prod_y c_p sqrt(2^l n_p).
  double weight = 0.0;
  // Selector amplitude; zero for terms that are left out of the sum.
  cplx amplitude;
};

struct NormalizationLedger {
  std::vector<TermLedger> terms;
  double n_h = 0.0;
  SparsityPattern h_pattern;
  // sqrt(2^l) n_h.
  double scale = 0.0;
};

// Arbitrary amplitude preparation on register "q": U|0> = sum_x amps[x] |x>.
CircuitPtr build_state_prep(const std::vector<cplx>& amps);

struct TermAux {
  CircuitPtr circuit;
  TermLedger ledger;
};

// One term of the sum over per-dimension registers mf{y}, pw{y}, pl{y} (flags),
// row, a, c, col. With every other qubit in |0>,
// <row=i, col=j| A |row=0, col=j> = i^{sum m} (-1)^{sum m} T_ij / weight.
TermAux build_term_aux(const HamiltonianSpec& spec, const MultiTerm& term);

NormalizationLedger build_ledger(const HamiltonianSpec& spec);

// Registers sel, per-dimension flags, row, a, c, col:
// <row=i, col=j| A_H |row=0, col=j> = H_ij / n_h.
CircuitPtr build_A_H(const HamiltonianSpec& spec, const NormalizationLedger& ledger);

struct HamiltonianEncoding {
  EncodedCircuit enc;
  NormalizationLedger ledger;
};

// Block-encoding of the discretized Hamiltonian on register "data"; works for
// both the single-mode and the multi-mode form.
HamiltonianEncoding build_U_H(const HamiltonianSpec& spec);

// A[i][j] = <out=i, in=j, rest 0| c |in=j, rest 0>; in and out may coincide.
DenseMatrix transfer_block(const CircuitPtr& c, const std::string& in, const std::string& out);

}  // namespace hamforge
