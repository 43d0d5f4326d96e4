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
#include <vector>

#include "hamforge/circuit.hpp"

// Dense state-vector kernels. Positions are bit positions in the flat index;
// every kernel has a serial form and an OpenMP form with identical results.
namespace hamforge::kernels {

using Index = std::uint64_t;

void apply_1q_serial(cplx* psi, int num_bits, int pos, const Mat2& m);
void apply_1q_omp(cplx* psi, int num_bits, int pos, const Mat2& m);

void apply_cx_serial(cplx* psi, int num_bits, int cpos, int tpos);
void apply_cx_omp(cplx* psi, int num_bits, int cpos, int tpos);

void scale_serial(cplx* psi, int num_bits, cplx factor);
void scale_omp(cplx* psi, int num_bits, cplx factor);

// Applies gates whose qubit q sits at bit position pos[q].
void apply_gates(cplx* psi, int num_bits, const std::vector<Gate>& gates,
                 const std::vector<int>& pos, bool parallel);

// Spreads the low bits of x over the set bits of mask.
Index deposit(Index x, Index mask);

}  // namespace hamforge::kernels
