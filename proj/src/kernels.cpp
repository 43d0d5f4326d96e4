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

#include "hamforge/kernels.hpp"

#include <omp.h>

namespace hamforge::kernels {

namespace {

inline void rotate_pair(cplx& a, cplx& b, const Mat2& m) {
  const cplx x = a, y = b;
  a = m[0] * x + m[1] * y;
  b = m[2] * x + m[3] * y;
}

// Index of the k-th pair with bit pos clear.
inline Index pair_base(Index k, int pos) {
  const Index low = k & ((Index{1} << pos) - 1);
  return ((k >> pos) << (pos + 1)) | low;
}

}  // namespace

void apply_1q_serial(cplx* psi, int num_bits, int pos, const Mat2& m) {
  const Index stride = Index{1} << pos;
  const Index dim = Index{1} << num_bits;
  for (Index base = 0; base < dim; base += 2 * stride)
    for (Index i = base; i < base + stride; ++i) rotate_pair(psi[i], psi[i + stride], m);
}

void apply_1q_omp(cplx* psi, int num_bits, int pos, const Mat2& m) {
  const Index stride = Index{1} << pos;
  const std::int64_t pairs = std::int64_t{1} << (num_bits - 1);
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < pairs; ++k) {
    const Index i = pair_base(static_cast<Index>(k), pos);
    rotate_pair(psi[i], psi[i + stride], m);
  }
}

void apply_cx_serial(cplx* psi, int num_bits, int cpos, int tpos) {
  const Index dim = Index{1} << num_bits;
  const Index cbit = Index{1} << cpos, tbit = Index{1} << tpos;
  for (Index i = 0; i < dim; ++i)
    if ((i & cbit) && !(i & tbit)) std::swap(psi[i], psi[i | tbit]);
}

void apply_cx_omp(cplx* psi, int num_bits, int cpos, int tpos) {
  const Index cbit = Index{1} << cpos, tbit = Index{1} << tpos;
  const std::int64_t pairs = std::int64_t{1} << (num_bits - 1);
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < pairs; ++k) {
    const Index i = pair_base(static_cast<Index>(k), tpos);
    if (i & cbit) std::swap(psi[i], psi[i | tbit]);
  }
}

void scale_serial(cplx* psi, int num_bits, cplx factor) {
  const Index dim = Index{1} << num_bits;
  for (Index i = 0; i < dim; ++i) psi[i] *= factor;
}

void scale_omp(cplx* psi, int num_bits, cplx factor) {
  const std::int64_t dim = std::int64_t{1} << num_bits;
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < dim; ++i) psi[i] *= factor;
}

void apply_gates(cplx* psi, int num_bits, const std::vector<Gate>& gates,
                 const std::vector<int>& pos, bool parallel) {
  for (const auto& g : gates) {
    if (g.kind == GateKind::gphase) {
      const cplx f = std::polar(1.0, g.p[0]);
      parallel ? scale_omp(psi, num_bits, f) : scale_serial(psi, num_bits, f);
    } else if (g.kind == GateKind::cx) {
      parallel ? apply_cx_omp(psi, num_bits, pos[g.q0], pos[g.q1])
               : apply_cx_serial(psi, num_bits, pos[g.q0], pos[g.q1]);
    } else {
      const Mat2 m = gate_matrix(g);
      parallel ? apply_1q_omp(psi, num_bits, pos[g.q0], m)
               : apply_1q_serial(psi, num_bits, pos[g.q0], m);
    }
  }
}

Index deposit(Index x, Index mask) {
  Index out = 0;
  for (Index bit = 1; mask; bit <<= 1) {
    const Index low = mask & (~mask + 1);
    if (x & bit) out |= low;
    mask &= mask - 1;
  }
  return out;
}

}  // namespace hamforge::kernels
