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

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "hamforge/simulator.hpp"

namespace hamforge::testing {

// Register value assignments: qubits listed most significant first.
using Assignment = std::vector<std::pair<std::vector<int>, std::uint64_t>>;

inline std::uint64_t encode(const Simulator& sim, const Assignment& a) {
  std::vector<int> ones;
  for (const auto& [qs, v] : a) {
    const int w = static_cast<int>(qs.size());
    for (int k = 0; k < w; ++k)
      if (v >> (w - 1 - k) & 1) ones.push_back(qs[k]);
  }
  return sim.basis_index(ones);
}

inline std::uint64_t decode(const Simulator& sim, std::uint64_t idx, const std::vector<int>& qs) {
  std::uint64_t v = 0;
  for (int q : qs) v = (v << 1) | ((idx >> sim.position(q)) & 1);
  return v;
}

inline StateVector run_basis(const Simulator& sim, std::uint64_t idx) {
  SparseState s{{idx, cplx(1.0)}};
  sim.run_sparse(s);
  StateVector psi(std::size_t{1} << sim.num_bits(), 0.0);
  for (const auto& [i, a] : s) psi[i] = a;
  return psi;
}

// Index of the single basis state holding the output, or -1 if the output is not a basis state.
inline std::int64_t basis_output(const StateVector& psi, double tol = 1e-10) {
  std::int64_t hit = -1;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double a = std::abs(psi[i]);
    if (std::abs(a - 1.0) < tol) hit = static_cast<std::int64_t>(i);
    else if (a > tol) return -1;
  }
  return hit;
}

}  // namespace hamforge::testing
