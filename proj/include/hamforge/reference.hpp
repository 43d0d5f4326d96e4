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
#include <string>
#include <vector>

#include "hamforge/simulator.hpp"
#include "hamforge/spec.hpp"

namespace hamforge {

// Column offsets of the nonzero bands of a banded matrix, one entry per
// dimension per band (dimension 0 first), sorted lexicographically.
struct SparsityPattern {
  int l = 0;
  std::vector<int> widths;
  std::vector<std::vector<std::int64_t>> offsets;

  int bands() const { return static_cast<int>(offsets.size()); }
  int num_qubits() const;
  // Single-dimension offset of band s.
  std::int64_t offset(int s) const { return offsets[s][0]; }
};

SparsityPattern make_pattern(int n, const std::vector<std::int64_t>& offsets);
// Smallest l with 2^l >= bands.
int index_bits(int bands);

// Band offsets of a matrix whose rows are cyclic shifts of a common layout,
// read from its nonzeros (threshold 1e-14) over dimensions of the given widths.
SparsityPattern sparsity_of(const DenseMatrix& m, const std::vector<int>& widths);

std::vector<double> grid_points(const GridSpec& g);
DenseMatrix build_x_matrix(const GridSpec& g);
// sqrt of the sum of squared grid points.
double x_norm(const GridSpec& g);
DenseMatrix build_p_matrix(const GridSpec& g);

struct BandedPower {
  DenseMatrix matrix;
  SparsityPattern pattern;
  // First-row value of every band.
  std::vector<cplx> band_values;
};

BandedPower matrix_power_banded(const DenseMatrix& p, int m);

DenseMatrix poly_of_diagonal(const Polynomial& p, const GridSpec& g);
// P(x) p^m for ordering 0, p^m P(x) for ordering 1.
DenseMatrix factor_matrix(const GridSpec& g, const Factor& f);
// Throws HermiticityError when the multi-mode sum is not Hermitian.
DenseMatrix build_hamiltonian_dense(const HamiltonianSpec& spec);
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

int binary_norm(std::uint64_t i);

struct WalshCoefficients {
  std::vector<cplx> beta;
  int support_bound = 0;
  // Norm of the vector before the transform.
  double norm = 0.0;
};

// beta_i = 2^{-n/2} / N sum_kappa f(kappa) (-1)^{kappa.i}, f = sum_q w_q diag^q.
WalshCoefficients walsh_coefficients(const std::vector<double>& diag_values,
                                     const std::vector<cplx>& poly_weights);
// Normalized vector f / N recovered from beta.
std::vector<cplx> inverse_walsh(const WalshCoefficients& w);

// "row,col,re,im" lines for entries above threshold.
std::string matrix_to_csv(const DenseMatrix& m, double threshold = 1e-14);

}  // namespace hamforge
