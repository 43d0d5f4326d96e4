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

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace hamforge {

enum class Parity { even, odd };

// Real polynomial sum_k coeffs[k] y^k with trailing zeros stripped.
struct Polynomial {
  std::vector<double> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Parity parity() const { return degree() % 2 == 0 ? Parity::even : Parity::odd; }
  double operator()(double y) const;
  bool operator==(const Polynomial& o) const = default;
};

struct PolynomialCheck {
  bool ok = false;
  std::string violation;
  // 1 - max |P| on the check grid.
  double margin = 0.0;
  // Grid point of the largest |P|.
  double worst_point = 0.0;
};

// Parity and sup-norm check on a 10^4-point grid of [-1, 1] plus endpoints.
PolynomialCheck check_polynomial(const Polynomial& p);
// Throws ParityViolation or BoundViolation.
void validate_polynomial(const Polynomial& p);

struct GridSpec {
  int n = 2;
  double a = -1.0;
  double b = 1.0;

  double delta_x() const;
  bool operator==(const GridSpec& o) const = default;
};

struct Term {
  std::complex<double> alpha;
  Polynomial poly;
  int m = 1;
  bool synthetic = false;

  bool operator==(const Term& o) const = default;
};

// One tensor factor of a multi-mode term: ordering 0 is P(x) p^m, 1 is p^m P(x).
struct Factor {
  int ordering = 0;
  Polynomial poly;
  int m = 1;

  bool operator==(const Factor& o) const = default;
};

struct MultiTerm {
  std::complex<double> alpha;
  std::vector<Factor> factors;
  bool synthetic = false;

  bool operator==(const MultiTerm& o) const = default;
};

struct HamiltonianSpec {
  GridSpec grid;
  // Single-mode form: H = sum_k alpha_k P_k(x) p^m_k + conj(alpha_k) p^m_k P_k(x).
  std::vector<Term> terms;
  // Multi-mode form: H = sum_k alpha_k (x)_y R(factor_ky); dims[0] is most significant.
  std::vector<GridSpec> dims;
  std::vector<MultiTerm> multi_terms;
  // Term count before padding to a power of two, and log2 of the padded count.
  int original_terms = 0;
  int gamma = 0;

  bool multi() const { return !multi_terms.empty(); }
  int num_dims() const { return multi() ? static_cast<int>(dims.size()) : 1; }
  const GridSpec& dim(int y) const { return multi() ? dims[y] : grid; }
  int data_qubits() const;

  bool operator==(const HamiltonianSpec& o) const = default;
};

HamiltonianSpec parse_spec(std::string_view document);
HamiltonianSpec load_spec(const std::string& path);
std::string spec_to_json(const HamiltonianSpec& spec);

// Both forms as a list of multi-mode terms. The single-mode form yields 2^(gamma+1)
// terms: (alpha_k, P_k p^m_k) at k and (conj(alpha_k), p^m_k P_k) at k + 2^gamma.
std::vector<MultiTerm> general_terms(const HamiltonianSpec& spec);
// Number of qubits indexing general_terms.
int selector_qubits(const HamiltonianSpec& spec);

}  // namespace hamforge
