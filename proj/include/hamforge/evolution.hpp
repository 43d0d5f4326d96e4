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

namespace hamforge {

struct TruncationDegree {
  int g = 1;
  double alpha_t = 0.0;
  double eps = 0.0;
  // alpha t + ln(1/eps) / ln(e + ln(1/eps) / (alpha t)).
  double estimate = 0.0;
};

// Least g >= 1 with (1.07 / sqrt(g)) (alpha_t e / (2 g))^g <= eps.
TruncationDegree truncation_degree(double alpha_t, double eps);

// Bessel function of the first kind by its power series; |z| <= 8.
double bessel_j(int k, double z);

struct JacobiAnger {
  // Truncated cos(alpha_t y) and sin(alpha_t y), divided by the listed factors
  // when their sup-norm would exceed 1 - 1e-8. A zero polynomial has no coefficients.
  Polynomial even, odd;
  double even_scale = 1.0;
  double odd_scale = 1.0;
};

JacobiAnger jacobi_anger_polys(double alpha_t, int g);

// Alternating sequence of base and its inverse with e^{i phi (2 Pi - I)} between
// calls, Pi the projector onto |0> of the listed registers of base. Registers: "w"
// (flag), then the open registers of base. When signed, w flips the phase signs.
CircuitPtr build_projector_sequence(const CircuitPtr& base, const std::vector<std::string>& projector,
                                    const std::vector<double>& phis, bool signed_phases);

struct EvolutionEncoding {
  EncodedCircuit enc;
  HamiltonianEncoding ham;
  TruncationDegree trunc;
  JacobiAnger polys;
  PhaseSequence even_phases, odd_phases;
  // U_H and inverse applications in the circuit.
  int queries = 0;
  double t = 0.0;
};

constexpr double kMaxAlphaTime = 4.0;

// Block times 2 approximates exp(i t H) to eps on register "data". Flags e and w
// join those of U_H. Throws TractabilityError when scale * |t| exceeds kMaxAlphaTime.
EvolutionEncoding build_evolution_be(const HamiltonianSpec& spec, double t, double eps);

}  // namespace hamforge
