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

#include "hamforge/circuit.hpp"
#include "hamforge/spec.hpp"

namespace hamforge {

struct EncodedCircuit {
  CircuitPtr circuit;
  BlockEncodingDescriptor desc;
};

// Registers "ctl" (1) followed by the open registers of prep; applies prep when ctl is 0.
CircuitPtr zero_controlled_of(const CircuitPtr& prep);

// Diagonal block-encoding of the amplitudes psi = U_S|0> over registers
// l (flag), [p (flag)], a (h, conditionally pure), c (1, conditionally pure), data (h).
// zc_prep must have the layout of zero_controlled_of. The block is Re(e^{-i theta} psi_k)
// when real_only is set, psi_k / 2 otherwise.
EncodedCircuit build_diag_amplitude_be(const CircuitPtr& zc_prep, bool real_only,
                                       double theta = 0.7853981633974483);

struct AmplitudeOracle {
  EncodedCircuit enc;
  // Nominal sqrt(2) * N_x and the value read back from the simulator.
  double nominal_scale = 0.0;
  double measured_scale = 0.0;
};

// Zero-controlled U_x = H^n A_beta over registers ctl, q.
CircuitPtr build_x_state_prep(const GridSpec& grid, bool zero_controlled = true);
// Block times scale equals diag(x).
AmplitudeOracle build_x_amplitude_oracle(const GridSpec& grid);

struct PhaseSequence {
  // Reflection convention: <0| prod_j e^{i phi_j Z} R(x) |0>, R(x) = [[x, s], [s, -x]].
  std::vector<double> phis;
  Polynomial target;
  double residual = 0.0;
};

cplx qsp_value(const std::vector<double>& phis, double x);
PhaseSequence solve_qsvt_phases(const Polynomial& p, double tol = 1e-10);
std::string phases_to_json(const PhaseSequence& s);
PhaseSequence phases_from_json(const std::string& text);

// Time order: U, phi_d, U^dagger, phi_{d-1}, ... with e^{i phi Z} on the flag.
CircuitPtr build_alternating_sequence(const CircuitPtr& base, const std::string& flag,
                                      const std::vector<double>& phis);

struct PolynomialOracle {
  EncodedCircuit enc;
  PhaseSequence phases;
  // Signal rescale (P~(y) = P(c_x y)) and the extra down-scaling of P~.
  double c_x = 1.0;
  double c_p = 1.0;
};

// Block times enc.desc.scale (= c_p) equals diag P(x_i). Registers w, l (flags), a, c, data.
PolynomialOracle build_coordinate_polynomial_oracle(const GridSpec& grid, const Polynomial& p);

}  // namespace hamforge
